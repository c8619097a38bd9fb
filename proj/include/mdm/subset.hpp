#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mdm {

// A finite set of coordinate labels, stored strictly increasing.
// The empty set stands for the constant decomposition term.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<std::int32_t> labels);

  static Subset of(std::initializer_list<std::int32_t> labels);

  const std::vector<std::int32_t>& labels() const { return labels_; }
  int card() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  std::int32_t max_label() const { return labels_.empty() ? 0 : labels_.back(); }
  bool contains(std::int32_t j) const;

  // The sub-subset addressed by bit i of mask selecting labels()[i].
  Subset select(std::uint32_t mask) const;

  bool operator==(const Subset&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int32_t> labels_;
};

// Canonical term order: truncation dimension (largest label), then
// cardinality, then lexicographic on the label sequences.
bool canonical_less(const Subset& a, const Subset& b);

struct SubsetHash {
  std::size_t operator()(const Subset& u) const;
};

}  // namespace mdm
