#include "mdm/subset.hpp"

#include <algorithm>

#include "mdm/errors.hpp"

namespace mdm {

Subset::Subset(std::vector<std::int32_t> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1) {
      throw MdmError(ErrorKind::Config, "subset labels must be positive");
    }
    if (i > 0 && labels_[i] <= labels_[i - 1]) {
      throw MdmError(ErrorKind::Config, "subset labels must be strictly increasing");
    }
  }
}

Subset Subset::of(std::initializer_list<std::int32_t> labels) {
  return Subset(std::vector<std::int32_t>(labels));
}

bool Subset::contains(std::int32_t j) const {
  return std::binary_search(labels_.begin(), labels_.end(), j);
}

Subset Subset::select(std::uint32_t mask) const {
  Subset v;
  v.labels_.reserve(static_cast<std::size_t>(__builtin_popcount(mask)));
  for (int i = 0; i < card(); ++i) {
    if (mask & (1u << i)) v.labels_.push_back(labels_[i]);
  }
  return v;
}

std::string Subset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(labels_[i]);
  }
  s += "}";
  return s;
}

bool canonical_less(const Subset& a, const Subset& b) {
  if (a.max_label() != b.max_label()) return a.max_label() < b.max_label();
  if (a.card() != b.card()) return a.card() < b.card();
  return a.labels() < b.labels();
}

std::size_t SubsetHash::operator()(const Subset& u) const {
  std::size_t h = 1469598103934665603ull;
  for (std::int32_t j : u.labels()) {
    h ^= static_cast<std::size_t>(j);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mdm
