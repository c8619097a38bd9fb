#pragma once

#include <stdexcept>
#include <string>

namespace mdm {

enum class ErrorKind {
  Config,      // invalid configuration or incompatible request
  Domain,      // coordinate outside the integration domain
  Evaluation,  // non-finite value or numeric overflow during computation
  Divergence,  // a requested series/bound does not converge
  Resource,    // a node/cost budget was exceeded
  Refusal,     // the problem is rejected as outside the method's assumptions
};

class MdmError : public std::runtime_error {
 public:
  MdmError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mdm
