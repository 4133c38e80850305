#pragma once

#include <stdexcept>
#include <string>

namespace ginin {

// Thrown when an iterative numerical routine fails to reach its tolerance
// (quadrature refinement, inverse-beta iteration, truncation refinement).
// Kept distinct from std::domain_error so callers can map validation
// failures and numerical failures to different exit codes.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ginin
