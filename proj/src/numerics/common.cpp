#include <cmath>
#include <string>

#include "mtf/numerics.hpp"

namespace mtf::numerics {

void Interval::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorKind::DomainError,
                "interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is not a finite lo < hi");
  }
}

void ToleranceSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
    throw Error(ErrorKind::DomainError, "tolerances must be positive and max_iter >= 1");
  }
}

}  // namespace mtf::numerics
