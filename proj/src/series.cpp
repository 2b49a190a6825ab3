#include "szilard/series.hpp"

#include <sstream>

namespace szilard {

void TruncationPolicy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || max_terms < 10) {
    std::ostringstream msg;
    msg << "truncation policy needs 0 < rel_tol < 1 and max_terms >= 10, got rel_tol = "
        << rel_tol << ", max_terms = " << max_terms;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

}  // namespace szilard
