#pragma once

#include <vector>

#include "ordlab/rational.hpp"

namespace ordlab::detail {

/// Feasibility of {x >= 0 : A x = b} decided by an exact phase-1 simplex
/// with Bland's rule (terminating, no tolerances).
bool rational_system_feasible(const std::vector<std::vector<Rational>>& a,
                              const std::vector<Rational>& b);

}  // namespace ordlab::detail
