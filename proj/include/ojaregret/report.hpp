#pragma once

#include <cmath>

namespace ojaregret {

// Both sides of a checked inequality. vacuous marks bounds whose right side
// degenerates to +inf (zero initial overlap, or eta = 0 for the experts
// bound); those are never counted as failures.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  bool vacuous = false;
};

inline BoundReport make_bound_report(double lhs, double rhs, double tol) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.vacuous = std::isinf(rhs) && rhs > 0;
  r.satisfied = r.vacuous || lhs <= rhs + tol;
  return r;
}

}  // namespace ojaregret
