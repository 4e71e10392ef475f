#pragma once

#include <optional>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// Exact feasibility of { x >= 0 : A x = b } by a phase-one simplex with
/// Bland's rule. Everything is rational, so there are no tolerances and no
/// cycling.
struct LpFeasibility {
  bool feasible = false;
  RatVec point;  // a feasible x when feasible
};

LpFeasibility lp_feasible(const std::vector<RatVec>& a_rows, const RatVec& b);

/// Is target a nonnegative rational combination of the generators?
bool in_cone(const std::vector<Vec>& generators, const Vec& target);
bool in_cone(const std::vector<RatVec>& generators, const RatVec& target);

/// A covector w with <w,z> = 0 on zeros, <w,p> >= 1 on pos and <w,q> <= -1
/// on neg, when one exists. The workhorse behind face tests, strong-convexity
/// tests and the fan separation checks.
std::optional<RatVec> separating_functional(const std::vector<Vec>& zeros,
                                            const std::vector<Vec>& pos,
                                            const std::vector<Vec>& neg,
                                            int dim);

/// A cone spanned by the generators contains no line iff some functional is
/// strictly positive on every generator.
bool strongly_convex(const std::vector<Vec>& generators, int dim);

}  // namespace toric
