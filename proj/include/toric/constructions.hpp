#pragma once

#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// Fan of P^n: rays e_1..e_n and -sum e_i, maximal cones all n-subsets.
Fan projective_space(int n);

/// Fan of the weighted projective space P(a_1,...,a_{n+1}) for well-formed
/// weights (gcd of any n of them is 1). Weights are sorted ascending; ray i
/// carries weight i in the relation sum a_i v_i = 0.
Fan weighted_projective(std::vector<Int> weights);

/// Fan of P(O(q_1) + ... + O(q_n)) over P^1 in the fixed coordinate model:
/// fiber rays u_1..u_{n-1} = e_1..e_{n-1}, u_n = -sum u_i, base rays
/// w+ = e_n and w- = -e_n + sum (q_i - q_n) u_i. Twists are sorted ascending.
Fan bundle_over_p1(std::vector<Int> twists);

/// Target of the flopping contraction of the non-fiber extremal ray of
/// P(O + ... + O + O(1) + O(1)) over P^1. Complete, non-simplicial,
/// Gorenstein, with Picard number one. Needs n >= 3.
Fan flop_target(int n);

}  // namespace toric
