#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

enum class ClassificationCase {
  ProjectiveSpace,  // N = n+1
  P1Bundle,         // N = n, smooth, rho = 2
  Wps112,           // N = n, singular simplicial, rho = 1
  FlopTarget,       // N = n, non-simplicial, rho = 1, Gorenstein
  Unclassified,     // N <= n-1, K nef, or hypotheses not met
};

std::string to_string(ClassificationCase c);

struct ClassificationReport {
  int n = 0;
  std::string status = "ok";  // ok | k_not_q_cartier | no_ample_divisor
  bool k_q_cartier = false;
  bool k_cartier = false;
  Int k_cartier_index = 0;
  std::optional<Int> index_n;            // divisibility index when defined
  std::optional<TorusDivisor> witness;   // Cartier D with -K == N*D
  ClassificationCase matched = ClassificationCase::Unclassified;
  // Certificates of the matched case.
  std::optional<std::vector<Int>> wps_weights;
  std::optional<std::vector<Int>> bundle_twists;  // normalized, q_1 = 0
  std::optional<int> picard_rank;
  bool certified_by_invariants = false;  // flop case outside the fixture family
  std::vector<std::string> flags;
};

/// The classification pipeline for complete fans: computes the divisibility
/// index of -K and matches the terminal structure. A mismatch between the
/// index and the recognizers throws ClassificationViolation; it cannot occur
/// on valid inputs.
ClassificationReport classify(const Fan& fan);

/// n+1 rays summing to zero, every n-subset a lattice basis.
bool recognize_projective_space(const Fan& fan);

/// Recovers the weights from the unique positive relation among the n+1 rays
/// and accepts exactly the pattern (1,1,2,...,2) with the two weight-one
/// opposite cones smooth and the rays generating the lattice.
std::optional<std::vector<Int>> recognize_wps_1_1_2(const Fan& fan);

/// Finds a lattice surjection onto the P^1 fan with P^{n-1} fibers and reads
/// off the twists, normalized so the smallest is zero.
std::optional<std::vector<Int>> recognize_p1_bundle(const Fan& fan);

/// All well-formed weight vectors with a_{n+1} <= bound whose fans have every
/// wall degree -K . V(mu) >= n.
std::vector<std::vector<Int>> enumerate_long_ray_weights(int n, int bound);

/// Is the restriction of V(v_i) to its own divisor ample? Computed on the
/// star fan in the quotient lattice. Needs a smooth complete fan.
bool normal_bundle_ample(const Fan& fan, int ray_index);

/// True when every torus-invariant divisor has ample normal bundle; then the
/// fan must be recognized as projective space (a failure to do so throws).
bool mabuchi_classify(const Fan& fan);

}  // namespace toric
