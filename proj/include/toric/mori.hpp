#pragma once

#include <optional>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

/// The unique (up to scale) linear relation among the n+1 rays of the two
/// maximal cones incident to a wall, in the minimal positive integral form:
/// sum coeff[i] * ray[i] = 0 with the two off-wall rays carrying positive
/// coefficients (both 1 on smooth fans).
struct WallRelation {
  int wall_index = -1;
  std::vector<int> ray_indices;  // wall rays then the two off-wall rays
  std::vector<Int> coeffs;       // aligned with ray_indices
};

WallRelation wall_relation(const Fan& fan, int wall_index);

/// D . V(wall) for a Q-Cartier divisor, computed from the Cartier-data jump
/// across the wall. Exact rational; integral for integral D on smooth fans.
Rat intersection_number(const Fan& fan, const TorusDivisor& d, int wall_index);

/// Closed-form -K . V(mu_{l,m}) on the fan of a weighted projective space,
/// from the weights and the cone multiplicities. Must agree with
/// intersection_number, which is the authority.
Rat wps_wall_degree(const std::vector<Int>& weights, const Fan& fan, int wall_index);

/// Numerical class of a curve as a functional on the Picard lattice,
/// normalized to the primitive integer vector of its values against the
/// Picard basis.
struct CurveClass {
  Vec values;              // length rho, primitive
  std::vector<int> walls;  // walls whose curves lie on this ray
  bool operator==(const CurveClass& o) const { return values == o.values; }
};

/// Extremal rays of the Mori cone NE(X); every ray is spanned by a wall
/// curve. Deterministic order (lexicographic by class values).
std::vector<CurveClass> mori_cone(const Fan& fan);

/// min of -K . C over wall curves whose class lies on the ray.
Rat extremal_length(const Fan& fan, const CurveClass& ray);

enum class ContractionType { Fibration, Divisorial, Small };

struct ContractionResult {
  ContractionType type = ContractionType::Divisorial;
  bool crepant = false;
  std::optional<Fan> target;
  std::vector<std::vector<int>> merged_cones;  // target cone -> source cones
  std::vector<int> disappeared_rays;           // source rays absent downstream
};

/// Contract an extremal ray by merging the maximal cones joined through its
/// walls. Divisorial and small contractions stay in the same lattice;
/// fibrations are supported for the P^1-base shape only.
ContractionResult contract_ray(const Fan& fan, const CurveClass& ray);

}  // namespace toric
