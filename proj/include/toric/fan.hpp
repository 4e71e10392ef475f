#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// A cone of a fan, stored as the sorted set of indices of its extreme rays
/// in the parent fan's ray list. Non-simplicial cones list all their rays.
struct Cone {
  std::vector<int> rays;
  bool operator==(const Cone&) const = default;
};

/// A codimension-one face shared by exactly two maximal cones.
struct Wall {
  std::vector<int> rays;  // sorted ray indices spanning the wall
  int left = -1;          // incident maximal cone indices
  int right = -1;
};

class Fan;

/// The fan of a torus-invariant divisor V(v_i), living in the quotient
/// lattice by the ray, together with the data needed to move divisors there.
struct StarFan {
  std::shared_ptr<const Fan> fan;       // complete fan of dimension n-1
  IntMatrix projection;                 // (n-1) x n quotient map
  std::vector<int> ray_image;           // original ray -> star ray, or -1
  std::vector<Int> ray_scale;           // projection(v_j) = scale * star ray
  std::vector<int> cone_source;         // star cone -> original cone index
};

/// A complete or partial fan over Z^n: primitive rays plus full-dimensional
/// maximal cones. Validation happens once at construction; instances are
/// immutable afterwards and safe to share across threads.
class Fan {
 public:
  Fan(int dim, std::vector<Vec> rays, std::vector<std::vector<int>> max_cones,
      std::optional<std::string> name = std::nullopt);

  int dim() const { return dim_; }
  int ray_count() const { return static_cast<int>(rays_.size()); }
  const std::vector<Vec>& rays() const { return rays_; }
  const Vec& ray(int i) const;
  const std::vector<Cone>& max_cones() const { return cones_; }
  const std::optional<std::string>& name() const { return name_; }

  bool is_simplicial() const;
  bool is_smooth() const;
  bool is_complete() const;

  /// Index of the sublattice spanned by the cone's primitive rays inside the
  /// lattice of its linear span; 1 iff the cone is non-singular.
  Int multiplicity(const Cone& cone) const;
  Int multiplicity(int cone_index) const;

  /// Every (n-1)-dimensional face of a maximal cone with its two incident
  /// maximal cones. Requires the fan to be complete.
  const std::vector<Wall>& walls() const;

  /// Primitive integer covector vanishing on wall w, positive on the
  /// off-wall rays of the right cone. Intersection theory reads the jump of
  /// Cartier data against this.
  const Vec& wall_covector(int wall_index) const;

  StarFan star_fan(int ray_index) const;

  /// Structural equality: same lattice data, same rays in the same order,
  /// same set of maximal cones (cone order is not significant).
  bool operator==(const Fan& other) const;

 private:
  struct Cache;
  void validate() const;
  Cache& cache() const;

  int dim_;
  std::vector<Vec> rays_;
  std::vector<Cone> cones_;
  std::optional<std::string> name_;
  mutable std::shared_ptr<Cache> cache_;
};

/// Facet of a single maximal cone: contact rays and the inward normal
/// (nonnegative on the cone, zero exactly on the facet).
struct Facet {
  std::vector<int> rays;
  Vec normal;
};

std::vector<Facet> cone_facets(const Fan& fan, const Cone& cone);

}  // namespace toric
