#pragma once

#include <random>

#include "toric/fan.hpp"

namespace toric::test {

// Standard P^2 fan in the canonical coordinates.
inline Fan p2() {
  return Fan(2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}},
             {{0, 1}, {1, 2}, {2, 0}});
}

// Hirzebruch surface F_2 with the usual rays; V((0,1)) is the -2-section.
inline Fan f2() {
  return Fan(2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(2)}, {Int(0), Int(-1)}},
             {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// P(1,1,2) with v1 = (1,0), v2 = (-1,-2), v3 = (0,1): v1 + v2 + 2 v3 = 0.
inline Fan p112() {
  return Fan(2, {{Int(1), Int(0)}, {Int(-1), Int(-2)}, {Int(0), Int(1)}},
             {{0, 1}, {0, 2}, {1, 2}});
}

// Quotient of P^2 by Z/3: class group Z + Z/3, Picard rank 1.
inline Fan fake_p2() {
  return Fan(2, {{Int(2), Int(-1)}, {Int(-1), Int(2)}, {Int(-1), Int(-1)}},
             {{0, 1}, {1, 2}, {2, 0}});
}

// Fan of a single orthant: a valid, non-complete fan.
inline Fan orthant2() {
  return Fan(2, {{Int(1), Int(0)}, {Int(0), Int(1)}}, {{0, 1}});
}

// Random determinant +-1 matrix built from elementary shears and swaps.
inline IntMatrix random_unimodular(int n, std::mt19937& rng) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> shear(-2, 2);
  std::uniform_int_distribution<int> op(0, 3);
  for (int step = 0; step < 3 * n; ++step) {
    int i = pick(rng), j = pick(rng);
    switch (op(rng)) {
      case 0:
        if (i != j) m.add_row(i, j, Int(shear(rng)));
        break;
      case 1:
        if (i != j) m.swap_rows(i, j);
        break;
      case 2:
        m.negate_row(i);
        break;
      default:
        if (i != j) m.add_col(i, j, Int(shear(rng)));
        break;
    }
  }
  return m;
}

// The same fan in a different lattice basis.
inline Fan transform(const Fan& fan, const IntMatrix& t) {
  std::vector<Vec> rays;
  for (const Vec& v : fan.rays()) rays.push_back(t.apply(v));
  std::vector<std::vector<int>> cones;
  for (const Cone& c : fan.max_cones()) cones.push_back(c.rays);
  return Fan(fan.dim(), std::move(rays), std::move(cones));
}

}  // namespace toric::test
