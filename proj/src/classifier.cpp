#include "toric/classifier.hpp"

#include <algorithm>
#include <numeric>

#include "detail.hpp"
#include "toric/constructions.hpp"
#include "toric/lp.hpp"
#include "toric/mori.hpp"

namespace toric {

std::string to_string(ClassificationCase c) {
  switch (c) {
    case ClassificationCase::ProjectiveSpace: return "ProjectiveSpace";
    case ClassificationCase::P1Bundle: return "P1Bundle";
    case ClassificationCase::Wps112: return "WPS_1_1_2";
    case ClassificationCase::FlopTarget: return "FlopTarget";
    case ClassificationCase::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

bool recognize_projective_space(const Fan& fan) {
  const int n = fan.dim();
  if (!fan.is_complete()) return false;
  if (fan.ray_count() != n + 1) return false;
  if (static_cast<int>(fan.max_cones().size()) != n + 1) return false;
  Vec sum(n, Int(0));
  for (const Vec& v : fan.rays()) sum = add(sum, v);
  if (!is_zero(sum)) return false;
  // Every n-subset a lattice basis.
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<Vec> subset;
    for (int i = 0; i <= n; ++i)
      if (i != skip) subset.push_back(fan.ray(i));
    Int d = determinant(IntMatrix::from_rows(subset, n));
    if (d != 1 && d != -1) return false;
  }
  return true;
}

namespace {

/// The positive primitive relation among the n+1 rays of a simplicial
/// rho = 1 complete fan, in ray order; nullopt when the shape is wrong.
std::optional<std::vector<Int>> positive_ray_relation(const Fan& fan) {
  const int n = fan.dim();
  if (fan.ray_count() != n + 1) return std::nullopt;
  std::vector<Vec> rows;
  for (int j = 0; j < n; ++j) {
    Vec row(n + 1);
    for (int i = 0; i <= n; ++i) row[i] = fan.ray(i)[j];
    rows.push_back(std::move(row));
  }
  std::vector<Vec> kernel = integer_kernel_basis(IntMatrix::from_rows(rows, n + 1));
  if (kernel.size() != 1) return std::nullopt;
  Vec rel = kernel.front();
  bool pos = std::all_of(rel.begin(), rel.end(), [](const Int& x) { return x > 0; });
  bool neg = std::all_of(rel.begin(), rel.end(), [](const Int& x) { return x < 0; });
  if (!pos && !neg) return std::nullopt;
  if (neg) rel = negate(rel);
  return std::vector<Int>(rel.begin(), rel.end());
}

}  // namespace

std::optional<std::vector<Int>> recognize_wps_1_1_2(const Fan& fan) {
  const int n = fan.dim();
  if (n < 2 || !fan.is_complete() || !fan.is_simplicial()) return std::nullopt;
  auto rel = positive_ray_relation(fan);
  if (!rel) return std::nullopt;

  std::vector<Int> sorted = *rel;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Int> expected(n + 1, Int(2));
  expected[0] = 1;
  expected[1] = 1;
  if (sorted != expected) return std::nullopt;

  // The rays must generate the lattice.
  SmithResult snf = smith_normal_form(IntMatrix::from_rows(fan.rays(), n));
  for (int i = 0; i < n; ++i)
    if (snf.s.at(i, i) != 1) return std::nullopt;

  // Opposite cones of the two weight-one rays must be non-singular.
  for (int i = 0; i <= n; ++i) {
    if ((*rel)[i] != 1) continue;
    std::vector<int> others;
    for (int j = 0; j <= n; ++j)
      if (j != i) others.push_back(j);
    bool found = false;
    for (const Cone& c : fan.max_cones())
      if (c.rays == others) {
        if (fan.multiplicity(c) != 1) return std::nullopt;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  if (rho(fan) != 1) return std::nullopt;
  return sorted;
}

std::optional<std::vector<Int>> recognize_p1_bundle(const Fan& fan) {
  const int n = fan.dim();
  if (n < 2 || !fan.is_complete() || !fan.is_smooth()) return std::nullopt;
  if (fan.ray_count() != n + 2) return std::nullopt;
  if (rho(fan) != 2) return std::nullopt;

  const int r = fan.ray_count();
  // Candidate projections: primitive covectors vanishing on n-1 of the rays.
  std::vector<int> subset(n - 1);
  std::function<std::optional<std::vector<Int>>(int, int)> search =
      [&](int start, int depth) -> std::optional<std::vector<Int>> {
    if (depth == n - 1) {
      std::vector<Vec> rows;
      for (int s : subset) rows.push_back(fan.ray(s));
      IntMatrix m = IntMatrix::from_rows(rows, n);
      if (rank(m) != n - 1) return std::nullopt;
      std::vector<Vec> dual = integer_kernel_basis(m);
      if (dual.size() != 1) return std::nullopt;
      Vec pi = dual.front();

      std::vector<int> fiber, plus, minus;
      bool usable = true;
      for (int i = 0; i < r && usable; ++i) {
        Int v = dot(pi, fan.ray(i));
        if (v == 0)
          fiber.push_back(i);
        else if (v == 1)
          plus.push_back(i);
        else if (v == -1)
          minus.push_back(i);
        else
          usable = false;
      }
      if (!usable || static_cast<int>(fiber.size()) != n || plus.size() != 1 ||
          minus.size() != 1)
        return std::nullopt;
      const int wp = plus.front(), wm = minus.front();

      // Each maximal cone must consist of n-1 fiber rays plus one base ray,
      // and the fibers over both fixed points must be projective spaces.
      std::vector<Vec> fiber_basis = integer_kernel_basis(
          IntMatrix::from_rows({pi}, n));
      if (static_cast<int>(fiber_basis.size()) != n - 1) return std::nullopt;
      // Coordinates in the fiber lattice: solve basis * x = v.
      std::vector<Vec> cols = fiber_basis;
      IntMatrix basis_mat(n, n - 1);
      for (int j = 0; j < n - 1; ++j)
        for (int i = 0; i < n; ++i) basis_mat.at(i, j) = cols[j][i];
      std::vector<int> fiber_pos(r, -1);
      std::vector<Vec> fiber_rays;
      for (std::size_t k = 0; k < fiber.size(); ++k) {
        auto x = solve_rational(basis_mat, fan.ray(fiber[k]));
        if (!x || !is_integral(*x)) return std::nullopt;
        fiber_pos[fiber[k]] = static_cast<int>(fiber_rays.size());
        fiber_rays.push_back(to_int(*x));
      }
      for (int base : {wp, wm}) {
        std::vector<std::vector<int>> fiber_cones;
        for (const Cone& c : fan.max_cones()) {
          bool has_wp = std::binary_search(c.rays.begin(), c.rays.end(), wp);
          bool has_wm = std::binary_search(c.rays.begin(), c.rays.end(), wm);
          if (has_wp && has_wm) return std::nullopt;
          if ((base == wp && !has_wp) || (base == wm && !has_wm)) continue;
          std::vector<int> fc;
          for (int ri : c.rays)
            if (ri != base) {
              if (fiber_pos[ri] < 0) return std::nullopt;
              fc.push_back(fiber_pos[ri]);
            }
          fiber_cones.push_back(std::move(fc));
        }
        try {
          Fan fiber_fan(n - 1, fiber_rays, fiber_cones);
          if (!recognize_projective_space(fiber_fan)) return std::nullopt;
        } catch (const Error&) {
          return std::nullopt;
        }
      }

      // Twists from w+ + w- = sum c_i u_i, defined up to adding t*(1,...,1);
      // report the representative with smallest entry zero.
      IntMatrix u_mat(n, n);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) u_mat.at(i, k) = fan.ray(fiber[k])[i];
      auto c = solve_rational(u_mat, add(fan.ray(wp), fan.ray(wm)));
      if (!c || !is_integral(*c)) return std::nullopt;
      std::vector<Int> q = to_int(*c);
      std::sort(q.begin(), q.end());
      Int base_shift = q.front();
      for (Int& x : q) x -= base_shift;
      return q;
    }
    for (int i = start; i < r; ++i) {
      subset[depth] = i;
      if (auto res = search(i + 1, depth + 1)) return res;
    }
    return std::nullopt;
  };
  return search(0, 0);
}

std::vector<std::vector<Int>> enumerate_long_ray_weights(int n, int bound) {
  if (n < 2) throw Error("bad_dimension", "weight enumeration needs n >= 2");
  if (bound < 2) throw Error("bad_bound", "weight bound must be at least 2");

  std::vector<std::vector<Int>> found;
  std::vector<Int> w(n + 1, Int(1));
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n + 1) {
      for (int skip = 0; skip <= n; ++skip) {
        Int g = 0;
        for (int i = 0; i <= n; ++i)
          if (i != skip) g = gcd(g, w[i]);
        if (g != 1) return;
      }
      Fan fan = weighted_projective(w);
      TorusDivisor minus_k = Rat(-1) * canonical_divisor(fan);
      for (std::size_t wi = 0; wi < fan.walls().size(); ++wi)
        if (intersection_number(fan, minus_k, static_cast<int>(wi)) < n) return;
      found.push_back(w);
      return;
    }
    Int lo = pos == 0 ? Int(1) : w[pos - 1];
    for (Int a = lo; a <= bound; ++a) {
      w[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
  return found;
}

bool normal_bundle_ample(const Fan& fan, int ray_index) {
  if (!fan.is_complete()) throw Error("fan_not_complete", "requires a complete fan");
  if (!fan.is_smooth()) throw Error("fan_not_smooth", "requires a non-singular fan");

  StarFan star = fan.star_fan(ray_index);
  auto cd = cartier_data(fan, TorusDivisor::prime(fan, ray_index));
  if (!cd) throw Error("internal_error", "prime divisor not Cartier on a smooth fan");

  // Push the Cartier data of V(v_i) to the quotient: differences of the
  // functionals vanish on v_i, so relative to a base cone they define a
  // divisor on the star fan.
  const RatVec& base = cd->functionals[star.cone_source.front()];
  RatVec coeffs(star.fan->ray_count(), Rat(0));
  std::vector<bool> have(star.fan->ray_count(), false);
  for (std::size_t sc = 0; sc < star.cone_source.size(); ++sc) {
    const Cone& source = fan.max_cones()[star.cone_source[sc]];
    RatVec rel = sub(cd->functionals[star.cone_source[sc]], base);
    for (int ri : source.rays) {
      if (ri == ray_index) continue;
      int img = star.ray_image[ri];
      Rat value = -dot(rel, fan.ray(ri)) / Rat(star.ray_scale[ri]);
      if (have[img]) {
        if (coeffs[img] != value)
          throw Error("internal_error", "restricted divisor is not well-defined");
      } else {
        coeffs[img] = value;
        have[img] = true;
      }
    }
  }
  return is_ample(*star.fan, TorusDivisor(std::move(coeffs)));
}

bool mabuchi_classify(const Fan& fan) {
  for (int i = 0; i < fan.ray_count(); ++i)
    if (!normal_bundle_ample(fan, i)) return false;
  if (!recognize_projective_space(fan))
    throw ClassificationViolation(
        "mabuchi_violation",
        "all torus-invariant divisors have ample normal bundle, yet the fan "
        "is not projective space");
  return true;
}

namespace {

struct FanShape {
  int rays, cones, walls;
  std::vector<int> cone_sizes;
  bool operator==(const FanShape&) const = default;
};

FanShape shape_of(const Fan& fan) {
  FanShape s{fan.ray_count(), static_cast<int>(fan.max_cones().size()),
             static_cast<int>(fan.walls().size()), {}};
  for (const Cone& c : fan.max_cones()) s.cone_sizes.push_back(static_cast<int>(c.rays.size()));
  std::sort(s.cone_sizes.begin(), s.cone_sizes.end());
  return s;
}

}  // namespace

ClassificationReport classify(const Fan& fan) {
  ClassificationReport rep;
  rep.n = fan.dim();
  if (!fan.is_complete()) throw Error("fan_not_complete", "classification needs a complete fan");

  TorusDivisor k = canonical_divisor(fan);
  auto kcd = cartier_data(fan, k);
  if (!kcd) {
    rep.status = "k_not_q_cartier";
    rep.flags.push_back("k_not_q_cartier");
    return rep;
  }
  rep.k_q_cartier = true;
  rep.k_cartier = kcd->cartier;
  rep.k_cartier_index = kcd->cartier_index;

  if (!has_ample_divisor(fan)) {
    rep.status = "no_ample_divisor";
    rep.flags.push_back("no_ample_divisor");
    return rep;
  }
  rep.picard_rank = rho(fan);

  if (is_nef(fan, k)) {
    rep.flags.push_back("k_nef");
    return rep;
  }

  DivisibilityResult div = divisibility_index(fan);
  if (div.status != DivisibilityResult::Status::Ok) {
    rep.flags.push_back("minus_k_not_divisible");
    return rep;
  }
  rep.index_n = div.n;
  rep.witness = div.witness;

  const int n = fan.dim();
  const Int& bigN = div.n;
  if (bigN > n + 1)
    throw ClassificationViolation("divisibility_bound_violation",
                                  "divisibility index exceeds n+1");
  if (bigN == n + 1) {
    if (!recognize_projective_space(fan))
      throw ClassificationViolation(
          "classification_violation",
          "index n+1 but the fan is not projective space");
    rep.matched = ClassificationCase::ProjectiveSpace;
    return rep;
  }
  if (bigN == n) {
    if (fan.is_simplicial()) {
      if (fan.is_smooth()) {
        auto q = recognize_p1_bundle(fan);
        if (!q)
          throw ClassificationViolation(
              "classification_violation",
              "index n on a smooth fan that is not a P^1-bundle");
        Int total = std::accumulate(q->begin(), q->end(), Int(0));
        if ((((total - 2) % n) + n) % n != 0)
          throw ClassificationViolation(
              "classification_violation",
              "P^1-bundle with index n but no twist representative summing to 2");
        rep.matched = ClassificationCase::P1Bundle;
        rep.bundle_twists = std::move(*q);
      } else {
        auto wts = recognize_wps_1_1_2(fan);
        if (!wts)
          throw ClassificationViolation(
              "classification_violation",
              "index n on a singular simplicial fan that is not P(1,1,2,...,2)");
        rep.matched = ClassificationCase::Wps112;
        rep.wps_weights = std::move(*wts);
      }
      return rep;
    }
    // Non-simplicial case: the flop target family.
    if (n < 3)
      throw ClassificationViolation("classification_violation",
                                    "non-simplicial complete surface fan");
    if (*rep.picard_rank != 1 || !rep.k_cartier)
      throw ClassificationViolation(
          "classification_violation",
          "non-simplicial fan with index n must have rho 1 and Cartier K");
    rep.matched = ClassificationCase::FlopTarget;
    if (shape_of(fan) == shape_of(flop_target(n)))
      rep.flags.push_back("matches_flop_fixture");
    else {
      rep.certified_by_invariants = true;
      rep.flags.push_back("certified_by_invariants");
    }
    return rep;
  }
  return rep;  // N <= n-1: a legitimate Unclassified outcome
}

}  // namespace toric
