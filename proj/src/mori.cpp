#include "toric/mori.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "detail.hpp"
#include "toric/lp.hpp"

namespace toric {

WallRelation wall_relation(const Fan& fan, int wall_index) {
  const Wall& w = fan.walls()[wall_index];
  const Cone& left = fan.max_cones()[w.left];
  const Cone& right = fan.max_cones()[w.right];
  if (static_cast<int>(left.rays.size()) != fan.dim() ||
      static_cast<int>(right.rays.size()) != fan.dim())
    throw Error("non_simplicial_wall",
                "wall relation needs simplicial incident cones");

  WallRelation rel;
  rel.wall_index = wall_index;
  rel.ray_indices = w.rays;
  int off_left = -1, off_right = -1;
  for (int r : left.rays)
    if (!std::binary_search(w.rays.begin(), w.rays.end(), r)) off_left = r;
  for (int r : right.rays)
    if (!std::binary_search(w.rays.begin(), w.rays.end(), r)) off_right = r;
  rel.ray_indices.push_back(off_left);
  rel.ray_indices.push_back(off_right);

  // Kernel of the n x (n+1) matrix whose columns are the participating rays.
  std::vector<Vec> rows;
  for (int j = 0; j < fan.dim(); ++j) {
    Vec row;
    for (int r : rel.ray_indices) row.push_back(fan.ray(r)[j]);
    rows.push_back(std::move(row));
  }
  std::vector<Vec> kernel =
      integer_kernel_basis(IntMatrix::from_rows(rows, static_cast<int>(rel.ray_indices.size())));
  if (kernel.size() != 1)
    throw Error("internal_error", "wall relation kernel is not one-dimensional");
  Vec coeffs = kernel.front();
  const std::size_t nl = coeffs.size() - 2, nr = coeffs.size() - 1;
  if (coeffs[nl] == 0 || coeffs[nr] == 0 ||
      (coeffs[nl] > 0) != (coeffs[nr] > 0))
    throw Error("internal_error", "off-wall coefficients must share a sign");
  if (coeffs[nl] < 0) coeffs = negate(coeffs);
  rel.coeffs = std::move(coeffs);
  return rel;
}

Rat intersection_number(const Fan& fan, const TorusDivisor& d, int wall_index) {
  auto cd = cartier_data(fan, d);
  if (!cd) throw Error("not_q_cartier", "divisor is not Q-Cartier");
  if (wall_index < 0 || wall_index >= static_cast<int>(fan.walls().size()))
    throw Error("wall_index_out_of_range", "wall index out of range");
  return detail::wall_jump(fan, *cd, wall_index);
}

Rat wps_wall_degree(const std::vector<Int>& weights, const Fan& fan, int wall_index) {
  const int n = fan.dim();
  if (static_cast<int>(weights.size()) != n + 1 || fan.ray_count() != n + 1)
    throw Error("weights_fan_mismatch", "expected n+1 weights and n+1 rays");
  Vec relation(fan.dim(), Int(0));
  for (int i = 0; i <= n; ++i) relation = add(relation, scale(weights[i], fan.ray(i)));
  if (!is_zero(relation))
    throw Error("weights_fan_mismatch", "weights do not annihilate the rays");

  const Wall& w = fan.walls()[wall_index];
  std::vector<int> off;
  for (int i = 0; i <= n; ++i)
    if (!std::binary_search(w.rays.begin(), w.rays.end(), i)) off.push_back(i);
  if (off.size() != 2) throw Error("weights_fan_mismatch", "wall must omit exactly two rays");
  const int l = off[0], m = off[1];

  auto cone_without = [&](int skip) -> const Cone& {
    for (const Cone& c : fan.max_cones()) {
      if (static_cast<int>(c.rays.size()) != n) continue;
      if (!std::binary_search(c.rays.begin(), c.rays.end(), skip)) return c;
    }
    throw Error("weights_fan_mismatch", "missing maximal cone of the weight fan");
  };

  Int sum_a = std::accumulate(weights.begin(), weights.end(), Int(0));
  Int mult_mu = fan.multiplicity(Cone{w.rays});
  // (1/a_m) * (sum a_i) * mult(mu_{l,m}) / mult(sigma_l), and symmetrically
  // with l and m exchanged; the two must agree.
  Rat deg_l = Rat(sum_a * mult_mu, weights[m] * fan.multiplicity(cone_without(l)));
  Rat deg_m = Rat(sum_a * mult_mu, weights[l] * fan.multiplicity(cone_without(m)));
  if (deg_l != deg_m)
    throw Error("internal_error", "weight-formula wall degree is not symmetric");
  return deg_l;
}

// -- Mori cone ------------------------------------------------------------------------

std::vector<CurveClass> mori_cone(const Fan& fan) {
  if (!fan.is_complete()) throw Error("fan_not_complete", "Mori cone needs a complete fan");
  PicardLattice pic(fan);
  std::vector<RatVec> classes = detail::wall_curve_classes(fan, pic);

  std::map<Vec, std::vector<int>> directions;
  for (int wi = 0; wi < static_cast<int>(classes.size()); ++wi) {
    if (is_zero(classes[wi]))
      throw Error("degenerate_curve_class",
                  "wall curve with trivial class; fan carries no ample divisor");
    directions[primitive_direction(classes[wi])].push_back(wi);
  }

  std::vector<CurveClass> rays;
  std::vector<Vec> dirs;
  for (const auto& [dir, walls] : directions) dirs.push_back(dir);
  for (const auto& [dir, walls] : directions) {
    std::vector<Vec> others;
    for (const Vec& d : dirs)
      if (d != dir) others.push_back(d);
    if (!in_cone(others, dir)) rays.push_back(CurveClass{dir, walls});
  }
  return rays;  // map order = lexicographic by class values
}

namespace {

const CurveClass& match_ray(const std::vector<CurveClass>& rays, const CurveClass& ray) {
  Vec wanted = ray.values.empty() ? Vec() : primitive_direction(to_rat(ray.values));
  for (const CurveClass& r : rays)
    if (r.values == wanted) return r;
  throw Error("ray_not_extremal", "designated class is not an extremal ray");
}

}  // namespace

Rat extremal_length(const Fan& fan, const CurveClass& ray) {
  const std::vector<CurveClass> rays = mori_cone(fan);
  const CurveClass& r = match_ray(rays, ray);
  TorusDivisor minus_k = Rat(-1) * canonical_divisor(fan);
  auto cd = cartier_data(fan, minus_k);
  if (!cd) throw Error("k_not_q_cartier", "K is not Q-Cartier");
  std::optional<Rat> best;
  for (int wi : r.walls) {
    Rat v = detail::wall_jump(fan, *cd, wi);
    if (!best || v < *best) best = v;
  }
  if (!best) throw Error("internal_error", "extremal ray without wall curves");
  return *best;
}

// -- contraction ----------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ContractionResult contract_ray(const Fan& fan, const CurveClass& ray) {
  const std::vector<CurveClass> rays = mori_cone(fan);
  const CurveClass& r = match_ray(rays, ray);

  ContractionResult res;
  res.crepant = extremal_length(fan, r) == 0;

  const int s = static_cast<int>(fan.max_cones().size());
  UnionFind uf(s);
  for (int wi : r.walls) {
    const Wall& w = fan.walls()[wi];
    uf.unite(w.left, w.right);
  }
  std::map<int, std::vector<int>> groups;
  for (int ci = 0; ci < s; ++ci) groups[uf.find(ci)].push_back(ci);

  // Ray sets of the merged regions.
  struct Group {
    std::vector<int> cones;
    std::vector<int> rays;
  };
  std::vector<Group> merged, untouched;
  for (auto& [root, cones] : groups) {
    std::set<int> rayset;
    for (int ci : cones)
      for (int rr : fan.max_cones()[ci].rays) rayset.insert(rr);
    Group g{cones, std::vector<int>(rayset.begin(), rayset.end())};
    (cones.size() > 1 ? merged : untouched).push_back(std::move(g));
  }
  if (merged.empty())
    throw Error("internal_error", "extremal ray contracted no wall");

  bool pointed = true;
  for (const Group& g : merged) {
    std::vector<Vec> gens;
    for (int rr : g.rays) gens.push_back(fan.ray(rr));
    if (!strongly_convex(gens, fan.dim())) pointed = false;
  }

  if (!pointed) {
    // Fibration shape: every maximal cone merges, the common lineality space
    // has corank one, and the quotient fan is the P^1 fan.
    if (!untouched.empty())
      throw Error("contraction_out_of_scope",
                  "merged region contains a line but some cones are untouched");
    std::optional<Vec> covector;
    for (const Group& g : merged) {
      std::vector<Vec> gens, lineal;
      for (int rr : g.rays) gens.push_back(fan.ray(rr));
      for (const Vec& v : gens)
        if (in_cone(gens, negate(v))) lineal.push_back(v);
      std::vector<Vec> dual = integer_kernel_basis(
          IntMatrix::from_rows(lineal, fan.dim()));
      if (dual.size() != 1)
        throw Error("fibration_out_of_scope",
                    "only fibrations onto P^1 are supported; quotient rank is " +
                        std::to_string(dual.size()));
      if (!covector)
        covector = dual.front();
      else if (*covector != dual.front() && *covector != negate(dual.front()))
        throw Error("fibration_out_of_scope", "merged regions have different lineality");
    }
    if (merged.size() != 2)
      throw Error("fibration_out_of_scope", "expected exactly two merged regions over P^1");
    // Orient the covector positively on the first region.
    Vec pi = *covector;
    auto side = [&](const Group& g) {
      int sign = 0;
      for (int rr : g.rays) {
        Int v = dot(pi, fan.ray(rr));
        if (v == 0) continue;
        int sg = v > 0 ? 1 : -1;
        if (sign == 0) sign = sg;
        if (sign != sg)
          throw Error("fibration_out_of_scope", "merged region maps onto both rays of P^1");
      }
      if (sign == 0)
        throw Error("fibration_out_of_scope", "merged region collapses to the origin");
      return sign;
    };
    int s0 = side(merged[0]), s1 = side(merged[1]);
    if (s0 == s1)
      throw Error("fibration_out_of_scope", "merged regions land on the same ray of P^1");
    if (s0 < 0) std::swap(merged[0], merged[1]);
    res.type = ContractionType::Fibration;
    res.target = Fan(1, {Vec{Int(1)}, Vec{Int(-1)}}, {{0}, {1}});
    res.merged_cones = {merged[0].cones, merged[1].cones};
    return res;
  }

  // Birational case: every merged region is a strongly convex cone; rays
  // interior to a merged cone disappear.
  std::set<int> surviving;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> target_cones;  // rays, sources
  std::set<int> gone;
  for (const Group& g : merged) {
    std::vector<Vec> gens;
    for (int rr : g.rays) gens.push_back(fan.ray(rr));
    std::vector<int> extreme;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::vector<Vec> others;
      for (std::size_t l = 0; l < gens.size(); ++l)
        if (l != k) others.push_back(gens[l]);
      if (in_cone(others, gens[k]))
        gone.insert(g.rays[k]);
      else
        extreme.push_back(g.rays[k]);
    }
    for (int rr : extreme) surviving.insert(rr);
    target_cones.push_back({extreme, g.cones});
  }
  for (const Group& g : untouched) {
    for (int rr : g.rays) surviving.insert(rr);
    target_cones.push_back({g.rays, g.cones});
  }
  for (int rr : gone)
    if (surviving.count(rr))
      throw Error("contraction_out_of_scope",
                  "ray disappears in one merged cone but survives elsewhere");

  res.type = gone.empty() ? ContractionType::Small : ContractionType::Divisorial;
  res.disappeared_rays.assign(gone.begin(), gone.end());
  if (res.type == ContractionType::Small)
    for (const Group& g : merged)
      if (static_cast<int>(g.rays.size()) <= fan.dim())
        throw Error("internal_error", "small contraction produced a simplicial cone");

  std::vector<int> new_index(fan.ray_count(), -1);
  std::vector<Vec> new_rays;
  for (int rr = 0; rr < fan.ray_count(); ++rr)
    if (surviving.count(rr)) {
      new_index[rr] = static_cast<int>(new_rays.size());
      new_rays.push_back(fan.ray(rr));
    }
  std::vector<std::vector<int>> new_cones;
  for (auto& [rays_of_cone, sources] : target_cones) {
    std::vector<int> mapped;
    for (int rr : rays_of_cone) mapped.push_back(new_index[rr]);
    new_cones.push_back(std::move(mapped));
    res.merged_cones.push_back(sources);
  }
  res.target = Fan(fan.dim(), std::move(new_rays), std::move(new_cones));
  return res;
}

}  // namespace toric
