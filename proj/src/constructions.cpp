#include "toric/constructions.hpp"

#include <algorithm>

#include "toric/mori.hpp"

namespace toric {

namespace {

std::vector<std::vector<int>> all_subsets_omitting_one(int count) {
  // n-subsets of {0..n}: omit each index once.
  std::vector<std::vector<int>> cones;
  for (int skip = 0; skip < count; ++skip) {
    std::vector<int> c;
    for (int i = 0; i < count; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(std::move(c));
  }
  return cones;
}

}  // namespace

Fan projective_space(int n) {
  if (n < 1) throw Error("bad_dimension", "projective space needs n >= 1");
  std::vector<Vec> rays;
  for (int i = 0; i < n; ++i) {
    Vec e(n, Int(0));
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  rays.push_back(Vec(n, Int(-1)));
  return Fan(n, std::move(rays), all_subsets_omitting_one(n + 1));
}

Fan weighted_projective(std::vector<Int> weights) {
  const int n = static_cast<int>(weights.size()) - 1;
  if (n < 1) throw Error("weights_not_well_formed", "need at least two weights");
  for (const Int& a : weights)
    if (a < 1) throw Error("weights_not_well_formed", "weights must be positive");
  std::sort(weights.begin(), weights.end());
  for (int skip = 0; skip <= n; ++skip) {
    Int g = 0;
    for (int i = 0; i <= n; ++i)
      if (i != skip) g = gcd(g, weights[i]);
    if (g != 1)
      throw Error("weights_not_well_formed",
                  "gcd of every n of the weights must be 1");
  }

  // N = Z^{n+1} / Z*a realized via a unimodular W with W a = e_1; the rays
  // are the images of the standard basis, i.e. the columns of the last n
  // rows of W. Then sum a_i v_i = 0 automatically.
  IntMatrix a(n + 1, 1);
  for (int i = 0; i <= n; ++i) a.at(i, 0) = weights[i];
  SmithResult snf = smith_normal_form(a);
  if (snf.s.at(0, 0) != 1)
    throw Error("weights_not_well_formed", "weights have a common factor");
  std::vector<Vec> rays;
  for (int i = 0; i <= n; ++i) {
    Vec v(n);
    for (int j = 1; j <= n; ++j) v[j - 1] = snf.u.at(j, i);
    rays.push_back(std::move(v));
  }
  return Fan(n, std::move(rays), all_subsets_omitting_one(n + 1));
}

Fan bundle_over_p1(std::vector<Int> twists) {
  const int n = static_cast<int>(twists.size());
  if (n < 2) throw Error("bad_dimension", "bundle base needs fiber dimension >= 1");
  std::sort(twists.begin(), twists.end());

  std::vector<Vec> rays;
  for (int i = 0; i < n - 1; ++i) {  // u_1..u_{n-1}
    Vec e(n, Int(0));
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  Vec un(n, Int(-1));  // u_n = -sum of the others
  un[n - 1] = 0;
  rays.push_back(std::move(un));
  Vec wplus(n, Int(0));
  wplus[n - 1] = 1;
  rays.push_back(std::move(wplus));
  Vec wminus(n, Int(0));
  wminus[n - 1] = -1;
  for (int i = 0; i < n - 1; ++i) wminus[i] = twists[i] - twists[n - 1];
  rays.push_back(std::move(wminus));

  // Maximal cones: all fiber rays but one, together with w+ or w-.
  std::vector<std::vector<int>> cones;
  for (int skip = 0; skip < n; ++skip)
    for (int base = n; base <= n + 1; ++base) {
      std::vector<int> c;
      for (int i = 0; i < n; ++i)
        if (i != skip) c.push_back(i);
      c.push_back(base);
      cones.push_back(std::move(c));
    }
  return Fan(n, std::move(rays), std::move(cones));
}

Fan flop_target(int n) {
  if (n < 3)
    throw Error("bad_dimension",
                "no non-Q-factorial examples below dimension 3: surfaces are Q-factorial");
  std::vector<Int> q(n, Int(0));
  q[n - 1] = 1;
  q[n - 2] = 1;
  Fan y = bundle_over_p1(std::move(q));

  // The flopping ray is the K-trivial one; the fiber ray has length n.
  const std::vector<CurveClass> rays = mori_cone(y);
  const CurveClass* flopping = nullptr;
  for (const CurveClass& r : rays)
    if (extremal_length(y, r) == 0) {
      if (flopping) throw Error("internal_error", "two K-trivial extremal rays on Y");
      flopping = &r;
    }
  if (!flopping) throw Error("internal_error", "no K-trivial extremal ray on Y");

  ContractionResult c = contract_ray(y, *flopping);
  if (c.type != ContractionType::Small || !c.crepant || !c.target)
    throw Error("internal_error", "flopping contraction did not come out small and crepant");
  return *c.target;
}

}  // namespace toric
