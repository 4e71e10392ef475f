#include "toric/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "toric/classifier.hpp"
#include "toric/constructions.hpp"
#include "toric/divisor.hpp"
#include "toric/io.hpp"
#include "toric/mori.hpp"

namespace toric {

namespace {

std::string weights_str(const std::vector<Int>& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

struct Checker {
  CheckResult result;
  explicit Checker(int id, std::string name, std::string statement) {
    result.id = id;
    result.name = std::move(name);
    result.statement = std::move(statement);
    result.pass = true;
  }
  void fail(const std::string& why, const Fan* fan = nullptr) {
    result.pass = false;
    if (!result.details.empty()) result.details += "; ";
    result.details += why;
    if (fan && result.reproducer.is_null()) result.reproducer = fan_to_json(*fan);
  }
  void require(bool ok, const std::string& why, const Fan* fan = nullptr) {
    if (!ok) fail(why, fan);
  }
  void note(const std::string& text) {
    if (result.pass && result.details.empty()) result.details = text;
  }
  CheckResult take() { return std::move(result); }
};

std::vector<Int> ones_twos(int n) {  // (1,1,2,...,2) with n+1 entries
  std::vector<Int> w(n + 1, Int(2));
  w[0] = 1;
  w[1] = 1;
  return w;
}

Fan literal_f2() {
  return Fan(2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(2)}, {Int(0), Int(-1)}},
             {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, std::string("F2"));
}

Fan literal_p112() {
  return Fan(2, {{Int(1), Int(0)}, {Int(-1), Int(-2)}, {Int(0), Int(1)}},
             {{0, 1}, {0, 2}, {1, 2}}, std::string("P(1,1,2)"));
}

std::vector<std::vector<Int>> well_formed_weights(int n, int bound) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> w(n + 1, Int(1));
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n + 1) {
      for (int skip = 0; skip <= n; ++skip) {
        Int g = 0;
        for (int i = 0; i <= n; ++i)
          if (i != skip) g = gcd(g, w[i]);
        if (g != 1) return;
      }
      out.push_back(w);
      return;
    }
    for (Int a = pos == 0 ? Int(1) : w[pos - 1]; a <= bound; ++a) {
      w[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

// Sorted twist tuples with entries in [-3,3].
std::vector<std::vector<Int>> sorted_twists(int n) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> q(n);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      out.push_back(q);
      return;
    }
    for (Int a = pos == 0 ? Int(-3) : q[pos - 1]; a <= 3; ++a) {
      q[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

const CurveClass* k_trivial_ray(const Fan& fan, const std::vector<CurveClass>& rays) {
  const CurveClass* found = nullptr;
  for (const CurveClass& r : rays)
    if (extremal_length(fan, r) == 0) {
      if (found) return nullptr;
      found = &r;
    }
  return found;
}

// -- criteria ------------------------------------------------------------------

CheckResult check_divisibility_extremes(const VerifyOptions& opt) {
  Checker c(1, "divisibility-extremes",
            "the divisibility index of -K is n+1 exactly on projective space and "
            "never exceeds n+1");
  int checked = 0;
  for (int n = 1; n <= std::min(5, opt.max_n); ++n) {
    Fan pn = projective_space(n);
    DivisibilityResult d = divisibility_index(pn);
    c.require(d.status == DivisibilityResult::Status::Ok && d.n == n + 1,
              "P^" + std::to_string(n) + " index != n+1", &pn);
  }

  std::vector<Fan> fixtures;
  for (int n = 1; n <= std::min(5, opt.max_n); ++n) fixtures.push_back(projective_space(n));
  for (int n = 2; n <= std::min(5, opt.max_n); ++n) fixtures.push_back(weighted_projective(ones_twos(n)));
  fixtures.push_back(literal_f2());
  fixtures.push_back(literal_p112());
  fixtures.push_back(bundle_over_p1({Int(0), Int(1)}));
  fixtures.push_back(bundle_over_p1({Int(0), Int(0)}));
  if (opt.max_n >= 3) {
    fixtures.push_back(bundle_over_p1({Int(0), Int(0), Int(2)}));
    fixtures.push_back(bundle_over_p1({Int(0), Int(1), Int(1)}));
    fixtures.push_back(flop_target(3));
  }
  if (opt.max_n >= 4) {
    fixtures.push_back(bundle_over_p1({Int(0), Int(0), Int(1), Int(1)}));
    fixtures.push_back(flop_target(4));
  }
  for (const auto& w : well_formed_weights(2, opt.weight_bound))
    fixtures.push_back(weighted_projective(w));
  if (opt.max_n >= 3)
    for (const auto& w : well_formed_weights(3, 4))
      fixtures.push_back(weighted_projective(w));

  for (const Fan& fan : fixtures) {
    TorusDivisor k = canonical_divisor(fan);
    if (!cartier_data(fan, k)) continue;
    if (is_nef(fan, k)) continue;
    ++checked;
    DivisibilityResult d = divisibility_index(fan);
    if (d.status == DivisibilityResult::Status::Ok)
      c.require(d.n <= fan.dim() + 1, "integer index exceeds n+1", &fan);
    auto nq = rational_divisibility(fan, Rat(-1) * k);
    c.require(nq.has_value(), "-K has no rational multiple in Pic", &fan);
    if (nq) c.require(*nq <= Rat(fan.dim() + 1), "rational index exceeds n+1", &fan);
  }
  c.note(std::to_string(checked) + " fans with K Q-Cartier and not nef, zero violations");
  return c.take();
}

CheckResult check_wps_family(const VerifyOptions& opt) {
  Checker c(2, "wps-family",
            "on P(1,1,2,...,2): V(v_i) is Cartier for i >= 3, -K ~ n V(v_i), rho = 1, "
            "the fan is singular, and classification returns WPS_1_1_2");
  for (int n = 2; n <= std::min(5, opt.max_n); ++n) {
    Fan fan = weighted_projective(ones_twos(n));
    ClassGroup cl(fan);
    TorusDivisor minus_k = Rat(-1) * canonical_divisor(fan);
    for (int i = 2; i <= n; ++i) {  // rays of weight 2
      TorusDivisor vi = TorusDivisor::prime(fan, i);
      auto cd = cartier_data(fan, vi);
      c.require(cd && cd->cartier, "V(v_i) not Cartier at n=" + std::to_string(n), &fan);
      c.require(cl.class_of(minus_k) == cl.class_of(Rat(n) * vi),
                "-K and n*V(v_i) differ in the class group", &fan);
    }
    c.require(rho(fan) == 1, "rho != 1", &fan);
    c.require(!fan.is_smooth(), "fan unexpectedly smooth", &fan);
    ClassificationReport rep = classify(fan);
    c.require(rep.matched == ClassificationCase::Wps112 && rep.index_n && *rep.index_n == n,
              "classification is not WPS_1_1_2 with N = n", &fan);
  }
  return c.take();
}

CheckResult check_p1_bundle_family(const VerifyOptions& opt) {
  Checker c(3, "p1-bundle-family",
            "twist classes with a representative summing to 2 give index exactly n and "
            "classify as P^1-bundles; all other twist classes have index != n");
  int with = 0, without = 0;
  for (int n = 2; n <= std::min(4, opt.max_n); ++n) {
    for (const auto& q : sorted_twists(n)) {
      Fan fan = bundle_over_p1(q);
      Int total = std::accumulate(q.begin(), q.end(), Int(0));
      bool representable = ((total - 2) % n) == 0;
      DivisibilityResult d = divisibility_index(fan);
      c.require(d.status == DivisibilityResult::Status::Ok,
                "bundle -K not divisible at all", &fan);
      if (representable) {
        ++with;
        c.require(d.n == n, "index != n for twist " + weights_str(q), &fan);
        ClassificationReport rep = classify(fan);
        std::vector<Int> normalized = q;
        for (Int& x : normalized) x -= q.front();
        c.require(rep.matched == ClassificationCase::P1Bundle,
                  "not classified as a P^1-bundle for twist " + weights_str(q), &fan);
        c.require(rep.bundle_twists && *rep.bundle_twists == normalized,
                  "normalized twists wrong for " + weights_str(q), &fan);
      } else {
        ++without;
        c.require(d.n != n, "index n without a twist representative summing to 2", &fan);
      }
    }
  }
  c.note(std::to_string(with) + " representable and " + std::to_string(without) +
         " non-representable twist classes checked");
  return c.take();
}

CheckResult check_flop_target(const VerifyOptions& opt) {
  Checker c(4, "flop-target",
            "contracting the K-trivial ray of P(O+...+O+O(1)+O(1)) is small and crepant; "
            "the target is complete, non-simplicial, Gorenstein, rho = 1, index n");
  for (int n = 3; n <= std::min(4, opt.max_n); ++n) {
    std::vector<Int> q(n, Int(0));
    q[n - 1] = 1;
    q[n - 2] = 1;
    Fan y = bundle_over_p1(q);
    auto rays = mori_cone(y);
    c.require(rays.size() == 2, "NE(Y) does not have two rays", &y);
    const CurveClass* flopping = k_trivial_ray(y, rays);
    if (!flopping) {
      c.fail("no unique K-trivial extremal ray", &y);
      continue;
    }
    ContractionResult con = contract_ray(y, *flopping);
    c.require(con.type == ContractionType::Small, "contraction is not small", &y);
    c.require(con.crepant, "contraction is not crepant", &y);
    if (!con.target) continue;
    const Fan& x = *con.target;
    c.require(x.is_complete(), "target not complete", &x);
    c.require(!x.is_simplicial(), "target unexpectedly simplicial", &x);
    auto kcd = cartier_data(x, canonical_divisor(x));
    c.require(kcd && kcd->cartier, "target not Gorenstein", &x);
    c.require(rho(x) == 1, "target rho != 1", &x);
    DivisibilityResult d = divisibility_index(x);
    c.require(d.status == DivisibilityResult::Status::Ok && d.n == n,
              "target index != n", &x);
    ClassificationReport rep = classify(x);
    c.require(rep.matched == ClassificationCase::FlopTarget,
              "target not classified as FlopTarget", &x);
    Fan fixture = flop_target(n);
    c.require(fixture == x, "operational construction differs from flop_target()", &x);
  }
  return c.take();
}

CheckResult check_crepant_resolution(const VerifyOptions& opt) {
  Checker c(5, "crepant-resolution",
            "contracting the K-trivial ray of P(O+...+O+O(2)) is divisorial and crepant "
            "with target P(1,1,2,...,2)");
  for (int n = 2; n <= std::min(4, opt.max_n); ++n) {
    std::vector<Int> q(n, Int(0));
    q[n - 1] = 2;
    Fan y = bundle_over_p1(q);
    auto rays = mori_cone(y);
    c.require(rays.size() == 2, "NE does not have two rays", &y);
    const CurveClass* section = k_trivial_ray(y, rays);
    if (!section) {
      c.fail("no unique K-trivial ray", &y);
      continue;
    }
    ContractionResult con = contract_ray(y, *section);
    c.require(con.type == ContractionType::Divisorial, "contraction not divisorial", &y);
    c.require(con.crepant, "contraction not crepant", &y);
    if (!con.target) continue;
    auto wts = recognize_wps_1_1_2(*con.target);
    c.require(wts && *wts == ones_twos(n),
              "target not recognized as P(1,1,2,...,2)", &*con.target);
  }
  return c.take();
}

CheckResult check_long_ray_exhaustion(const VerifyOptions& opt) {
  Checker c(6, "long-ray-exhaustion",
            "the only weight vectors whose fans have every wall degree >= n are "
            "(1,...,1) and (1,1,2,...,2), independent of the search bound");
  auto expect = [&](int n) {
    std::vector<std::vector<Int>> e;
    std::vector<Int> ones(n + 1, Int(1));
    e.push_back(ones);
    e.push_back(ones_twos(n));
    std::sort(e.begin(), e.end());
    if (opt.inject_corruption) e.push_back({Int(1), Int(2), Int(3)});
    return e;
  };
  auto run = [&](int n, int bound) {
    auto got = enumerate_long_ray_weights(n, bound);
    std::sort(got.begin(), got.end());
    return got;
  };
  Fan p112 = literal_p112();
  c.require(run(2, opt.weight_bound) == expect(2),
            "surface enumeration has the wrong survivors at bound " +
                std::to_string(opt.weight_bound), &p112);
  c.require(run(2, opt.weight_bound + 1) == expect(2),
            "surface enumeration unstable when the bound grows", &p112);
  if (opt.max_n >= 3) {
    Fan p1122 = weighted_projective(ones_twos(3));
    c.require(run(3, 4) == expect(3), "threefold enumeration has the wrong survivors", &p1122);
    c.require(run(3, 5) == expect(3), "threefold enumeration unstable", &p1122);
  }
  return c.take();
}

CheckResult check_wall_degree_oracle(const VerifyOptions& opt) {
  Checker c(7, "wall-degree-oracle",
            "the closed weight formula for -K . V(mu) agrees exactly with the "
            "Cartier-data intersection numbers on every weighted projective fan");
  int fans = 0, walls = 0;
  for (int n = 2; n <= std::min(3, opt.max_n); ++n)
    for (const auto& w : well_formed_weights(n, 6)) {
      Fan fan = weighted_projective(w);
      TorusDivisor minus_k = Rat(-1) * canonical_divisor(fan);
      ++fans;
      for (int wi = 0; wi < static_cast<int>(fan.walls().size()); ++wi) {
        ++walls;
        Rat lhs = wps_wall_degree(w, fan, wi);
        Rat rhs = intersection_number(fan, minus_k, wi);
        if (lhs != rhs) {
          c.fail("formula " + to_string(lhs) + " != intersection " + to_string(rhs) +
                     " for weights " + weights_str(w), &fan);
          return c.take();
        }
      }
    }
  c.note(std::to_string(walls) + " walls over " + std::to_string(fans) + " fans agree exactly");
  return c.take();
}

CheckResult check_numerical_vs_linear(const VerifyOptions& opt) {
  Checker c(8, "numerical-vs-linear",
            "principal divisors are numerically trivial and intersection-kernel "
            "membership coincides with rational class triviality");
  std::vector<Fan> fixtures{projective_space(2), literal_f2(), literal_p112()};
  if (opt.max_n >= 3) {
    fixtures.push_back(projective_space(3));
    fixtures.push_back(bundle_over_p1({Int(0), Int(1), Int(1)}));
    fixtures.push_back(flop_target(3));
  }
  std::mt19937 rng(20250809);
  std::uniform_int_distribution<int> coord(-9, 9);

  int principal_trials = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const Fan& fan = fixtures[t % fixtures.size()];
    Vec m(fan.dim());
    for (int i = 0; i < fan.dim(); ++i) m[i] = coord(rng);
    TorusDivisor d = principal_divisor(fan, m);
    ++principal_trials;
    try {
      if (!numerically_equivalent(fan, d, TorusDivisor::zero(fan))) {
        c.fail("principal divisor not numerically trivial", &fan);
        break;
      }
    } catch (const Error& e) {
      c.fail(std::string("route disagreement: ") + e.what(), &fan);
      break;
    }
  }

  int trivial = 0, nontrivial = 0;
  std::uniform_int_distribution<int> small(-5, 5);
  for (int t = 0; t < opt.trials && c.result.pass; ++t) {
    const Fan& fan = fixtures[t % fixtures.size()];
    TorusDivisor d = TorusDivisor::zero(fan);
    if (fan.is_simplicial()) {
      RatVec coeffs(fan.ray_count());
      for (int i = 0; i < fan.ray_count(); ++i) coeffs[i] = coord(rng);
      d = TorusDivisor(std::move(coeffs));
    } else {
      // Non-simplicial: random Cartier class plus a principal divisor.
      PicardLattice pic(fan);
      for (const TorusDivisor& b : pic.basis()) d = d + Rat(small(rng)) * b;
      Vec m(fan.dim());
      for (int i = 0; i < fan.dim(); ++i) m[i] = coord(rng);
      d = d + principal_divisor(fan, m);
    }
    try {
      numerically_equivalent(fan, d, TorusDivisor::zero(fan)) ? ++trivial : ++nontrivial;
    } catch (const Error& e) {
      c.fail(std::string("route disagreement: ") + e.what(), &fan);
    }
  }
  c.note(std::to_string(principal_trials) + " principal divisors trivial; " +
         std::to_string(trivial) + " trivial and " + std::to_string(nontrivial) +
         " non-trivial random Q-Cartier divisors with agreeing routes");
  return c.take();
}

CheckResult check_normal_bundle(const VerifyOptions& opt) {
  Checker c(9, "normal-bundle-ampleness",
            "every invariant divisor has ample normal bundle only on projective space; "
            "no smooth complete surface fan triggers a recognition failure");
  for (int n = 2; n <= std::min(4, opt.max_n); ++n) {
    Fan pn = projective_space(n);
    c.require(mabuchi_classify(pn), "P^n fails the normal-bundle test", &pn);
  }
  std::vector<Fan> negatives{bundle_over_p1({Int(0), Int(1)}), literal_f2(),
                             bundle_over_p1({Int(0), Int(0)})};
  if (opt.max_n >= 3) negatives.push_back(bundle_over_p1({Int(0), Int(0), Int(2)}));
  for (const Fan& fan : negatives)
    c.require(!mabuchi_classify(fan), "expected a ray with non-ample normal bundle", &fan);

  int count = 0, positives = 0;
  for (const Fan& fan : enumerate_smooth_surfaces(8, 6)) {
    ++count;
    try {
      if (mabuchi_classify(fan)) ++positives;
    } catch (const ClassificationViolation& e) {
      c.fail(std::string("hard error: ") + e.what(), &fan);
      break;
    }
  }
  c.require(positives == 1, "exactly one enumerated surface (P^2) should pass");
  c.note(std::to_string(count) + " smooth complete surface fans enumerated, one positive");
  return c.take();
}

CheckResult check_log_bound(const VerifyOptions& opt) {
  Checker c(10, "log-boundary-bound",
            "whenever -(K+B) is a positive rational multiple N of a Cartier class and "
            "K+B is not nef, N <= n+1");
  std::vector<Fan> fixtures{projective_space(2), literal_f2(), literal_p112()};
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> den_dist(1, 4);
  int applicable = 0, vacuous = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const Fan& fan = fixtures[t % fixtures.size()];
    RatVec coeffs(fan.ray_count());
    for (int i = 0; i < fan.ray_count(); ++i) {
      int den = den_dist(rng);
      std::uniform_int_distribution<int> num_dist(0, den);
      coeffs[i] = Rat(num_dist(rng), den);
    }
    LogBoundReport rep = log_bound_check(fan, TorusDivisor(std::move(coeffs)));
    if (!rep.bound_holds) {
      c.fail("bound violated: N = " + (rep.n ? to_string(*rep.n) : std::string("?")), &fan);
      break;
    }
    if (rep.n)
      ++applicable;
    else
      ++vacuous;
  }
  c.note(std::to_string(applicable) + " applicable and " + std::to_string(vacuous) +
         " vacuous boundary draws, zero violations");
  return c.take();
}

}  // namespace

std::vector<Fan> enumerate_smooth_surfaces(int max_rays, int max_hirzebruch) {
  // A smooth complete surface fan is a cyclic sequence of primitive rays with
  // unimodular adjacent pairs; v_{i-1} + v_{i+1} = k_i v_i determines it up
  // to lattice isomorphism, so the k-sequence (minimized over rotations and
  // reflections) is a dedup key. Blowups insert v_i + v_{i+1}.
  using Rays = std::vector<Vec>;
  auto key_of = [](const Rays& rays) {
    const int r = static_cast<int>(rays.size());
    std::vector<long long> k(r);
    for (int i = 0; i < r; ++i) {
      const Vec& prev = rays[(i + r - 1) % r];
      const Vec& next = rays[(i + 1) % r];
      Vec sum = add(prev, next);
      // sum = k * rays[i] componentwise
      long long val = 0;
      for (int j = 0; j < 2; ++j)
        if (rays[i][j] != 0) {
          val = ((sum[j]) / rays[i][j]).convert_to<long long>();
          break;
        }
      k[i] = val;
    }
    std::vector<long long> best;
    for (int rev = 0; rev < 2; ++rev) {
      std::vector<long long> cur = k;
      if (rev) std::reverse(cur.begin(), cur.end());
      for (int s = 0; s < r; ++s) {
        std::vector<long long> rot(cur.begin() + s, cur.end());
        rot.insert(rot.end(), cur.begin(), cur.begin() + s);
        if (best.empty() || rot < best) best = rot;
      }
    }
    return best;
  };

  std::vector<Rays> frontier;
  frontier.push_back({{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}});
  for (int a = 0; a <= max_hirzebruch; ++a)
    frontier.push_back(
        {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(a)}, {Int(0), Int(-1)}});

  std::set<std::vector<long long>> seen;
  std::vector<Fan> fans;
  while (!frontier.empty()) {
    Rays rays = std::move(frontier.back());
    frontier.pop_back();
    if (!seen.insert(key_of(rays)).second) continue;
    const int r = static_cast<int>(rays.size());
    std::vector<std::vector<int>> cones;
    for (int i = 0; i < r; ++i) cones.push_back({i, (i + 1) % r});
    fans.push_back(Fan(2, rays, cones));
    if (r >= max_rays) continue;
    for (int i = 0; i < r; ++i) {
      Rays blown = rays;
      blown.insert(blown.begin() + i + 1, add(rays[i], rays[(i + 1) % r]));
      frontier.push_back(std::move(blown));
    }
  }
  return fans;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(check_divisibility_extremes(options));
  out.push_back(check_wps_family(options));
  out.push_back(check_p1_bundle_family(options));
  out.push_back(check_flop_target(options));
  out.push_back(check_crepant_resolution(options));
  out.push_back(check_long_ray_exhaustion(options));
  out.push_back(check_wall_degree_oracle(options));
  out.push_back(check_numerical_vs_linear(options));
  out.push_back(check_normal_bundle(options));
  out.push_back(check_log_bound(options));
  return out;
}

}  // namespace toric
