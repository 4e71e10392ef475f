#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "toric/constructions.hpp"
#include "toric/divisor.hpp"
#include "toric/mori.hpp"

using namespace toric;
using namespace toric::test;

TEST_CASE("canonical divisor") {
  CHECK(canonical_divisor(p2()).coeffs == RatVec(3, Rat(-1)));
  CHECK(canonical_divisor(f2()).coeffs == RatVec(4, Rat(-1)));
  CHECK(canonical_divisor(flop_target(3)).coeffs == RatVec(5, Rat(-1)));
}

TEST_CASE("cartier data on P(1,1,2)") {
  Fan w = p112();  // v1 = (1,0), v2 = (-1,-2), v3 = (0,1)

  // The weight-2 ray gives a Cartier divisor.
  auto v3 = cartier_data(w, TorusDivisor::prime(w, 2));
  REQUIRE(v3.has_value());
  CHECK(v3->cartier);
  CHECK(v3->cartier_index == 1);

  // A weight-1 ray is Q-Cartier of index 2: the functional on the
  // multiplicity-two cone <v1,v2> is half-integral.
  auto v1 = cartier_data(w, TorusDivisor::prime(w, 0));
  REQUIRE(v1.has_value());
  CHECK(!v1->cartier);
  CHECK(v1->cartier_index == 2);
  CHECK(v1->functionals[0] == RatVec{Rat(-1), Rat(1, 2)});  // cone {0,1}

  // K is Cartier on the flop target.
  auto k = cartier_data(flop_target(3), canonical_divisor(flop_target(3)));
  REQUIRE(k.has_value());
  CHECK(k->cartier);
}

TEST_CASE("cartier data satisfies its defining equations") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-7, 7);
  for (const Fan& fan : {p2(), f2(), p112()}) {
    for (int t = 0; t < 20; ++t) {
      RatVec coeffs(fan.ray_count());
      for (auto& c : coeffs) c = Rat(entry(rng), 1 + std::abs(entry(rng)));
      TorusDivisor d(coeffs);
      auto cd = cartier_data(fan, d);
      REQUIRE(cd.has_value());  // simplicial: everything is Q-Cartier
      for (std::size_t ci = 0; ci < fan.max_cones().size(); ++ci)
        for (int r : fan.max_cones()[ci].rays)
          CHECK(dot(cd->functionals[ci], fan.ray(r)) == -d.coeffs[r]);
    }
  }
}

TEST_CASE("class group presentations") {
  ClassGroup p(projective_space(3));
  CHECK(p.free_rank() == 1);
  CHECK(p.torsion_moduli().empty());
  Fan p3 = projective_space(3);
  auto g = ClassGroup(p3).class_of(TorusDivisor::prime(p3, 0));
  for (int i = 1; i < 4; ++i)
    CHECK(ClassGroup(p3).class_of(TorusDivisor::prime(p3, i)) == g);

  // P(1,1,2): classes proportional to the weights.
  Fan w = p112();
  ClassGroup cw(w);
  CHECK(cw.free_rank() == 1);
  CHECK(cw.torsion_moduli().empty());
  Vec c1 = cw.class_of(TorusDivisor::prime(w, 0)).free;
  Vec c2 = cw.class_of(TorusDivisor::prime(w, 1)).free;
  Vec c3 = cw.class_of(TorusDivisor::prime(w, 2)).free;
  CHECK(c1 == c2);
  CHECK(c3 == scale(Int(2), c1));
  // -K ~ 2 V(v3), the anticanonical relation behind the index.
  CHECK(cw.class_of(Rat(-1) * canonical_divisor(w)) ==
        cw.class_of(Rat(2) * TorusDivisor::prime(w, 2)));

  ClassGroup cf(f2());
  CHECK(cf.free_rank() == 2);
  CHECK(cf.torsion_moduli().empty());

  // Quotient of P^2 by Z/3: torsion Z/3 shows up.
  ClassGroup cq(fake_p2());
  CHECK(cq.free_rank() == 1);
  CHECK(cq.torsion_moduli() == std::vector<Int>{Int(3)});
}

TEST_CASE("picard ranks") {
  CHECK(rho(p2()) == 1);
  CHECK(rho(projective_space(4)) == 1);
  CHECK(rho(f2()) == 2);
  CHECK(rho(bundle_over_p1({Int(0), Int(1), Int(1)})) == 2);
  CHECK(rho(flop_target(3)) == 1);
  CHECK(rho(flop_target(4)) == 1);
  CHECK(rho(fake_p2()) == 1);
}

TEST_CASE("numerical equivalence") {
  Fan p = p2();
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int t = 0; t < 10; ++t) {
    Vec m{Int(entry(rng)), Int(entry(rng))};
    RatVec coeffs(3);
    for (auto& c : coeffs) c = entry(rng);
    TorusDivisor d(coeffs);
    CHECK(numerically_equivalent(p, d, d + principal_divisor(p, m)));
  }
  // -K and 3 V(v1) on P^2.
  CHECK(numerically_equivalent(p, Rat(-1) * canonical_divisor(p),
                               Rat(3) * TorusDivisor::prime(p, 0)));
  // V(v1) and V(v3) on P(1,1,2) have classes 1 and 2.
  Fan w = p112();
  CHECK(!numerically_equivalent(w, TorusDivisor::prime(w, 0), TorusDivisor::prime(w, 2)));
}

TEST_CASE("numerical equivalence sees through torsion") {
  // On the Z/3 quotient of P^2 the prime divisors differ by torsion only:
  // numerically equivalent, but not linearly equivalent.
  Fan q = fake_p2();
  ClassGroup cl(q);
  TorusDivisor a = TorusDivisor::prime(q, 0), b = TorusDivisor::prime(q, 1);
  CHECK(numerically_equivalent(q, a, b));
  CHECK(!(cl.class_of(a) == cl.class_of(b)));
  // Cartier numerically-trivial divisors are principal: 3(V0 - V1) has
  // trivial class outright.
  CHECK(cl.class_of(Rat(3) * (a - b)).is_trivial());
}

TEST_CASE("nef and ample") {
  Fan p = p2();
  CHECK(is_ample(p, Rat(-1) * canonical_divisor(p)));
  CHECK(!is_nef(p, canonical_divisor(p)));
  CHECK(is_nef(p, TorusDivisor::zero(p)));
  CHECK(!is_ample(p, TorusDivisor::zero(p)));

  // The fiber divisor on F_2 is nef but not ample; F_2 itself is not Fano
  // because -K is trivial on the -2-section.
  Fan f = f2();
  TorusDivisor fiber = TorusDivisor::prime(f, 0);
  CHECK(is_nef(f, fiber));
  CHECK(!is_ample(f, fiber));
  CHECK(is_nef(f, Rat(-1) * canonical_divisor(f)));
  CHECK(!is_ample(f, Rat(-1) * canonical_divisor(f)));

  CHECK(is_ample(p112(), Rat(-1) * canonical_divisor(p112())));
  Fan x = flop_target(3);
  CHECK(is_ample(x, Rat(-1) * canonical_divisor(x)));
  for (const Fan& fan : {p2(), f2(), p112()}) CHECK(has_ample_divisor(fan));
  CHECK(has_ample_divisor(flop_target(3)));
}

TEST_CASE("ample implies nef on random divisors") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (const Fan& fan : {p2(), f2(), p112()})
    for (int t = 0; t < 25; ++t) {
      RatVec coeffs(fan.ray_count());
      for (auto& c : coeffs) c = entry(rng);
      TorusDivisor d(coeffs);
      if (is_ample(fan, d)) CHECK(is_nef(fan, d));
    }
}

TEST_CASE("divisibility index") {
  for (int n = 1; n <= 4; ++n) {
    Fan pn = projective_space(n);
    DivisibilityResult d = divisibility_index(pn);
    REQUIRE(d.status == DivisibilityResult::Status::Ok);
    CHECK(d.n == n + 1);
    // The witness is numerically a hyperplane.
    CHECK(numerically_equivalent(pn, d.witness, TorusDivisor::prime(pn, 0)));
    auto cd = cartier_data(pn, d.witness);
    REQUIRE(cd.has_value());
    CHECK(cd->cartier);
  }
  for (int n = 2; n <= 4; ++n) {
    std::vector<Int> w(n + 1, Int(2));
    w[0] = 1;
    w[1] = 1;
    Fan fan = weighted_projective(w);
    DivisibilityResult d = divisibility_index(fan);
    REQUIRE(d.status == DivisibilityResult::Status::Ok);
    CHECK(d.n == n);
    CHECK(numerically_equivalent(fan, d.witness, TorusDivisor::prime(fan, n)));
  }
  DivisibilityResult f = divisibility_index(f2());
  REQUIRE(f.status == DivisibilityResult::Status::Ok);
  CHECK(f.n == 2);

  // P(1,1,3): -K has class 5, the Picard lattice is generated in degree 3.
  DivisibilityResult bad = divisibility_index(weighted_projective({Int(1), Int(1), Int(3)}));
  CHECK(bad.status == DivisibilityResult::Status::NotDivisible);
}

TEST_CASE("divisibility index is basis independent") {
  std::mt19937 rng(17);
  for (int t = 0; t < 8; ++t) {
    for (const Fan& fan : {p2(), f2(), p112()}) {
      IntMatrix m = random_unimodular(2, rng);
      DivisibilityResult a = divisibility_index(fan);
      DivisibilityResult b = divisibility_index(transform(fan, m));
      REQUIRE(a.status == b.status);
      if (a.status == DivisibilityResult::Status::Ok) CHECK(a.n == b.n);
    }
  }
}

TEST_CASE("log bound check") {
  Fan p = p2();
  // B = 0: the extreme case N = n+1.
  LogBoundReport r0 = log_bound_check(p, TorusDivisor::zero(p));
  REQUIRE(r0.n.has_value());
  CHECK(*r0.n == 3);
  CHECK(r0.bound_holds);

  // B = V(v1): -(K+B) has class 2.
  LogBoundReport r1 = log_bound_check(p, TorusDivisor::prime(p, 0));
  REQUIRE(r1.n.has_value());
  CHECK(*r1.n == 2);
  CHECK(r1.bound_holds);

  // d_1 = 1/2: class 5/2.
  TorusDivisor half(RatVec{Rat(1, 2), Rat(0), Rat(0)});
  LogBoundReport rh = log_bound_check(p, half);
  REQUIRE(rh.n.has_value());
  CHECK(*rh.n == Rat(5, 2));
  CHECK(rh.bound_holds);

  // B = sum of all rays makes K+B trivial, hence nef: hypothesis void.
  TorusDivisor all(RatVec(3, Rat(1)));
  LogBoundReport rn = log_bound_check(p, all);
  CHECK(rn.k_plus_b_q_cartier);
  CHECK(rn.k_plus_b_nef);
  CHECK(!rn.n.has_value());
  CHECK(rn.bound_holds);

  CHECK_THROWS_AS(log_bound_check(p, TorusDivisor(RatVec{Rat(2), Rat(0), Rat(0)})), Error);
  CHECK_THROWS_AS(log_bound_check(p, TorusDivisor(RatVec{Rat(-1, 2), Rat(0), Rat(0)})), Error);
}

TEST_CASE("principal divisors are invisible to every route") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (const Fan& fan : {p2(), f2(), p112(), fake_p2()}) {
    for (int t = 0; t < 10; ++t) {
      Vec m(fan.dim());
      for (auto& x : m) x = entry(rng);
      TorusDivisor d = principal_divisor(fan, m);
      CHECK(ClassGroup(fan).class_of(d).is_trivial());
      for (std::size_t wi = 0; wi < fan.walls().size(); ++wi)
        CHECK(intersection_number(fan, d, static_cast<int>(wi)) == 0);
      CHECK(numerically_equivalent(fan, d, TorusDivisor::zero(fan)));
    }
  }
}
