#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "toric/classifier.hpp"
#include "toric/constructions.hpp"
#include "toric/mori.hpp"
#include "toric/verify.hpp"

using namespace toric;
using namespace toric::test;

TEST_CASE("projective space recognition") {
  for (int n = 1; n <= 5; ++n) CHECK(recognize_projective_space(projective_space(n)));
  CHECK(!recognize_projective_space(f2()));
  CHECK(!recognize_projective_space(p112()));
  CHECK(!recognize_projective_space(fake_p2()));  // n-subsets have index 3

  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t)
    CHECK(recognize_projective_space(transform(p2(), random_unimodular(2, rng))));
}

TEST_CASE("wps recognition") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<Int> w(n + 1, Int(2));
    w[0] = 1;
    w[1] = 1;
    auto got = recognize_wps_1_1_2(weighted_projective(w));
    REQUIRE(got.has_value());
    CHECK(*got == w);
  }
  CHECK(!recognize_wps_1_1_2(projective_space(3)).has_value());
  CHECK(!recognize_wps_1_1_2(weighted_projective({Int(1), Int(1), Int(3)})).has_value());
  CHECK(!recognize_wps_1_1_2(f2()).has_value());

  std::mt19937 rng(15);
  for (int t = 0; t < 10; ++t) {
    Fan moved = transform(p112(), random_unimodular(2, rng));
    auto got = recognize_wps_1_1_2(moved);
    REQUIRE(got.has_value());
    CHECK(*got == std::vector<Int>{Int(1), Int(1), Int(2)});
  }
}

TEST_CASE("bundle recognition") {
  auto q02 = recognize_p1_bundle(bundle_over_p1({Int(0), Int(2)}));
  REQUIRE(q02.has_value());
  CHECK(*q02 == std::vector<Int>{Int(0), Int(2)});

  auto q11 = recognize_p1_bundle(bundle_over_p1({Int(1), Int(1)}));
  REQUIRE(q11.has_value());
  CHECK(*q11 == std::vector<Int>{Int(0), Int(0)});

  CHECK(!recognize_p1_bundle(projective_space(2)).has_value());
  CHECK(!recognize_p1_bundle(p112()).has_value());

  // The literal F_2 fan is the (0,2) bundle in other coordinates.
  auto qf2 = recognize_p1_bundle(f2());
  REQUIRE(qf2.has_value());
  CHECK(*qf2 == std::vector<Int>{Int(0), Int(2)});

  std::mt19937 rng(21);
  for (int t = 0; t < 6; ++t) {
    Fan moved = transform(bundle_over_p1({Int(0), Int(0), Int(2)}), random_unimodular(3, rng));
    auto got = recognize_p1_bundle(moved);
    REQUIRE(got.has_value());
    CHECK(*got == std::vector<Int>{Int(0), Int(0), Int(2)});
  }
}

TEST_CASE("the star of a base ray of a bundle is projective space") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<Int> q(n, Int(0));
    q[n - 1] = 2;
    Fan b = bundle_over_p1(q);
    StarFan star = b.star_fan(n);  // w+
    CHECK(recognize_projective_space(*star.fan));
  }
}

TEST_CASE("weight enumeration") {
  auto sorted = [](std::vector<std::vector<Int>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::vector<Int>> expected2{{Int(1), Int(1), Int(1)}, {Int(1), Int(1), Int(2)}};
  CHECK(sorted(enumerate_long_ray_weights(2, 2)) == sorted(expected2));
  CHECK(sorted(enumerate_long_ray_weights(2, 3)) == sorted(expected2));
  CHECK_THROWS_AS(enumerate_long_ray_weights(2, 1), Error);
  CHECK_THROWS_AS(enumerate_long_ray_weights(1, 3), Error);
}

TEST_CASE("normal bundle ampleness") {
  Fan p3 = projective_space(3);
  for (int i = 0; i < p3.ray_count(); ++i) CHECK(normal_bundle_ample(p3, i));

  // Ruling fibers of P^1 x P^1 have degree-zero normal bundle.
  Fan q = bundle_over_p1({Int(0), Int(0)});
  CHECK(!normal_bundle_ample(q, 0));

  // F_2: the -2-section fails, the +2-section passes, fibers fail.
  Fan f = f2();
  CHECK(!normal_bundle_ample(f, 1));
  CHECK(normal_bundle_ample(f, 3));
  CHECK(!normal_bundle_ample(f, 0));
  CHECK(!normal_bundle_ample(f, 2));

  CHECK_THROWS_AS(normal_bundle_ample(p112(), 0), Error);  // singular input
}

TEST_CASE("normal bundle characterization of projective space") {
  for (int n = 2; n <= 4; ++n) CHECK(mabuchi_classify(projective_space(n)));
  CHECK(!mabuchi_classify(bundle_over_p1({Int(0), Int(1)})));  // F_1
  CHECK(!mabuchi_classify(f2()));
  CHECK(!mabuchi_classify(bundle_over_p1({Int(0), Int(0)})));
  CHECK(!mabuchi_classify(bundle_over_p1({Int(0), Int(0), Int(2)})));
}

TEST_CASE("classification of the fixture families") {
  ClassificationReport p3 = classify(projective_space(3));
  CHECK(p3.matched == ClassificationCase::ProjectiveSpace);
  CHECK(*p3.index_n == 4);

  ClassificationReport w = classify(weighted_projective({Int(1), Int(1), Int(2), Int(2)}));
  CHECK(w.matched == ClassificationCase::Wps112);
  CHECK(*w.index_n == 3);
  CHECK(*w.picard_rank == 1);
  CHECK(*w.wps_weights == std::vector<Int>{Int(1), Int(1), Int(2), Int(2)});

  ClassificationReport b = classify(f2());
  CHECK(b.matched == ClassificationCase::P1Bundle);
  CHECK(*b.index_n == 2);
  CHECK(*b.bundle_twists == std::vector<Int>{Int(0), Int(2)});

  ClassificationReport x = classify(flop_target(3));
  CHECK(x.matched == ClassificationCase::FlopTarget);
  CHECK(*x.index_n == 3);
  CHECK(x.k_cartier);

  // F_1 has index 1: legitimately unclassified.
  ClassificationReport f1 = classify(bundle_over_p1({Int(0), Int(1)}));
  CHECK(f1.matched == ClassificationCase::Unclassified);
  CHECK(*f1.index_n == 1);

  // P^2 x P^1 has index 1 at n = 3.
  ClassificationReport ppp = classify(bundle_over_p1({Int(0), Int(0), Int(0)}));
  CHECK(ppp.matched == ClassificationCase::Unclassified);

  // P(1,1,3): -K is not an integer multiple of a Cartier class.
  ClassificationReport w113 = classify(weighted_projective({Int(1), Int(1), Int(3)}));
  CHECK(w113.matched == ClassificationCase::Unclassified);
  CHECK(!w113.index_n.has_value());
  bool flagged = false;
  for (const auto& fl : w113.flags) flagged = flagged || fl == "minus_k_not_divisible";
  CHECK(flagged);

  // The Z/3 quotient of P^2 is Gorenstein with N = 1: the Picard lattice is
  // generated in degree three, so nothing divides -K.
  ClassificationReport fp = classify(fake_p2());
  CHECK(fp.matched == ClassificationCase::Unclassified);
  CHECK(*fp.index_n == 1);
}

TEST_CASE("classification degrades to a status report without Q-Cartier K") {
  // Bipyramid over a non-coplanar quadrilateral: the top cone admits no
  // linear functional taking value -1 on all four of its rays.
  Fan f(3,
        {{Int(1), Int(0), Int(1)},
         {Int(0), Int(1), Int(1)},
         {Int(-1), Int(0), Int(1)},
         {Int(0), Int(-1), Int(2)},
         {Int(0), Int(0), Int(-1)}},
        {{0, 1, 2, 3}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
  CHECK(f.is_complete());
  CHECK(!cartier_data(f, canonical_divisor(f)).has_value());
  ClassificationReport rep = classify(f);
  CHECK(rep.status == "k_not_q_cartier");
  CHECK(rep.matched == ClassificationCase::Unclassified);
  CHECK(!rep.index_n.has_value());

  ClassificationReport p1 = classify(projective_space(1));
  CHECK(p1.matched == ClassificationCase::ProjectiveSpace);
  CHECK(*p1.index_n == 2);
}

TEST_CASE("classification is invariant under lattice isomorphisms") {
  std::mt19937 rng(37);
  for (int t = 0; t < 6; ++t) {
    for (const Fan& fan : {p2(), f2(), p112()}) {
      IntMatrix m = random_unimodular(2, rng);
      ClassificationReport a = classify(fan);
      ClassificationReport b = classify(transform(fan, m));
      CHECK(a.matched == b.matched);
      CHECK(a.index_n == b.index_n);
      CHECK(a.wps_weights == b.wps_weights);
      CHECK(a.bundle_twists == b.bundle_twists);
    }
  }
}

TEST_CASE("resubdividing the flop target recovers the bundle invariants") {
  Fan x = flop_target(3);
  int big = -1;
  for (std::size_t i = 0; i < x.max_cones().size(); ++i)
    if (static_cast<int>(x.max_cones()[i].rays.size()) > x.dim()) big = static_cast<int>(i);
  REQUIRE(big >= 0);
  const std::vector<int>& quad = x.max_cones()[big].rays;
  REQUIRE(quad.size() == 4);

  // Split the square cone along one of its two diagonals; one choice glues
  // back into a fan isomorphic in invariants to the bundle we contracted.
  int recovered = 0;
  for (int diag = 0; diag < 2; ++diag) {
    std::vector<std::vector<int>> cones;
    for (std::size_t i = 0; i < x.max_cones().size(); ++i)
      if (static_cast<int>(i) != big) cones.push_back(x.max_cones()[i].rays);
    // Diagonal pairs of the quadrilateral cone: {0,1|2,3} or {0,2|1,3} etc.
    // Try omitting each pair of opposite vertices.
    std::vector<int> a, b;
    if (diag == 0) {
      a = {quad[0], quad[1], quad[2]};
      b = {quad[0], quad[1], quad[3]};
    } else {
      a = {quad[0], quad[2], quad[3]};
      b = {quad[1], quad[2], quad[3]};
    }
    cones.push_back(a);
    cones.push_back(b);
    try {
      Fan refined(x.dim(), x.rays(), cones);
      if (!refined.is_complete()) continue;
      ClassificationReport rep = classify(refined);
      if (rep.matched == ClassificationCase::P1Bundle &&
          *rep.bundle_twists == std::vector<Int>{Int(0), Int(1), Int(1)})
        ++recovered;
    } catch (const Error&) {
      continue;  // the other diagonal does not split into convex pieces
    }
  }
  CHECK(recovered >= 1);
}

TEST_CASE("classify end to end on the contracted bundle") {
  for (int n = 3; n <= 4; ++n) {
    std::vector<Int> q(n, Int(0));
    q[n - 1] = 1;
    q[n - 2] = 1;
    Fan y = bundle_over_p1(q);
    auto rays = mori_cone(y);
    for (const CurveClass& r : rays)
      if (extremal_length(y, r) == 0) {
        ContractionResult con = contract_ray(y, r);
        REQUIRE(con.target.has_value());
        CHECK(classify(*con.target).matched == ClassificationCase::FlopTarget);
      }
  }
}

TEST_CASE("classification never hard-errors across the surface sweep") {
  for (const Fan& fan : enumerate_smooth_surfaces(6, 4)) {
    ClassificationReport rep = classify(fan);  // must not throw
    if (rep.matched == ClassificationCase::ProjectiveSpace) CHECK(fan.ray_count() == 3);
    if (rep.matched == ClassificationCase::P1Bundle) CHECK(fan.ray_count() == 4);
  }
}

TEST_CASE("surface enumeration is sane") {
  auto fans = enumerate_smooth_surfaces(6, 3);
  // P^2, F_0..F_3 and blowups with at most 6 rays, all valid and smooth.
  CHECK(fans.size() > 10);
  int rays3 = 0;
  for (const Fan& fan : fans) {
    CHECK(fan.is_smooth());
    CHECK(fan.is_complete());
    if (fan.ray_count() == 3) ++rays3;
  }
  CHECK(rays3 == 1);  // only P^2
}
