#include <doctest.h>

#include <algorithm>
#include <random>

#include "toric/lattice.hpp"

using namespace toric;

namespace {

IntMatrix mat(std::vector<std::vector<long long>> rows) {
  IntMatrix m(static_cast<int>(rows.size()),
              rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

Vec vec(std::vector<long long> v) { return Vec(v.begin(), v.end()); }

// Independent oracle for every SNF result: the defining identity, the
// unimodularity of the transforms and the divisibility chain.
void check_snf(const IntMatrix& m) {
  SmithResult r = smith_normal_form(m);
  CHECK(r.u * m * r.v == r.s);
  CHECK(r.u * r.u_inv == IntMatrix::identity(m.rows()));
  CHECK(r.v * r.v_inv == IntMatrix::identity(m.cols()));
  Int du = determinant(r.u), dv = determinant(r.v);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  auto d = r.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (i + 1 < d.size() && d[i] == 0) CHECK(d[i + 1] == 0);
  }
  for (int i = 0; i < r.s.rows(); ++i)
    for (int j = 0; j < r.s.cols(); ++j)
      if (i != j) CHECK(r.s.at(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form of diag(2,3)") {
  IntMatrix m = mat({{2, 0}, {0, 3}});
  SmithResult r = smith_normal_form(m);
  check_snf(m);
  CHECK(r.diagonal() == std::vector<Int>{Int(1), Int(6)});
}

TEST_CASE("smith normal form of the identity") {
  IntMatrix m = IntMatrix::identity(3);
  SmithResult r = smith_normal_form(m);
  check_snf(m);
  CHECK(r.s == m);
}

TEST_CASE("smith normal form of the zero matrix") {
  IntMatrix m(2, 2);
  SmithResult r = smith_normal_form(m);
  CHECK(r.diagonal() == std::vector<Int>{Int(0), Int(0)});
  CHECK(r.u == IntMatrix::identity(2));
  CHECK(r.v == IntMatrix::identity(2));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
    check_snf(m);
  }
}

TEST_CASE("lattice index") {
  CHECK(lattice_index({vec({1, 0}), vec({0, 1})}) == 1);
  CHECK(lattice_index({vec({1, 1}), vec({1, -1})}) == 2);
  // |det| = |1*(1*(-1) - 1*1)| = 2 by cofactor expansion.
  CHECK(lattice_index({vec({1, 0, 0}), vec({0, 1, 1}), vec({0, 1, -1})}) == 2);
  CHECK_THROWS_WITH_AS(lattice_index({vec({1, 0}), vec({2, 0})}),
                       "vectors are not linearly independent", Error);
}

TEST_CASE("lattice index is permutation invariant") {
  std::vector<Vec> vs{vec({3, 1, 0}), vec({0, 2, 5}), vec({1, 1, 1})};
  Int base = lattice_index(vs);
  std::sort(vs.begin(), vs.end());
  do {
    CHECK(lattice_index(vs) == base);
  } while (std::next_permutation(vs.begin(), vs.end()));
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(vec({2, 4, 6})) == vec({1, 2, 3}));
  CHECK(primitive(vec({1, 0})) == vec({1, 0}));
  CHECK(primitive(vec({-3, -6})) == vec({-1, -2}));
  CHECK_THROWS_AS(primitive(vec({0, 0})), Error);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-20, 20);
  for (int t = 0; t < 40; ++t) {
    Vec v{Int(entry(rng)), Int(entry(rng)), Int(entry(rng))};
    if (is_zero(v)) continue;
    CHECK(primitive(primitive(v)) == primitive(v));
  }
}

TEST_CASE("rational solve") {
  CHECK(*solve_rational(IntMatrix::identity(2), vec({5, 7})) == to_rat(vec({5, 7})));

  auto sol = solve_rational(mat({{1, 1}}), vec({2}));
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + (*sol)[1] == 2);
  auto kernel = kernel_basis(mat({{1, 1}}));
  REQUIRE(kernel.size() == 1);
  CHECK(kernel[0][0] == -kernel[0][1]);

  CHECK(!solve_rational(mat({{1, 0}, {1, 0}}), vec({1, 2})).has_value());
}

TEST_CASE("solutions satisfy the system exactly") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m(dim(rng), dim(rng));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
    RatVec b(m.rows());
    for (int i = 0; i < m.rows(); ++i) b[i] = Rat(entry(rng), 1 + std::abs(entry(rng)));
    auto sol = solve_rational(m, b);
    if (sol) CHECK(m.apply(*sol) == b);
    for (const RatVec& k : kernel_basis(m)) CHECK(is_zero(m.apply(k)));
  }
}

TEST_CASE("integer kernel basis is saturated") {
  // Kernel of (2 2) is spanned by (1,-1), not (2,-2).
  auto basis = integer_kernel_basis(mat({{2, 2}}));
  REQUIRE(basis.size() == 1);
  CHECK(content(basis[0]) == 1);

  // Rank-2 saturated kernel: every integer solution is an integer
  // combination of the basis.
  auto b2 = integer_kernel_basis(mat({{1, 1, 2}}));
  REQUIRE(b2.size() == 2);
  IntMatrix bm(3, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) bm.at(i, j) = b2[j][i];
  for (Vec probe : {vec({1, -1, 0}), vec({0, -2, 1}), vec({2, 0, -1})}) {
    auto coords = solve_rational(bm, probe);
    REQUIRE(coords.has_value());
    CHECK(is_integral(*coords));
  }
}

TEST_CASE("rational content and direction") {
  RatVec v{Rat(4, 3), Rat(-2, 3)};
  auto c = rational_content(v);
  REQUIRE(c.has_value());
  CHECK(*c == Rat(2, 3));
  CHECK(primitive_direction(v) == vec({2, -1}));
  CHECK(!rational_content(RatVec{Rat(0), Rat(0)}).has_value());
}

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(Rat(5)) == "5");
  CHECK(to_string(Rat(-5, 2)) == "-5/2");
  CHECK(*rat_from_string("7") == Rat(7));
  CHECK(*rat_from_string("-3/4") == Rat(-3, 4));
  CHECK(!rat_from_string("1/0").has_value());
  CHECK(!rat_from_string("x").has_value());
}
