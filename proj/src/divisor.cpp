#include "toric/divisor.hpp"

#include <algorithm>
#include <set>

#include "detail.hpp"
#include "toric/lp.hpp"

namespace toric {

TorusDivisor TorusDivisor::zero(const Fan& fan) {
  return TorusDivisor(RatVec(fan.ray_count(), Rat(0)));
}

TorusDivisor TorusDivisor::prime(const Fan& fan, int ray_index) {
  if (ray_index < 0 || ray_index >= fan.ray_count())
    throw Error("ray_index_out_of_range", "ray index out of range");
  RatVec c(fan.ray_count(), Rat(0));
  c[ray_index] = 1;
  return TorusDivisor(std::move(c));
}

TorusDivisor TorusDivisor::integral(std::vector<long long> c) {
  RatVec r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = Rat(c[i]);
  return TorusDivisor(std::move(r));
}

TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b) {
  return TorusDivisor(add(a.coeffs, b.coeffs));
}

TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b) {
  return TorusDivisor(sub(a.coeffs, b.coeffs));
}

TorusDivisor operator*(const Rat& c, const TorusDivisor& d) {
  return TorusDivisor(scale(c, d.coeffs));
}

TorusDivisor canonical_divisor(const Fan& fan) {
  return TorusDivisor(RatVec(fan.ray_count(), Rat(-1)));
}

TorusDivisor principal_divisor(const Fan& fan, const Vec& m) {
  RatVec c(fan.ray_count());
  for (int i = 0; i < fan.ray_count(); ++i) c[i] = Rat(dot(m, fan.ray(i)));
  return TorusDivisor(std::move(c));
}

static void check_divisor(const Fan& fan, const TorusDivisor& d) {
  if (static_cast<int>(d.coeffs.size()) != fan.ray_count())
    throw Error("divisor_length_mismatch",
                "divisor has " + std::to_string(d.coeffs.size()) + " coefficients, fan has " +
                    std::to_string(fan.ray_count()) + " rays");
}

std::optional<CartierData> cartier_data(const Fan& fan, const TorusDivisor& d) {
  check_divisor(fan, d);
  CartierData cd;
  cd.cartier_index = 1;
  for (const Cone& cone : fan.max_cones()) {
    std::vector<Vec> rows;
    RatVec rhs;
    for (int r : cone.rays) {
      rows.push_back(fan.ray(r));
      rhs.push_back(-d.coeffs[r]);
    }
    auto m = solve_rational(IntMatrix::from_rows(rows, fan.dim()), rhs);
    if (!m) return std::nullopt;
    for (const Rat& x : *m) cd.cartier_index = lcm(cd.cartier_index, denominator(x));
    cd.functionals.push_back(std::move(*m));
  }
  cd.cartier = cd.cartier_index == 1;
  return cd;
}

// -- class group ----------------------------------------------------------------

ClassGroup::ClassGroup(const Fan& fan)
    : rays_(fan.ray_count()), dim_(fan.dim()), u_(IntMatrix::identity(0)) {
  IntMatrix r = IntMatrix::from_rows(fan.rays(), dim_);  // r x n, rows = rays
  SmithResult snf = smith_normal_form(r);
  if (snf.rank() != dim_)
    throw Error("rays_do_not_span", "rays do not span R^n; torus factors are not supported");
  u_ = snf.u;
  free_rank_ = rays_ - dim_;
  for (int i = 0; i < dim_; ++i) {
    Int d = snf.s.at(i, i);
    if (d > 1) {
      moduli_.push_back(d);
      moduli_rows_.push_back(i);
    }
  }
}

DivisorClass ClassGroup::class_of(const TorusDivisor& d) const {
  if (static_cast<int>(d.coeffs.size()) != rays_)
    throw Error("divisor_length_mismatch", "divisor does not match fan");
  if (!d.is_integral())
    throw Error("not_integral", "class_of needs an integral divisor; use class_of_q");
  Vec a = to_int(d.coeffs);
  Vec y = u_.apply(a);
  DivisorClass cls;
  cls.torsion_moduli = moduli_;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    Int v = y[moduli_rows_[k]] % moduli_[k];
    if (v < 0) v += moduli_[k];
    cls.torsion.push_back(v);
  }
  for (int i = dim_; i < rays_; ++i) cls.free.push_back(y[i]);
  return cls;
}

RatVec ClassGroup::class_of_q(const TorusDivisor& d) const {
  if (static_cast<int>(d.coeffs.size()) != rays_)
    throw Error("divisor_length_mismatch", "divisor does not match fan");
  RatVec y = u_.apply(d.coeffs);
  return RatVec(y.begin() + dim_, y.end());
}

bool DivisorClass::is_trivial() const {
  return is_zero(free) && is_zero(torsion);
}

ClassGroup class_group(const Fan& fan) { return ClassGroup(fan); }

// -- Picard lattice ---------------------------------------------------------------

PicardLattice::PicardLattice(const Fan& fan)
    : cdiv_basis_(IntMatrix::identity(0)), uy_(IntMatrix::identity(0)) {
  const int n = fan.dim();
  const int r = fan.ray_count();
  const int s = static_cast<int>(fan.max_cones().size());

  // A Cartier divisor is a tuple (m_sigma) agreeing on shared rays. Stack the
  // agreement constraints and take the saturated integer kernel.
  std::vector<Vec> rows;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      std::vector<int> common;
      std::set_intersection(fan.max_cones()[i].rays.begin(), fan.max_cones()[i].rays.end(),
                            fan.max_cones()[j].rays.begin(), fan.max_cones()[j].rays.end(),
                            std::back_inserter(common));
      for (int ray_idx : common) {
        Vec row(static_cast<std::size_t>(n) * s, Int(0));
        const Vec& v = fan.ray(ray_idx);
        for (int k = 0; k < n; ++k) {
          row[static_cast<std::size_t>(i) * n + k] = v[k];
          row[static_cast<std::size_t>(j) * n + k] = -v[k];
        }
        rows.push_back(std::move(row));
      }
    }

  std::vector<Vec> kernel;
  if (rows.empty()) {
    for (int i = 0; i < n * s; ++i) {
      Vec e(static_cast<std::size_t>(n) * s, Int(0));
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = integer_kernel_basis(IntMatrix::from_rows(rows, n * s));
  }
  const int kdim = static_cast<int>(kernel.size());
  if (kdim < n) throw Error("internal_error", "Cartier lattice smaller than principal lattice");
  rho_ = kdim - n;

  // First cone containing each ray, to read off divisor coefficients.
  std::vector<int> owner(r, -1);
  for (int ci = 0; ci < s; ++ci)
    for (int ray_idx : fan.max_cones()[ci].rays)
      if (owner[ray_idx] < 0) owner[ray_idx] = ci;

  cdiv_basis_ = IntMatrix(r, kdim);
  for (int k = 0; k < kdim; ++k)
    for (int i = 0; i < r; ++i) {
      Int a = 0;
      const Vec& v = fan.ray(i);
      for (int j = 0; j < n; ++j)
        a -= kernel[k][static_cast<std::size_t>(owner[i]) * n + j] * v[j];
      cdiv_basis_.at(i, k) = a;
    }

  // Principal divisors in Cartier coordinates; their quotient presents Pic.
  IntMatrix y(kdim, n);
  for (int j = 0; j < n; ++j) {
    RatVec col(r);
    for (int i = 0; i < r; ++i) col[i] = Rat(fan.ray(i)[j]);
    auto sol = solve_rational(cdiv_basis_, col);
    if (!sol || !is_integral(*sol))
      throw Error("internal_error", "principal divisor outside the Cartier lattice");
    Vec iv = to_int(*sol);
    for (int k = 0; k < kdim; ++k) y.at(k, j) = iv[k];
  }
  SmithResult snf = smith_normal_form(y);
  if (snf.rank() != n)
    throw Error("internal_error", "principal divisors do not have full rank");
  for (int i = 0; i < n; ++i)
    if (snf.s.at(i, i) != 1)
      throw Error("internal_error",
                  "Picard group of a complete toric variety must be torsion-free");
  uy_ = snf.u;

  for (int j = 0; j < rho_; ++j) {
    Vec coords = snf.u_inv.col(n + j);
    Vec div = cdiv_basis_.apply(coords);
    basis_.push_back(TorusDivisor(to_rat(div)));
  }
}

std::optional<RatVec> PicardLattice::coordinates_q(const TorusDivisor& d) const {
  auto x = solve_rational(cdiv_basis_, d.coeffs);
  if (!x) return std::nullopt;
  RatVec y = uy_.apply(*x);
  return RatVec(y.end() - rho_, y.end());
}

PicardLattice picard_lattice(const Fan& fan) { return PicardLattice(fan); }

int rho(const Fan& fan) { return PicardLattice(fan).rho(); }

// -- numerical equivalence, nef, ample ------------------------------------------------

namespace detail {

Rat wall_jump(const Fan& fan, const CartierData& cd, int wall_index) {
  const Wall& w = fan.walls()[wall_index];
  RatVec delta = sub(cd.functionals[w.left], cd.functionals[w.right]);
  const Vec& pi = fan.wall_covector(wall_index);
  int j = 0;
  while (pi[j] == 0) ++j;
  Rat c = delta[j] / Rat(pi[j]);
  // delta vanishes on the wall span, so it is an exact multiple of pi.
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] != c * Rat(pi[i]))
      throw Error("internal_error", "Cartier data jump is not proportional to the wall covector");
  return c;
}

std::vector<RatVec> wall_curve_classes(const Fan& fan, const PicardLattice& pic) {
  std::vector<CartierData> basis_data;
  for (const TorusDivisor& b : pic.basis()) {
    auto cd = cartier_data(fan, b);
    if (!cd) throw Error("internal_error", "Picard basis divisor is not Cartier");
    basis_data.push_back(std::move(*cd));
  }
  std::vector<RatVec> classes;
  for (int wi = 0; wi < static_cast<int>(fan.walls().size()); ++wi) {
    RatVec cls(pic.rho());
    for (int j = 0; j < pic.rho(); ++j) cls[j] = wall_jump(fan, basis_data[j], wi);
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace detail

namespace {

// All wall pairings of a Q-Cartier divisor; throws when not Q-Cartier.
std::vector<Rat> wall_numbers(const Fan& fan, const TorusDivisor& d) {
  auto cd = cartier_data(fan, d);
  if (!cd) throw Error("not_q_cartier", "divisor is not Q-Cartier");
  std::vector<Rat> vals;
  for (int wi = 0; wi < static_cast<int>(fan.walls().size()); ++wi)
    vals.push_back(detail::wall_jump(fan, *cd, wi));
  return vals;
}

}  // namespace

bool numerically_equivalent(const Fan& fan, const TorusDivisor& d1,
                            const TorusDivisor& d2) {
  check_divisor(fan, d1);
  check_divisor(fan, d2);
  TorusDivisor diff = d1 - d2;
  std::vector<Rat> vals = wall_numbers(fan, diff);
  bool by_walls = std::all_of(vals.begin(), vals.end(), [](const Rat& v) { return v == 0; });
  // Numerical and Q-linear equivalence coincide on projective toric
  // varieties; both routes are computed and must agree.
  bool by_classes = is_zero(class_group(fan).class_of_q(diff));
  if (by_walls != by_classes)
    throw Error("internal_error",
                "numerical equivalence and rational class triviality disagree");
  return by_walls;
}

bool is_nef(const Fan& fan, const TorusDivisor& d) {
  std::vector<Rat> vals = wall_numbers(fan, d);
  return std::all_of(vals.begin(), vals.end(), [](const Rat& v) { return v >= 0; });
}

bool is_ample(const Fan& fan, const TorusDivisor& d) {
  auto cd = cartier_data(fan, d);
  if (!cd) throw Error("not_q_cartier", "divisor is not Q-Cartier");
  bool positive = true;
  bool nef = true;
  bool locally_strict = true;  // functionals distinct across every wall
  for (int wi = 0; wi < static_cast<int>(fan.walls().size()); ++wi) {
    const Wall& w = fan.walls()[wi];
    Rat v = detail::wall_jump(fan, *cd, wi);
    if (v < 0) nef = false;
    if (v <= 0) positive = false;
    if (cd->functionals[w.left] == cd->functionals[w.right]) locally_strict = false;
  }
  bool strictly_convex = nef && locally_strict;
  if (strictly_convex != positive)
    throw Error("internal_error", "strict convexity and wall positivity disagree");
  return positive;
}

bool has_ample_divisor(const Fan& fan) {
  if (!fan.is_complete()) throw Error("fan_not_complete", "ampleness needs a complete fan");
  PicardLattice pic(fan);
  std::vector<RatVec> classes = detail::wall_curve_classes(fan, pic);
  if (classes.empty()) throw Error("internal_error", "complete fan without walls");
  // Ample classes are the y with <y, wall class> > 0 for every wall; scale
  // to >= 1 and test feasibility.
  const int rho = pic.rho();
  std::vector<RatVec> rows;
  RatVec b;
  for (const RatVec& cls : classes) {
    RatVec row(2 * rho + classes.size(), Rat(0));
    for (int j = 0; j < rho; ++j) {
      row[j] = cls[j];
      row[rho + j] = -cls[j];
    }
    row[2 * rho + rows.size()] = -1;
    rows.push_back(std::move(row));
    b.push_back(1);
  }
  return lp_feasible(rows, b).feasible;
}

// -- divisibility --------------------------------------------------------------------

DivisibilityResult divisibility_index(const Fan& fan) {
  DivisibilityResult res;
  TorusDivisor minus_k = Rat(-1) * canonical_divisor(fan);
  if (!cartier_data(fan, minus_k)) {
    res.status = DivisibilityResult::Status::KNotQCartier;
    return res;
  }
  PicardLattice pic(fan);
  auto x = pic.coordinates_q(minus_k);
  if (!x)
    throw Error("internal_error", "Q-Cartier -K outside Pic tensor Q");
  if (is_zero(*x) || !is_integral(*x)) {
    res.status = DivisibilityResult::Status::NotDivisible;
    return res;
  }
  Vec xi = to_int(*x);
  Int n = content(xi);
  TorusDivisor witness = TorusDivisor::zero(fan);
  for (std::size_t j = 0; j < xi.size(); ++j)
    witness = witness + Rat(xi[j] / n) * pic.basis()[j];
  res.status = DivisibilityResult::Status::Ok;
  res.n = n;
  res.witness = std::move(witness);
  return res;
}

std::optional<Rat> rational_divisibility(const Fan& fan, const TorusDivisor& d) {
  if (!cartier_data(fan, d)) return std::nullopt;
  PicardLattice pic(fan);
  auto x = pic.coordinates_q(d);
  if (!x) return std::nullopt;
  return rational_content(*x);
}

LogBoundReport log_bound_check(const Fan& fan, const TorusDivisor& boundary) {
  check_divisor(fan, boundary);
  for (const Rat& c : boundary.coeffs)
    if (c < 0 || c > 1)
      throw Error("boundary_coeff_out_of_range",
                  "boundary coefficients must lie in [0,1]");
  LogBoundReport rep;
  TorusDivisor k_plus_b = canonical_divisor(fan) + boundary;
  if (!cartier_data(fan, k_plus_b)) return rep;
  rep.k_plus_b_q_cartier = true;
  rep.k_plus_b_nef = is_nef(fan, k_plus_b);
  if (rep.k_plus_b_nef) return rep;
  rep.n = rational_divisibility(fan, Rat(-1) * k_plus_b);
  if (rep.n) rep.bound_holds = *rep.n <= Rat(fan.dim() + 1);
  return rep;
}

}  // namespace toric
