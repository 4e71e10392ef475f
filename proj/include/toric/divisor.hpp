#pragma once

#include <optional>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// Torus-invariant Q-divisor: one exact rational coefficient per ray of the
/// parent fan. Integral coefficients give honest divisors.
struct TorusDivisor {
  RatVec coeffs;

  TorusDivisor() = default;
  explicit TorusDivisor(RatVec c) : coeffs(std::move(c)) {}
  static TorusDivisor zero(const Fan& fan);
  static TorusDivisor prime(const Fan& fan, int ray_index);  // V(v_i)
  static TorusDivisor integral(std::vector<long long> c);

  bool is_integral() const { return toric::is_integral(coeffs); }
  bool operator==(const TorusDivisor&) const = default;
};

TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b);
TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b);
TorusDivisor operator*(const Rat& c, const TorusDivisor& d);

/// K_X = -sum of all torus-invariant prime divisors.
TorusDivisor canonical_divisor(const Fan& fan);

/// div(m) = sum_i <m, v_i> V(v_i) for a character m.
TorusDivisor principal_divisor(const Fan& fan, const Vec& m);

/// Per-maximal-cone linear functionals m_sigma with <m_sigma, v_i> =
/// -coeff(v_i) on every ray of sigma; the certificate that a divisor is
/// (Q-)Cartier.
struct CartierData {
  std::vector<RatVec> functionals;  // one per maximal cone
  bool cartier = false;             // all functionals integral
  Int cartier_index = 0;            // least k >= 1 with k*D Cartier
};

/// nullopt when some cone's system is inconsistent (D not Q-Cartier).
std::optional<CartierData> cartier_data(const Fan& fan, const TorusDivisor& d);

/// Image of a divisor in Cl(X) = Z^r / im(ray matrix), split into free and
/// torsion coordinates.
struct DivisorClass {
  Vec free;
  Vec torsion;          // reduced mod torsion_moduli
  std::vector<Int> torsion_moduli;
  bool is_trivial() const;
  bool operator==(const DivisorClass&) const = default;
};

/// Presentation of the divisor class group with projection maps.
class ClassGroup {
 public:
  explicit ClassGroup(const Fan& fan);
  int free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion_moduli() const { return moduli_; }
  DivisorClass class_of(const TorusDivisor& d) const;  // integral divisors
  RatVec class_of_q(const TorusDivisor& d) const;      // free part over Q
 private:
  int rays_, dim_, free_rank_;
  std::vector<Int> moduli_;       // elementary divisors > 1
  std::vector<int> moduli_rows_;  // their row positions in u * a
  IntMatrix u_;                   // SNF row transform of the ray matrix
};

/// Lattice of Cartier divisor classes inside Cl(X). Free for complete toric
/// varieties; a nonzero torsion here is an internal error.
class PicardLattice {
 public:
  explicit PicardLattice(const Fan& fan);
  int rho() const { return rho_; }
  const std::vector<TorusDivisor>& basis() const { return basis_; }
  /// Coordinates of a Q-Cartier divisor's numerical class in the basis.
  /// nullopt when the divisor's class does not lie in Pic tensor Q.
  std::optional<RatVec> coordinates_q(const TorusDivisor& d) const;
 private:
  int rho_;
  std::vector<TorusDivisor> basis_;
  IntMatrix cdiv_basis_;  // r x (n + rho): columns span the Cartier lattice
  IntMatrix uy_;          // quotient transform mod principal divisors
};

ClassGroup class_group(const Fan& fan);
PicardLattice picard_lattice(const Fan& fan);
int rho(const Fan& fan);

/// True iff D1 - D2 pairs to zero with every wall curve. Cross-checked
/// against class-group triviality up to torsion; a disagreement is an
/// internal error.
bool numerically_equivalent(const Fan& fan, const TorusDivisor& d1,
                            const TorusDivisor& d2);

bool is_nef(const Fan& fan, const TorusDivisor& d);
bool is_ample(const Fan& fan, const TorusDivisor& d);

/// Does the fan carry any ample Q-divisor? (The projectivity criterion.)
bool has_ample_divisor(const Fan& fan);

struct DivisibilityResult {
  enum class Status { Ok, KNotQCartier, NotDivisible };
  Status status = Status::NotDivisible;
  Int n = 0;              // largest N with -K == N * (Cartier class)
  TorusDivisor witness;   // Cartier divisor D with -K == N*D
};

DivisibilityResult divisibility_index(const Fan& fan);

/// Largest positive rational N with class(D) = N * (class of a Cartier
/// divisor) in Pic tensor Q. nullopt when class(D) is zero or outside.
std::optional<Rat> rational_divisibility(const Fan& fan, const TorusDivisor& d);

struct LogBoundReport {
  bool k_plus_b_q_cartier = false;
  bool k_plus_b_nef = false;
  std::optional<Rat> n;    // present when K+B is Q-Cartier and not nef
  bool bound_holds = true; // N <= dim + 1 whenever N is present
};

/// Boundary coefficients must lie in [0,1].
LogBoundReport log_bound_check(const Fan& fan, const TorusDivisor& boundary);

}  // namespace toric
