#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

// All arithmetic in this library is exact. Integers are arbitrary precision
// (normal-form algorithms grow entries well past 64 bits) and rationals are
// exact fractions. There is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Vec = std::vector<Int>;     // lattice vector / integer covector
using RatVec = std::vector<Rat>;  // rational vector

/// Runtime error carrying a stable machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Thrown when a computation contradicts one of the classification theorems
/// this library certifies. Must never fire on a valid complete fan.
class ClassificationViolation : public Error {
 public:
  using Error::Error;
};

Int gcd(Int a, Int b);
Int lcm(const Int& a, const Int& b);

/// gcd of all entries, nonnegative; 0 for the zero vector.
Int content(const Vec& v);

// -- small exact vector helpers ---------------------------------------------

bool is_zero(const Vec& v);
bool is_zero(const RatVec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec negate(const Vec& v);
Vec scale(const Int& c, const Vec& v);
Int dot(const Vec& a, const Vec& b);
Rat dot(const RatVec& a, const Vec& b);
Rat dot(const RatVec& a, const RatVec& b);
RatVec to_rat(const Vec& v);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& c, const RatVec& v);
bool is_integral(const RatVec& v);
Vec to_int(const RatVec& v);  // requires is_integral

/// Largest positive rational N with v = N * (primitive integer vector).
/// nullopt for the zero vector.
std::optional<Rat> rational_content(const RatVec& v);

/// v / rational_content(v): the primitive integer vector on the ray of v.
Vec primitive_direction(const RatVec& v);

std::string to_string(const Rat& q);  // "p" or "p/q"
std::optional<Rat> rat_from_string(const std::string& s);

// -- integer matrices --------------------------------------------------------

/// Dense integer matrix with arbitrary-precision entries. Value semantics.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return data_[index(r, c)]; }
  const Int& at(int r, int c) const { return data_[index(r, c)]; }

  Vec row(int r) const;
  Vec col(int c) const;
  IntMatrix transposed() const;
  Vec apply(const Vec& x) const;        // M * x
  RatVec apply(const RatVec& x) const;  // M * x over Q

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void add_row(int dst, int src, const Int& c);  // row dst += c * row src
  void add_col(int dst, int src, const Int& c);  // col dst += c * col src
  void negate_row(int i);
  void negate_col(int i);

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw Error("matrix_index", "matrix index out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  int rows_, cols_;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// U * M * V = S with S diagonal, d_1 | d_2 | ..., d_i >= 0 and U, V
/// unimodular. Inverses are accumulated alongside so callers can move
/// between coordinates without a separate inversion step.
struct SmithResult {
  IntMatrix s, u, v, u_inv, v_inv;
  std::vector<Int> diagonal() const;
  int rank() const;  // number of nonzero diagonal entries
};

/// Pivoting picks the smallest-absolute-value nonzero entry of the working
/// submatrix at every step, which keeps intermediate entries small.
SmithResult smith_normal_form(const IntMatrix& m);

Int determinant(const IntMatrix& m);  // square matrices, exact sign
int rank(const IntMatrix& m);

/// One exact solution of M x = b, free coordinates set to zero.
/// nullopt when the system is inconsistent.
std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b);
std::optional<RatVec> solve_rational(const IntMatrix& m, const Vec& b);

/// Basis of { x : M x = 0 } over the rationals.
std::vector<RatVec> kernel_basis(const IntMatrix& m);

/// Basis of the saturated integer kernel { x in Z^c : M x = 0 }.
std::vector<Vec> integer_kernel_basis(const IntMatrix& m);

/// Index of the sublattice spanned by the vectors inside the saturation of
/// their span: the product of the nonzero elementary divisors.
/// Throws "not_independent" when the vectors are linearly dependent.
Int lattice_index(const std::vector<Vec>& vectors);

/// v divided by the gcd of its coordinates. Throws "zero_vector" on 0.
Vec primitive(const Vec& v);

}  // namespace toric
