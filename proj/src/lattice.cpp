#include "toric/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = gcd(a, b);
  Int r = (a / g) * b;
  return r < 0 ? Int(-r) : r;
}

Int content(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec negate(const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

Vec scale(const Int& c, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec to_rat(const Vec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec scale(const Rat& c, const RatVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_integral(const RatVec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rat& x) { return denominator(x) == 1; });
}

Vec to_int(const RatVec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (denominator(v[i]) != 1) throw Error("not_integral", "vector is not integral");
    r[i] = numerator(v[i]);
  }
  return r;
}

std::optional<Rat> rational_content(const RatVec& v) {
  if (is_zero(v)) return std::nullopt;
  Int den = 1;
  for (const Rat& x : v) den = lcm(den, denominator(x));
  Int num = 0;
  for (const Rat& x : v) num = gcd(num, numerator(x) * (den / denominator(x)));
  return Rat(num, den);
}

Vec primitive_direction(const RatVec& v) {
  auto c = rational_content(v);
  if (!c) throw Error("zero_vector", "zero vector has no direction");
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat q = v[i] / *c;
    r[i] = numerator(q);
  }
  return r;
}

std::string to_string(const Rat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
  auto parse_int = [](const std::string& t, Int& out) -> bool {
    if (t.empty()) return false;
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) return false;
    for (std::size_t i = start; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    out = Int(t);
    return true;
  };
  auto slash = s.find('/');
  Int num, den;
  if (slash == std::string::npos) {
    if (!parse_int(s, num)) return std::nullopt;
    return Rat(num);
  }
  if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
  if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
  if (den == 0) return std::nullopt;
  return Rat(num, den);
}

// -- IntMatrix ----------------------------------------------------------------

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw Error("matrix_shape", "row length does not match column count");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec IntMatrix::row(int r) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
  return v;
}

Vec IntMatrix::col(int c) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, c);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Vec IntMatrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw Error("matrix_shape", "vector length does not match column count");
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i) {
    Int s = 0;
    for (int j = 0; j < cols_; ++j) s += at(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

RatVec IntMatrix::apply(const RatVec& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw Error("matrix_shape", "vector length does not match column count");
  RatVec r(rows_);
  for (int i = 0; i < rows_; ++i) {
    Rat s = 0;
    for (int j = 0; j < cols_; ++j) s += Rat(at(i, j)) * x[j];
    r[i] = s;
  }
  return r;
}

void IntMatrix::swap_rows(int i, int j) {
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row(int dst, int src, const Int& c) {
  for (int j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMatrix::add_col(int dst, int src, const Int& c) {
  for (int i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

void IntMatrix::negate_row(int i) {
  for (int j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(int j) {
  for (int i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix_shape", "incompatible shapes");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

// -- Smith normal form --------------------------------------------------------

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> d;
  int k = std::min(s.rows(), s.cols());
  for (int i = 0; i < k; ++i) d.push_back(s.at(i, i));
  return d;
}

int SmithResult::rank() const {
  int r = 0;
  for (const Int& d : diagonal())
    if (d != 0) ++r;
  return r;
}

namespace {

// Row/column operation pairs: every operation on the working matrix is
// mirrored on the transforms and their inverses so that u*m*v = s is an
// exact invariant of the loop.
struct SnfState {
  IntMatrix a, u, v, u_inv, v_inv;

  void swap_rows(int i, int j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_cols(int i, int j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  void add_row(int dst, int src, const Int& c) {
    a.add_row(dst, src, c);
    u.add_row(dst, src, c);
    u_inv.add_col(src, dst, -c);
  }
  void add_col(int dst, int src, const Int& c) {
    a.add_col(dst, src, c);
    v.add_col(dst, src, c);
    v_inv.add_row(src, dst, -c);
  }
  void negate_row(int i) {
    a.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  SnfState st{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const int rows = m.rows(), cols = m.cols();
  const int steps = std::min(rows, cols);

  for (int t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest-absolute-value pivot in the remaining submatrix.
      int pr = -1, pc = -1;
      Int best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          const Int& x = st.a.at(i, j);
          if (x == 0) continue;
          Int ax = x < 0 ? Int(-x) : x;
          if (pr < 0 || ax < best) {
            best = ax;
            pr = i;
            pc = j;
          }
        }
      if (pr < 0) {
        t = steps;  // submatrix is zero, done
        break;
      }
      if (pr != t) st.swap_rows(t, pr);
      if (pc != t) st.swap_cols(t, pc);

      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        const Int& x = st.a.at(i, t);
        if (x == 0) continue;
        Int q = x / st.a.at(t, t);
        if (q != 0) st.add_row(i, t, -q);
        if (st.a.at(i, t) != 0) clean = false;  // remainder becomes next pivot
      }
      for (int j = t + 1; j < cols; ++j) {
        const Int& x = st.a.at(t, j);
        if (x == 0) continue;
        Int q = x / st.a.at(t, t);
        if (q != 0) st.add_col(j, t, -q);
        if (st.a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility fix-up: the pivot must divide the whole remaining block.
      bool fixed = false;
      for (int i = t + 1; i < rows && !fixed; ++i)
        for (int j = t + 1; j < cols && !fixed; ++j)
          if (st.a.at(i, j) % st.a.at(t, t) != 0) {
            st.add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (t >= steps) break;
  }

  for (int t = 0; t < steps; ++t)
    if (st.a.at(t, t) < 0) st.negate_row(t);

  return SmithResult{st.a, st.u, st.v, st.u_inv, st.v_inv};
}

// -- elimination-based helpers -------------------------------------------------

namespace {

// Reduced row echelon form over Q. Returns pivot column per pivot row.
std::vector<int> rref(std::vector<RatVec>& rows, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    Rat inv = rows[r][c];
    for (int j = 0; j < static_cast<int>(rows[r].size()); ++j) rows[r][j] /= inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (int j = 0; j < static_cast<int>(rows[i].size()); ++j)
        rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("matrix_shape", "determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination: all divisions are exact.
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int sel = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          sel = i;
          break;
        }
      if (sel < 0) return 0;
      a.swap_rows(k, sel);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

int rank(const IntMatrix& m) {
  std::vector<RatVec> rows;
  for (int i = 0; i < m.rows(); ++i) rows.push_back(to_rat(m.row(i)));
  return static_cast<int>(rref(rows, m.cols()).size());
}

std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b) {
  if (static_cast<int>(b.size()) != m.rows())
    throw Error("matrix_shape", "right-hand side length does not match row count");
  const int n = m.cols();
  std::vector<RatVec> rows;
  for (int i = 0; i < m.rows(); ++i) {
    RatVec row = to_rat(m.row(i));
    row.push_back(b[i]);
    rows.push_back(std::move(row));
  }
  std::vector<int> pivots = rref(rows, n);
  // Inconsistent iff some row reduces to (0 ... 0 | nonzero).
  for (int i = static_cast<int>(pivots.size()); i < static_cast<int>(rows.size()); ++i)
    if (rows[i][n] != 0) return std::nullopt;
  RatVec x(n, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][n];
  return x;
}

std::optional<RatVec> solve_rational(const IntMatrix& m, const Vec& b) {
  return solve_rational(m, to_rat(b));
}

std::vector<RatVec> kernel_basis(const IntMatrix& m) {
  const int n = m.cols();
  std::vector<RatVec> rows;
  for (int i = 0; i < m.rows(); ++i) rows.push_back(to_rat(m.row(i)));
  std::vector<int> pivots = rref(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(n, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> integer_kernel_basis(const IntMatrix& m) {
  std::vector<RatVec> qbasis = kernel_basis(m);
  if (qbasis.empty()) return {};
  const int n = m.cols();
  // Clear denominators, then saturate the row lattice: with u*b*v = s the
  // first rank(b) rows of v_inv are a basis of the saturation.
  std::vector<Vec> rows;
  for (const RatVec& q : qbasis) {
    Int den = 1;
    for (const Rat& x : q) den = lcm(den, denominator(x));
    Vec r(n);
    for (int j = 0; j < n; ++j) r[j] = numerator(q[j]) * (den / denominator(q[j]));
    rows.push_back(std::move(r));
  }
  SmithResult snf = smith_normal_form(IntMatrix::from_rows(rows, n));
  int k = snf.rank();
  if (k != static_cast<int>(qbasis.size()))
    throw Error("internal_error", "kernel basis rank mismatch");
  std::vector<Vec> basis;
  for (int i = 0; i < k; ++i) {
    Vec v = snf.v_inv.row(i);
    if (!is_zero(m.apply(v))) throw Error("internal_error", "saturated kernel vector not in kernel");
    basis.push_back(std::move(v));
  }
  return basis;
}

Int lattice_index(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 1;
  const int n = static_cast<int>(vectors.front().size());
  for (const Vec& v : vectors)
    if (static_cast<int>(v.size()) != n)
      throw Error("matrix_shape", "vectors of mixed dimension");
  SmithResult snf = smith_normal_form(IntMatrix::from_rows(vectors, n));
  std::vector<Int> d = snf.diagonal();
  Int index = 1;
  int nonzero = 0;
  for (const Int& x : d)
    if (x != 0) {
      index *= x;
      ++nonzero;
    }
  if (nonzero != static_cast<int>(vectors.size()))
    throw Error("not_independent", "vectors are not linearly independent");
  return index;
}

Vec primitive(const Vec& v) {
  Int g = content(v);
  if (g == 0) throw Error("zero_vector", "zero vector has no primitive form");
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

}  // namespace toric
