#include "toric/lp.hpp"

#include <algorithm>

namespace toric {

LpFeasibility lp_feasible(const std::vector<RatVec>& a_rows, const RatVec& b) {
  const int m = static_cast<int>(a_rows.size());
  const int k = m == 0 ? 0 : static_cast<int>(a_rows.front().size());
  if (m == 0) return {true, RatVec(0)};

  // Tableau: k structural columns, m artificial columns, rhs. Minimize the
  // sum of artificials; feasible iff the optimum is zero.
  const int cols = k + m + 1;
  std::vector<RatVec> t(m, RatVec(cols, Rat(0)));
  for (int i = 0; i < m; ++i) {
    bool neg = b[i] < 0;
    for (int j = 0; j < k; ++j) t[i][j] = neg ? -a_rows[i][j] : a_rows[i][j];
    t[i][k + i] = 1;
    t[i][cols - 1] = neg ? -b[i] : b[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = k + i;

  // Reduced-cost row for cost = sum of artificial variables.
  RatVec obj(cols, Rat(0));
  for (int j = k; j < k + m; ++j) obj[j] = 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < cols; ++j) obj[j] -= t[i][j];

  for (;;) {
    int enter = -1;
    for (int j = 0; j < k + m; ++j)
      if (obj[j] < 0) {
        enter = j;  // Bland: smallest index
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw Error("internal_error", "phase-one simplex unbounded");
    Rat piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rat f = obj[enter];
      for (int j = 0; j < cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Rat value = 0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= k) value += t[i][cols - 1];
  if (value != 0) return {false, {}};

  RatVec x(k, Rat(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < k) x[basis[i]] = t[i][cols - 1];
  return {true, std::move(x)};
}

bool in_cone(const std::vector<RatVec>& generators, const RatVec& target) {
  const int n = static_cast<int>(target.size());
  if (is_zero(target)) return true;
  std::vector<RatVec> rows(n, RatVec(generators.size(), Rat(0)));
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (int i = 0; i < n; ++i) rows[i][g] = generators[g][i];
  return lp_feasible(rows, target).feasible;
}

bool in_cone(const std::vector<Vec>& generators, const Vec& target) {
  std::vector<RatVec> gens;
  gens.reserve(generators.size());
  for (const Vec& g : generators) gens.push_back(to_rat(g));
  return in_cone(gens, to_rat(target));
}

std::optional<RatVec> separating_functional(const std::vector<Vec>& zeros,
                                            const std::vector<Vec>& pos,
                                            const std::vector<Vec>& neg,
                                            int dim) {
  // Variables: w = u - v with u, v >= 0, one slack per strict constraint.
  const int npos = static_cast<int>(pos.size());
  const int nneg = static_cast<int>(neg.size());
  const int cols = 2 * dim + npos + nneg;
  std::vector<RatVec> rows;
  RatVec b;
  auto coeff_row = [&](const Vec& v) {
    RatVec row(cols, Rat(0));
    for (int j = 0; j < dim; ++j) {
      row[j] = Rat(v[j]);
      row[dim + j] = Rat(-v[j]);
    }
    return row;
  };
  for (const Vec& z : zeros) {
    rows.push_back(coeff_row(z));
    b.push_back(0);
  }
  for (int i = 0; i < npos; ++i) {
    RatVec row = coeff_row(pos[i]);
    row[2 * dim + i] = -1;  // <w,p> - s = 1
    rows.push_back(std::move(row));
    b.push_back(1);
  }
  for (int i = 0; i < nneg; ++i) {
    RatVec row = coeff_row(neg[i]);
    row[2 * dim + npos + i] = 1;  // <w,q> + s = -1
    rows.push_back(std::move(row));
    b.push_back(-1);
  }
  LpFeasibility lp = lp_feasible(rows, b);
  if (!lp.feasible) return std::nullopt;
  RatVec w(dim);
  for (int j = 0; j < dim; ++j) w[j] = lp.point[j] - lp.point[dim + j];
  return w;
}

bool strongly_convex(const std::vector<Vec>& generators, int dim) {
  return separating_functional({}, generators, {}, dim).has_value();
}

}  // namespace toric
