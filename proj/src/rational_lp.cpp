#include "toriclift/rational_lp.hpp"

#include <stdexcept>

namespace toriclift {

std::optional<std::vector<Rational>> find_feasible_point(const FeasibilityProblem& problem) {
  const std::size_t n = problem.num_variables;
  if (problem.nonnegative.size() != n) throw std::invalid_argument("find_feasible_point: sign flags mismatch");

  // Standard form columns: one per nonnegative variable, two (x+, x-) per
  // free variable, one surplus per inequality, then one artificial per row.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < n; ++v) {
    pos_col[v] = cols++;
    if (!problem.nonnegative[v]) neg_col[v] = cols++;
  }
  const std::size_t m = problem.constraints.size();
  std::vector<std::size_t> surplus(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (problem.constraints[i].relation == Relation::GreaterEqual) surplus[i] = cols++;
  const std::size_t structural = cols;
  const std::size_t total = structural + m;

  // Tableau rows 0..m-1 are constraints, row m is the phase-one objective.
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(total + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    if (c.coefficients.size() != n) throw std::invalid_argument("find_feasible_point: constraint width mismatch");
    const int sign = c.rhs < 0 ? -1 : 1;
    for (std::size_t v = 0; v < n; ++v) {
      t[i][pos_col[v]] = sign * c.coefficients[v];
      if (neg_col[v] != SIZE_MAX) t[i][neg_col[v]] = -sign * c.coefficients[v];
    }
    if (surplus[i] != SIZE_MAX) t[i][surplus[i]] = -sign;
    t[i][structural + i] = 1;
    t[i][total] = sign * c.rhs;
    basis[i] = structural + i;
  }
  for (std::size_t j = 0; j <= total; ++j) {
    if (j >= structural && j < total) continue;
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s -= t[i][j];
    t[m][j] = s;
  }

  for (;;) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter == total) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][total] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (t[m][total] != 0) return std::nullopt;

  std::vector<Rational> column_value(total);
  for (std::size_t i = 0; i < m; ++i) column_value[basis[i]] = t[i][total];
  std::vector<Rational> x(n);
  for (std::size_t v = 0; v < n; ++v) {
    x[v] = column_value[pos_col[v]];
    if (neg_col[v] != SIZE_MAX) x[v] -= column_value[neg_col[v]];
  }
  return x;
}

}  // namespace toriclift
