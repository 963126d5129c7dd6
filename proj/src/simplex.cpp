#include "qliar/simplex.hpp"

namespace qliar {

namespace {

// Solves M x = rhs by Gauss-Jordan elimination; nullopt if M is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    const Rational p = m[col][col];
    for (auto& v : m[col]) v /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace

std::optional<LpSolution<Rational>> resolve_on_basis(const LinearProgram<Rational>& lp, const std::vector<std::size_t>& basis) {
  const simplex_detail::StandardForm<Rational> sf(lp);
  const std::size_t m = sf.a.size();
  if (basis.size() != m) return std::nullopt;
  for (auto j : basis)
    if (j >= sf.columns) return std::nullopt;

  std::vector<std::vector<Rational>> bmat(m, std::vector<Rational>(m));
  std::vector<std::vector<Rational>> bt(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      bmat[i][k] = sf.a[i][basis[k]];
      bt[k][i] = sf.a[i][basis[k]];
    }
  auto xb = solve(bmat, sf.b);
  if (!xb) return std::nullopt;
  for (const auto& v : *xb)
    if (v < 0) return std::nullopt;

  std::vector<Rational> cb(m);
  for (std::size_t k = 0; k < m; ++k) cb[k] = sf.cost[basis[k]];
  auto y = solve(bt, cb);
  if (!y) return std::nullopt;
  for (std::size_t j = 0; j < sf.columns; ++j) {
    Rational reduced = sf.cost[j];
    for (std::size_t i = 0; i < m; ++i) reduced -= (*y)[i] * sf.a[i][j];
    if (reduced > 0) return std::nullopt;
  }

  LpSolution<Rational> sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(sf.original, Rational(0));
  sol.value = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (basis[k] < sf.original) sol.x[basis[k]] = (*xb)[k];
    sol.value += cb[k] * (*xb)[k];
  }
  sol.basis = basis;
  return sol;
}

LinearProgram<double> to_double(const LinearProgram<Rational>& lp) {
  LinearProgram<double> out;
  for (const auto& c : lp.objective) out.objective.push_back(to_double(c));
  for (const auto& r : lp.rows) {
    std::vector<double> row;
    for (const auto& v : r) row.push_back(to_double(v));
    out.rows.push_back(std::move(row));
  }
  out.senses = lp.senses;
  for (const auto& v : lp.rhs) out.rhs.push_back(to_double(v));
  return out;
}

}  // namespace qliar
