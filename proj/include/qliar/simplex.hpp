#pragma once

#include "qliar/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qliar {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// maximize objective . x  subject to  rows[i] . x (sense) rhs[i],  x >= 0
template <class T>
struct LinearProgram {
  std::vector<T> objective;
  std::vector<std::vector<T>> rows;
  std::vector<Sense> senses;
  std::vector<T> rhs;
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  T value{};
  std::vector<T> x;
  // Basic columns of the standard form (original variables first, then one
  // slack or surplus column per inequality row, in row order).
  std::vector<std::size_t> basis;
};

namespace simplex_detail {

template <class T>
struct Tol;
template <>
struct Tol<double> {
  static bool positive(double v) { return v > 1e-12; }
  static bool nonzero(double v) { return v > 1e-12 || v < -1e-12; }
};
template <>
struct Tol<Rational> {
  static bool positive(const Rational& v) { return v > 0; }
  static bool nonzero(const Rational& v) { return v != 0; }
};

// Equality rows and rows with a negative right-hand side are normalized so
// that rhs >= 0; inequality rows get a slack (<=) or surplus (>=) column.
template <class T>
struct StandardForm {
  std::size_t original = 0;
  std::size_t columns = 0;  // original + slack/surplus
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<Sense> sense;  // after normalization
  std::vector<std::optional<std::size_t>> slack_of_row;
  std::vector<T> cost;

  explicit StandardForm(const LinearProgram<T>& lp) {
    const std::size_t m = lp.rows.size();
    original = lp.objective.size();
    if (lp.senses.size() != m || lp.rhs.size() != m) throw std::invalid_argument("linear program dimension mismatch");
    for (const auto& r : lp.rows)
      if (r.size() != original) throw std::invalid_argument("linear program dimension mismatch");
    columns = original;
    slack_of_row.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      if (lp.senses[i] != Sense::Equal) slack_of_row[i] = columns++;
    a.assign(m, std::vector<T>(columns, T(0)));
    b.resize(m);
    sense = lp.senses;
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = lp.rhs[i] < T(0);
      const T sign = flip ? T(-1) : T(1);
      for (std::size_t j = 0; j < original; ++j) a[i][j] = sign * lp.rows[i][j];
      b[i] = sign * lp.rhs[i];
      if (flip && sense[i] == Sense::LessEqual)
        sense[i] = Sense::GreaterEqual;
      else if (flip && sense[i] == Sense::GreaterEqual)
        sense[i] = Sense::LessEqual;
      if (slack_of_row[i]) a[i][*slack_of_row[i]] = sense[i] == Sense::LessEqual ? T(1) : T(-1);
    }
    cost.assign(columns, T(0));
    for (std::size_t j = 0; j < original; ++j) cost[j] = lp.objective[j];
  }
};

template <class T>
class Tableau {
 public:
  Tableau(std::vector<std::vector<T>> rows, std::vector<T> rhs, std::vector<std::size_t> basis, std::size_t columns)
      : a_(std::move(rows)), basis_(std::move(basis)), columns_(columns) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i].push_back(rhs[i]);
  }

  // Runs Bland's-rule simplex for `cost` over columns [0, allowed).
  LpStatus optimize(const std::vector<T>& cost, std::size_t allowed) {
    z_.assign(columns_ + 1, T(0));
    for (std::size_t j = 0; j < columns_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const T cb = cost[basis_[i]];
      if (!Tol<T>::nonzero(cb)) continue;
      for (std::size_t j = 0; j <= columns_; ++j) z_[j] -= cb * a_[i][j];
    }
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j)
        if (Tol<T>::positive(z_[j])) {
          enter = j;
          break;
        }
      if (!enter) return LpStatus::Optimal;
      std::optional<std::size_t> leave;
      T best{};
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!Tol<T>::positive(a_[i][*enter])) continue;
        const T ratio = a_[i][columns_] / a_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return LpStatus::Unbounded;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T p = a_[r][c];
    for (auto& v : a_[r]) v /= p;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r) continue;
      const T f = a_[i][c];
      if (!Tol<T>::nonzero(f)) continue;
      for (std::size_t j = 0; j <= columns_; ++j) a_[i][j] -= f * a_[r][j];
    }
    if (!z_.empty()) {
      const T f = z_[c];
      for (std::size_t j = 0; j <= columns_; ++j) z_[j] -= f * a_[r][j];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  T objective_value() const { return -z_[columns_]; }
  std::size_t rows() const { return a_.size(); }
  const T& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const T& rhs(std::size_t i) const { return a_[i][columns_]; }
  const std::vector<std::size_t>& basis() const { return basis_; }

 private:
  std::vector<std::vector<T>> a_;
  std::vector<T> z_;
  std::vector<std::size_t> basis_;
  std::size_t columns_;
};

}  // namespace simplex_detail

// Two-phase primal simplex with Bland's rule.
template <class T>
LpSolution<T> simplex(const LinearProgram<T>& lp) {
  using namespace simplex_detail;
  const StandardForm<T> sf(lp);
  const std::size_t m = sf.a.size();

  // Artificial columns for rows without a usable slack.
  std::size_t total = sf.columns;
  std::vector<std::vector<T>> rows = sf.a;
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> artificial;
  for (std::size_t i = 0; i < m; ++i) {
    if (sf.sense[i] == Sense::LessEqual) {
      basis[i] = *sf.slack_of_row[i];
    } else {
      basis[i] = total++;
      artificial.push_back(i);
    }
  }
  for (auto& r : rows) r.resize(total, T(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= sf.columns) rows[i][basis[i]] = T(1);

  Tableau<T> tab(std::move(rows), sf.b, basis, total);
  LpSolution<T> sol;

  if (!artificial.empty()) {
    std::vector<T> phase1(total, T(0));
    for (std::size_t j = sf.columns; j < total; ++j) phase1[j] = T(-1);
    tab.optimize(phase1, total);
    if (Tol<T>::positive(-tab.objective_value())) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basis()[i] < sf.columns) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < sf.columns; ++j)
        if (Tol<T>::nonzero(tab.at(i, j))) {
          col = j;
          break;
        }
      if (col)
        tab.pivot(i, *col);
      else
        tab.drop_row(i);
    }
  }

  std::vector<T> phase2(total, T(0));
  for (std::size_t j = 0; j < sf.columns; ++j) phase2[j] = sf.cost[j];
  sol.status = tab.optimize(phase2, sf.columns);
  if (sol.status != LpStatus::Optimal) return sol;
  sol.value = tab.objective_value();
  sol.x.assign(sf.original, T(0));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < sf.original) sol.x[tab.basis()[i]] = tab.rhs(i);
  sol.basis = tab.basis();
  return sol;
}

// Exact re-solve of an LP over a given basis (as returned by a floating-point
// solve). Returns the exact optimum if the basis is primal feasible and
// optimal in exact arithmetic, nullopt otherwise.
std::optional<LpSolution<Rational>> resolve_on_basis(const LinearProgram<Rational>& lp, const std::vector<std::size_t>& basis);

// Converts a rational program to floating point.
LinearProgram<double> to_double(const LinearProgram<Rational>& lp);

}  // namespace qliar
