#include "qliar/ncpoly.hpp"

#include <algorithm>

namespace qliar {

IncidenceMatrix incidence(const Scenario& sc) {
  const std::size_t cols = sc.assignment_space();
  if (cols > kMaxIncidenceColumns) throw std::length_error("too many global assignments for the incidence matrix");
  IncidenceMatrix inc;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c)
    for (std::size_t t = 0; t < sc.tuple_count(c); ++t) inc.rows.push_back({c, t});

  const std::size_t n = sc.observables().size();
  inc.columns.reserve(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    GlobalAssignment g(n);
    std::size_t rest = k;
    for (std::size_t i = n; i-- > 0;) {
      const auto d = sc.observable(i).outcomes.size();
      g[i] = rest % d;
      rest /= d;
    }
    inc.columns.push_back(std::move(g));
  }

  std::vector<std::size_t> row_offset;
  std::size_t offset = 0;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    row_offset.push_back(offset);
    offset += sc.tuple_count(c);
  }
  inc.entries.assign(inc.rows.size(), std::vector<std::uint8_t>(cols, 0));
  for (std::size_t k = 0; k < cols; ++k) {
    const auto& g = inc.columns[k];
    for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
      std::vector<std::size_t> t;
      for (auto m : sc.members(c)) t.push_back(g[m]);
      inc.entries[row_offset[c] + sc.flat_index(c, t)][k] = 1;
    }
  }
  return inc;
}

LinearProgram<double> fraction_program(const EmpiricalModel& m, const IncidenceMatrix& inc) {
  LinearProgram<double> lp;
  lp.objective.assign(inc.columns.size(), 1.0);
  for (std::size_t r = 0; r < inc.rows.size(); ++r) {
    lp.rows.emplace_back(inc.entries[r].begin(), inc.entries[r].end());
    lp.senses.push_back(Sense::LessEqual);
    lp.rhs.push_back(m.probability(inc.rows[r].context, inc.rows[r].tuple));
  }
  return lp;
}

LinearProgram<Rational> exact_fraction_program(const EmpiricalModel& m, const IncidenceMatrix& inc) {
  LinearProgram<Rational> lp;
  lp.objective.assign(inc.columns.size(), Rational(1));
  for (std::size_t r = 0; r < inc.rows.size(); ++r) {
    std::vector<Rational> row;
    for (auto e : inc.entries[r]) row.emplace_back(e);
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(Sense::LessEqual);
    const auto& p = m.table(inc.rows[r].context)[inc.rows[r].tuple];
    lp.rhs.push_back(p.exact ? *p.exact : Rational(0));
  }
  return lp;
}

FractionResult contextual_fraction(const EmpiricalModel& m) {
  const auto nd = no_disturbance(m);
  if (nd.max_violation > kSignallingTolerance)
    throw SignallingModel("model is signalling (max marginal violation " + format_double(nd.max_violation) +
                          "); the noncontextual fraction is undefined");

  const auto inc = incidence(m.scenario());
  const auto lp = fraction_program(m, inc);
  const auto sol = simplex(lp);
  // b = 0 is always feasible and the objective is bounded by 1.
  if (sol.status != LpStatus::Optimal) throw std::logic_error("contextual fraction program did not reach an optimum");

  FractionResult result;
  std::vector<double> weights = sol.x;
  std::vector<std::optional<Rational>> exact(weights.size());
  result.ncf = sol.value;

  if (m.all_exact()) {
    const auto exact_lp = exact_fraction_program(m, inc);
    auto exact_sol = resolve_on_basis(exact_lp, sol.basis);
    if (!exact_sol) exact_sol = simplex(exact_lp);
    result.exact_ncf = exact_sol->value;
    result.ncf = to_double(exact_sol->value);
    for (std::size_t k = 0; k < weights.size(); ++k) {
      exact[k] = exact_sol->x[k];
      weights[k] = to_double(exact_sol->x[k]);
    }
  }

  result.ncf = std::clamp(result.ncf, 0.0, 1.0);
  result.cf = 1.0 - result.ncf;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const bool nonzero = exact[k] ? *exact[k] != 0 : weights[k] > kEpsZero;
    if (nonzero) result.witness.push_back({inc.columns[k], weights[k], exact[k]});
  }
  return result;
}

double witness_min_slack(const EmpiricalModel& m, const FractionResult& r) {
  const auto& sc = m.scenario();
  double min_slack = 1.0;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    std::vector<double> used(sc.tuple_count(c), 0.0);
    for (const auto& w : r.witness) {
      std::vector<std::size_t> t;
      for (auto k : sc.members(c)) t.push_back(w.assignment[k]);
      used[sc.flat_index(c, t)] += w.weight;
    }
    for (std::size_t t = 0; t < used.size(); ++t) min_slack = std::min(min_slack, m.probability(c, t) - used[t]);
  }
  for (const auto& w : r.witness) min_slack = std::min(min_slack, w.weight);
  return min_slack;
}

}  // namespace qliar
