#include "qliar/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace qliar {

std::optional<std::size_t> Observable::outcome_index(const std::string& outcome) const {
  auto it = std::find(outcomes.begin(), outcomes.end(), outcome);
  if (it == outcomes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes.begin());
}

Scenario::Scenario(std::string name, std::vector<Observable> observables, std::vector<Context> contexts)
    : name_(std::move(name)), observables_(std::move(observables)), contexts_(std::move(contexts)) {
  if (observables_.empty()) throw std::invalid_argument("scenario has no observables");
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    const auto& o = observables_[i];
    if (o.label.empty()) throw std::invalid_argument("observable with empty label");
    if (o.outcomes.size() < 2) throw std::invalid_argument("observable '" + o.label + "' needs at least two outcomes");
    std::set<std::string> distinct(o.outcomes.begin(), o.outcomes.end());
    if (distinct.size() != o.outcomes.size()) throw std::invalid_argument("observable '" + o.label + "' has duplicate outcomes");
    for (std::size_t j = 0; j < i; ++j)
      if (observables_[j].label == o.label) throw std::invalid_argument("duplicate observable '" + o.label + "'");
  }
  if (contexts_.empty()) throw std::invalid_argument("scenario has no contexts");
  std::vector<bool> covered(observables_.size(), false);
  std::set<std::set<std::string>> seen;
  for (const auto& c : contexts_) {
    if (c.observables.empty()) throw std::invalid_argument("empty context");
    std::vector<std::size_t> idx;
    for (const auto& label : c.observables) {
      auto k = find_observable(label);
      if (!k) throw std::invalid_argument("context names unknown observable '" + label + "'");
      if (std::find(idx.begin(), idx.end(), *k) != idx.end())
        throw std::invalid_argument("observable '" + label + "' listed twice in one context");
      idx.push_back(*k);
      covered[*k] = true;
    }
    if (!seen.insert({c.observables.begin(), c.observables.end()}).second)
      throw std::invalid_argument("duplicate context");
    members_.push_back(std::move(idx));
  }
  for (std::size_t i = 0; i < observables_.size(); ++i)
    if (!covered[i]) throw std::invalid_argument("observable '" + observables_[i].label + "' appears in no context");
}

std::optional<std::size_t> Scenario::find_observable(const std::string& label) const {
  for (std::size_t i = 0; i < observables_.size(); ++i)
    if (observables_[i].label == label) return i;
  return std::nullopt;
}

std::size_t Scenario::observable_index(const std::string& label) const {
  auto k = find_observable(label);
  if (!k) throw std::invalid_argument("unknown observable '" + label + "'");
  return *k;
}

std::optional<std::size_t> Scenario::find_context(std::span<const std::string> labels) const {
  for (std::size_t c = 0; c < contexts_.size(); ++c)
    if (std::equal(labels.begin(), labels.end(), contexts_[c].observables.begin(), contexts_[c].observables.end())) return c;
  return std::nullopt;
}

std::size_t Scenario::tuple_count(std::size_t c) const {
  std::size_t n = 1;
  for (auto k : members_[c]) n *= observables_[k].outcomes.size();
  return n;
}

std::vector<std::size_t> Scenario::tuple(std::size_t c, std::size_t flat) const {
  const auto& m = members_[c];
  std::vector<std::size_t> out(m.size());
  for (std::size_t i = m.size(); i-- > 0;) {
    const auto d = observables_[m[i]].outcomes.size();
    out[i] = flat % d;
    flat /= d;
  }
  return out;
}

std::size_t Scenario::flat_index(std::size_t c, std::span<const std::size_t> outcomes) const {
  const auto& m = members_[c];
  if (outcomes.size() != m.size()) throw std::invalid_argument("tuple length does not match context");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto d = observables_[m[i]].outcomes.size();
    if (outcomes[i] >= d) throw std::invalid_argument("outcome index out of range");
    flat = flat * d + outcomes[i];
  }
  return flat;
}

std::vector<std::string> Scenario::tuple_labels(std::size_t c, std::size_t flat) const {
  const auto t = tuple(c, flat);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(observables_[members_[c][i]].outcomes[t[i]]);
  return out;
}

std::optional<std::size_t> Scenario::find_tuple(std::size_t c, std::span<const std::string> labels) const {
  const auto& m = members_[c];
  if (labels.size() != m.size()) return std::nullopt;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto k = observables_[m[i]].outcome_index(labels[i]);
    if (!k) return std::nullopt;
    idx.push_back(*k);
  }
  return flat_index(c, idx);
}

std::size_t Scenario::assignment_space() const {
  std::size_t n = 1;
  for (const auto& o : observables_) {
    if (n > std::numeric_limits<std::size_t>::max() / o.outcomes.size()) return std::numeric_limits<std::size_t>::max();
    n *= o.outcomes.size();
  }
  return n;
}

EmpiricalModel::EmpiricalModel(Scenario scenario, std::vector<std::vector<Probability>> tables, double tolerance)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
  const auto& contexts = scenario_.contexts();
  if (tables_.size() != contexts.size()) throw std::invalid_argument("every context needs a table");
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    if (tables_[c].size() != scenario_.tuple_count(c))
      throw std::invalid_argument("table " + std::to_string(c) + " has the wrong number of entries");
    double total = 0.0;
    for (const auto& p : tables_[c]) {
      if (!(p.value >= -kEpsZero && p.value <= 1.0 + kEpsZero))
        throw std::invalid_argument("probability outside [0, 1] in table " + std::to_string(c));
      total += p.value;
    }
    if (std::abs(total - 1.0) > tolerance)
      throw std::invalid_argument("table " + std::to_string(c) + " sums to " + format_double(total) + ", not 1");
  }
}

bool EmpiricalModel::all_exact() const {
  for (const auto& t : tables_)
    for (const auto& p : t)
      if (!p.exact) return false;
  return true;
}

EmpiricalModel EmpiricalModel::snapped() const {
  if (all_exact()) return *this;
  auto tables = tables_;
  for (auto& t : tables) {
    Rational sum = 0;
    for (auto& p : t) {
      if (!p.exact) {
        auto r = snap_rational(p.value);
        if (!r || *r < 0) return *this;
        p = Probability::from_rational(*r);
      }
      sum += *p.exact;
    }
    if (sum != 1) return *this;
  }
  return EmpiricalModel(scenario_, std::move(tables));
}

EmpiricalModel realize(const QuantumRealization& qr, const Scenario& sc) {
  std::vector<std::vector<Probability>> tables;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    const auto& members = sc.members(c);
    std::vector<BasisFactor> factors;
    std::vector<const MeasurementRecipe*> recipes;
    std::vector<std::size_t> used_sites;
    for (auto k : members) {
      const auto& obs = sc.observable(k);
      auto it = qr.recipes.find(obs.label);
      if (it == qr.recipes.end()) throw std::invalid_argument("no measurement recipe for observable '" + obs.label + "'");
      const auto& r = it->second;
      if (r.outcome_of_vector.size() != r.basis.dim())
        throw std::invalid_argument("recipe for '" + obs.label + "' needs one outcome per basis vector");
      for (const auto& o : r.outcome_of_vector)
        if (!obs.outcome_index(o)) throw std::invalid_argument("recipe for '" + obs.label + "' reports unknown outcome '" + o + "'");
      for (auto s : r.sites) {
        if (std::find(used_sites.begin(), used_sites.end(), s) != used_sites.end())
          throw std::invalid_argument("observables in context " + std::to_string(c) + " overlap on site " + std::to_string(s));
        used_sites.push_back(s);
      }
      factors.push_back({r.sites, r.basis});
      recipes.push_back(&r);
    }
    const ProductBasis pb(std::move(factors));
    const auto dist = born(qr.state, pb);
    std::vector<double> table(sc.tuple_count(c), 0.0);
    std::vector<std::size_t> outcome(members.size());
    for (const auto& e : dist.entries()) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        const auto v = *recipes[i]->basis.find_label(e.outcome[i]);
        outcome[i] = *sc.observable(members[i]).outcome_index(recipes[i]->outcome_of_vector[v]);
      }
      table[sc.flat_index(c, outcome)] += e.probability;
    }
    std::vector<Probability> probs;
    for (double p : table) probs.push_back({std::clamp(p, 0.0, 1.0), std::nullopt});
    tables.push_back(std::move(probs));
  }
  return EmpiricalModel(sc, std::move(tables));
}

namespace {

// Marginal of context c on the given observable indices (all members of c),
// keyed by the outcome indices of those observables.
std::map<std::vector<std::size_t>, double> marginal(const EmpiricalModel& m, std::size_t c, std::span<const std::size_t> shared) {
  const auto& sc = m.scenario();
  const auto& members = sc.members(c);
  std::vector<std::size_t> pos;
  for (auto k : shared) pos.push_back(static_cast<std::size_t>(std::find(members.begin(), members.end(), k) - members.begin()));
  std::map<std::vector<std::size_t>, double> out;
  for (std::size_t f = 0; f < sc.tuple_count(c); ++f) {
    const auto t = sc.tuple(c, f);
    std::vector<std::size_t> key;
    for (auto p : pos) key.push_back(t[p]);
    out[key] += m.probability(c, f);
  }
  return out;
}

}  // namespace

DisturbanceReport no_disturbance(const EmpiricalModel& m) {
  const auto& sc = m.scenario();
  DisturbanceReport report;
  for (std::size_t a = 0; a < sc.contexts().size(); ++a) {
    for (std::size_t b = a + 1; b < sc.contexts().size(); ++b) {
      std::vector<std::size_t> shared;
      for (auto k : sc.members(a))
        if (std::find(sc.members(b).begin(), sc.members(b).end(), k) != sc.members(b).end()) shared.push_back(k);
      if (shared.empty()) continue;
      std::sort(shared.begin(), shared.end());
      const auto ma = marginal(m, a, shared);
      const auto mb = marginal(m, b, shared);
      double v = 0.0;
      for (const auto& [key, p] : ma) {
        auto it = mb.find(key);
        v = std::max(v, std::abs(p - (it == mb.end() ? 0.0 : it->second)));
      }
      DisturbanceEntry e;
      for (auto k : shared) e.shared.push_back(sc.observable(k).label);
      e.context_a = a;
      e.context_b = b;
      e.violation = v;
      report.max_violation = std::max(report.max_violation, v);
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

PossibilisticModel::PossibilisticModel(Scenario scenario, std::vector<std::vector<bool>> support)
    : scenario_(std::move(scenario)), support_(std::move(support)) {
  if (support_.size() != scenario_.contexts().size()) throw std::invalid_argument("every context needs a support");
  for (std::size_t c = 0; c < support_.size(); ++c) {
    if (support_[c].size() != scenario_.tuple_count(c))
      throw std::invalid_argument("support " + std::to_string(c) + " has the wrong number of entries");
    if (support_size(c) == 0) throw std::invalid_argument("context " + std::to_string(c) + " has empty support (degenerate model)");
  }
}

std::size_t PossibilisticModel::support_size(std::size_t c) const {
  return static_cast<std::size_t>(std::count(support_[c].begin(), support_[c].end(), true));
}

PossibilisticModel support_of(const EmpiricalModel& m, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("support threshold must be non-negative");
  std::vector<std::vector<bool>> support;
  for (const auto& t : m.tables()) {
    std::vector<bool> s;
    for (const auto& p : t) s.push_back(p.value > eps);
    support.push_back(std::move(s));
  }
  return PossibilisticModel(m.scenario(), std::move(support));
}

}  // namespace qliar
