#include "qliar/logic.hpp"

#include "qliar/derivation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qliar {

namespace {

void check_guard(const Scenario& sc) {
  if (sc.assignment_space() > kMaxEnumeration)
    throw std::length_error("assignment space of '" + sc.name() + "' exceeds the enumeration guard");
}

// Depth-first enumeration of global sections in lexicographic order. A
// context is checked as soon as its last member (in scenario order) is set.
class SectionSearch {
 public:
  explicit SectionSearch(const PossibilisticModel& p) : p_(p), sc_(p.scenario()) {
    check_guard(sc_);
    const auto n = sc_.observables().size();
    closing_.resize(n);
    for (std::size_t c = 0; c < sc_.contexts().size(); ++c) {
      const auto& m = sc_.members(c);
      closing_[*std::max_element(m.begin(), m.end())].push_back(c);
    }
    allowed_.resize(n);
    for (std::size_t i = 0; i < n; ++i) allowed_[i].assign(sc_.observable(i).outcomes.size(), true);
  }

  void restrict(std::size_t observable, std::size_t value) {
    std::fill(allowed_[observable].begin(), allowed_[observable].end(), false);
    allowed_[observable][value] = true;
  }

  // Calls visit for each section; stops early when visit returns false.
  void run(const std::function<bool(const GlobalAssignment&)>& visit) {
    GlobalAssignment g(sc_.observables().size());
    descend(0, g, visit);
  }

 private:
  bool descend(std::size_t i, GlobalAssignment& g, const std::function<bool(const GlobalAssignment&)>& visit) {
    if (i == g.size()) return visit(g);
    for (std::size_t v = 0; v < allowed_[i].size(); ++v) {
      if (!allowed_[i][v]) continue;
      g[i] = v;
      bool ok = true;
      for (auto c : closing_[i]) {
        std::vector<std::size_t> t;
        for (auto k : sc_.members(c)) t.push_back(g[k]);
        if (!p_.possible(c, sc_.flat_index(c, t))) {
          ok = false;
          break;
        }
      }
      if (ok && !descend(i + 1, g, visit)) return false;
    }
    return true;
  }

  const PossibilisticModel& p_;
  const Scenario& sc_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::vector<bool>> allowed_;
};

void require_possible(const PossibilisticModel& p, std::size_t context, std::size_t tuple) {
  if (context >= p.scenario().contexts().size()) throw std::invalid_argument("context index out of range");
  if (tuple >= p.scenario().tuple_count(context)) throw std::invalid_argument("tuple index out of range");
  if (!p.possible(context, tuple)) throw std::invalid_argument("tuple is not in the context's support");
}

std::vector<std::vector<bool>> covered_tuples(const PossibilisticModel& p, std::size_t* section_count) {
  const auto& sc = p.scenario();
  std::vector<std::vector<bool>> covered;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) covered.emplace_back(sc.tuple_count(c), false);
  std::size_t count = 0;
  SectionSearch(p).run([&](const GlobalAssignment& g) {
    ++count;
    for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
      std::vector<std::size_t> t;
      for (auto k : sc.members(c)) t.push_back(g[k]);
      covered[c][sc.flat_index(c, t)] = true;
    }
    return true;
  });
  if (section_count) *section_count = count;
  return covered;
}

}  // namespace

std::string format_assignment(const Scenario& sc, const GlobalAssignment& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ' ';
    out += sc.observable(i).label + "=" + sc.observable(i).outcomes[g[i]];
  }
  return out;
}

std::vector<GlobalAssignment> global_sections(const PossibilisticModel& p) {
  std::vector<GlobalAssignment> out;
  SectionSearch(p).run([&](const GlobalAssignment& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

bool extends_to_global(const PossibilisticModel& p, std::size_t context, std::size_t tuple) {
  require_possible(p, context, tuple);
  const auto& sc = p.scenario();
  SectionSearch search(p);
  const auto t = sc.tuple(context, tuple);
  for (std::size_t i = 0; i < t.size(); ++i) search.restrict(sc.members(context)[i], t[i]);
  bool found = false;
  search.run([&](const GlobalAssignment&) {
    found = true;
    return false;
  });
  return found;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::GloballyExtendable: return "GloballyExtendable";
    case Classification::LogicallyContextual: return "LogicallyContextual";
    case Classification::StronglyContextual: return "StronglyContextual";
  }
  return "?";
}

std::optional<Classification> classification_from_string(const std::string& s) {
  for (auto c : {Classification::GloballyExtendable, Classification::LogicallyContextual, Classification::StronglyContextual})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

Classification classify(const PossibilisticModel& p) {
  std::size_t count = 0;
  const auto covered = covered_tuples(p, &count);
  if (count == 0) return Classification::StronglyContextual;
  for (std::size_t c = 0; c < covered.size(); ++c)
    for (std::size_t t = 0; t < covered[c].size(); ++t)
      if (p.possible(c, t) && !covered[c][t]) return Classification::LogicallyContextual;
  return Classification::GloballyExtendable;
}

std::vector<LocalEvent> non_extendable(const PossibilisticModel& p) {
  const auto covered = covered_tuples(p, nullptr);
  std::vector<LocalEvent> out;
  for (std::size_t c = 0; c < covered.size(); ++c)
    for (std::size_t t = 0; t < covered[c].size(); ++t)
      if (p.possible(c, t) && !covered[c][t]) out.push_back({c, t});
  return out;
}

bool forces(const PossibilisticModel& p, std::size_t c, std::size_t x, std::size_t xv, std::size_t y, std::size_t yv) {
  const auto& sc = p.scenario();
  const auto& m = sc.members(c);
  const auto xi = static_cast<std::size_t>(std::find(m.begin(), m.end(), x) - m.begin());
  const auto yi = static_cast<std::size_t>(std::find(m.begin(), m.end(), y) - m.begin());
  if (xi == m.size() || yi == m.size()) return false;
  for (std::size_t f = 0; f < sc.tuple_count(c); ++f) {
    if (!p.possible(c, f)) continue;
    const auto t = sc.tuple(c, f);
    if (t[xi] == xv && t[yi] != yv) return false;
  }
  return true;
}

bool certain(const PossibilisticModel& p, std::size_t c, std::size_t y, std::size_t yv) {
  const auto& sc = p.scenario();
  const auto& m = sc.members(c);
  const auto yi = static_cast<std::size_t>(std::find(m.begin(), m.end(), y) - m.begin());
  if (yi == m.size()) return false;
  for (std::size_t f = 0; f < sc.tuple_count(c); ++f)
    if (p.possible(c, f) && sc.tuple(c, f)[yi] != yv) return false;
  return true;
}

namespace {

// Premise of unconditional rules; always among the seed facts.
const Fact kTrue{{"", "", -1}, ""};

struct CycleRules {
  std::vector<Rule> rules;
  std::vector<ImplicationStep> steps;
};

CycleRules implication_rules(const PossibilisticModel& p) {
  const auto& sc = p.scenario();
  CycleRules out;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    const auto& m = sc.members(c);
    for (auto x : m) {
      const auto& ox = sc.observable(x);
      for (std::size_t xv = 0; xv < ox.outcomes.size(); ++xv) {
        for (auto y : m) {
          const auto& oy = sc.observable(y);
          for (std::size_t yv = 0; yv < oy.outcomes.size(); ++yv) {
            if (x == y && xv == yv) continue;
            if (!forces(p, c, x, xv, y, yv)) continue;
            out.rules.push_back({{{ox.label, "", -1}, ox.outcomes[xv]}, {{oy.label, "", -1}, oy.outcomes[yv]}});
            out.steps.push_back({ox.label, ox.outcomes[xv], oy.label, oy.outcomes[yv], c});
          }
        }
      }
    }
  }
  for (std::size_t c = 0; c < sc.contexts().size(); ++c)
    for (auto y : sc.members(c)) {
      const auto& oy = sc.observable(y);
      for (std::size_t yv = 0; yv < oy.outcomes.size(); ++yv) {
        if (!certain(p, c, y, yv)) continue;
        out.rules.push_back({kTrue, {{oy.label, "", -1}, oy.outcomes[yv]}});
        out.steps.push_back({"", "", oy.label, oy.outcomes[yv], c});
      }
    }
  return out;
}

}  // namespace

std::optional<LiarCycle> liar_cycles(const PossibilisticModel& p, LocalEvent seed) {
  require_possible(p, seed.context, seed.tuple);
  if (extends_to_global(p, seed.context, seed.tuple)) return std::nullopt;
  const auto& sc = p.scenario();
  const auto labels = sc.tuple_labels(seed.context, seed.tuple);
  std::vector<Fact> facts;
  for (std::size_t i = 0; i < labels.size(); ++i) facts.push_back({{sc.observable(sc.members(seed.context)[i]).label, "", -1}, labels[i]});
  facts.push_back(kTrue);

  const auto rules = implication_rules(p);
  auto found = find_contradiction(facts, rules.rules);
  if (!found) return std::nullopt;  // forward chaining cannot refute this seed

  LiarCycle cycle;
  cycle.seed = seed;
  for (auto r : found->steps) cycle.steps.push_back(rules.steps[r]);
  cycle.contradiction_observable = found->var.observable;
  cycle.held_value = found->held;
  cycle.derived_value = found->derived;
  cycle.against_seed = !found->held_by_step.has_value();
  return cycle;
}

bool verify(const PossibilisticModel& p, const LiarCycle& cycle) {
  const auto& sc = p.scenario();
  if (cycle.seed.context >= sc.contexts().size() || cycle.seed.tuple >= sc.tuple_count(cycle.seed.context)) return false;
  if (!p.possible(cycle.seed.context, cycle.seed.tuple)) return false;
  if (cycle.steps.empty()) return false;

  std::vector<std::pair<std::string, std::string>> seed;
  const auto labels = sc.tuple_labels(cycle.seed.context, cycle.seed.tuple);
  for (std::size_t i = 0; i < labels.size(); ++i) seed.emplace_back(sc.observable(sc.members(cycle.seed.context)[i]).label, labels[i]);

  auto value_index = [&](const std::string& obs, const std::string& val) -> std::optional<std::pair<std::size_t, std::size_t>> {
    auto k = sc.find_observable(obs);
    if (!k) return std::nullopt;
    auto v = sc.observable(*k).outcome_index(val);
    if (!v) return std::nullopt;
    return std::pair{*k, *v};
  };

  std::vector<std::pair<std::string, std::string>> known = seed;
  for (std::size_t s = 0; s < cycle.steps.size(); ++s) {
    const auto& st = cycle.steps[s];
    auto y = value_index(st.conclusion_observable, st.conclusion_value);
    if (!y || st.context >= sc.contexts().size()) return false;
    if (st.premise_observable.empty()) {
      if (!st.premise_value.empty() || !certain(p, st.context, y->first, y->second)) return false;
    } else {
      const std::pair premise{st.premise_observable, st.premise_value};
      if (std::find(known.begin(), known.end(), premise) == known.end()) return false;
      auto x = value_index(st.premise_observable, st.premise_value);
      if (!x || !forces(p, st.context, x->first, x->second, y->first, y->second)) return false;
    }
    if (s + 1 < cycle.steps.size()) known.emplace_back(st.conclusion_observable, st.conclusion_value);
  }
  const auto& last = cycle.steps.back();
  if (last.conclusion_observable != cycle.contradiction_observable || last.conclusion_value != cycle.derived_value) return false;
  if (cycle.held_value == cycle.derived_value) return false;
  const std::pair held{cycle.contradiction_observable, cycle.held_value};
  if (cycle.against_seed) return std::find(seed.begin(), seed.end(), held) != seed.end();
  return std::find(known.begin() + static_cast<std::ptrdiff_t>(seed.size()), known.end(), held) != known.end();
}

PossibilisticModel cycle_model(int n, Parity closing) {
  if (n < 3) throw std::invalid_argument("cycle models need at least 3 observables");
  std::vector<Observable> obs;
  std::vector<Context> ctx;
  for (int i = 1; i <= n; ++i) obs.push_back({"S" + std::to_string(i), {"0", "1"}});
  for (int i = 1; i <= n; ++i) ctx.push_back({{"S" + std::to_string(i), "S" + std::to_string(i % n + 1)}});
  const std::string name = "cycle_" + std::to_string(n) + (closing == Parity::Odd ? "_odd" : "_even");
  Scenario sc(name, std::move(obs), std::move(ctx));
  std::vector<std::vector<bool>> support;
  const std::vector<bool> equal{true, false, false, true};
  const std::vector<bool> unequal{false, true, true, false};
  for (int i = 0; i < n; ++i) support.push_back(i == n - 1 && closing == Parity::Odd ? unequal : equal);
  return PossibilisticModel(std::move(sc), std::move(support));
}

}  // namespace qliar
