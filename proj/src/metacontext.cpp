#include "qliar/metacontext.hpp"

#include "qliar/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qliar {

ObserverChain::ObserverChain(StateVector base, std::vector<ChainAgent> agents) : base_(std::move(base)), agents_(std::move(agents)) {
  if (agents_.empty()) throw std::invalid_argument("observer chain needs at least one agent");
  std::size_t dim = base_.size();
  for (const auto& a : agents_) {
    if (a.basis.dim() != dim)
      throw std::invalid_argument("agent '" + a.name + "' measures a " + std::to_string(a.basis.dim()) +
                                  "-dimensional basis on a " + std::to_string(dim) + "-dimensional compound");
    dim *= a.basis.dim();
  }
}

std::vector<std::size_t> ObserverChain::final_dims() const {
  auto dims = base_.dims();
  for (const auto& a : agents_) dims.push_back(a.basis.dim());
  return dims;
}

double BranchEnsemble::total() const {
  double t = 0.0;
  for (const auto& b : branches) t += b.probability;
  return t;
}

BranchEnsemble describe(const ObserverChain& chain, Cut cut) {
  if (cut.position > chain.agents().size()) throw std::invalid_argument("cut position beyond the chain");
  BranchEnsemble ens{{{1.0, chain.base()}}};
  for (std::size_t k = 0; k < chain.agents().size(); ++k) {
    const auto& agent = chain.agents()[k];
    std::vector<Branch> next;
    for (const auto& br : ens.branches) {
      std::vector<std::size_t> all(br.state.site_count());
      std::iota(all.begin(), all.end(), std::size_t{0});
      if (k < cut.position) {
        next.push_back({br.probability, premeasure(br.state, all, agent.basis)});
        continue;
      }
      const ProductBasis pb({BasisFactor{all, agent.basis}});
      for (std::size_t i = 0; i < agent.basis.dim(); ++i) {
        const std::vector<std::string> outcome{agent.basis.labels()[i]};
        auto proj = project(br.state, pb, outcome);
        const double w = br.probability * proj.probability;
        if (!proj.state || w < kEpsZero) continue;
        const std::size_t digit[] = {i};
        next.push_back({w, tensor(*proj.state, StateVector::basis_state({agent.basis.dim()}, digit))});
      }
    }
    ens.branches = std::move(next);
  }
  return ens;
}

Distribution mixture_distribution(const BranchEnsemble& ensemble, const ProductBasis& basis) {
  std::vector<Distribution::Entry> entries;
  for (const auto& br : ensemble.branches) {
    const auto d = born(br.state, basis);
    if (entries.empty()) {
      entries = d.entries();
      for (auto& e : entries) e.probability = 0.0;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].probability += br.probability * d.entries()[i].probability;
  }
  return Distribution(std::move(entries));
}

CutComparison compare_cuts(const ObserverChain& chain, Cut a, Cut b, const ProductBasis& final_basis) {
  const auto dims = chain.final_dims();
  for (const auto& f : final_basis.factors()) {
    std::size_t d = 1;
    for (auto s : f.sites) {
      if (s >= dims.size()) throw std::invalid_argument("final basis refers to a site outside the chain");
      d *= dims[s];
    }
    if (d != f.basis.dim()) throw std::invalid_argument("final basis dimension does not match its sites");
  }
  CutComparison out{mixture_distribution(describe(chain, a), final_basis), mixture_distribution(describe(chain, b), final_basis), 0.0};
  double l1 = 0.0;
  for (std::size_t i = 0; i < out.first.size(); ++i)
    l1 += std::abs(out.first.entries()[i].probability - out.second.entries()[i].probability);
  out.total_variation = 0.5 * l1;
  return out;
}

std::string AssumptionSet::to_string() const {
  std::vector<std::string> parts;
  if (universality) parts.push_back("Q");
  if (non_meta_contextual) parts.push_back("NMC");
  if (non_contextual) parts.push_back("NC");
  if (single_outcome) parts.push_back("S");
  if (parts.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

AssumptionSet AssumptionSet::parse(const std::string& comma_list) {
  AssumptionSet a{false, false, false, false};
  if (comma_list.empty() || comma_list == "none") return a;
  std::stringstream ss(comma_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "Q")
      a.universality = true;
    else if (tok == "NMC")
      a.non_meta_contextual = true;
    else if (tok == "NC")
      a.non_contextual = true;
    else if (tok == "S")
      a.single_outcome = true;
    else
      throw std::invalid_argument("unknown assumption '" + tok + "' (expected Q, NMC, NC, S)");
  }
  return a;
}

std::vector<AssumptionSet> AssumptionSet::all() {
  std::vector<AssumptionSet> out;
  for (int mask = 15; mask >= 0; --mask) out.push_back({(mask & 8) != 0, (mask & 4) != 0, (mask & 2) != 0, (mask & 1) != 0});
  return out;
}

std::vector<AgentRole> default_roster(const Scenario& sc) {
  std::vector<AgentRole> out;
  for (const auto& o : sc.observables()) out.push_back({o.label, "{" + o.label + "}", {o.label}, false});
  return out;
}

std::vector<AgentRole> friendified_roster(const Friendified& f) {
  std::vector<AgentRole> out;
  for (const auto& p : f.pairs) {
    const std::string who = p.base == "A" ? "Alice" : p.base == "B" ? "Bob" : p.base;
    if (!p.observer_label.empty())
      out.push_back({who + "'s friend", "{" + who + "'s friend, S_" + p.base + "}", {p.observer_label}, false});
    if (!p.meta_label.empty())
      out.push_back({who, "{" + who + ", S_" + p.base + "+F_" + p.base + "}", {p.meta_label}, true});
  }
  return out;
}

namespace {

const AgentRole& owner_of(const std::vector<AgentRole>& roster, const std::string& observable) {
  for (const auto& r : roster)
    if (std::find(r.observables.begin(), r.observables.end(), observable) != r.observables.end()) return r;
  throw std::invalid_argument("no agent owns observable '" + observable + "'");
}

void check_value(const Scenario& sc, const std::string& obs, const std::string& value) {
  auto k = sc.find_observable(obs);
  if (!k) throw std::invalid_argument("claim refers to unknown observable '" + obs + "'");
  if (!sc.observable(*k).outcome_index(value)) throw std::invalid_argument("claim refers to unknown outcome '" + value + "' of '" + obs + "'");
}

}  // namespace

std::vector<Claim> attribute_claims(const Scenario& sc, const std::vector<Sentence>& sentences, const std::vector<AgentRole>& roster) {
  std::vector<Claim> out;
  for (const auto& s : sentences) {
    if (s.context >= sc.contexts().size()) throw std::invalid_argument("sentence refers to an unknown context");
    const auto& ctx = sc.contexts()[s.context].observables;
    const auto& role = owner_of(roster, s.kind == Sentence::Kind::CertainImplication ? s.premise_observable : ctx.front());
    bool needs_q = false;
    for (const auto& o : ctx) needs_q = needs_q || owner_of(roster, o).observes_observer;
    out.push_back({role.agent, role.metacontext, s.context, needs_q, s});
  }
  return out;
}

ClaimVerdict check_claims(const Scenario& sc, const std::vector<Claim>& claims, const std::vector<AgentRole>& roster,
                          const AssumptionSet& assumptions, const SeedEvent& seed) {
  if (seed.context >= sc.contexts().size()) throw std::invalid_argument("seed names an unknown context");
  const auto& seed_ctx = sc.contexts()[seed.context].observables;
  if (seed.outcome.size() != seed_ctx.size()) throw std::invalid_argument("seed outcome does not match its context");
  for (std::size_t i = 0; i < seed_ctx.size(); ++i) check_value(sc, seed_ctx[i], seed.outcome[i]);

  auto scope = [&](const std::string& mc) { return assumptions.non_meta_contextual ? std::string("*") : mc; };
  auto ctx_tag = [&](std::size_t c) { return assumptions.non_contextual ? -1L : static_cast<long>(c); };

  std::vector<Fact> facts;
  for (std::size_t i = 0; i < seed_ctx.size(); ++i) {
    const auto mc = scope(owner_of(roster, seed_ctx[i]).metacontext);
    if (assumptions.non_contextual) {
      facts.push_back({{seed_ctx[i], mc, -1}, seed.outcome[i]});
    } else {
      // Observed values are available to every context's reasoning.
      for (std::size_t c = 0; c < sc.contexts().size(); ++c) facts.push_back({{seed_ctx[i], mc, static_cast<long>(c)}, seed.outcome[i]});
    }
  }

  std::vector<Rule> rules;
  std::vector<std::size_t> rule_claim;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const auto& cl = claims[i];
    if (cl.source.kind != Sentence::Kind::CertainImplication) continue;
    check_value(sc, cl.source.premise_observable, cl.source.premise_value);
    check_value(sc, cl.source.conclusion_observable, cl.source.conclusion_value);
    if (!assumptions.universality && cl.requires_universality) continue;
    const auto mc = scope(cl.metacontext);
    const long c = ctx_tag(cl.context);
    rules.push_back({{{cl.source.premise_observable, mc, c}, cl.source.premise_value},
                     {{cl.source.conclusion_observable, mc, c}, cl.source.conclusion_value}});
    rule_claim.push_back(i);
  }

  ClaimVerdict verdict;
  auto to_step = [&](std::size_t r) {
    const auto& rule = rules[r];
    return ClaimStep{rule_claim[r],
                     rule.premise.var.observable, rule.premise.value, rule.premise.var.scope,
                     rule.conclusion.var.observable, rule.conclusion.value, rule.conclusion.var.scope};
  };
  const auto found = find_contradiction(facts, rules);
  if (!found) {
    for (auto r : propagation_steps(facts, rules)) verdict.trace.push_back(to_step(r));
    return verdict;
  }
  verdict.contradiction = true;
  for (auto r : found->steps) verdict.trace.push_back(to_step(r));
  verdict.observable = found->var.observable;
  verdict.held_value = found->held;
  verdict.derived_value = found->derived;
  verdict.scope = found->var.scope;
  return verdict;
}

}  // namespace qliar
