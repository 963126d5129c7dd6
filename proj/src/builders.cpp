#include "qliar/builders.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qliar {

namespace {

Scenario hardy_scenario(const std::string& name) {
  return Scenario(name,
                  {{"A_c", {"0", "1"}}, {"A_d", {"+", "-"}}, {"B_c", {"0", "1"}}, {"B_d", {"+", "-"}}},
                  {{{"A_d", "B_c"}}, {{"A_c", "B_c"}}, {{"A_c", "B_d"}}, {{"A_d", "B_d"}}});
}

std::map<std::string, MeasurementRecipe> hardy_recipes() {
  const auto comp = Basis::computational();
  const auto diag = Basis::diagonal();
  return {
      {"A_c", {{0}, comp, {"0", "1"}}},
      {"A_d", {{0}, diag, {"+", "-"}}},
      {"B_c", {{1}, comp, {"0", "1"}}},
      {"B_d", {{1}, diag, {"+", "-"}}},
  };
}

bool is_computational(const Basis& b) {
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      if (std::abs(b.vector(i)[j] - (i == j ? Amplitude{1.0} : Amplitude{})) > kEpsNorm) return false;
  return true;
}

std::string base_of(const std::string& label) {
  const auto pos = label.rfind('_');
  return pos == std::string::npos || pos == 0 ? label : label.substr(0, pos);
}

Scenario renamed(const Scenario& sc, const std::string& name) { return Scenario(name, sc.observables(), sc.contexts()); }

}  // namespace

StateVector hardy_state() {
  const double a = 1.0 / std::sqrt(3.0);
  return StateVector({2, 2}, {a, 0.0, a, a});
}

Realized hardy_realization() { return {hardy_scenario("hardy"), {hardy_state(), hardy_recipes()}}; }

Realized product_realization(const StateVector& a, const StateVector& b) {
  if (a.dims() != std::vector<std::size_t>{2} || b.dims() != std::vector<std::size_t>{2})
    throw std::invalid_argument("product realization expects two single qubits");
  return {hardy_scenario("product"), {tensor(a, b), hardy_recipes()}};
}

Friendified friendify(const QuantumRealization& qr, const Scenario& sc) {
  std::set<std::size_t> measured;
  for (const auto& obs : sc.observables()) {
    auto it = qr.recipes.find(obs.label);
    if (it == qr.recipes.end()) throw std::invalid_argument("no measurement recipe for observable '" + obs.label + "'");
    if (it->second.sites.size() != 1) throw std::invalid_argument("friendification needs single-site observables ('" + obs.label + "')");
    const auto s = it->second.sites[0];
    if (s >= qr.state.site_count() || qr.state.dims()[s] != 2)
      throw std::invalid_argument("friendification needs qubit sites ('" + obs.label + "' is measured on a non-qubit site)");
    measured.insert(s);
  }

  // Premeasure in ascending site order; every memory insertion shifts later
  // sites by one.
  StateVector state = qr.state;
  std::map<std::size_t, std::size_t> new_pos;
  std::size_t shift = 0;
  for (std::size_t s = 0; s < qr.state.site_count(); ++s) {
    new_pos[s] = s + shift;
    if (measured.count(s)) {
      state = premeasure(state, s + shift, Basis::computational());
      ++shift;
    }
  }

  Friendified out{sc, {state, {}}, {}, {}};
  std::vector<Observable> observables;
  std::map<std::size_t, FriendPair> pairs;
  for (const auto& obs : sc.observables()) {
    const auto& r = qr.recipes.at(obs.label);
    const auto site = new_pos[r.sites[0]];
    const bool observer = is_computational(r.basis);
    const std::string base = base_of(obs.label);
    const std::string label = base + (observer ? "_obs" : "_meta");
    for (const auto& [from, to] : out.label_map)
      if (to == label) throw std::invalid_argument("friendified label '" + label + "' produced twice (from '" + from + "' and '" + obs.label + "')");
    out.label_map[obs.label] = label;

    std::vector<std::vector<Amplitude>> vectors;
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<Amplitude> v(4);
      v[0] = r.basis.vector(j)[0];  // |00>
      v[3] = r.basis.vector(j)[1];  // |11>
      vectors.push_back(std::move(v));
    }
    vectors.push_back({0.0, 1.0, 0.0, 0.0});  // |01>
    vectors.push_back({0.0, 0.0, 1.0, 0.0});  // |10>
    std::vector<std::string> labels = r.basis.labels();
    labels.push_back("inc01");
    labels.push_back("inc10");
    std::vector<std::string> reports = r.outcome_of_vector;
    reports.push_back(kInconsistent);
    reports.push_back(kInconsistent);
    out.realization.recipes.emplace(label, MeasurementRecipe{{site, site + 1}, Basis(std::move(vectors), std::move(labels)), std::move(reports)});

    Observable fo{label, obs.outcomes};
    if (!fo.outcome_index(kInconsistent)) fo.outcomes.push_back(kInconsistent);
    observables.push_back(std::move(fo));

    auto& pair = pairs[r.sites[0]];
    if (pair.base.empty()) pair.base = base;
    pair.system_site = site;
    pair.memory_site = site + 1;
    (observer ? pair.observer_label : pair.meta_label) = label;
  }

  std::vector<Context> contexts;
  for (const auto& c : sc.contexts()) {
    Context fc;
    for (const auto& l : c.observables) fc.observables.push_back(out.label_map.at(l));
    contexts.push_back(std::move(fc));
  }
  out.scenario = Scenario(sc.name() + "_friendified", std::move(observables), std::move(contexts));
  for (auto& [site, pair] : pairs) out.pairs.push_back(pair);
  return out;
}

Friendified fr_friendified() {
  const auto hardy = hardy_realization();
  auto f = friendify(hardy.realization, hardy.scenario);
  f.scenario = renamed(f.scenario, "fr");
  return f;
}

Realized fr_realization() {
  auto f = fr_friendified();
  return {std::move(f.scenario), std::move(f.realization)};
}

EmpiricalModel cycle_empirical_model(int n, Parity closing) {
  const auto p = cycle_model(n, closing);
  std::vector<std::vector<Probability>> tables;
  for (std::size_t c = 0; c < p.scenario().contexts().size(); ++c) {
    const Rational share(1, static_cast<long>(p.support_size(c)));
    std::vector<Probability> t;
    for (bool s : p.support(c)) t.push_back(Probability::from_rational(s ? share : Rational(0)));
    tables.push_back(std::move(t));
  }
  return EmpiricalModel(p.scenario(), std::move(tables));
}

std::string describe(const Sentence& s, const Scenario& sc) {
  const auto& ctx = sc.contexts()[s.context].observables;
  std::string where = " [";
  for (std::size_t i = 0; i < ctx.size(); ++i) where += (i ? "," : "") + ctx[i];
  where += "]";
  if (s.kind == Sentence::Kind::CertainImplication)
    return s.premise_observable + "=" + s.premise_value + " => " + s.conclusion_observable + "=" + s.conclusion_value + where;
  std::string out = "P(";
  for (std::size_t i = 0; i < ctx.size(); ++i) out += (i ? ", " : "") + ctx[i] + "=" + s.outcome[i];
  out += ") = " + (s.exact ? to_string(*s.exact) : format_double(s.probability));
  return out + where;
}

std::vector<Sentence> certain_implications(const EmpiricalModel& m, const std::vector<SentenceQuery>& queries) {
  const auto& sc = m.scenario();
  std::vector<Sentence> out;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    const auto& members = sc.members(c);
    for (std::size_t xi = 0; xi < members.size(); ++xi) {
      const auto& ox = sc.observable(members[xi]);
      for (std::size_t xv = 0; xv < ox.outcomes.size(); ++xv) {
        double px = 0.0;
        for (std::size_t f = 0; f < sc.tuple_count(c); ++f)
          if (sc.tuple(c, f)[xi] == xv) px += m.probability(c, f);
        if (px <= kDefaultSupportEps) continue;
        for (std::size_t yi = 0; yi < members.size(); ++yi) {
          if (yi == xi) continue;
          const auto& oy = sc.observable(members[yi]);
          for (std::size_t yv = 0; yv < oy.outcomes.size(); ++yv) {
            double pxy = 0.0;
            for (std::size_t f = 0; f < sc.tuple_count(c); ++f) {
              const auto t = sc.tuple(c, f);
              if (t[xi] == xv && t[yi] == yv) pxy += m.probability(c, f);
            }
            if (std::abs(pxy / px - 1.0) > kEpsNorm) continue;
            Sentence s;
            s.kind = Sentence::Kind::CertainImplication;
            s.context = c;
            s.premise_observable = ox.label;
            s.premise_value = ox.outcomes[xv];
            s.conclusion_observable = oy.label;
            s.conclusion_value = oy.outcomes[yv];
            out.push_back(std::move(s));
          }
        }
      }
    }
  }

  for (const auto& q : queries) {
    if (q.context >= sc.contexts().size()) throw std::invalid_argument("sentence query names an unknown context");
    std::vector<std::size_t> tuples;
    if (q.tuple) {
      if (*q.tuple >= sc.tuple_count(q.context)) throw std::invalid_argument("sentence query names an unknown tuple");
      tuples.push_back(*q.tuple);
    } else {
      double least = 2.0;
      for (std::size_t f = 0; f < sc.tuple_count(q.context); ++f) {
        const double p = m.probability(q.context, f);
        if (p > kDefaultSupportEps) least = std::min(least, p);
      }
      for (std::size_t f = 0; f < sc.tuple_count(q.context); ++f) {
        const double p = m.probability(q.context, f);
        if (p > kDefaultSupportEps && p - least <= kEpsNorm) tuples.push_back(f);
      }
    }
    for (auto f : tuples) {
      Sentence s;
      s.kind = Sentence::Kind::ProbabilityStatement;
      s.context = q.context;
      s.outcome = sc.tuple_labels(q.context, f);
      s.probability = m.probability(q.context, f);
      s.exact = m.table(q.context)[f].exact;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace qliar
