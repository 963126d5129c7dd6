#include "qliar/report.hpp"

#include "qliar/builders.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qliar {

using nlohmann::json;

namespace {

// Values that snap are reported as the snapped fraction, so that inputs
// differing only in rounding give identical reports.
Probability snapped_probability(double x) {
  if (auto r = snap_rational(x)) return Probability::from_rational(*r);
  return {x, std::nullopt};
}

std::string show(const Probability& p) {
  if (!p.exact) return format_double(p.value);
  const auto exact = to_string(*p.exact);
  const auto dec = format_double(p.value);
  return exact == dec ? exact : exact + " (" + dec + ")";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string assignment_text(const std::vector<std::string>& observables, const std::vector<std::string>& values) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < observables.size(); ++i) parts.push_back(observables[i] + "=" + values[i]);
  return join(parts, ", ");
}

std::vector<std::string> member_labels(const Scenario& sc, std::size_t c) { return sc.contexts()[c].observables; }

std::vector<std::string> observable_summary(const Scenario& sc) {
  std::vector<std::string> out;
  for (const auto& o : sc.observables()) out.push_back(o.label + "{" + join(o.outcomes, ",") + "}");
  return out;
}

bool is_three_cycle_odd(const PossibilisticModel& p) {
  const auto ref = cycle_model(3, Parity::Odd);
  return p.scenario().observables() == ref.scenario().observables() && p.scenario().contexts() == ref.scenario().contexts() &&
         [&] {
           for (std::size_t c = 0; c < ref.scenario().contexts().size(); ++c)
             if (p.support(c) != ref.support(c)) return false;
           return true;
         }();
}

CycleSection cycle_section(const PossibilisticModel& p, LocalEvent e) {
  const auto& sc = p.scenario();
  CycleSection s;
  s.context = e.context;
  s.observables = member_labels(sc, e.context);
  s.seed = sc.tuple_labels(e.context, e.tuple);
  if (extends_to_global(p, e.context, e.tuple)) {
    s.status = CycleSection::Status::Extends;
    return s;
  }
  const auto cycle = liar_cycles(p, e);
  if (!cycle) {
    s.status = CycleSection::Status::Unrefuted;
    return s;
  }
  s.steps = cycle->steps;
  s.observable = cycle->contradiction_observable;
  s.held_value = cycle->held_value;
  s.derived_value = cycle->derived_value;
  s.against_seed = cycle->against_seed;
  return s;
}

FractionSection fraction_section(const EmpiricalModel& m) {
  const auto r = contextual_fraction(m);
  FractionSection f;
  f.ncf = r.exact_ncf ? Probability{r.ncf, r.exact_ncf} : snapped_probability(r.ncf);
  f.cf = r.exact_ncf ? Probability::from_rational(Rational(1) - *r.exact_ncf) : snapped_probability(r.cf);
  for (const auto& w : r.witness)
    f.witness.push_back({format_assignment(m.scenario(), w.assignment), w.exact ? Probability{w.weight, w.exact} : snapped_probability(w.weight)});
  return f;
}

const char* kSingleOutcomeNote = "S is structural here: every projection yields one outcome per branch";

}  // namespace

std::vector<AgentRole> complete_roster(const Scenario& sc, std::vector<AgentRole> roster) {
  for (const auto& o : sc.observables()) {
    bool owned = false;
    for (const auto& r : roster) owned = owned || std::find(r.observables.begin(), r.observables.end(), o.label) != r.observables.end();
    if (!owned) roster.push_back({o.label, "{" + o.label + "}", {o.label}, false});
  }
  return roster;
}

std::optional<LocalEvent> primary_seed(const EmpiricalModel& m, const PossibilisticModel& p) {
  std::optional<LocalEvent> best;
  double least = 2.0;
  for (const auto& e : non_extendable(p)) {
    const double q = m.probability(e.context, e.tuple);
    if (q < least - kEpsNorm) {
      least = q;
      best = e;
    }
  }
  return best;
}

AnalysisReport analyze_model(const EmpiricalModel& input, const std::vector<AgentRole>& roster, const AnalysisOptions& options) {
  const auto m = input.snapped();
  const auto& sc = m.scenario();
  AnalysisReport r;
  r.kind = "scenario";
  r.name = sc.name();
  r.observables = observable_summary(sc);

  std::vector<TableSection> tables;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    TableSection t{c, member_labels(sc, c), {}};
    for (std::size_t f = 0; f < sc.tuple_count(c); ++f) t.entries.push_back({sc.tuple_labels(c, f), m.table(c)[f]});
    tables.push_back(std::move(t));
  }
  r.tables = std::move(tables);
  r.max_violation = no_disturbance(m).max_violation;

  const auto p = support_of(m, options.eps);
  std::optional<LocalEvent> seed;
  try {
    r.classification = to_string(classify(p));
    r.global_sections = global_sections(p).size();
    std::vector<CycleSection> cycles;
    for (const auto& e : non_extendable(p)) {
      if (cycles.size() == kMaxReportedCycles) {
        r.notes.push_back("liar cycles truncated at " + std::to_string(kMaxReportedCycles));
        break;
      }
      cycles.push_back(cycle_section(p, e));
    }
    r.cycles = std::move(cycles);
    seed = primary_seed(m, p);
    if (is_three_cycle_odd(p)) r.notes.push_back("the 3-cycle with odd closing parity is a logical illustration, not a quantum-realizable model");
  } catch (const std::length_error& e) {
    r.notes.push_back(std::string("possibilistic analysis skipped: ") + e.what());
  }

  if (*r.max_violation <= kSignallingTolerance) {
    try {
      r.fraction = fraction_section(m);
    } catch (const std::length_error& e) {
      r.notes.push_back(std::string("fraction skipped: ") + e.what());
    }
  } else {
    r.fraction = FractionSection{false, {}, {}, {}};
  }

  std::vector<SentenceQuery> queries;
  if (seed) queries.push_back({seed->context, seed->tuple});
  const auto sentences = certain_implications(m, queries);
  std::vector<std::string> lines;
  for (const auto& s : sentences) lines.push_back(describe(s, sc));
  r.sentences = std::move(lines);

  if (seed) {
    const auto full = complete_roster(sc, roster);
    const auto claims = attribute_claims(sc, sentences, full);
    ClaimsSection cs;
    cs.seed_context = seed->context;
    cs.seed_observables = member_labels(sc, seed->context);
    cs.seed_outcome = sc.tuple_labels(seed->context, seed->tuple);
    cs.seed_probability = m.table(seed->context)[seed->tuple];
    for (const auto& c : claims) cs.claims.push_back({c.agent, c.metacontext, c.context, c.requires_universality, describe(c.source, sc)});
    const auto sets = options.assumptions ? std::vector<AssumptionSet>{*options.assumptions} : AssumptionSet::all();
    for (const auto& a : sets) {
      const auto v = check_claims(sc, claims, full, a, {seed->context, cs.seed_outcome});
      cs.verdicts.push_back({a.to_string(), v.contradiction, v.trace, v.observable, v.held_value, v.derived_value, v.scope});
    }
    r.claims = std::move(cs);
    r.notes.push_back(kSingleOutcomeNote);
  }
  return r;
}

AnalysisReport analyze_chain(const ChainDocument& doc) {
  AnalysisReport r;
  r.kind = "chain";
  r.name = doc.name;
  r.base_dims = doc.chain.base().dims();
  std::vector<AgentLine> agents;
  for (const auto& a : doc.chain.agents()) agents.push_back({a.name, a.basis.labels()});
  r.chain_agents = std::move(agents);
  std::vector<CutSection> cuts;
  for (const auto& c : doc.compares) {
    const auto& fb = std::find_if(doc.finals.begin(), doc.finals.end(), [&](const FinalBasis& f) { return f.name == c.final_basis; })->basis;
    const auto cmp = compare_cuts(doc.chain, c.first, c.second, fb);
    CutSection s{c.first.position, c.second.position, c.final_basis, {}, snapped_probability(cmp.total_variation)};
    for (std::size_t i = 0; i < cmp.first.size(); ++i)
      s.rows.push_back({cmp.first.entries()[i].outcome, snapped_probability(cmp.first.entries()[i].probability),
                        snapped_probability(cmp.second.entries()[i].probability)});
    cuts.push_back(std::move(s));
  }
  r.cuts = std::move(cuts);
  return r;
}

AnalysisReport fraction_report(const EmpiricalModel& input) {
  const auto m = input.snapped();
  AnalysisReport r;
  r.kind = "scenario";
  r.name = m.scenario().name();
  r.observables = observable_summary(m.scenario());
  r.max_violation = no_disturbance(m).max_violation;
  r.fraction = *r.max_violation <= kSignallingTolerance ? fraction_section(m) : FractionSection{false, {}, {}, {}};
  return r;
}

AnalysisReport cycles_report(const EmpiricalModel& input, std::optional<LocalEvent> seed, double eps) {
  const auto m = input.snapped();
  AnalysisReport r;
  r.kind = "scenario";
  r.name = m.scenario().name();
  r.observables = observable_summary(m.scenario());
  const auto p = support_of(m, eps);
  std::vector<CycleSection> cycles;
  if (seed) {
    cycles.push_back(cycle_section(p, *seed));
  } else {
    for (const auto& e : non_extendable(p)) {
      if (cycles.size() == kMaxReportedCycles) {
        r.notes.push_back("liar cycles truncated at " + std::to_string(kMaxReportedCycles));
        break;
      }
      cycles.push_back(cycle_section(p, e));
    }
  }
  r.cycles = std::move(cycles);
  return r;
}

// ---------------------------------------------------------------------------
// Text

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << r.kind << ' ' << r.name << '\n';
  if (!r.observables.empty()) out << "observables: " << join(r.observables, " ") << '\n';
  if (r.tables) {
    out << "tables:\n";
    for (const auto& t : *r.tables) {
      out << "  context " << t.context << " (" << join(t.observables, ", ") << ")\n";
      for (const auto& e : t.entries) out << "    " << join(e.outcome, " ") << "  " << show(e.probability) << '\n';
    }
  }
  if (r.max_violation) out << "no-disturbance: max violation " << format_double(*r.max_violation) << (*r.max_violation <= kEpsNorm ? " (holds)" : " (violated)") << '\n';
  if (r.classification) out << "classification: " << *r.classification << '\n';
  if (r.global_sections) out << "global sections: " << *r.global_sections << '\n';
  if (r.cycles) {
    out << "liar cycles: " << r.cycles->size() << '\n';
    for (const auto& c : *r.cycles) {
      out << "  seed context " << c.context << " (" << assignment_text(c.observables, c.seed) << ")";
      if (c.status == CycleSection::Status::Extends) {
        out << ": extends to a global section\n";
        continue;
      }
      if (c.status == CycleSection::Status::Unrefuted) {
        out << ": extends to no global section, but no chain of certain implications refutes it\n";
        continue;
      }
      out << '\n';
      for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const auto& s = c.steps[i];
        out << "    " << i + 1 << ". ";
        if (s.premise_observable.empty())
          out << "always ";
        else
          out << s.premise_observable << '=' << s.premise_value << " => ";
        out << s.conclusion_observable << '=' << s.conclusion_value << "  [context " << s.context << "]\n";
      }
      out << "    contradiction: " << c.observable << '=' << c.derived_value << " against " << c.observable << '=' << c.held_value
          << (c.against_seed ? " from the seed" : " from an earlier step") << " (length " << c.steps.size() + 1 << ")\n";
    }
  }
  if (r.fraction) {
    if (!r.fraction->defined) {
      out << "noncontextual fraction: undefined (model signals)\n";
    } else {
      out << "noncontextual fraction: " << show(r.fraction->ncf) << '\n';
      out << "contextual fraction: " << show(r.fraction->cf) << '\n';
      out << "witness:\n";
      for (const auto& w : r.fraction->witness) out << "  " << w.assignment << "  " << show(w.weight) << '\n';
    }
  }
  if (r.sentences) {
    out << "sentences:\n";
    for (const auto& s : *r.sentences) out << "  " << s << '\n';
  }
  if (r.claims) {
    const auto& c = *r.claims;
    out << "claims:\n";
    out << "  seed: context " << c.seed_context << " (" << assignment_text(c.seed_observables, c.seed_outcome) << "), probability "
        << show(c.seed_probability) << '\n';
    for (std::size_t i = 0; i < c.claims.size(); ++i) {
      const auto& cl = c.claims[i];
      out << "  " << i + 1 << ". " << cl.agent << " in " << cl.metacontext << ": " << cl.text << (cl.requires_universality ? " (needs Q)" : "") << '\n';
    }
    for (const auto& v : c.verdicts) {
      out << "  assumptions " << v.assumptions << ": " << (v.contradiction ? "Contradiction" : "Consistent") << '\n';
      for (const auto& s : v.trace)
        out << "    claim " << s.claim + 1 << ": " << s.premise_observable << '=' << s.premise_value << " => " << s.conclusion_observable << '='
            << s.conclusion_value << " in " << s.conclusion_scope << '\n';
      if (v.contradiction)
        out << "    " << v.observable << " in " << v.scope << " receives " << v.derived_value << " against " << v.held_value << '\n';
    }
  }
  if (r.chain_agents) {
    std::vector<std::string> dims;
    for (auto d : r.base_dims) dims.push_back(std::to_string(d));
    out << "base system: " << join(dims, "x") << '\n';
    out << "agents:\n";
    for (std::size_t i = 0; i < r.chain_agents->size(); ++i)
      out << "  " << i << ". " << (*r.chain_agents)[i].name << " {" << join((*r.chain_agents)[i].labels, ",") << "}\n";
  }
  if (r.cuts) {
    out << "cut comparisons:\n";
    for (const auto& c : *r.cuts) {
      out << "  cut " << c.first_cut << " vs cut " << c.second_cut << " in basis " << c.final_basis << ": total variation "
          << show(c.total_variation) << '\n';
      for (const auto& row : c.rows) out << "    " << join(row.outcome, " ") << "  " << show(row.first) << "  " << show(row.second) << '\n';
    }
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json prob_json(const Probability& p) {
  json j = {{"value", p.value}};
  if (p.exact) j["exact"] = to_string(*p.exact);
  return j;
}

Probability prob_from(const json& j) {
  Probability p{j.at("value").get<double>(), std::nullopt};
  if (j.contains("exact")) {
    auto n = parse_numeric(j.at("exact").get<std::string>());
    if (!n || !n->exact) throw std::invalid_argument("malformed exact value");
    p.exact = n->exact;
  }
  return p;
}

const char* status_name(CycleSection::Status s) {
  switch (s) {
    case CycleSection::Status::Cycle:
      return "cycle";
    case CycleSection::Status::Extends:
      return "extends";
    case CycleSection::Status::Unrefuted:
      return "unrefuted";
  }
  return "cycle";
}

CycleSection::Status status_from(const std::string& s) {
  if (s == "cycle") return CycleSection::Status::Cycle;
  if (s == "extends") return CycleSection::Status::Extends;
  if (s == "unrefuted") return CycleSection::Status::Unrefuted;
  throw std::invalid_argument("unknown cycle status '" + s + "'");
}

}  // namespace

std::string render_json(const AnalysisReport& r) {
  json j;
  j["kind"] = r.kind;
  j["name"] = r.name;
  if (!r.observables.empty()) j["observables"] = r.observables;
  if (r.tables) {
    json ts = json::array();
    for (const auto& t : *r.tables) {
      json es = json::array();
      for (const auto& e : t.entries) es.push_back({{"outcome", e.outcome}, {"probability", prob_json(e.probability)}});
      ts.push_back({{"context", t.context}, {"observables", t.observables}, {"entries", es}});
    }
    j["tables"] = ts;
  }
  if (r.max_violation) j["max_violation"] = *r.max_violation;
  if (r.classification) j["classification"] = *r.classification;
  if (r.global_sections) j["global_sections"] = *r.global_sections;
  if (r.cycles) {
    json cs = json::array();
    for (const auto& c : *r.cycles) {
      json steps = json::array();
      for (const auto& s : c.steps)
        steps.push_back({{"premise_observable", s.premise_observable},
                         {"premise_value", s.premise_value},
                         {"conclusion_observable", s.conclusion_observable},
                         {"conclusion_value", s.conclusion_value},
                         {"context", s.context}});
      json jc = {{"context", c.context}, {"observables", c.observables}, {"seed", c.seed}, {"status", status_name(c.status)}, {"steps", steps}};
      if (c.status == CycleSection::Status::Cycle) {
        jc["observable"] = c.observable;
        jc["held_value"] = c.held_value;
        jc["derived_value"] = c.derived_value;
        jc["against_seed"] = c.against_seed;
        jc["length"] = c.steps.size() + 1;
      }
      cs.push_back(jc);
    }
    j["liar_cycles"] = cs;
  }
  if (r.fraction) {
    json f = {{"defined", r.fraction->defined}};
    if (r.fraction->defined) {
      f["ncf"] = prob_json(r.fraction->ncf);
      f["cf"] = prob_json(r.fraction->cf);
      json w = json::array();
      for (const auto& e : r.fraction->witness) w.push_back({{"assignment", e.assignment}, {"weight", prob_json(e.weight)}});
      f["witness"] = w;
    }
    j["fraction"] = f;
  }
  if (r.sentences) j["sentences"] = *r.sentences;
  if (r.claims) {
    const auto& c = *r.claims;
    json claims = json::array();
    for (const auto& cl : c.claims)
      claims.push_back({{"agent", cl.agent},
                        {"metacontext", cl.metacontext},
                        {"context", cl.context},
                        {"requires_universality", cl.requires_universality},
                        {"text", cl.text}});
    json verdicts = json::array();
    for (const auto& v : c.verdicts) {
      json trace = json::array();
      for (const auto& s : v.trace)
        trace.push_back({{"claim", s.claim},
                         {"premise_observable", s.premise_observable},
                         {"premise_value", s.premise_value},
                         {"premise_scope", s.premise_scope},
                         {"conclusion_observable", s.conclusion_observable},
                         {"conclusion_value", s.conclusion_value},
                         {"conclusion_scope", s.conclusion_scope}});
      json jv = {{"assumptions", v.assumptions}, {"verdict", v.contradiction ? "Contradiction" : "Consistent"}, {"trace", trace}};
      if (v.contradiction) {
        jv["observable"] = v.observable;
        jv["held_value"] = v.held_value;
        jv["derived_value"] = v.derived_value;
        jv["scope"] = v.scope;
      }
      verdicts.push_back(jv);
    }
    j["claims"] = {{"seed", {{"context", c.seed_context}, {"observables", c.seed_observables}, {"outcome", c.seed_outcome}, {"probability", prob_json(c.seed_probability)}}},
                   {"claims", claims},
                   {"verdicts", verdicts}};
  }
  if (r.chain_agents) {
    json agents = json::array();
    for (const auto& a : *r.chain_agents) agents.push_back({{"name", a.name}, {"labels", a.labels}});
    j["chain"] = {{"base_dims", r.base_dims}, {"agents", agents}};
  }
  if (r.cuts) {
    json cuts = json::array();
    for (const auto& c : *r.cuts) {
      json rows = json::array();
      for (const auto& row : c.rows) rows.push_back({{"outcome", row.outcome}, {"first", prob_json(row.first)}, {"second", prob_json(row.second)}});
      cuts.push_back({{"first_cut", c.first_cut}, {"second_cut", c.second_cut}, {"final_basis", c.final_basis}, {"rows", rows}, {"total_variation", prob_json(c.total_variation)}});
    }
    j["cut_comparisons"] = cuts;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

AnalysisReport parse_report_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
  try {
    AnalysisReport r;
    r.kind = j.at("kind").get<std::string>();
    r.name = j.at("name").get<std::string>();
    if (j.contains("observables")) r.observables = j.at("observables").get<std::vector<std::string>>();
    if (j.contains("tables")) {
      std::vector<TableSection> ts;
      for (const auto& t : j.at("tables")) {
        TableSection s{t.at("context").get<std::size_t>(), t.at("observables").get<std::vector<std::string>>(), {}};
        for (const auto& e : t.at("entries")) s.entries.push_back({e.at("outcome").get<std::vector<std::string>>(), prob_from(e.at("probability"))});
        ts.push_back(std::move(s));
      }
      r.tables = std::move(ts);
    }
    if (j.contains("max_violation")) r.max_violation = j.at("max_violation").get<double>();
    if (j.contains("classification")) r.classification = j.at("classification").get<std::string>();
    if (j.contains("global_sections")) r.global_sections = j.at("global_sections").get<std::size_t>();
    if (j.contains("liar_cycles")) {
      std::vector<CycleSection> cs;
      for (const auto& c : j.at("liar_cycles")) {
        CycleSection s;
        s.context = c.at("context").get<std::size_t>();
        s.observables = c.at("observables").get<std::vector<std::string>>();
        s.seed = c.at("seed").get<std::vector<std::string>>();
        s.status = status_from(c.at("status").get<std::string>());
        for (const auto& st : c.at("steps"))
          s.steps.push_back({st.at("premise_observable").get<std::string>(), st.at("premise_value").get<std::string>(),
                             st.at("conclusion_observable").get<std::string>(), st.at("conclusion_value").get<std::string>(),
                             st.at("context").get<std::size_t>()});
        if (s.status == CycleSection::Status::Cycle) {
          s.observable = c.at("observable").get<std::string>();
          s.held_value = c.at("held_value").get<std::string>();
          s.derived_value = c.at("derived_value").get<std::string>();
          s.against_seed = c.at("against_seed").get<bool>();
        }
        cs.push_back(std::move(s));
      }
      r.cycles = std::move(cs);
    }
    if (j.contains("fraction")) {
      const auto& f = j.at("fraction");
      FractionSection s;
      s.defined = f.at("defined").get<bool>();
      if (s.defined) {
        s.ncf = prob_from(f.at("ncf"));
        s.cf = prob_from(f.at("cf"));
        for (const auto& w : f.at("witness")) s.witness.push_back({w.at("assignment").get<std::string>(), prob_from(w.at("weight"))});
      }
      r.fraction = std::move(s);
    }
    if (j.contains("sentences")) r.sentences = j.at("sentences").get<std::vector<std::string>>();
    if (j.contains("claims")) {
      const auto& c = j.at("claims");
      ClaimsSection s;
      const auto& seed = c.at("seed");
      s.seed_context = seed.at("context").get<std::size_t>();
      s.seed_observables = seed.at("observables").get<std::vector<std::string>>();
      s.seed_outcome = seed.at("outcome").get<std::vector<std::string>>();
      s.seed_probability = prob_from(seed.at("probability"));
      for (const auto& cl : c.at("claims"))
        s.claims.push_back({cl.at("agent").get<std::string>(), cl.at("metacontext").get<std::string>(), cl.at("context").get<std::size_t>(),
                            cl.at("requires_universality").get<bool>(), cl.at("text").get<std::string>()});
      for (const auto& v : c.at("verdicts")) {
        VerdictSection vs;
        vs.assumptions = v.at("assumptions").get<std::string>();
        vs.contradiction = v.at("verdict").get<std::string>() == "Contradiction";
        for (const auto& t : v.at("trace"))
          vs.trace.push_back({t.at("claim").get<std::size_t>(), t.at("premise_observable").get<std::string>(), t.at("premise_value").get<std::string>(),
                              t.at("premise_scope").get<std::string>(), t.at("conclusion_observable").get<std::string>(),
                              t.at("conclusion_value").get<std::string>(), t.at("conclusion_scope").get<std::string>()});
        if (vs.contradiction) {
          vs.observable = v.at("observable").get<std::string>();
          vs.held_value = v.at("held_value").get<std::string>();
          vs.derived_value = v.at("derived_value").get<std::string>();
          vs.scope = v.at("scope").get<std::string>();
        }
        s.verdicts.push_back(std::move(vs));
      }
      r.claims = std::move(s);
    }
    if (j.contains("chain")) {
      const auto& c = j.at("chain");
      r.base_dims = c.at("base_dims").get<std::vector<std::size_t>>();
      std::vector<AgentLine> agents;
      for (const auto& a : c.at("agents")) agents.push_back({a.at("name").get<std::string>(), a.at("labels").get<std::vector<std::string>>()});
      r.chain_agents = std::move(agents);
    }
    if (j.contains("cut_comparisons")) {
      std::vector<CutSection> cuts;
      for (const auto& c : j.at("cut_comparisons")) {
        CutSection s{c.at("first_cut").get<std::size_t>(), c.at("second_cut").get<std::size_t>(), c.at("final_basis").get<std::string>(), {},
                     prob_from(c.at("total_variation"))};
        for (const auto& row : c.at("rows"))
          s.rows.push_back({row.at("outcome").get<std::vector<std::string>>(), prob_from(row.at("first")), prob_from(row.at("second"))});
        cuts.push_back(std::move(s));
      }
      r.cuts = std::move(cuts);
    }
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace qliar
