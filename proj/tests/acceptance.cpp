// Acceptance gate: one PASS/FAIL line per criterion.

#include "oracles.hpp"
#include "qliar/builders.hpp"
#include "qliar/cli.hpp"
#include "qliar/logic.hpp"
#include "qliar/metacontext.hpp"
#include "qliar/ncpoly.hpp"
#include "qliar/scenario_io.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qliar;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os << what << ": got " << format_double(got) << ", want " << format_double(want);
      failures_.push_back(os.str());
    }
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

EmpiricalModel hardy_model() {
  const auto h = hardy_realization();
  return realize(h.realization, h.scenario);
}

void hardy_tables(Check& k) {
  const auto m = hardy_model();
  const auto& sc = m.scenario();
  auto table = [&](const std::string& x, const std::string& y, const std::vector<double>& want) {
    const std::vector<std::string> labels{x, y};
    const auto c = sc.find_context(labels);
    k.expect(c.has_value(), "context " + x + "," + y);
    if (!c) return;
    for (std::size_t f = 0; f < 4; ++f) k.near(m.probability(*c, f), want[f], 1e-9, x + "," + y + " entry " + std::to_string(f));
  };
  table("A_c", "B_c", {1.0 / 3, 0.0, 1.0 / 3, 1.0 / 3});
  table("A_d", "B_c", {2.0 / 3, 1.0 / 6, 0.0, 1.0 / 6});
  table("A_c", "B_d", {1.0 / 6, 1.0 / 6, 2.0 / 3, 0.0});
  table("A_d", "B_d", {9.0 / 12, 1.0 / 12, 1.0 / 12, 1.0 / 12});
}

void hardy_cycle(Check& k) {
  const auto m = hardy_model();
  k.near(m.probability(3, 3), 1.0 / 12, 1e-9, "P(-,-)");
  const auto p = support_of(m);
  const auto cyc = liar_cycles(p, {3, 3});
  k.expect(cyc.has_value(), "cycle from (-,-)");
  if (!cyc) return;
  const std::vector<ImplicationStep> want{{"A_d", "-", "B_c", "1", 0}, {"B_c", "1", "A_c", "1", 1}, {"A_c", "1", "B_d", "+", 2}};
  k.expect(cyc->steps == want, "chain A_d=- => B_c=1 => A_c=1 => B_d=+");
  k.expect(cyc->against_seed && cyc->contradiction_observable == "B_d" && cyc->held_value == "-" && cyc->derived_value == "+",
           "contradicts the seed's B_d=-");
  k.expect(verify(p, *cyc), "cycle verifies");
}

void hardy_classification(Check& k) {
  const auto p = support_of(hardy_model());
  k.expect(classify(p) == Classification::LogicallyContextual, "LogicallyContextual");
  const auto s = global_sections(p);
  k.expect(s.size() == 5, "5 global sections, found " + std::to_string(s.size()));
  k.expect(s == oracle::sections(p), "sections match exhaustive enumeration");
  std::size_t by_hand = 0;
  for (std::size_t g = 0; g < 16; ++g) {
    const std::size_t ac = g >> 3 & 1, ad = g >> 2 & 1, bc = g >> 1 & 1, bd = g & 1;
    by_hand += !(ad == 1 && bc == 0) && !(ac == 0 && bc == 1) && !(ac == 1 && bd == 1);
  }
  k.expect(by_hand == 5, "forbidden-pair count");
  k.expect(!extends_to_global(p, 3, 3), "(-,-) does not extend");
  k.expect(extends_to_global(p, 3, 0), "(+,+) extends");
}

bool implication(const std::vector<Sentence>& ss, const std::string& x, const std::string& xv, const std::string& y, const std::string& yv) {
  for (const auto& s : ss)
    if (s.kind == Sentence::Kind::CertainImplication && s.premise_observable == x && s.premise_value == xv && s.conclusion_observable == y &&
        s.conclusion_value == yv)
      return true;
  return false;
}

void friendification(Check& k) {
  const auto h = hardy_realization();
  const auto f = fr_friendified();
  const auto base = realize(h.realization, h.scenario);
  const auto fr = realize(f.realization, f.scenario);
  double inconsistent = 0.0;
  for (std::size_t c = 0; c < h.scenario.contexts().size(); ++c) {
    std::vector<std::string> mapped;
    for (const auto& l : h.scenario.contexts()[c].observables) mapped.push_back(f.label_map.at(l));
    const auto fc = f.scenario.find_context(mapped);
    k.expect(fc.has_value(), "mapped context");
    if (!fc) return;
    for (std::size_t t = 0; t < 4; ++t)
      k.near(fr.probability(*fc, *f.scenario.find_tuple(*fc, h.scenario.tuple_labels(c, t))), base.probability(c, t), 1e-9, "friendified entry");
    for (std::size_t t = 0; t < f.scenario.tuple_count(*fc); ++t) {
      const auto labels = f.scenario.tuple_labels(*fc, t);
      if (std::find(labels.begin(), labels.end(), kInconsistent) != labels.end()) inconsistent += fr.probability(*fc, t);
    }
  }
  k.expect(inconsistent <= 1e-12, "inconsistent mass " + format_double(inconsistent));
  const auto& lm = f.label_map;
  const std::vector<std::string> mm{"-", "-"};
  const auto ss = certain_implications(fr.snapped(), {{3, f.scenario.find_tuple(3, mm)}});
  k.expect(implication(ss, lm.at("A_d"), "-", lm.at("B_c"), "1"), "A_meta=- => B_obs=1");
  k.expect(implication(ss, lm.at("B_c"), "1", lm.at("A_c"), "1"), "B_obs=1 => A_obs=1");
  k.expect(implication(ss, lm.at("A_c"), "1", lm.at("B_d"), "+"), "A_obs=1 => B_meta=+");
  const auto& seed_sentence = ss.back();
  k.expect(seed_sentence.kind == Sentence::Kind::ProbabilityStatement && seed_sentence.outcome == mm && std::abs(seed_sentence.probability - 1.0 / 12) <= 1e-9, "P(A_meta=-, B_meta=-) = 1/12");
}

void claims(Check& k) {
  const auto f = fr_friendified();
  const auto m = realize(f.realization, f.scenario).snapped();
  const std::vector<std::string> mm{"-", "-"};
  const auto tuple = m.scenario().find_tuple(3, mm);
  k.near(m.probability(3, *tuple), 1.0 / 12, 1e-9, "seed probability");
  const auto roster = friendified_roster(f);
  const auto cl = attribute_claims(m.scenario(), certain_implications(m, {{3, tuple}}), roster);
  const SeedEvent seed{3, mm};
  const auto full = check_claims(m.scenario(), cl, roster, AssumptionSet{}, seed);
  k.expect(full.contradiction, "Contradiction under Q,NMC,NC,S");
  std::vector<std::string> trace;
  for (const auto& s : full.trace) trace.push_back(s.premise_observable + "=" + s.premise_value + "=>" + s.conclusion_observable + "=" + s.conclusion_value);
  k.expect(trace == std::vector<std::string>{"A_meta=-=>B_obs=1", "B_obs=1=>A_obs=1", "A_obs=1=>B_meta=+"}, "trace through contexts 0, 1, 2");
  k.expect(full.observable == "B_meta" && full.held_value == "-" && full.derived_value == "+", "B_meta forced to + against -");
  auto no_nmc = AssumptionSet{};
  no_nmc.non_meta_contextual = false;
  k.expect(!check_claims(m.scenario(), cl, roster, no_nmc, seed).contradiction, "Consistent without NMC");
}

void wigner(Check& k) {
  const auto w = wigner_document();
  const auto bell = compare_cuts(w.chain, Cut{0}, Cut{1}, w.finals[0].basis);
  k.near(bell.total_variation, 0.5, 1e-9, "TV under Phi basis");
  k.near(bell.first.at({"phi+"}), 0.5, 1e-9, "P(phi+) with the friend projecting");
  k.near(bell.second.at({"phi+"}), 1.0, 1e-9, "P(phi+) with the friend unitary");
  k.near(compare_cuts(w.chain, Cut{0}, Cut{1}, w.finals[1].basis).total_variation, 0.0, 1e-9, "TV under memory basis");
}

void cycles(Check& k) {
  for (int n = 3; n <= 5; ++n) {
    const auto tag = std::to_string(n);
    const auto odd = cycle_model(n, Parity::Odd);
    k.expect(global_sections(odd).empty(), tag + " odd: no sections");
    k.expect(classify(odd) == Classification::StronglyContextual, tag + " odd: strongly contextual");
    k.expect(global_sections(cycle_model(n, Parity::Even)).size() == 2, tag + " even: 2 sections");
    k.near(contextual_fraction(cycle_empirical_model(n, Parity::Odd)).ncf, 0.0, 1e-9, tag + " odd ncf");
  }
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto a = oracle::random_vector(rng, 2);
    const auto b = oracle::random_vector(rng, 2);
    const auto p = product_realization(StateVector({2}, a), StateVector({2}, b));
    k.near(contextual_fraction(realize(p.realization, p.scenario)).ncf, 1.0, 1e-9, "product-state ncf");
  }
}

void lp_integrity(Check& k) {
  const auto m = hardy_model().snapped();
  const auto r = contextual_fraction(m);
  const auto o = oracle::ncf_by_vertices(m);
  k.expect(r.exact_ncf.has_value(), "exact re-solve");
  if (r.exact_ncf) k.expect(*r.exact_ncf == o.value, "exact ncf " + to_string(*r.exact_ncf) + " vs oracle " + to_string(o.value));
  k.near(r.ncf, to_double(o.value), 1e-9, "float ncf");
  k.expect(witness_min_slack(m, r) >= -1e-9, "witness slack");
  double sum = 0.0;
  for (const auto& w : r.witness) {
    k.expect(w.weight >= 0.0, "nonnegative weight");
    sum += w.weight;
  }
  k.near(sum, r.ncf, 1e-9, "witness total");
}

void properties(Check& k) {
  std::mt19937_64 rng(22);
  double worst_signal = 0.0, worst_norm = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto state = StateVector({2, 2}, oracle::random_vector(rng, 4));
    QuantumRealization qr{state, {}};
    std::vector<Observable> obs;
    for (std::size_t s = 0; s < 2; ++s)
      for (int j = 0; j < 2; ++j) {
        const std::string label = std::string(1, char('A' + s)) + std::to_string(j);
        obs.push_back({label, {"0", "1"}});
        qr.recipes.emplace(label, MeasurementRecipe{{s}, Basis(oracle::random_unitary_columns(rng, 2), {"0", "1"}), {"0", "1"}});
      }
    const Scenario sc("chsh", obs, {{{"A0", "B0"}}, {{"A0", "B1"}}, {{"A1", "B0"}}, {{"A1", "B1"}}});
    worst_signal = std::max(worst_signal, no_disturbance(realize(qr, sc)).max_violation);
    const auto pm = premeasure(state, static_cast<std::size_t>(trial % 2), qr.recipes.at("A0").basis);
    worst_norm = std::max(worst_norm, std::abs(pm.norm_squared() - 1.0));
  }
  k.expect(worst_signal <= 1e-9, "max no-disturbance violation " + format_double(worst_signal));
  k.expect(worst_norm <= 1e-9, "max premeasure norm error " + format_double(worst_norm));

  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(QLIAR_DATA_DIR)) {
    if (e.path().extension() != ".scn") continue;
    ++files;
    const auto doc = parse_document(read_file(e.path().string()));
    const auto text = serialize(doc);
    k.expect(parse_document(text) == doc && serialize(parse_document(text)) == text, "round-trip " + e.path().filename().string());
  }
  k.expect(files == 10, "corpus has 10 files");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"1 Hardy tables", hardy_tables},
      {"2 Hardy P(-,-) and liar chain", hardy_cycle},
      {"3 Hardy classification", hardy_classification},
      {"4 Friendification fidelity", friendification},
      {"5 Claims engine", claims},
      {"6 Wigner cut comparison", wigner},
      {"7 Cycle models", cycles},
      {"8 LP integrity", lp_integrity},
      {"9 Property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check k;
    try {
      fn(k);
    } catch (const std::exception& e) {
      k.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = k.failures().empty();
    failed += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    for (const auto& f : k.failures()) std::cout << "  " << f << '\n';
  }
  return failed == 0 ? 0 : 1;
}
