#include "qliar/cli.hpp"

#include "qliar/builders.hpp"
#include "qliar/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace qliar {

ChainDocument wigner_document() {
  const double h = 1.0 / std::sqrt(2.0);
  StateVector plus({2}, {h, h});
  ObserverChain chain(plus, {{"friend", Basis::computational()}});
  Basis bell({{h, 0.0, 0.0, h}, {h, 0.0, 0.0, -h}, {0.0, h, h, 0.0}, {0.0, h, -h, 0.0}}, {"phi+", "phi-", "psi+", "psi-"});
  std::vector<FinalBasis> finals{
      {"bell", ProductBasis({{{0, 1}, bell}})},
      {"memory", ProductBasis({{{0}, Basis::computational()}, {{1}, Basis::computational()}})},
  };
  return {"wigner", std::move(chain), std::move(finals), {{Cut{0}, Cut{1}, "bell"}, {Cut{0}, Cut{1}, "memory"}}};
}

namespace {

struct Settings {
  double eps = kDefaultSupportEps;
  std::string format = "text";
  std::string assumptions;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const AnalysisReport& r, const Settings& s, std::ostream& out) { out << (s.format == "json" ? render_json(r) : render_text(r)); }

AnalysisOptions options_of(const Settings& s) {
  AnalysisOptions o;
  o.eps = s.eps;
  if (!s.assumptions.empty()) o.assumptions = AssumptionSet::parse(s.assumptions);
  return o;
}

std::pair<EmpiricalModel, std::vector<AgentRole>> load_model(const std::string& path) {
  auto doc = parse_document(read_file(path));
  auto* sd = std::get_if<ScenarioDocument>(&doc);
  if (!sd) throw UsageError("'" + path + "' holds an observer chain, not a scenario");
  if (sd->model) return {*sd->model, sd->agents};
  if (sd->realization) return {realize(*sd->realization, sd->scenario), sd->agents};
  throw UsageError("'" + path + "' declares a scenario without tables or a state");
}

int exit_for(const AnalysisReport& r) { return r.fraction && !r.fraction->defined ? kExitVerification : kExitOk; }

int demo(const std::vector<std::string>& what, const Settings& s, std::ostream& out) {
  if (what.empty()) throw UsageError("demo needs one of: hardy, fr, wigner, cycle N [odd|even]");
  const auto& name = what[0];
  const auto opts = options_of(s);
  auto extra = [&](std::size_t allowed) {
    if (what.size() > allowed) throw UsageError("unexpected argument '" + what[allowed] + "'");
  };
  if (name == "hardy") {
    extra(1);
    const auto h = hardy_realization();
    const auto m = realize(h.realization, h.scenario);
    const auto r = analyze_model(m, default_roster(h.scenario), opts);
    emit(r, s, out);
    return exit_for(r);
  }
  if (name == "fr") {
    extra(1);
    const auto f = fr_friendified();
    const auto r = analyze_model(realize(f.realization, f.scenario), friendified_roster(f), opts);
    emit(r, s, out);
    return exit_for(r);
  }
  if (name == "wigner") {
    extra(1);
    emit(analyze_chain(wigner_document()), s, out);
    return kExitOk;
  }
  if (name == "cycle") {
    extra(3);
    if (what.size() < 2) throw UsageError("demo cycle needs a size N >= 3");
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(what[1], &used);
      if (used != what[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("cycle size must be an integer, found '" + what[1] + "'");
    }
    if (n < 3) throw UsageError("cycle size must be at least 3");
    Parity parity = Parity::Odd;
    if (what.size() == 3) {
      if (what[2] == "even")
        parity = Parity::Even;
      else if (what[2] != "odd")
        throw UsageError("cycle parity must be odd or even, found '" + what[2] + "'");
    }
    const auto m = cycle_empirical_model(n, parity);
    const auto r = analyze_model(m, default_roster(m.scenario()), opts);
    emit(r, s, out);
    return exit_for(r);
  }
  throw UsageError("unknown demo '" + name + "' (expected hardy, fr, wigner, cycle)");
}

int analyze(const std::string& path, const Settings& s, std::ostream& out) {
  auto doc = parse_document(read_file(path));
  if (auto* cd = std::get_if<ChainDocument>(&doc)) {
    emit(analyze_chain(*cd), s, out);
    return kExitOk;
  }
  auto [m, agents] = load_model(path);
  const auto r = analyze_model(m, agents, options_of(s));
  emit(r, s, out);
  return exit_for(r);
}

int ncf(const std::string& path, const Settings& s, std::ostream& out, std::ostream& err) {
  const auto r = fraction_report(load_model(path).first);
  emit(r, s, out);
  if (!r.fraction->defined) {
    err << "error: the model signals (max violation " << format_double(*r.max_violation) << "), so the noncontextual fraction is undefined\n";
    return kExitVerification;
  }
  return kExitOk;
}

LocalEvent seed_event(const Scenario& sc, const std::vector<std::string>& seed) {
  std::size_t c = 0;
  try {
    std::size_t used = 0;
    c = std::stoul(seed[0], &used);
    if (used != seed[0].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw UsageError("seed context must be an index, found '" + seed[0] + "'");
  }
  if (c >= sc.contexts().size()) throw UsageError("no context " + seed[0]);
  const auto& t = seed[1];
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    const auto flat = std::stoul(t);
    if (flat >= sc.tuple_count(c)) throw UsageError("context " + seed[0] + " has no tuple " + t);
    return {c, flat};
  }
  std::vector<std::string> labels;
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) labels.push_back(part);
  const auto flat = sc.find_tuple(c, labels);
  if (!flat) throw UsageError("'" + t + "' is not an outcome tuple of context " + seed[0]);
  return {c, *flat};
}

int cycles(const std::string& path, const std::vector<std::string>& seed, const Settings& s, std::ostream& out) {
  const auto m = load_model(path).first;
  std::optional<LocalEvent> e;
  if (!seed.empty()) {
    e = seed_event(m.scenario(), seed);
    if (!support_of(m.snapped(), s.eps).possible(e->context, e->tuple)) throw UsageError("the seed tuple is not possible in its context");
  }
  emit(cycles_report(m, e, s.eps), s, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality and observer-chain analysis", "qliar"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--eps", s.eps, "support threshold")->check(CLI::NonNegativeNumber);
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--assumptions", s.assumptions, "comma list of Q,NMC,NC,S (default: all 16 sets)");

  std::vector<std::string> demo_args;
  std::string path;
  std::vector<std::string> seed;
  auto* demo_cmd = app.add_subcommand("demo", "built-in scenario: hardy, fr, wigner, cycle N [odd|even]");
  demo_cmd->add_option("what", demo_args)->required();
  auto* analyze_cmd = app.add_subcommand("analyze", "full report for a scenario or chain file");
  analyze_cmd->add_option("file", path)->required();
  auto* ncf_cmd = app.add_subcommand("ncf", "noncontextual fraction of a scenario file");
  ncf_cmd->add_option("file", path)->required();
  auto* cycles_cmd = app.add_subcommand("cycles", "liar cycles of a scenario file");
  cycles_cmd->add_option("file", path)->required();
  cycles_cmd->add_option("--seed", seed, "context index and tuple (flat index or comma-separated labels)")->expected(2);

  // Seed tuples such as "-,-" look like flags to CLI11, so the two values
  // are taken before it sees them.
  std::vector<std::string> rest;
  std::vector<std::string> raw_seed;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--seed") {
      rest.push_back(args[i]);
      continue;
    }
    if (i + 2 >= args.size()) {
      err << "error: --seed needs a context index and a tuple\n" << "run with --help for usage\n";
      return kExitUsage;
    }
    raw_seed = {args[i + 1], args[i + 2]};
    i += 2;
  }

  try {
    std::vector<std::string> reversed(rest.rbegin(), rest.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (!s.assumptions.empty()) (void)AssumptionSet::parse(s.assumptions);
    if (*demo_cmd) return demo(demo_args, s, out);
    if (*analyze_cmd) return analyze(path, s, out);
    if (*ncf_cmd) return ncf(path, s, out, err);
    if (!raw_seed.empty() && !*cycles_cmd) throw UsageError("--seed only applies to cycles");
    if (*cycles_cmd) return cycles(path, raw_seed, s, out);
  } catch (const ParseError& e) {
    err << "error: " << path << ':' << e.line() << ':' << e.column() << ": " << e.message() << '\n';
    return kExitUsage;
  } catch (const SignallingModel& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qliar
