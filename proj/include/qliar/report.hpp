#pragma once

#include "qliar/logic.hpp"
#include "qliar/metacontext.hpp"
#include "qliar/ncpoly.hpp"
#include "qliar/scenario.hpp"
#include "qliar/scenario_io.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qliar {

struct TableEntry {
  std::vector<std::string> outcome;
  Probability probability;
};

struct TableSection {
  std::size_t context = 0;
  std::vector<std::string> observables;
  std::vector<TableEntry> entries;
};

struct CycleSection {
  enum class Status { Cycle, Extends, Unrefuted };
  std::size_t context = 0;
  std::vector<std::string> observables;
  std::vector<std::string> seed;
  Status status = Status::Cycle;
  std::vector<ImplicationStep> steps;
  std::string observable;
  std::string held_value;
  std::string derived_value;
  bool against_seed = true;
};

struct WitnessEntry {
  std::string assignment;
  Probability weight;
};

struct FractionSection {
  bool defined = true;
  Probability ncf;
  Probability cf;
  std::vector<WitnessEntry> witness;
};

struct ClaimLine {
  std::string agent;
  std::string metacontext;
  std::size_t context = 0;
  bool requires_universality = false;
  std::string text;
};

struct VerdictSection {
  std::string assumptions;
  bool contradiction = false;
  std::vector<ClaimStep> trace;
  std::string observable;
  std::string held_value;
  std::string derived_value;
  std::string scope;
};

struct ClaimsSection {
  std::size_t seed_context = 0;
  std::vector<std::string> seed_observables;
  std::vector<std::string> seed_outcome;
  Probability seed_probability;
  std::vector<ClaimLine> claims;
  std::vector<VerdictSection> verdicts;
};

struct CutRow {
  std::vector<std::string> outcome;
  Probability first;
  Probability second;
};

struct CutSection {
  std::size_t first_cut = 0;
  std::size_t second_cut = 0;
  std::string final_basis;
  std::vector<CutRow> rows;
  Probability total_variation;
};

struct AgentLine {
  std::string name;
  std::vector<std::string> labels;
};

// Every section is optional so that sub-commands can emit partial reports.
struct AnalysisReport {
  std::string kind;  // "scenario" or "chain"
  std::string name;
  std::vector<std::string> observables;  // "label{o1,o2}"
  std::optional<std::vector<TableSection>> tables;
  std::optional<double> max_violation;
  std::optional<std::string> classification;
  std::optional<std::size_t> global_sections;
  std::optional<std::vector<CycleSection>> cycles;
  std::optional<FractionSection> fraction;
  std::optional<std::vector<std::string>> sentences;
  std::optional<ClaimsSection> claims;
  std::vector<std::size_t> base_dims;
  std::optional<std::vector<AgentLine>> chain_agents;
  std::optional<std::vector<CutSection>> cuts;
  std::vector<std::string> notes;
};

inline constexpr std::size_t kMaxReportedCycles = 64;

struct AnalysisOptions {
  double eps = kDefaultSupportEps;
  std::optional<AssumptionSet> assumptions;  // all 16 when empty
};

// The model is snapped to small-denominator rationals first, so quantum and
// tabulated inputs with the same content give identical reports.
AnalysisReport analyze_model(const EmpiricalModel& m, const std::vector<AgentRole>& roster, const AnalysisOptions& options);
AnalysisReport analyze_chain(const ChainDocument& doc);
AnalysisReport fraction_report(const EmpiricalModel& m);
// All non-extendable events, or just `seed`.
AnalysisReport cycles_report(const EmpiricalModel& m, std::optional<LocalEvent> seed, double eps);

// Observables without an owner get a default role.
std::vector<AgentRole> complete_roster(const Scenario& sc, std::vector<AgentRole> roster);

// Smallest-probability non-extendable event (lowest context, then tuple, on
// ties).
std::optional<LocalEvent> primary_seed(const EmpiricalModel& m, const PossibilisticModel& p);

std::string render_text(const AnalysisReport& r);
std::string render_json(const AnalysisReport& r);
// Throws std::invalid_argument on malformed input.
AnalysisReport parse_report_json(std::string_view json);

}  // namespace qliar
