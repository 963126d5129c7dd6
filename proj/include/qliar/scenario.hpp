#pragma once

#include "qliar/qstate.hpp"
#include "qliar/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qliar {

struct Observable {
  std::string label;
  std::vector<std::string> outcomes;

  std::optional<std::size_t> outcome_index(const std::string& outcome) const;
  bool operator==(const Observable&) const = default;
};

struct Context {
  std::vector<std::string> observables;

  bool operator==(const Context&) const = default;
};

// Observables plus an explicit cover by contexts. Outcome tuples of a context
// are enumerated in mixed radix over the member observables (first member
// most significant, outcomes in declaration order).
class Scenario {
 public:
  Scenario(std::string name, std::vector<Observable> observables, std::vector<Context> contexts);

  const std::string& name() const { return name_; }
  const std::vector<Observable>& observables() const { return observables_; }
  const std::vector<Context>& contexts() const { return contexts_; }
  const Observable& observable(std::size_t i) const { return observables_[i]; }

  std::optional<std::size_t> find_observable(const std::string& label) const;
  std::size_t observable_index(const std::string& label) const;  // throws std::invalid_argument
  std::optional<std::size_t> find_context(std::span<const std::string> labels) const;

  // Observable indices of context c, in context order.
  const std::vector<std::size_t>& members(std::size_t c) const { return members_[c]; }
  std::size_t tuple_count(std::size_t c) const;
  std::vector<std::size_t> tuple(std::size_t c, std::size_t flat) const;
  std::size_t flat_index(std::size_t c, std::span<const std::size_t> outcomes) const;
  std::vector<std::string> tuple_labels(std::size_t c, std::size_t flat) const;
  std::optional<std::size_t> find_tuple(std::size_t c, std::span<const std::string> labels) const;

  // Number of global assignments (product of all outcome counts), saturating.
  std::size_t assignment_space() const;

  bool operator==(const Scenario& o) const {
    return name_ == o.name_ && observables_ == o.observables_ && contexts_ == o.contexts_;
  }

 private:
  std::string name_;
  std::vector<Observable> observables_;
  std::vector<Context> contexts_;
  std::vector<std::vector<std::size_t>> members_;
};

class EmpiricalModel {
 public:
  // tables[c] lists the probability of every outcome tuple of context c in
  // enumeration order. Each table must sum to 1 within tolerance.
  EmpiricalModel(Scenario scenario, std::vector<std::vector<Probability>> tables, double tolerance = kEpsNorm);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Probability>& table(std::size_t c) const { return tables_[c]; }
  const std::vector<std::vector<Probability>>& tables() const { return tables_; }
  double probability(std::size_t c, std::size_t flat) const { return tables_[c][flat].value; }

  bool all_exact() const;
  // Copy in which every entry carries an exact rational, if every entry snaps
  // to a small-denominator fraction and each snapped table sums to exactly 1.
  // Otherwise returns the model unchanged.
  EmpiricalModel snapped() const;

  bool operator==(const EmpiricalModel&) const = default;

 private:
  Scenario scenario_;
  std::vector<std::vector<Probability>> tables_;
};

// How one observable is measured on a state: a basis on a site group and the
// observable outcome each basis vector reports. Several basis vectors may
// report the same outcome.
struct MeasurementRecipe {
  std::vector<std::size_t> sites;
  Basis basis;
  std::vector<std::string> outcome_of_vector;

  bool operator==(const MeasurementRecipe&) const = default;
};

struct QuantumRealization {
  StateVector state;
  std::map<std::string, MeasurementRecipe> recipes;

  bool operator==(const QuantumRealization&) const = default;
};

EmpiricalModel realize(const QuantumRealization& qr, const Scenario& sc);

struct DisturbanceEntry {
  std::vector<std::string> shared;
  std::size_t context_a = 0;
  std::size_t context_b = 0;
  double violation = 0.0;
};

struct DisturbanceReport {
  double max_violation = 0.0;
  std::vector<DisturbanceEntry> entries;

  bool holds(double eps = kEpsNorm) const { return max_violation <= eps; }
};

DisturbanceReport no_disturbance(const EmpiricalModel& m);

// Outcome supports per context.
class PossibilisticModel {
 public:
  PossibilisticModel(Scenario scenario, std::vector<std::vector<bool>> support);

  const Scenario& scenario() const { return scenario_; }
  bool possible(std::size_t c, std::size_t flat) const { return support_[c][flat]; }
  const std::vector<bool>& support(std::size_t c) const { return support_[c]; }
  std::size_t support_size(std::size_t c) const;

  bool operator==(const PossibilisticModel&) const = default;

 private:
  Scenario scenario_;
  std::vector<std::vector<bool>> support_;
};

inline constexpr double kDefaultSupportEps = 1e-9;

PossibilisticModel support_of(const EmpiricalModel& m, double eps = kDefaultSupportEps);

}  // namespace qliar
