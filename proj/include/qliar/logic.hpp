#pragma once

#include "qliar/scenario.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qliar {

inline constexpr std::size_t kMaxEnumeration = std::size_t{1} << 24;

// One outcome index per observable, in scenario order. A global section is a
// global assignment whose restriction to every context is possible.
using GlobalAssignment = std::vector<std::size_t>;

std::string format_assignment(const Scenario& sc, const GlobalAssignment& g);

// All global sections in lexicographic order. Throws std::length_error when
// the assignment space exceeds kMaxEnumeration.
std::vector<GlobalAssignment> global_sections(const PossibilisticModel& p);

bool extends_to_global(const PossibilisticModel& p, std::size_t context, std::size_t tuple);

enum class Classification { GloballyExtendable, LogicallyContextual, StronglyContextual };

std::string to_string(Classification c);
std::optional<Classification> classification_from_string(const std::string& s);

Classification classify(const PossibilisticModel& p);

// Every possible (context, tuple) that extends to no global section.
struct LocalEvent {
  std::size_t context = 0;
  std::size_t tuple = 0;

  auto operator<=>(const LocalEvent&) const = default;
};
std::vector<LocalEvent> non_extendable(const PossibilisticModel& p);

// An empty premise means the conclusion holds in every possible tuple of the
// context.
struct ImplicationStep {
  std::string premise_observable;
  std::string premise_value;
  std::string conclusion_observable;
  std::string conclusion_value;
  std::size_t context = 0;

  bool operator==(const ImplicationStep&) const = default;
};

struct LiarCycle {
  LocalEvent seed;
  std::vector<ImplicationStep> steps;
  std::string contradiction_observable;
  std::string held_value;     // from the seed or an earlier step
  std::string derived_value;  // forced by the last step
  bool against_seed = true;

  // Contexts visited, counting the seed's own context.
  std::size_t length() const { return steps.size() + 1; }
};

// In context c, observable x = xv forces y = yv when every supported tuple
// with x = xv has y = yv. Vacuous when x = xv never occurs in c.
bool forces(const PossibilisticModel& p, std::size_t c, std::size_t x, std::size_t xv, std::size_t y, std::size_t yv);

// Every possible tuple of context c has y = yv.
bool certain(const PossibilisticModel& p, std::size_t c, std::size_t y, std::size_t yv);

// Shortest chain of forced values from the seed to a contradiction, or
// nullopt if the seed extends to a global section. Throws
// std::invalid_argument if the seed tuple is not possible.
std::optional<LiarCycle> liar_cycles(const PossibilisticModel& p, LocalEvent seed);

// Independent re-check of a cycle against the supports.
bool verify(const PossibilisticModel& p, const LiarCycle& cycle);

enum class Parity { Even, Odd };

// n binary observables S1..Sn on a ring of pairwise contexts, every edge
// "equal" except the closing edge (Sn, S1), which is "unequal" for odd parity.
PossibilisticModel cycle_model(int n, Parity closing);

}  // namespace qliar
