#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qliar {

// A variable of the chaining engine. `scope` and `context` let callers split
// one observable into several independent variables (per meta-context, per
// measurement context); leave them empty / -1 to merge.
struct VarKey {
  std::string observable;
  std::string scope;
  long context = -1;

  auto operator<=>(const VarKey&) const = default;
  bool operator==(const VarKey&) const = default;
};

struct Fact {
  VarKey var;
  std::string value;

  auto operator<=>(const Fact&) const = default;
  bool operator==(const Fact&) const = default;
};

// premise => conclusion. Rule order is the tie-break order of the search.
struct Rule {
  Fact premise;
  Fact conclusion;
};

struct Contradiction {
  std::vector<std::size_t> steps;  // rule indices, in firing order
  VarKey var;
  std::string held;     // value already known for var
  std::string derived;  // value forced by the last step
  // Index into `steps` of the step that established `held`, or empty when
  // `held` came from the seed.
  std::optional<std::size_t> held_by_step;
  bool linear = true;
};

// Looks for a contradiction reachable from the seed facts.
//
// First tries linear chains (each step's premise is the previous conclusion,
// the first step's premise is a seed fact), shortest first and
// lexicographically smallest in rule indices among equal lengths. If no
// linear chain exists, falls back to breadth-first forward propagation over
// all derived facts. Returns nullopt when the propagation closure is
// consistent.
std::optional<Contradiction> find_contradiction(std::span<const Fact> seed, std::span<const Rule> rules);

// Closure of the seed under the rules, stopping at the first conflict.
bool propagation_conflicts(std::span<const Fact> seed, std::span<const Rule> rules);

// Rules fired by breadth-first propagation, in firing order.
std::vector<std::size_t> propagation_steps(std::span<const Fact> seed, std::span<const Rule> rules);

}  // namespace qliar
