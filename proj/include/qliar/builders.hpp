#pragma once

#include "qliar/logic.hpp"
#include "qliar/scenario.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qliar {

struct Realized {
  Scenario scenario;
  QuantumRealization realization;
};

// Two qubits in (|00> + |10> + |11>)/sqrt(3). Observables A_c, A_d (site 0)
// and B_c, B_d (site 1) in the computational and diagonal bases. Contexts in
// order: (A_d,B_c), (A_c,B_c), (A_c,B_d), (A_d,B_d).
Realized hardy_realization();
StateVector hardy_state();

// One friend per measured qubit, recorded as a (system, friend) pair.
struct FriendPair {
  std::string base;            // "A" for A_c / A_d
  std::size_t system_site = 0;
  std::size_t memory_site = 0;
  std::string observer_label;  // observable in the computational basis, e.g. "A_obs"
  std::string meta_label;      // observable in any other basis, e.g. "A_meta"
};

struct Friendified {
  Scenario scenario;
  QuantumRealization realization;
  std::map<std::string, std::string> label_map;  // original label -> friendified label
  std::vector<FriendPair> pairs;
};

inline const std::string kInconsistent = "inconsistent";

// Each measured qubit S_X gets a memory F_X via premeasurement in the
// computational basis. An observable measured in basis {b_j} becomes the
// two-site observable with vectors sum_i b_j[i]|i>|i>, completed by |01> and
// |10>, both reported as "inconsistent".
Friendified friendify(const QuantumRealization& qr, const Scenario& sc);

Realized fr_realization();  // friendify(hardy_realization()), as a Realized
Friendified fr_friendified();

// Probabilistic version of cycle_model: uniform over each context's support.
EmpiricalModel cycle_empirical_model(int n, Parity closing);

// The Hardy observables and contexts measured on the product state a (x) b.
Realized product_realization(const StateVector& a, const StateVector& b);

struct Sentence {
  enum class Kind { CertainImplication, ProbabilityStatement };
  Kind kind = Kind::CertainImplication;
  std::size_t context = 0;
  // CertainImplication
  std::string premise_observable;
  std::string premise_value;
  std::string conclusion_observable;
  std::string conclusion_value;
  // ProbabilityStatement
  std::vector<std::string> outcome;
  double probability = 0.0;
  std::optional<Rational> exact;

  bool operator==(const Sentence&) const = default;
};

std::string describe(const Sentence& s, const Scenario& sc);

// Which joint events to state as probability sentences: a specific event of a
// context, or every minimal-probability nonzero event of the context.
struct SentenceQuery {
  std::size_t context = 0;
  std::optional<std::size_t> tuple;
};

std::vector<Sentence> certain_implications(const EmpiricalModel& m, const std::vector<SentenceQuery>& queries = {});

}  // namespace qliar
