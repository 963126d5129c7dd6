#pragma once

#include "qliar/builders.hpp"
#include "qliar/qstate.hpp"
#include "qliar/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qliar {

// Agent 0 measures the base system; agent k measures the compound of the
// base system and the memories of agents 0..k-1. Each agent's memory has the
// dimension of its basis.
struct ChainAgent {
  std::string name;
  Basis basis;

  bool operator==(const ChainAgent&) const = default;
};

class ObserverChain {
 public:
  ObserverChain(StateVector base, std::vector<ChainAgent> agents);

  const StateVector& base() const { return base_; }
  const std::vector<ChainAgent>& agents() const { return agents_; }
  // Site dimensions after every agent has recorded a result.
  std::vector<std::size_t> final_dims() const;

  bool operator==(const ObserverChain&) const = default;

 private:
  StateVector base_;
  std::vector<ChainAgent> agents_;
};

// Agents with index < position are described unitarily (premeasurement);
// agents at or above it project.
struct Cut {
  std::size_t position = 0;
};

struct Branch {
  double probability = 0.0;
  StateVector state;
};

struct BranchEnsemble {
  std::vector<Branch> branches;

  double total() const;
};

// Zero-probability branches are dropped.
BranchEnsemble describe(const ObserverChain& chain, Cut cut);

// Probability-weighted mixture of born(branch, basis).
Distribution mixture_distribution(const BranchEnsemble& ensemble, const ProductBasis& basis);

struct CutComparison {
  Distribution first;
  Distribution second;
  double total_variation = 0.0;
};

CutComparison compare_cuts(const ObserverChain& chain, Cut a, Cut b, const ProductBasis& final_basis);

// ---------------------------------------------------------------------------
// Claims under assumption toggles

struct AssumptionSet {
  bool universality = true;        // Q
  bool non_meta_contextual = true; // NMC
  bool non_contextual = true;      // NC
  bool single_outcome = true;      // S (recorded; single outcomes are structural here)

  std::string to_string() const;
  static AssumptionSet parse(const std::string& comma_list);  // "Q,NMC,NC,S"; "" or "none" for all false
  static std::vector<AssumptionSet> all();                    // 16 combinations, all-true first

  bool operator==(const AssumptionSet&) const = default;
};

// Who owns which observables. The meta-context identifies the
// {meta-object, object} pair the agent's claims are made in.
struct AgentRole {
  std::string agent;
  std::string metacontext;
  std::vector<std::string> observables;
  bool observes_observer = false;  // measures a compound containing another observer

  bool operator==(const AgentRole&) const = default;
};

// One agent per observable, each in its own meta-context.
std::vector<AgentRole> default_roster(const Scenario& sc);
// Friends own the observer observables, meta-observers own the meta ones.
std::vector<AgentRole> friendified_roster(const Friendified& f);

struct Claim {
  std::string agent;
  std::string metacontext;
  std::size_t context = 0;  // measurement context of the source sentence
  bool requires_universality = false;
  Sentence source;
};

// Attributes each sentence to the owner of its premise observable (or of its
// first observable, for probability statements).
std::vector<Claim> attribute_claims(const Scenario& sc, const std::vector<Sentence>& sentences, const std::vector<AgentRole>& roster);

struct SeedEvent {
  std::size_t context = 0;
  std::vector<std::string> outcome;
};

struct ClaimStep {
  std::size_t claim = 0;  // index into the claim list
  std::string premise_observable, premise_value, premise_scope;
  std::string conclusion_observable, conclusion_value, conclusion_scope;
};

struct ClaimVerdict {
  bool contradiction = false;
  std::vector<ClaimStep> trace;
  std::string observable;  // receives two values
  std::string held_value;
  std::string derived_value;
  std::string scope;       // meta-context of the clashing variable ("*" when merged)
};

// Propagates the seed through the implication claims. With NMC off, each
// observable splits into one variable per meta-context; with NC off, derived
// values only chain within the context they were derived in; with Q off,
// claims that describe an observer as a quantum object are discarded.
ClaimVerdict check_claims(const Scenario& sc, const std::vector<Claim>& claims, const std::vector<AgentRole>& roster,
                          const AssumptionSet& assumptions, const SeedEvent& seed);

}  // namespace qliar
