#include "qliar/derivation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace qliar {

namespace {

struct Index {
  std::map<Fact, std::vector<std::size_t>> by_premise;

  explicit Index(std::span<const Rule> rules) {
    for (std::size_t i = 0; i < rules.size(); ++i) by_premise[rules[i].premise].push_back(i);
  }
  std::span<const std::size_t> from(const Fact& f) const {
    auto it = by_premise.find(f);
    if (it == by_premise.end()) return {};
    return it->second;
  }
};

class LinearSearch {
 public:
  LinearSearch(std::span<const Fact> seed, std::span<const Rule> rules, const Index& index)
      : seed_(seed), rules_(rules), index_(index) {}

  std::optional<Contradiction> run() {
    std::size_t vars = 0;
    {
      std::set<VarKey> keys;
      for (const auto& f : seed_) keys.insert(f.var);
      for (const auto& r : rules_) {
        keys.insert(r.premise.var);
        keys.insert(r.conclusion.var);
      }
      vars = keys.size();
    }
    // A contradiction-free linear chain never revisits a variable, so its
    // length is bounded by the number of variables.
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (std::find(seed_.begin(), seed_.end(), rules_[i].premise) != seed_.end()) first.push_back(i);
    if (first.empty()) return std::nullopt;

    for (std::size_t depth = 1; depth <= vars + 1; ++depth) {
      known_.clear();
      for (const auto& f : seed_) known_[f.var] = {f.value, std::nullopt};
      path_.clear();
      exhausted_ = true;
      for (auto r : first)
        if (auto c = extend(r, depth)) return c;
      if (exhausted_) break;
    }
    return std::nullopt;
  }

 private:
  struct Held {
    std::string value;
    std::optional<std::size_t> step;
  };

  std::optional<Contradiction> extend(std::size_t rule, std::size_t depth) {
    const auto& concl = rules_[rule].conclusion;
    auto it = known_.find(concl.var);
    if (it != known_.end()) {
      if (it->second.value == concl.value) return std::nullopt;
      Contradiction c;
      c.steps = path_;
      c.steps.push_back(rule);
      c.var = concl.var;
      c.held = it->second.value;
      c.derived = concl.value;
      c.held_by_step = it->second.step;
      c.linear = true;
      return c;
    }
    if (depth == 1) {
      exhausted_ = false;
      return std::nullopt;
    }
    path_.push_back(rule);
    known_[concl.var] = {concl.value, path_.size() - 1};
    std::optional<Contradiction> found;
    for (auto next : index_.from(concl)) {
      found = extend(next, depth - 1);
      if (found) break;
    }
    known_.erase(concl.var);
    path_.pop_back();
    return found;
  }

  std::span<const Fact> seed_;
  std::span<const Rule> rules_;
  const Index& index_;
  std::map<VarKey, Held> known_;
  std::vector<std::size_t> path_;
  bool exhausted_ = true;
};

struct Propagation {
  struct Node {
    std::string value;
    std::optional<std::size_t> step;  // index into fired
  };
  std::map<VarKey, Node> facts;
  std::vector<std::size_t> fired;                   // rule per step
  std::vector<std::optional<std::size_t>> parent;   // premise step per step
  std::optional<Contradiction> conflict;
};

Propagation propagate(std::span<const Fact> seed, std::span<const Rule> rules, const Index& index) {
  Propagation p;
  std::deque<Fact> queue;
  for (const auto& f : seed) {
    if (auto it = p.facts.find(f.var); it != p.facts.end()) {
      if (it->second.value != f.value) {
        Contradiction c;
        c.var = f.var;
        c.held = it->second.value;
        c.derived = f.value;
        c.linear = false;
        p.conflict = c;
        return p;
      }
      continue;
    }
    p.facts[f.var] = {f.value, std::nullopt};
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const Fact f = queue.front();
    queue.pop_front();
    const auto premise_step = p.facts[f.var].step;
    for (auto r : index.from(f)) {
      const auto& concl = rules[r].conclusion;
      auto it = p.facts.find(concl.var);
      if (it != p.facts.end() && it->second.value == concl.value) continue;
      p.fired.push_back(r);
      p.parent.push_back(premise_step);
      const std::size_t step = p.fired.size() - 1;
      if (it != p.facts.end()) {
        // Collect the derivations of both conflicting values.
        std::set<std::size_t> needed;
        for (std::optional<std::size_t> s = step; s; s = p.parent[*s]) needed.insert(*s);
        for (std::optional<std::size_t> s = it->second.step; s; s = p.parent[*s]) needed.insert(*s);
        Contradiction c;
        std::map<std::size_t, std::size_t> renumber;
        for (auto s : needed) {
          renumber[s] = c.steps.size();
          c.steps.push_back(p.fired[s]);
        }
        c.var = concl.var;
        c.held = it->second.value;
        c.derived = concl.value;
        if (it->second.step) c.held_by_step = renumber[*it->second.step];
        c.linear = false;
        p.conflict = c;
        return p;
      }
      p.facts[concl.var] = {concl.value, step};
      queue.push_back(concl);
    }
  }
  return p;
}

}  // namespace

std::optional<Contradiction> find_contradiction(std::span<const Fact> seed, std::span<const Rule> rules) {
  const Index index(rules);
  if (auto c = LinearSearch(seed, rules, index).run()) return c;
  return propagate(seed, rules, index).conflict;
}

bool propagation_conflicts(std::span<const Fact> seed, std::span<const Rule> rules) {
  const Index index(rules);
  return propagate(seed, rules, index).conflict.has_value();
}

std::vector<std::size_t> propagation_steps(std::span<const Fact> seed, std::span<const Rule> rules) {
  const Index index(rules);
  return propagate(seed, rules, index).fired;
}

}  // namespace qliar
