#include "qliar/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qliar {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string text;
  std::size_t column = 1;
};

struct Line {
  std::size_t number = 0;
  bool indented = false;
  std::vector<Token> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    Line line{number, !raw.empty() && (raw[0] == ' ' || raw[0] == '\t'), {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char ch = raw[i];
      if (ch == ' ' || ch == '\t') {
        ++i;
        continue;
      }
      if (ch == '#') break;
      if (ch == '"') {
        const auto close = raw.find('"', i + 1);
        if (close == std::string_view::npos) throw ParseError(number, i + 1, "unterminated quoted text");
        line.tokens.push_back({std::string(raw.substr(i + 1, close - i - 1)), i + 1});
        i = close + 1;
        continue;
      }
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '#' && raw[i] != '"') ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& msg) { throw ParseError(l.number, t.column, msg); }
[[noreturn]] void fail(const Line& l, const std::string& msg) { throw ParseError(l.number, 1, msg); }

std::size_t parse_index(const Line& l, const Token& t, const std::string& what) {
  std::size_t v = 0;
  const auto* b = t.text.data();
  const auto* e = b + t.text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) fail(l, t, "expected " + what + ", found '" + t.text + "'");
  return v;
}

NumericLiteral parse_number(const Line& l, const Token& t) {
  auto n = parse_numeric(t.text);
  if (!n) fail(l, t, "malformed number '" + t.text + "'");
  return *n;
}

void expect_arity(const Line& l, std::size_t at_least) {
  if (l.tokens.size() < at_least) fail(l, l.tokens.back(), "'" + l.tokens[0].text + "' is missing arguments");
}

struct BasisSpec {
  Line line;
  std::size_t kind_token = 0;
  std::string kind;
  std::vector<std::string> names;
  std::vector<std::pair<Line, std::vector<Amplitude>>> vectors;  // raw, unresolved
};

// Reads "basis <kind> [names ...]" starting at tokens[i] == "basis". Stops at
// `stop` (or at the end of the line) and returns the index of the stop token.
std::size_t read_basis(const Line& l, std::size_t i, BasisSpec& spec, const std::string& stop) {
  if (i >= l.tokens.size() || l.tokens[i].text != "basis") fail(l, l.tokens[std::min(i, l.tokens.size() - 1)], "expected 'basis'");
  if (i + 1 >= l.tokens.size()) fail(l, l.tokens[i], "'basis' needs a kind (computational, diagonal, explicit)");
  spec.line = l;
  spec.kind_token = i + 1;
  spec.kind = l.tokens[i + 1].text;
  if (spec.kind != "computational" && spec.kind != "diagonal" && spec.kind != "explicit")
    fail(l, l.tokens[i + 1], "unknown basis '" + spec.kind + "' (expected computational, diagonal, explicit)");
  i += 2;
  if (i < l.tokens.size() && l.tokens[i].text == "names") {
    ++i;
    while (i < l.tokens.size() && l.tokens[i].text != stop) spec.names.push_back(l.tokens[i++].text);
    if (spec.names.empty()) fail(l, l.tokens[i - 1], "'names' needs at least one name");
  }
  return i;
}

void add_vector(const Line& l, BasisSpec& spec) {
  std::vector<double> raw;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) raw.push_back(parse_number(l, l.tokens[i]).value);
  if (raw.empty()) fail(l, l.tokens[0], "'vector' needs amplitudes");
  spec.vectors.push_back({l, {}});
  for (double x : raw) spec.vectors.back().second.push_back(x);
}

// Explicit vectors are stored as read; a line holding 2d numbers is (re, im)
// pairs.
Basis resolve_basis(const BasisSpec& spec, std::size_t dim, const std::vector<std::string>* default_names) {
  const auto& l = spec.line;
  const auto& kt = l.tokens[spec.kind_token];
  auto names_or = [&](const std::vector<std::string>& fallback) {
    if (spec.names.empty()) return fallback;
    if (spec.names.size() != dim)
      fail(l, kt, "basis on dimension " + std::to_string(dim) + " needs " + std::to_string(dim) + " names, got " + std::to_string(spec.names.size()));
    return spec.names;
  };
  try {
    if (spec.kind == "computational") {
      if (!spec.vectors.empty()) fail(spec.vectors[0].first, "'vector' lines only follow explicit bases");
      const auto comp = Basis::computational(dim);
      return Basis(comp.vectors(), names_or(comp.labels()));
    }
    if (spec.kind == "diagonal") {
      if (!spec.vectors.empty()) fail(spec.vectors[0].first, "'vector' lines only follow explicit bases");
      if (dim != 2) fail(l, kt, "the diagonal basis needs a qubit, found dimension " + std::to_string(dim));
      const auto diag = Basis::diagonal();
      return Basis(diag.vectors(), names_or(diag.labels()));
    }
    if (spec.vectors.size() != dim)
      fail(l, kt, "explicit basis on dimension " + std::to_string(dim) + " needs " + std::to_string(dim) + " vectors, got " +
                      std::to_string(spec.vectors.size()));
    std::vector<std::vector<Amplitude>> vectors;
    for (const auto& [vl, raw] : spec.vectors) {
      std::vector<Amplitude> v;
      if (raw.size() == dim) {
        v = raw;
      } else if (raw.size() == 2 * dim) {
        for (std::size_t k = 0; k < dim; ++k) v.emplace_back(raw[2 * k].real(), raw[2 * k + 1].real());
      } else {
        fail(vl, vl.tokens[0], "vector needs " + std::to_string(dim) + " real or " + std::to_string(2 * dim) + " re/im numbers");
      }
      vectors.push_back(std::move(v));
    }
    std::vector<std::string> names;
    if (!spec.names.empty() || !default_names) {
      if (spec.names.empty()) fail(l, kt, "explicit basis needs 'names'");
      names = names_or({});
    } else {
      names = *default_names;
      if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
        fail(l, kt, "explicit basis with repeated labels needs 'names'");
    }
    return Basis(std::move(vectors), std::move(names));
  } catch (const std::invalid_argument& e) {
    fail(l, kt, e.what());
  }
}

struct TableRaw {
  Line header;
  std::vector<Line> rows;
};

struct StateRaw {
  Line header;
  std::vector<std::size_t> dims;
  std::vector<Line> amps;
};

struct MeasureRaw {
  Line line;
  std::string observable;
  std::vector<std::size_t> sites;
  BasisSpec basis;
  std::vector<std::string> labels;
};

struct ObserverRaw {
  std::string name;
  BasisSpec basis;
};

struct FactorRaw {
  Line line;
  std::vector<std::size_t> sites;
  BasisSpec basis;
};

struct FinalRaw {
  Line header;
  std::string name;
  std::vector<FactorRaw> factors;
};

struct CompareRaw {
  Line line;
  std::size_t a = 0, b = 0;
  std::string final_name;
};

const std::set<std::string> kScenarioDirectives = {"scenario", "observable", "context", "table", "measure", "agent"};
const std::set<std::string> kChainDirectives = {"chain", "observer", "final", "compare"};

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(lex(text)) {}

  Document run() {
    enum class Block { None, Table, State, Measure, Observer, Final };
    Block block = Block::None;
    for (const auto& l : lines_) {
      const auto& head = l.tokens[0];
      if (l.indented) {
        switch (block) {
          case Block::None:
            fail(l, head, "indented line outside any block");
          case Block::Table:
            tables_.back().rows.push_back(l);
            break;
          case Block::State:
            if (head.text != "amp") fail(l, head, "expected 'amp' inside a state block");
            state_->amps.push_back(l);
            break;
          case Block::Measure:
            if (head.text != "vector") fail(l, head, "expected 'vector' after 'measure'");
            add_vector(l, measures_.back().basis);
            break;
          case Block::Observer:
            if (head.text != "vector") fail(l, head, "expected 'vector' after 'observer'");
            add_vector(l, observers_.back().basis);
            break;
          case Block::Final:
            if (head.text == "factor") {
              finals_.back().factors.push_back(read_factor(l));
            } else if (head.text == "vector") {
              if (finals_.back().factors.empty()) fail(l, head, "'vector' before any 'factor'");
              add_vector(l, finals_.back().factors.back().basis);
            } else {
              fail(l, head, "expected 'factor' or 'vector' inside a final block");
            }
            break;
        }
        continue;
      }
      block = Block::None;
      const auto& d = head.text;
      if (kScenarioDirectives.count(d) && chain_) fail(l, head, "'" + d + "' is not allowed in a chain file");
      if (kChainDirectives.count(d) && (name_ || !observables_.empty())) fail(l, head, "'" + d + "' is not allowed in a scenario file");
      if (d == "scenario") {
        expect_arity(l, 2);
        if (name_) fail(l, head, "duplicate 'scenario' directive");
        name_ = l.tokens[1].text;
        name_line_ = l;
      } else if (d == "observable") {
        read_observable(l);
      } else if (d == "context") {
        read_context(l);
      } else if (d == "table") {
        expect_arity(l, 2);
        tables_.push_back({l, {}});
        block = Block::Table;
      } else if (d == "state") {
        read_state(l);
        block = Block::State;
      } else if (d == "measure") {
        read_measure(l);
        block = Block::Measure;
      } else if (d == "agent") {
        read_agent(l);
      } else if (d == "chain") {
        expect_arity(l, 2);
        if (chain_) fail(l, head, "duplicate 'chain' directive");
        chain_ = l.tokens[1].text;
      } else if (d == "observer") {
        expect_arity(l, 3);
        ObserverRaw o{l.tokens[1].text, {}};
        const auto end = read_basis(l, 2, o.basis, "");
        if (end != l.tokens.size()) fail(l, l.tokens[end], "unexpected '" + l.tokens[end].text + "'");
        observers_.push_back(std::move(o));
        block = Block::Observer;
      } else if (d == "final") {
        expect_arity(l, 2);
        if (l.tokens.size() > 2) fail(l, l.tokens[2], "unexpected '" + l.tokens[2].text + "'");
        finals_.push_back({l, l.tokens[1].text, {}});
        block = Block::Final;
      } else if (d == "compare") {
        expect_arity(l, 4);
        compares_.push_back({l, parse_index(l, l.tokens[1], "a cut position"), parse_index(l, l.tokens[2], "a cut position"), l.tokens[3].text});
      } else {
        fail(l, head, "unknown directive '" + d + "'");
      }
    }
    if (chain_) return build_chain();
    return build_scenario();
  }

 private:
  void read_observable(const Line& l) {
    expect_arity(l, 5);
    if (l.tokens[2].text != "outcomes") fail(l, l.tokens[2], "expected 'outcomes'");
    Observable o{l.tokens[1].text, {}};
    for (std::size_t i = 3; i < l.tokens.size(); ++i) {
      if (o.outcome_index(l.tokens[i].text)) fail(l, l.tokens[i], "duplicate outcome '" + l.tokens[i].text + "'");
      o.outcomes.push_back(l.tokens[i].text);
    }
    for (const auto& prev : observables_)
      if (prev.label == o.label) fail(l, l.tokens[1], "duplicate observable '" + o.label + "'");
    observables_.push_back(std::move(o));
  }

  void read_context(const Line& l) {
    expect_arity(l, 2);
    Context c;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      const auto& label = l.tokens[i].text;
      if (!find_observable(label)) fail(l, l.tokens[i], "context names undeclared observable '" + label + "'");
      if (std::find(c.observables.begin(), c.observables.end(), label) != c.observables.end())
        fail(l, l.tokens[i], "observable '" + label + "' repeated in context");
      c.observables.push_back(label);
    }
    for (const auto& prev : contexts_)
      if (prev == c) fail(l, l.tokens[1], "duplicate context");
    contexts_.push_back(std::move(c));
  }

  void read_state(const Line& l) {
    expect_arity(l, 2);
    if (state_) fail(l, l.tokens[0], "duplicate 'state' block");
    StateRaw s{l, {}, {}};
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      const auto d = parse_index(l, l.tokens[i], "a site dimension");
      if (d < 2) fail(l, l.tokens[i], "site dimension must be at least 2");
      s.dims.push_back(d);
    }
    state_ = std::move(s);
  }

  void read_measure(const Line& l) {
    expect_arity(l, 8);
    MeasureRaw m;
    m.line = l;
    m.observable = l.tokens[1].text;
    const auto obs = find_observable(m.observable);
    if (!obs) fail(l, l.tokens[1], "measure names undeclared observable '" + m.observable + "'");
    for (const auto& prev : measures_)
      if (prev.observable == m.observable) fail(l, l.tokens[1], "observable '" + m.observable + "' measured twice");
    if (l.tokens[2].text != "site") fail(l, l.tokens[2], "expected 'site'");
    std::size_t i = 3;
    while (i < l.tokens.size() && l.tokens[i].text != "basis") m.sites.push_back(parse_index(l, l.tokens[i++], "a site index"));
    if (m.sites.empty()) fail(l, l.tokens[2], "'site' needs at least one index");
    i = read_basis(l, i, m.basis, "labels");
    if (i >= l.tokens.size() || l.tokens[i].text != "labels") fail(l, l.tokens[std::min(i, l.tokens.size() - 1)], "expected 'labels'");
    for (++i; i < l.tokens.size(); ++i) {
      if (!obs->outcome_index(l.tokens[i].text))
        fail(l, l.tokens[i], "'" + l.tokens[i].text + "' is not an outcome of '" + m.observable + "'");
      m.labels.push_back(l.tokens[i].text);
    }
    if (m.labels.empty()) fail(l, l.tokens.back(), "'labels' needs at least one outcome");
    measures_.push_back(std::move(m));
  }

  void read_agent(const Line& l) {
    expect_arity(l, 6);
    AgentRole a;
    a.agent = l.tokens[1].text;
    if (l.tokens[2].text != "metacontext") fail(l, l.tokens[2], "expected 'metacontext'");
    a.metacontext = l.tokens[3].text;
    if (l.tokens[4].text != "observes") fail(l, l.tokens[4], "expected 'observes'");
    for (std::size_t i = 5; i < l.tokens.size(); ++i) {
      const auto& t = l.tokens[i];
      if (t.text == "observer-object" && i + 1 == l.tokens.size()) {
        a.observes_observer = true;
        break;
      }
      if (!find_observable(t.text)) fail(l, t, "agent observes undeclared observable '" + t.text + "'");
      for (const auto& prev : agents_)
        if (std::find(prev.observables.begin(), prev.observables.end(), t.text) != prev.observables.end())
          fail(l, t, "observable '" + t.text + "' already belongs to agent '" + prev.agent + "'");
      a.observables.push_back(t.text);
    }
    if (a.observables.empty()) fail(l, l.tokens[4], "'observes' needs at least one observable");
    agents_.push_back(std::move(a));
  }

  FactorRaw read_factor(const Line& l) {
    expect_arity(l, 5);
    FactorRaw f;
    f.line = l;
    if (l.tokens[1].text != "sites") fail(l, l.tokens[1], "expected 'sites'");
    std::size_t i = 2;
    while (i < l.tokens.size() && l.tokens[i].text != "basis") f.sites.push_back(parse_index(l, l.tokens[i++], "a site index"));
    if (f.sites.empty()) fail(l, l.tokens[1], "'sites' needs at least one index");
    const auto end = read_basis(l, i, f.basis, "");
    if (end != l.tokens.size()) fail(l, l.tokens[end], "unexpected '" + l.tokens[end].text + "'");
    return f;
  }

  const Observable* find_observable(const std::string& label) const {
    for (const auto& o : observables_)
      if (o.label == label) return &o;
    return nullptr;
  }

  StateVector build_state() const {
    const auto& s = *state_;
    std::size_t size = 1;
    for (auto d : s.dims) size *= d;
    std::vector<Amplitude> amps(size);
    std::vector<bool> seen(size);
    for (const auto& l : s.amps) {
      if (l.tokens.size() < 3 || l.tokens.size() > 4) fail(l, l.tokens[0], "'amp' takes an index, a real part and an optional imaginary part");
      const auto idx = parse_index(l, l.tokens[1], "an amplitude index");
      if (idx >= size) fail(l, l.tokens[1], "amplitude index " + std::to_string(idx) + " out of range (state has " + std::to_string(size) + ")");
      if (seen[idx]) fail(l, l.tokens[1], "amplitude " + std::to_string(idx) + " given twice");
      seen[idx] = true;
      const double re = parse_number(l, l.tokens[2]).value;
      const double im = l.tokens.size() == 4 ? parse_number(l, l.tokens[3]).value : 0.0;
      amps[idx] = Amplitude(re, im);
    }
    try {
      return StateVector(s.dims, std::move(amps));
    } catch (const std::invalid_argument& e) {
      fail(s.header, s.header.tokens[0], e.what());
    }
  }

  ScenarioDocument build_scenario() {
    if (!name_) {
      const std::size_t line = lines_.empty() ? 1 : lines_[0].number;
      throw ParseError(line, 1, "missing 'scenario' directive");
    }
    std::optional<Scenario> sc;
    try {
      sc.emplace(*name_, observables_, contexts_);
    } catch (const std::invalid_argument& e) {
      fail(name_line_, name_line_.tokens[1], e.what());
    }
    ScenarioDocument doc{*sc, std::nullopt, std::nullopt, agents_};

    if (!tables_.empty() && state_) fail(state_->header, state_->header.tokens[0], "a file holds either tables or a state, not both");
    if (!tables_.empty()) doc.model = build_model(*sc);
    if (!measures_.empty() && !state_) fail(measures_[0].line, measures_[0].line.tokens[0], "'measure' without a 'state' block");
    if (state_) doc.realization = build_realization(*sc);
    return doc;
  }

  EmpiricalModel build_model(const Scenario& sc) {
    std::vector<std::optional<std::vector<Probability>>> tables(sc.contexts().size());
    for (const auto& t : tables_) {
      const auto& h = t.header;
      std::optional<std::size_t> c;
      if (h.tokens.size() == 2 && std::all_of(h.tokens[1].text.begin(), h.tokens[1].text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        c = parse_index(h, h.tokens[1], "a context index");
        if (*c >= sc.contexts().size()) fail(h, h.tokens[1], "no context " + std::to_string(*c));
      } else {
        std::vector<std::string> labels;
        for (std::size_t i = 1; i < h.tokens.size(); ++i) labels.push_back(h.tokens[i].text);
        c = sc.find_context(labels);
        if (!c) fail(h, h.tokens[1], "no context with these observables");
      }
      if (tables[*c]) fail(h, h.tokens[0], "second table for context " + std::to_string(*c));
      const auto width = sc.members(*c).size();
      std::vector<std::optional<Probability>> entries(sc.tuple_count(*c));
      for (const auto& row : t.rows) {
        if (row.tokens.size() != width + 1)
          fail(row, row.tokens[0], "row needs " + std::to_string(width) + " outcomes and a probability");
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < width; ++i) {
          const auto& obs = sc.observable(sc.members(*c)[i]);
          if (!obs.outcome_index(row.tokens[i].text))
            fail(row, row.tokens[i], "'" + row.tokens[i].text + "' is not an outcome of '" + obs.label + "'");
          labels.push_back(row.tokens[i].text);
        }
        const auto flat = *sc.find_tuple(*c, labels);
        if (entries[flat]) fail(row, row.tokens[0], "outcome tuple listed twice");
        const auto n = parse_number(row, row.tokens[width]);
        if (n.value < -kEpsZero || n.value > 1.0 + kEpsZero) fail(row, row.tokens[width], "probability outside [0, 1]");
        entries[flat] = Probability{n.value, n.exact};
      }
      if (t.rows.size() != entries.size())
        fail(h, h.tokens[0], "table for context " + std::to_string(*c) + " has " + std::to_string(t.rows.size()) + " rows, expected " +
                                 std::to_string(entries.size()));
      double total = 0.0;
      std::vector<Probability> table;
      for (auto& e : entries) {
        total += e->value;
        table.push_back(*e);
      }
      if (std::abs(total - 1.0) > 1e-6) fail(h, h.tokens[0], "table for context " + std::to_string(*c) + " sums to " + format_double(total) + ", not 1");
      tables[*c] = std::move(table);
    }
    std::vector<std::vector<Probability>> out;
    for (std::size_t c = 0; c < tables.size(); ++c) {
      if (!tables[c]) fail(tables_.back().header, tables_.back().header.tokens[0], "context " + std::to_string(c) + " has no table");
      out.push_back(std::move(*tables[c]));
    }
    return EmpiricalModel(sc, std::move(out), 1e-6);
  }

  QuantumRealization build_realization(const Scenario& sc) {
    QuantumRealization qr{build_state(), {}};
    const auto& dims = qr.state.dims();
    for (const auto& m : measures_) {
      std::size_t dim = 1;
      for (std::size_t k = 0; k < m.sites.size(); ++k) {
        if (m.sites[k] >= dims.size()) fail(m.line, m.line.tokens[3 + k], "site " + std::to_string(m.sites[k]) + " out of range");
        dim *= dims[m.sites[k]];
      }
      auto basis = resolve_basis(m.basis, dim, &m.labels);
      if (m.labels.size() != dim)
        fail(m.line, m.line.tokens[0], "'labels' needs " + std::to_string(dim) + " outcomes, one per basis vector");
      qr.recipes.emplace(m.observable, MeasurementRecipe{m.sites, std::move(basis), m.labels});
    }
    for (const auto& o : sc.observables())
      if (!qr.recipes.count(o.label)) fail(state_->header, state_->header.tokens[0], "no 'measure' for observable '" + o.label + "'");
    try {
      (void)realize(qr, sc);
    } catch (const std::invalid_argument& e) {
      fail(state_->header, state_->header.tokens[0], e.what());
    }
    return qr;
  }

  ChainDocument build_chain() {
    const Line* chain_line = nullptr;
    for (const auto& l : lines_)
      if (l.tokens[0].text == "chain") chain_line = &l;
    if (!state_) fail(*chain_line, chain_line->tokens[0], "chain needs a 'state' block");
    if (observers_.empty()) fail(*chain_line, chain_line->tokens[0], "chain needs at least one 'observer'");
    auto base = build_state();
    std::vector<ChainAgent> agents;
    std::size_t dim = base.size();
    for (const auto& o : observers_) {
      agents.push_back({o.name, resolve_basis(o.basis, dim, nullptr)});
      dim *= agents.back().basis.dim();
    }
    ChainDocument doc{*chain_, ObserverChain(std::move(base), std::move(agents)), {}, {}};
    const auto dims = doc.chain.final_dims();
    for (const auto& f : finals_) {
      if (f.factors.empty()) fail(f.header, f.header.tokens[0], "final basis needs at least one 'factor'");
      for (const auto& prev : doc.finals)
        if (prev.name == f.name) fail(f.header, f.header.tokens[1], "duplicate final basis '" + f.name + "'");
      std::vector<BasisFactor> factors;
      for (const auto& fr : f.factors) {
        std::size_t d = 1;
        for (std::size_t k = 0; k < fr.sites.size(); ++k) {
          if (fr.sites[k] >= dims.size()) fail(fr.line, fr.line.tokens[2 + k], "site " + std::to_string(fr.sites[k]) + " out of range");
          d *= dims[fr.sites[k]];
        }
        factors.push_back({fr.sites, resolve_basis(fr.basis, d, nullptr)});
      }
      try {
        doc.finals.push_back({f.name, ProductBasis(std::move(factors))});
      } catch (const std::invalid_argument& e) {
        fail(f.header, f.header.tokens[0], e.what());
      }
    }
    for (const auto& c : compares_) {
      const auto n = doc.chain.agents().size();
      if (c.a > n) fail(c.line, c.line.tokens[1], "cut beyond the " + std::to_string(n) + "-agent chain");
      if (c.b > n) fail(c.line, c.line.tokens[2], "cut beyond the " + std::to_string(n) + "-agent chain");
      bool known = false;
      for (const auto& f : doc.finals) known = known || f.name == c.final_name;
      if (!known) fail(c.line, c.line.tokens[3], "unknown final basis '" + c.final_name + "'");
      doc.compares.push_back({Cut{c.a}, Cut{c.b}, c.final_name});
    }
    return doc;
  }

  std::vector<Line> lines_;
  std::optional<std::string> name_;
  Line name_line_;
  std::vector<Observable> observables_;
  std::vector<Context> contexts_;
  std::vector<TableRaw> tables_;
  std::optional<StateRaw> state_;
  std::vector<MeasureRaw> measures_;
  std::vector<AgentRole> agents_;
  std::optional<std::string> chain_;
  std::vector<ObserverRaw> observers_;
  std::vector<FinalRaw> finals_;
  std::vector<CompareRaw> compares_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_sites(const std::vector<std::size_t>& sites) {
  std::vector<std::string> parts;
  for (auto s : sites) parts.push_back(std::to_string(s));
  return join(parts);
}

bool same_vectors(const Basis& a, const Basis& b) { return a.dim() == b.dim() && a.vectors() == b.vectors(); }

// "basis <kind> [names ...]" plus any vector lines. Names are omitted when
// they equal `implied`.
void write_basis(std::ostringstream& head, std::ostringstream& body, const Basis& b, const std::vector<std::string>* implied,
                 const std::string& indent) {
  std::string kind = "explicit";
  std::vector<std::string> defaults;
  if (same_vectors(b, Basis::computational(b.dim()))) {
    kind = "computational";
    defaults = Basis::computational(b.dim()).labels();
  } else if (b.dim() == 2 && same_vectors(b, Basis::diagonal())) {
    kind = "diagonal";
    defaults = Basis::diagonal().labels();
  } else if (implied) {
    defaults = *implied;
  }
  head << " basis " << kind;
  if (b.labels() != defaults) head << " names " << join(b.labels());
  if (kind != "explicit") return;
  for (const auto& v : b.vectors()) {
    bool real = true;
    for (const auto& a : v) real = real && a.imag() == 0.0;
    body << indent << "vector";
    for (const auto& a : v) {
      body << ' ' << format_double(a.real());
      if (!real) body << ' ' << format_double(a.imag());
    }
    body << '\n';
  }
}

void write_state(std::ostringstream& out, const StateVector& s) {
  out << "state " << join_sites(s.dims()) << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto a = s[i];
    if (a == Amplitude{}) continue;
    out << "  amp " << i << ' ' << format_double(a.real());
    if (a.imag() != 0.0) out << ' ' << format_double(a.imag());
    out << '\n';
  }
}

}  // namespace

Document parse_document(std::string_view text) { return Parser(text).run(); }

ScenarioDocument parse_model(std::string_view text) {
  auto doc = parse_document(text);
  if (auto* s = std::get_if<ScenarioDocument>(&doc)) return std::move(*s);
  throw ParseError(1, 1, "expected a scenario, found a chain");
}

std::string serialize(const ScenarioDocument& doc) {
  std::ostringstream out;
  const auto& sc = doc.scenario;
  out << "scenario " << sc.name() << '\n';
  for (const auto& o : sc.observables()) out << "observable " << o.label << " outcomes " << join(o.outcomes) << '\n';
  for (const auto& c : sc.contexts()) out << "context " << join(c.observables) << '\n';
  if (doc.model) {
    for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
      out << "table " << c << '\n';
      for (std::size_t f = 0; f < sc.tuple_count(c); ++f) {
        const auto& p = doc.model->table(c)[f];
        out << "  " << join(sc.tuple_labels(c, f)) << ' ' << (p.exact ? to_string(*p.exact) : format_double(p.value)) << '\n';
      }
    }
  }
  if (doc.realization) {
    write_state(out, doc.realization->state);
    for (const auto& o : sc.observables()) {
      const auto it = doc.realization->recipes.find(o.label);
      if (it == doc.realization->recipes.end()) continue;
      const auto& r = it->second;
      std::ostringstream head, body;
      head << "measure " << o.label << " site " << join_sites(r.sites);
      write_basis(head, body, r.basis, &r.outcome_of_vector, "  ");
      head << " labels " << join(r.outcome_of_vector);
      out << head.str() << '\n' << body.str();
    }
  }
  for (const auto& a : doc.agents) {
    out << "agent \"" << a.agent << "\" metacontext \"" << a.metacontext << "\" observes " << join(a.observables);
    if (a.observes_observer) out << " observer-object";
    out << '\n';
  }
  return out.str();
}

std::string serialize(const ChainDocument& doc) {
  std::ostringstream out;
  out << "chain " << doc.name << '\n';
  write_state(out, doc.chain.base());
  for (const auto& a : doc.chain.agents()) {
    std::ostringstream head, body;
    head << "observer " << a.name;
    write_basis(head, body, a.basis, nullptr, "  ");
    out << head.str() << '\n' << body.str();
  }
  for (const auto& f : doc.finals) {
    out << "final " << f.name << '\n';
    for (const auto& factor : f.basis.factors()) {
      std::ostringstream head, body;
      head << "  factor sites " << join_sites(factor.sites);
      write_basis(head, body, factor.basis, nullptr, "    ");
      out << head.str() << '\n' << body.str();
    }
  }
  for (const auto& c : doc.compares) out << "compare " << c.first.position << ' ' << c.second.position << ' ' << c.final_basis << '\n';
  return out.str();
}

std::string serialize(const Document& doc) {
  return std::visit([](const auto& d) { return serialize(d); }, doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qliar
