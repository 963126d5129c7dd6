#pragma once

#include "qliar/metacontext.hpp"
#include "qliar/scenario.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qliar {

// Line-oriented scenario files. '#' starts a comment; indented lines continue
// the preceding directive.
//
//   scenario <name>
//   observable <label> outcomes <o1> <o2> ...
//   context <label> <label> ...
//   table <context index | member labels>
//     <outcome labels> <probability>
//   state <dim> <dim> ...
//     amp <index> <re> [<im>]
//   measure <observable> site <k> [<k> ...] basis <computational|diagonal|explicit> [names <n> ...] labels <o> ...
//     vector <amplitudes>            (explicit bases only)
//   agent <name> metacontext "<id>" observes <observable> ... [observer-object]
//
// Observer chains use their own block:
//
//   chain <name>
//   state <dim> ...
//     amp <index> <re> [<im>]
//   observer <name> basis <computational|diagonal|explicit> [names <n> ...]
//     vector <amplitudes>
//   final <name>
//     factor sites <k> ... basis <...> [names <n> ...]
//     vector <amplitudes>
//   compare <cut> <cut> <final name>
//
// Numbers are decimals, p/q rationals, or [-]sqrt(<decimal or p/q>). A vector
// line lists either d real amplitudes or d (re, im) pairs.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct ScenarioDocument {
  Scenario scenario;
  std::optional<EmpiricalModel> model;
  std::optional<QuantumRealization> realization;
  std::vector<AgentRole> agents;

  bool operator==(const ScenarioDocument&) const = default;
};

struct FinalBasis {
  std::string name;
  ProductBasis basis;

  bool operator==(const FinalBasis&) const = default;
};

struct CutPair {
  Cut first;
  Cut second;
  std::string final_basis;

  bool operator==(const CutPair& o) const {
    return first.position == o.first.position && second.position == o.second.position && final_basis == o.final_basis;
  }
};

struct ChainDocument {
  std::string name;
  ObserverChain chain;
  std::vector<FinalBasis> finals;
  std::vector<CutPair> compares;

  bool operator==(const ChainDocument&) const = default;
};

using Document = std::variant<ScenarioDocument, ChainDocument>;

Document parse_document(std::string_view text);
// Throws ParseError if the text holds a chain.
ScenarioDocument parse_model(std::string_view text);

std::string serialize(const ScenarioDocument& doc);
std::string serialize(const ChainDocument& doc);
std::string serialize(const Document& doc);

// Reads a file; std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace qliar
