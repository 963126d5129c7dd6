#pragma once

#include "qliar/logic.hpp"
#include "qliar/scenario.hpp"
#include "qliar/simplex.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qliar {

inline constexpr std::size_t kMaxIncidenceColumns = std::size_t{1} << 20;
inline constexpr double kSignallingTolerance = 1e-6;

// Rows are (context, tuple) pairs: contexts as declared, tuples in
// enumeration order. Columns are all global assignments in lexicographic
// order. entry(r, c) is 1 iff assignment c restricts to row r's tuple.
struct IncidenceMatrix {
  std::vector<LocalEvent> rows;
  std::vector<GlobalAssignment> columns;
  std::vector<std::vector<std::uint8_t>> entries;
};

IncidenceMatrix incidence(const Scenario& sc);

struct WitnessWeight {
  GlobalAssignment assignment;
  double weight = 0.0;
  std::optional<Rational> exact;
};

struct FractionResult {
  double ncf = 0.0;
  double cf = 1.0;
  std::optional<Rational> exact_ncf;  // set when the model is exactly rational
  std::vector<WitnessWeight> witness; // nonzero weights only
};

class SignallingModel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Largest total weight b >= 0 over global assignments with
// incidence . b <= model probabilities. Throws SignallingModel if the model
// violates no-disturbance by more than kSignallingTolerance.
FractionResult contextual_fraction(const EmpiricalModel& m);

// Smallest slack  p(c, t) - sum of witness weights consistent with (c, t)
// over every row; a valid sub-decomposition has this >= -1e-9.
double witness_min_slack(const EmpiricalModel& m, const FractionResult& r);

// The program solved by contextual_fraction, exposed for independent checks.
LinearProgram<double> fraction_program(const EmpiricalModel& m, const IncidenceMatrix& inc);
LinearProgram<Rational> exact_fraction_program(const EmpiricalModel& m, const IncidenceMatrix& inc);

}  // namespace qliar
