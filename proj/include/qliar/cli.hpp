#pragma once

#include "qliar/scenario_io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qliar {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitUsage = 2;

// The |+> system watched by one friend in the computational basis, compared
// under a Bell-type final basis and under the memory-diagonal basis.
ChainDocument wigner_document();

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qliar
