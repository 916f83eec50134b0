#pragma once

#include <iosfwd>

namespace sif::cli {

// Exit-code protocol shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;  // also: property violations found by `check`
inline constexpr int kExitNearCritical = 3;
inline constexpr int kExitSolverFailure = 4;

/// Entry point behind the `sif` binary: `sif {feasibility|sweep|eigen|check} <scenario.json> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sif::cli
