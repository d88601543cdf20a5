#pragma once

#include <ostream>

#include "gfl/cli_spec.hpp"

namespace gfl {

// Exit codes: 0 success / all checks pass, 1 runtime or check failure,
// 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Dispatches a parsed spec; results go to `out`, diagnostics to `err`.
int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace gfl
