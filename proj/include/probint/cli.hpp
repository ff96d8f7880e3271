// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace probint {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitAnalysisError = 3;
inline constexpr int kExitUsage = 64;

// `args` excludes the executable name, e.g. {"analyze", "prog.up", "--spec", "hw.spec"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace probint
