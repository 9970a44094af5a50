#pragma once

// Batch front end. Every subcommand runs under an explicit step budget and
// writes one report, as JSON or as text.
//
// Exit status: 0 accepted or decided yes, 1 decided no, 2 budget exhausted,
// 64 usage error, 65 malformed input, 66 unreadable file.

#include <ostream>
#include <string>
#include <vector>

namespace mg {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitExhausted = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInput = 65;
inline constexpr int kExitNoInput = 66;

/// Runs one invocation. args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mg
