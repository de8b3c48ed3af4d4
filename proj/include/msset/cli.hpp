#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msset {

// Exit codes: 0 pass/success, 1 fail/counterexample, 2 unknown-within-bounds,
// 64 usage error, 65 parse error.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_unknown = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_parse = 65;

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace msset
