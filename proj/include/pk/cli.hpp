#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pk {

// Exit codes of the command-line verifier.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_input_error = 2;

// args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pk
