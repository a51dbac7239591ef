#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace translit {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

/// Entry point of the `translit` tool. argv[0] is the program name. Data goes
/// to `out` (or -o files); the effective-config header and diagnostics go to
/// `err`.
int run_cli(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace translit
