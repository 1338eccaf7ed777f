#pragma once

#include <iosfwd>
#include <string>

namespace torsionlab::cli {

/// Entry point of the command-line tool, separated from main() so tests can
/// drive it against string streams. Results go to `out`, diagnostics to
/// `err`. Returns 0 on success, 1 on usage errors, 2 on domain errors.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

/// Fixed-width numeric rendering used for all CLI output: 12 significant
/// digits, with a ".0" suffix when the value would otherwise print as an
/// integer.
std::string format_real(double value);

}  // namespace torsionlab::cli
