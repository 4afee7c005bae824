#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsphere {

// Parses the argument list (without argv[0]) and executes one command:
//   poly, moments, haar, ebi, phi, spectrum, specdim, heat-trace, central,
//   verify.
// Output goes to out, one-line diagnostics to err. Returns the process exit
// code: 0 on success, 2 on validation errors (unknown command, malformed
// rational, length cap, singular Gram, ...), 1 when verify finds failures.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsphere
