#ifndef POMSET_CLI_HPP
#define POMSET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pomset::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,        // CORRECT, SAT, circuit found, or a plain conversion
  kNegative = 1,  // INCORRECT, UNSAT, no circuit
  kInputError = 2,
  kFailure = 3,   // search budget exhausted or an internal consistency check
};

// Runs one command line (without the program name). `-` as input file reads
// from `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace pomset::cli

#endif  // POMSET_CLI_HPP
