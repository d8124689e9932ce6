#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "heapgame/core.hpp"

namespace heapgame::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailure = 2,
  kResourceLimit = 3,
  kArithmeticRange = 4,
};

// Runs the command line `args` (without the program name). Reads `in` only
// for `play`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

// Interactive text game on labeled heaps. The engine moves first when
// `engine_first` is set. Returns kOk on a finished game or a clean abort.
int play(std::span<const Tokens> heaps, bool engine_first, std::istream& in, std::ostream& out);

}  // namespace heapgame::cli
