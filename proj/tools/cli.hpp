#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qoekit::cli {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  // Whether `in` is a terminal; elicitation refuses non-interactive input
  // unless an answers file is supplied.
  bool interactive = false;
};

// args excludes the program name. Returns the process exit code:
// 0 ok, 2 invalid input, 3 I/O failure, 4 non-convergence, 1 anything else.
int run(const std::vector<std::string>& args, Streams streams);

}  // namespace qoekit::cli
