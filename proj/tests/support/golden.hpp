#pragma once

#include <string>
#include <vector>

namespace mgl::testing {

// One scripted CLI invocation. `{corpus}` in an argument expands to the
// corpus directory. The fixture holds the exact bytes written to stdout.
struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  std::string stdin_file;  // corpus file fed on stdin, or empty
  int exit_code;
  bool inject_internal = false;  // the item hook throws an internal error
};

const std::vector<GoldenCase>& golden_cases();

struct GoldenResult {
  bool passed;
  std::string detail;
};

// Runs the case in-process. With MGL_UPDATE_GOLDEN set in the environment
// the fixture is rewritten instead of compared.
GoldenResult run_golden_case(const GoldenCase& c);

}  // namespace mgl::testing
