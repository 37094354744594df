#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const char* env = std::getenv("MGL_SEMIRING");
  return mgl::cli::run(args, std::cin, std::cout, std::cerr, env ? env : "");
}
