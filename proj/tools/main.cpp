#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  nonarch::cli::Environment env;
  if (const char* p = std::getenv("NONARCH_PRECISION")) env.default_precision = std::string(p);
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = nonarch::cli::run(args, env, std::cin);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
