#ifndef NONARCH_TOOLS_CLI_HPP
#define NONARCH_TOOLS_CLI_HPP

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace nonarch::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseFailure = 1;
inline constexpr int kPreconditionFailure = 2;

struct Invocation {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

struct Environment {
  /// Value of NONARCH_PRECISION, if set.
  std::optional<std::string> default_precision;
};

/// Runs one command line (without the program name). `in` backs `--batch`
/// and `render --input -`.
Invocation run(const std::vector<std::string>& args, const Environment& env, std::istream& in);

}  // namespace nonarch::cli

#endif  // NONARCH_TOOLS_CLI_HPP
