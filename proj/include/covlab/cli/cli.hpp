#ifndef COVLAB_CLI_CLI_HPP
#define COVLAB_CLI_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "covlab/cli/problem.hpp"

namespace covlab::cli {

enum ExitCode : int { kPass = 0, kMathFailure = 1, kUsageError = 2 };

/// A request the command cannot serve, independent of the mathematics.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<unsigned> degree_bound;
  std::string out_path;  // certificate (noname-build) or machine report
};

const std::vector<std::string>& command_names();

/// One command on a loaded problem (or certificate text for noname-verify).
/// `certificate` receives the certificate of noname-build.
Report run_command(const std::string& command, const ProblemFile& problem, const RunOptions& opts,
                   nlohmann::ordered_json* certificate = nullptr);

/// Text rendering of a report: status, checks, then the data fields.
std::string render_text(const Report& r);

/// Full command line without the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covlab::cli

#endif  // COVLAB_CLI_CLI_HPP
