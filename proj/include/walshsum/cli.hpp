#pragma once

#include "walshsum/errors.hpp"
#include "walshsum/experiments.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace walshsum {

// Bad flags, missing values, limits exceeded. `code` is 0 for --help.
struct UsageError : Error {
  UsageError(const std::string& what, int code = 2) : Error(what), code(code) {}
  int code;
};

enum ExitCode : int { kExitOk = 0, kExitExpectation = 1, kExitUsage = 2, kExitInvariant = 3 };

/// Everything one invocation asks for. Numeric literals are kept as typed
/// so the provenance echo shows exactly what was given.
struct RunConfig {
  std::string command;  // kernel, mean, norm, criterion, decompose, experiment, list
  std::string experiment;

  std::string kernel_type = "dirichlet";
  std::string criterion = "main";  // main or h1
  std::string norm = "lp";         // lp, weak-l1 or hardy

  std::optional<std::string> weights;
  std::optional<std::string> alpha;
  std::optional<std::string> weights_file;
  bool non_increasing = false;

  std::optional<std::string> p;
  std::vector<std::string> p_grid;
  std::optional<std::uint64_t> n;
  std::optional<int> resolution;
  std::optional<std::int64_t> nmin;
  std::optional<std::int64_t> nmax;
  std::optional<int> atoms;
  std::optional<int> delta;

  // function input for mean and norm
  std::optional<std::string> input;
  std::vector<std::string> values;

  unsigned digits = kDefaultDigits;
  std::optional<std::uint64_t> seed;
  std::string format = "json";  // json, csv, stepfn
  std::optional<std::string> output;
  bool expect_pass = false;
  std::optional<int> jobs;

  Json to_json() const;
};

/// argv[0] is skipped. Throws UsageError.
RunConfig parse_invocation(const std::vector<std::string>& args);

/// Runs the command, writes the report to `out` (or the --output file) and
/// returns the exit status. Errors surface as exceptions.
int execute(const RunConfig& config, std::ostream& out);

/// parse_invocation + execute with the exit-code mapping: 2 for usage and
/// domain errors, 3 for invariant breaches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The report a command would write, without output handling.
ExperimentReport command_report(const RunConfig& config);

}  // namespace walshsum
