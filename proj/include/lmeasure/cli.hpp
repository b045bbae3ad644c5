#pragma once

// Command-line driver. Every experiment is a subcommand; output is CSV or
// newline-delimited JSON and starts with the fully resolved configuration.
// Identical configurations produce byte-identical output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lmeasure/densities.hpp"
#include "lmeasure/step_function.hpp"

namespace lmeasure::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 2, kNumericalError = 3 };

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  double theta = 1.0;
  double eps = 1e-10;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint32_t streams = 1;
  std::string out;  // empty: standard output
  Format format = Format::csv;

  std::string f = "2@0:1";
  std::string a = "1@0:1";
  bool allow_infinite_variance = false;
  std::string process = "gamma";       // sample: dirichlet | gamma | lebesgue
  std::string partition = "1,1,1";     // partition weights theta_i
  std::string route = "marking";       // partition-sums: marking | intervals
  std::string b = "0.5,1,2";           // box sides
  double lambda = 1.0;
  std::string n = "2";                 // dimension(s)
  int nmax = 40;
  double smax = 3.0;
  int points = 31;
  std::string schedule = "constant";   // divergence: constant | sqrt_n
  double scale = 1.0;

  /// Throws DomainError with an actionable message.
  void validate() const;
};

/// "v1@b0:b1,v2@b1:b2,..." with positive values and segments tiling [0, 1)
/// in order. Gaps, overlaps and bad values raise ParseError naming the
/// offending segment.
StepFunction parse_step_function(std::string_view spec);

/// Comma-separated positive reals.
std::vector<double> parse_real_list(std::string_view text, const char* what);
std::vector<int> parse_int_list(std::string_view text, const char* what);

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Runs one experiment for an already parsed configuration, writing to `out`.
/// Returns an ExitCode; diagnostics go to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lmeasure::cli
