#ifndef LEPAGE_TOOLS_CLI_APP_HPP
#define LEPAGE_TOOLS_CLI_APP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lepage/lepage.hpp"

namespace lepage::cli {

enum ExitCode : int { ok = 0, check_failed = 1, config_failure = 2, runtime_failure = 3 };

/// Raised for anything wrong with the run configuration itself.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class LawKind { max_stable, stable, doa };

struct GridSpec {
  double x_lo = 0.0, x_hi = 4.0;
  std::size_t x_bins = 200;
  double y_lo = 0.0, y_hi = 4.0;
  std::size_t y_bins = 200;
  Normalization normalization = Normalization::density;
};

struct RunConfig {
  std::string command;
  LawKind kind = LawKind::max_stable;
  double alpha = 0.0;
  std::optional<SpectralMeasure> measure;
  std::vector<double> delta;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t threads = 1;
  std::optional<std::size_t> k; // unset means exact / law default
  std::size_t summands = 1000;
  std::string output;
  std::vector<std::vector<double>> points;
  std::optional<std::size_t> marginal; // 0-based coordinate
  GridSpec grid;
  std::string suite;
  nlohmann::json reference = nlohmann::json::object();
  nlohmann::json effective; // echoed in output metadata
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> threads;
  std::optional<std::string> output;
};

/// Validates `j` against the run-config schema for `command`.
RunConfig parse_config(const std::string &command, nlohmann::json j,
                       const Overrides &overrides);

struct CheckResult {
  std::string check;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string relation; // how statistic must compare with threshold
  bool pass = false;
};

std::vector<CheckResult> run_suite(const RunConfig &config);

/// Executes a parsed configuration; data goes to `out`, diagnostics to `err`.
int execute(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Full command-line entry point.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace lepage::cli

#endif // LEPAGE_TOOLS_CLI_APP_HPP
