#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tfgp {

enum class ExitCode { ok = 0, solver_error = 1, verification_failed = 2, usage = 64 };

struct RunConfig {
  std::string command;
  std::vector<int> dimensions{1};
  double window_left = 30;
  double window_right = 40;
  int nodes_per_unit = 64;
  /// Radial nodes for ground-state solves; 0 picks them from `layer_step`.
  std::size_t n_nodes = 0;
  double layer_step = 1.0 / 128;
  double tol = 1e-10;
  std::vector<double> eps_list{0.16, 0.08, 0.04, 0.02};
  int n_max = 3;
  std::string kind = "all";
  double threshold = 2.7;
  std::string output_dir = ".";
  std::string format = "tsv";

  char delimiter() const { return format == "csv" ? ',' : '\t'; }
  /// Canonical text of every field that affects the output.
  std::string canonical() const;
  std::string hash() const;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const RunConfig& c);

/// Executes an already parsed configuration and returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (flags > --config file > TFGP_OUTPUT_DIR > defaults) and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tfgp
