#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace puzzlemix {

// Declarative experiment description. One flat key-value document;
// unknown keys and unknown experiment ids are validation errors.
struct ExperimentConfig {
  std::string experiment;
  int n = 0;
  int d = 1;
  double t = -1;            // scaled time
  std::int64_t steps = -1;  // explicit step count T (overrides t)
  std::int64_t trials = 0;  // trials / renewals / runs
  int M = 1;
  int N = -1;               // matrix power for d2-identity
  std::uint64_t seed = 1;
  int workers = 0;          // 0 = default_workers()
  std::string out;          // output path; empty = stdout
};

inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {
      "return-probs", "renewal-moments", "single-piece-tv", "fixed-points",
      "hitting",      "eigen-sums",      "d2-identity",     "pdm-spectrum",
      "comparison",   "coupling",        "appendix"};
  return ids;
}

// Empty if valid; otherwise messages naming the offending fields.
std::vector<std::string> validate(const ExperimentConfig& cfg);

// key=value lines, '#' comments; unknown keys are errors.
ExperimentConfig parse_config(std::istream& in,
                              std::vector<std::string>& errors);

// Runs the experiment and streams result rows (CSV, or JSON for the
// nested comparison/appendix reports) to `out`. Rows are deterministic
// given (experiment, parameters, seed) and independent of the worker
// count. Wall time is never written to the stream.
// Throws std::invalid_argument / std::length_error on precondition
// violations; statistical outcomes never fail.
void run_experiment(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace puzzlemix
