#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "olre/experiment.hpp"

namespace olre {

// Config-file problem, carrying the 1-based line it was found on.
class config_error : public std::invalid_argument {
 public:
  config_error(int line, const std::string& message)
      : std::invalid_argument(message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// One `method = ...` entry; lambda/sigma markers left unresolved ("cv")
// are nullopt until cross-validation picks them.
struct MethodSpec {
  MethodKind kind = MethodKind::Olre;
  double alpha = 0.1;
  double beta = 0.5;
  double a = 4.0;
  std::int64_t t0 = 100;
  std::optional<double> lambda;  // rulsif; nullopt = select by CV
  int dictionary_size = 50;      // rulsif
};

// Parsed experiment definition (flat key = value text file). Every field has
// a documented default; parse_run_config applies and validates them so a
// RunConfig in hand is always runnable.
struct RunConfig {
  Scenario scenario = Scenario::ExpI;
  std::vector<MethodSpec> methods;
  std::int64_t T = 2000;
  Eigen::Index n_test = 10000;
  int n_trials = 20;
  std::vector<std::int64_t> checkpoints;  // defaulted from T when absent
  std::uint64_t base_seed = 1;
  std::optional<double> sigma;  // nullopt = select by CV
  bool reuse_warmup_pairs = false;
  std::string output_dir = "out";

  // model-selection knobs
  int warmup_n = 100;
  int cv_folds = 5;
  std::vector<double> cv_sigma_factors = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> cv_sigma_grid;  // absolute grid; overrides factors when set
  std::vector<double> cv_lambda_grid = {1e-3, 1e-2, 1e-1, 1.0};
  int cv_dictionary_size = 50;
};

RunConfig parse_run_config(const std::string& path);

// The config with every applied default and every CV-resolved value made
// explicit, as a parseable config file; rerunning it reproduces the run.
std::string render_resolved_config(const RunConfig& config,
                                   const std::vector<MethodConfig>& resolved_methods);

}  // namespace olre
