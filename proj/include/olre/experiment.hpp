#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "olre/estimator.hpp"
#include "olre/rulsif.hpp"
#include "olre/synthetic.hpp"

namespace olre {

// Held-out pairs used for error estimation, drawn from their own rng stream
// so they are disjoint from every training stream.
struct TestSet {
  Eigen::MatrixXd x;        // dim x n, draws from p
  Eigen::MatrixXd x_prime;  // dim x n, draws from q
  Eigen::Index size() const { return x.cols(); }
};

TestSet make_test_set(const ScenarioSpec& spec, Eigen::Index n, std::uint64_t seed);

enum class MethodKind { Olre, Rulsif };

std::string to_string(MethodKind kind);

// One method entry of an experiment: which estimator, its target alpha, the
// kernel bandwidth, and the method-specific hyperparameters.
struct MethodConfig {
  MethodKind kind = MethodKind::Olre;
  double alpha = 0.1;
  double sigma = 1.0;
  // olre
  double beta = 0.5;
  double a = 4.0;
  std::int64_t t0 = 100;
  // rulsif
  double lambda = 0.1;
  int dictionary_size = 50;
};

struct TrialReport {
  Scenario scenario = Scenario::ExpI;
  MethodConfig config;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> errors;  // estimated E_{p^alpha}[(f_t - r^alpha)^2] per checkpoint
};

struct AggregateReport {
  Scenario scenario = Scenario::ExpI;
  MethodConfig config;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_error;
  std::vector<double> std_error;  // sample (n-1) std; NaN when n_trials < 2
  int n_trials = 0;
};

// Monte-Carlo estimate of E_{p^alpha}[(f - r^alpha)^2], decomposed as
// (1-alpha) mean over p-draws + alpha mean over q-draws.
double l2_error(const WeightedExpansion& f, const KernelSpec& spec,
                const ScenarioSpec& scenario, double alpha, const TestSet& test);

// Same statistic from precomputed f-values and ratio values (one entry per
// test column); lets callers plug in an oracle for f.
double l2_error_from_values(const Eigen::Ref<const Eigen::VectorXd>& f_x,
                            const Eigen::Ref<const Eigen::VectorXd>& f_x_prime,
                            const Eigen::Ref<const Eigen::VectorXd>& ratio_x,
                            const Eigen::Ref<const Eigen::VectorXd>& ratio_x_prime,
                            double alpha);

// Plug-in lower-bound estimate of the Pearson divergence:
//   mean_q f - (1-alpha)/2 mean_p f^2 - alpha/2 mean_q f^2 - 1/2.
double estimate_pe_divergence(const WeightedExpansion& f, const KernelSpec& spec,
                              const TestSet& test, double alpha);

double estimate_pe_divergence_from_values(const Eigen::Ref<const Eigen::VectorXd>& f_x,
                                          const Eigen::Ref<const Eigen::VectorXd>& f_x_prime,
                                          double alpha);

// Runs one seeded trial and scores it at the checkpoints.
//
// Olre streams T pairs and scores snapshots. Rulsif refits from scratch at
// every checkpoint t on the first t pairs, with one random dictionary of
// dictionary_size points drawn per trial from the trial's q-sample.
// `prefix` pairs, when given, replace the head of the stream (used to feed
// the warm-up sample back into training).
TrialReport run_trial(const ScenarioSpec& scenario, const MethodConfig& method,
                      std::int64_t T, const std::vector<std::int64_t>& checkpoints,
                      const TestSet& test, std::uint64_t seed,
                      const std::vector<ObservationPair>* prefix = nullptr);

// Per-checkpoint mean and sample standard deviation across trials that share
// one configuration. The reduction is order-independent: values are put in
// canonical order before summing, so permuting `reports` cannot change bits.
AggregateReport aggregate(const std::vector<TrialReport>& reports);

}  // namespace olre
