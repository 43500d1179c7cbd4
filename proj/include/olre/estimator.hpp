#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "olre/kernel.hpp"
#include "olre/observation.hpp"

namespace olre {

// Hyperparameters of the online estimator. `a` and `beta` drive the
// step-size/penalization schedule; `t0` offsets it (warm-up period).
struct OlreConfig {
  double alpha = 0.1;     // relative-ratio regularization, in (0,1)
  double beta = 0.5;      // smoothness exponent, in [1/2, 1]
  double a = 4.0;         // schedule scale, >= 4
  std::int64_t t0 = 100;  // schedule offset, >= 1
  KernelSpec kernel;

  void validate() const;
};

struct Schedule {
  double eta;     // step size
  double lambda;  // penalization
};

// eta_t = a * (t0+t)^(-2b/(2b+1)),  lambda_t = (1/a) * (t0+t)^(-1/(2b+1)).
// Both are strictly positive and strictly decreasing in t.
Schedule schedule(const OlreConfig& config, std::int64_t t);

// Smallest t0 for which the convergence guarantee applies given the schedule
// scale `a` (kernel sup-norm 1). Configs below it still run; the CLI warns.
double t0_theory_bound(double a, double beta);

// Online estimator: one functional stochastic gradient step per incoming
// pair. The dictionary grows by {x_t, x'_t} each step, previous weights
// shrink by (1 - eta_t lambda_t), and two new weights are appended, so after
// t steps from zero initialization |dictionary| == 2t.
//
// A state is owned by one logical stream; step() is not safe for concurrent
// callers on the same instance. Distinct instances are independent.
class OnlineEstimator {
 public:
  explicit OnlineEstimator(OlreConfig config);

  void step(const ObservationPair& pair);

  std::int64_t t() const { return t_; }
  const OlreConfig& config() const { return config_; }
  const WeightedExpansion& expansion() const { return f_; }
  WeightedExpansion snapshot() const { return f_; }

  // Kernel evaluations spent in step() so far; 2t(t-1) after t steps.
  std::uint64_t kernel_evals() const { return kernel_evals_; }

 private:
  OlreConfig config_;
  WeightedExpansion f_;
  std::int64_t t_ = 0;
  std::uint64_t kernel_evals_ = 0;
};

// Folds the stream from zero initialization and returns deep-copied
// snapshots {t -> f_t} at the requested checkpoint steps (1-based).
std::map<std::int64_t, WeightedExpansion> run_stream(
    const OlreConfig& config, const std::vector<ObservationPair>& pairs,
    const std::set<std::int64_t>& checkpoints);

// Regularized instantaneous Pearson loss
//   (1-alpha) f(x)^2/2 + alpha f(x')^2/2 - f(x') + (lambda/2) |f|_H^2,
// with |f|_H^2 = theta^T G theta over the dictionary Gram matrix G.
double instantaneous_loss(const WeightedExpansion& f, const KernelSpec& spec,
                          const ObservationPair& pair, double alpha, double lambda);

// Gradient of instantaneous_loss with respect to the weight vector:
//   (1-alpha) f(x) k_x + (alpha f(x') - 1) k_x' + lambda G theta,
// where k_y is the kernel vector K(D, y).
Eigen::VectorXd instantaneous_loss_gradient(const WeightedExpansion& f,
                                            const KernelSpec& spec,
                                            const ObservationPair& pair, double alpha,
                                            double lambda);

}  // namespace olre
