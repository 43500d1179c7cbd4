#include "olre/estimator.hpp"

#include <cmath>

namespace olre {

void OlreConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("OlreConfig: alpha must be in (0,1)");
  if (!(beta >= 0.5 && beta <= 1.0))
    throw std::invalid_argument("OlreConfig: beta must be in [1/2,1]");
  if (!(a >= 4.0)) throw std::invalid_argument("OlreConfig: a must be >= 4");
  if (t0 < 1) throw std::invalid_argument("OlreConfig: t0 must be >= 1");
  if (!(kernel.bandwidth > 0.0))
    throw std::invalid_argument("OlreConfig: kernel bandwidth must be > 0");
}

Schedule schedule(const OlreConfig& config, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("schedule: t must be >= 1");
  const double tbar = static_cast<double>(config.t0 + t);
  const double denom = 2.0 * config.beta + 1.0;
  return Schedule{config.a * std::pow(1.0 / tbar, 2.0 * config.beta / denom),
                  (1.0 / config.a) * std::pow(1.0 / tbar, 1.0 / denom)};
}

double t0_theory_bound(double a, double beta) {
  return std::pow(2.0 + 4.0 * a, (2.0 * beta + 1.0) / (2.0 * beta));
}

OnlineEstimator::OnlineEstimator(OlreConfig config) : config_(std::move(config)) {
  config_.validate();
}

void OnlineEstimator::step(const ObservationPair& pair) {
  const Dictionary& dict = f_.dictionary();
  if (!dict.empty() && (pair.x.size() != dict.dim() || pair.x_prime.size() != dict.dim()))
    throw std::invalid_argument("OnlineEstimator::step: pair dimension mismatch");

  const Schedule s = schedule(config_, t_ + 1);
  const double v = evaluate(f_, config_.kernel, pair.x);
  const double v_prime = evaluate(f_, config_.kernel, pair.x_prime);
  kernel_evals_ += 2 * static_cast<std::uint64_t>(f_.size());

  f_.scale_weights(1.0 - s.eta * s.lambda);
  f_.append(pair.x, s.eta * (config_.alpha - 1.0) * v);
  f_.append(pair.x_prime, s.eta * (1.0 - config_.alpha * v_prime));
  ++t_;
}

std::map<std::int64_t, WeightedExpansion> run_stream(
    const OlreConfig& config, const std::vector<ObservationPair>& pairs,
    const std::set<std::int64_t>& checkpoints) {
  if (pairs.empty()) throw std::invalid_argument("run_stream: empty stream");
  const auto T = static_cast<std::int64_t>(pairs.size());
  for (const auto c : checkpoints)
    if (c < 1 || c > T) throw std::invalid_argument("run_stream: checkpoint out of range");

  OnlineEstimator est(config);
  std::map<std::int64_t, WeightedExpansion> snapshots;
  for (std::int64_t i = 0; i < T; ++i) {
    est.step(pairs[static_cast<std::size_t>(i)]);
    if (checkpoints.count(i + 1)) snapshots.emplace(i + 1, est.snapshot());
  }
  return snapshots;
}

double instantaneous_loss(const WeightedExpansion& f, const KernelSpec& spec,
                          const ObservationPair& pair, double alpha, double lambda) {
  const double v = evaluate(f, spec, pair.x);
  const double v_prime = evaluate(f, spec, pair.x_prime);
  double hilbert_sq = 0.0;
  if (f.size() > 0) {
    const Eigen::MatrixXd G = gram(f.dictionary(), spec);
    hilbert_sq = f.weights().dot(G * f.weights());
  }
  return 0.5 * (1.0 - alpha) * v * v + 0.5 * alpha * v_prime * v_prime - v_prime +
         0.5 * lambda * hilbert_sq;
}

Eigen::VectorXd instantaneous_loss_gradient(const WeightedExpansion& f,
                                            const KernelSpec& spec,
                                            const ObservationPair& pair, double alpha,
                                            double lambda) {
  if (f.size() == 0) return Eigen::VectorXd();
  const double v = evaluate(f, spec, pair.x);
  const double v_prime = evaluate(f, spec, pair.x_prime);
  const Eigen::VectorXd kx = gram_cross(f.dictionary(), spec, pair.x);
  const Eigen::VectorXd kxp = gram_cross(f.dictionary(), spec, pair.x_prime);
  const Eigen::MatrixXd G = gram(f.dictionary(), spec);
  return (1.0 - alpha) * v * kx + (alpha * v_prime - 1.0) * kxp +
         lambda * (G * f.weights());
}

}  // namespace olre
