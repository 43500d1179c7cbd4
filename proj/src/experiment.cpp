#include "olre/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace olre {

namespace {

void check_same_config(const TrialReport& a, const TrialReport& b) {
  const MethodConfig& x = a.config;
  const MethodConfig& y = b.config;
  bool same = a.scenario == b.scenario && a.checkpoints == b.checkpoints &&
              x.kind == y.kind && x.alpha == y.alpha && x.sigma == y.sigma;
  if (same && x.kind == MethodKind::Olre)
    same = x.beta == y.beta && x.a == y.a && x.t0 == y.t0;
  if (same && x.kind == MethodKind::Rulsif)
    same = x.lambda == y.lambda && x.dictionary_size == y.dictionary_size;
  if (!same) throw std::invalid_argument("aggregate: mixed trial configurations");
}

std::vector<ObservationPair> draw_stream(const ScenarioSpec& scenario, std::int64_t T,
                                         std::uint64_t seed,
                                         const std::vector<ObservationPair>* prefix) {
  std::vector<ObservationPair> stream;
  stream.reserve(static_cast<std::size_t>(T));
  if (prefix) {
    for (const auto& p : *prefix) {
      if (static_cast<std::int64_t>(stream.size()) == T) break;
      if (p.x.size() != scenario.dim)
        throw std::invalid_argument("run_trial: prefix dimension mismatch");
      stream.push_back(p);
    }
  }
  Rng rng(seed);
  while (static_cast<std::int64_t>(stream.size()) < T)
    stream.push_back(sample_pair(scenario, rng));
  return stream;
}

}  // namespace

TestSet make_test_set(const ScenarioSpec& spec, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_test_set: n must be >= 1");
  TestSet test;
  test.x.resize(spec.dim, n);
  test.x_prime.resize(spec.dim, n);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ObservationPair pair = sample_pair(spec, rng);
    test.x.col(i) = pair.x;
    test.x_prime.col(i) = pair.x_prime;
  }
  return test;
}

std::string to_string(MethodKind kind) {
  return kind == MethodKind::Olre ? "olre" : "rulsif";
}

double l2_error_from_values(const Eigen::Ref<const Eigen::VectorXd>& f_x,
                            const Eigen::Ref<const Eigen::VectorXd>& f_x_prime,
                            const Eigen::Ref<const Eigen::VectorXd>& ratio_x,
                            const Eigen::Ref<const Eigen::VectorXd>& ratio_x_prime,
                            double alpha) {
  if (f_x.size() == 0 || f_x_prime.size() == 0)
    throw std::invalid_argument("l2_error: empty test set");
  if (f_x.size() != ratio_x.size() || f_x_prime.size() != ratio_x_prime.size())
    throw std::invalid_argument("l2_error: value/ratio length mismatch");
  const double mp = (f_x - ratio_x).squaredNorm() / static_cast<double>(f_x.size());
  const double mq =
      (f_x_prime - ratio_x_prime).squaredNorm() / static_cast<double>(f_x_prime.size());
  return (1.0 - alpha) * mp + alpha * mq;
}

double l2_error(const WeightedExpansion& f, const KernelSpec& spec,
                const ScenarioSpec& scenario, double alpha, const TestSet& test) {
  return l2_error_from_values(evaluate_batch(f, spec, test.x),
                              evaluate_batch(f, spec, test.x_prime),
                              true_ratio_batch(scenario, alpha, test.x),
                              true_ratio_batch(scenario, alpha, test.x_prime), alpha);
}

double estimate_pe_divergence_from_values(const Eigen::Ref<const Eigen::VectorXd>& f_x,
                                          const Eigen::Ref<const Eigen::VectorXd>& f_x_prime,
                                          double alpha) {
  if (f_x.size() == 0 || f_x_prime.size() == 0)
    throw std::invalid_argument("estimate_pe_divergence: empty test set");
  const double n = static_cast<double>(f_x.size());
  const double np = static_cast<double>(f_x_prime.size());
  return f_x_prime.sum() / np - 0.5 * (1.0 - alpha) * f_x.squaredNorm() / n -
         0.5 * alpha * f_x_prime.squaredNorm() / np - 0.5;
}

double estimate_pe_divergence(const WeightedExpansion& f, const KernelSpec& spec,
                              const TestSet& test, double alpha) {
  return estimate_pe_divergence_from_values(evaluate_batch(f, spec, test.x),
                                            evaluate_batch(f, spec, test.x_prime), alpha);
}

TrialReport run_trial(const ScenarioSpec& scenario, const MethodConfig& method,
                      std::int64_t T, const std::vector<std::int64_t>& checkpoints,
                      const TestSet& test, std::uint64_t seed,
                      const std::vector<ObservationPair>* prefix) {
  if (T < 1) throw std::invalid_argument("run_trial: T must be >= 1");
  if (checkpoints.empty()) throw std::invalid_argument("run_trial: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > T)
      throw std::invalid_argument("run_trial: checkpoint out of [1, T]");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("run_trial: checkpoints must be strictly increasing");
  }

  const KernelSpec spec(method.sigma);
  const Eigen::VectorXd ratio_x = true_ratio_batch(scenario, method.alpha, test.x);
  const Eigen::VectorXd ratio_q = true_ratio_batch(scenario, method.alpha, test.x_prime);
  const std::vector<ObservationPair> stream = draw_stream(scenario, T, seed, prefix);

  TrialReport report;
  report.scenario = scenario.id;
  report.config = method;
  report.seed = seed;
  report.checkpoints = checkpoints;
  report.errors.reserve(checkpoints.size());

  auto score = [&](const WeightedExpansion& f) {
    return l2_error_from_values(evaluate_batch(f, spec, test.x),
                                evaluate_batch(f, spec, test.x_prime), ratio_x, ratio_q,
                                method.alpha);
  };

  if (method.kind == MethodKind::Olre) {
    OlreConfig cfg;
    cfg.alpha = method.alpha;
    cfg.beta = method.beta;
    cfg.a = method.a;
    cfg.t0 = method.t0;
    cfg.kernel = spec;
    const std::set<std::int64_t> marks(checkpoints.begin(), checkpoints.end());
    const auto snapshots = run_stream(cfg, stream, marks);
    for (const auto c : checkpoints) report.errors.push_back(score(snapshots.at(c)));
  } else {
    Eigen::MatrixXd Xall(scenario.dim, T), Qall(scenario.dim, T);
    for (std::int64_t i = 0; i < T; ++i) {
      Xall.col(i) = stream[static_cast<std::size_t>(i)].x;
      Qall.col(i) = stream[static_cast<std::size_t>(i)].x_prime;
    }
    const Dictionary dict =
        random_dictionary(Qall, method.dictionary_size, substream_seed(seed, 1));
    for (const auto c : checkpoints) {
      const RulsifModel model = fit(Xall.leftCols(c), Qall.leftCols(c), dict, spec,
                                    method.alpha, method.lambda);
      report.errors.push_back(score(model.expansion()));
    }
  }
  return report;
}

AggregateReport aggregate(const std::vector<TrialReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate: no reports");
  for (const auto& r : reports) check_same_config(reports.front(), r);

  const auto& first = reports.front();
  const std::size_t n_checkpoints = first.checkpoints.size();
  const int n = static_cast<int>(reports.size());

  AggregateReport agg;
  agg.scenario = first.scenario;
  agg.config = first.config;
  agg.checkpoints = first.checkpoints;
  agg.n_trials = n;
  agg.mean_error.resize(n_checkpoints);
  agg.std_error.resize(n_checkpoints);

  std::vector<double> values(reports.size());
  for (std::size_t c = 0; c < n_checkpoints; ++c) {
    for (std::size_t i = 0; i < reports.size(); ++i) values[i] = reports[i].errors.at(c);
    std::sort(values.begin(), values.end());  // canonical summation order
    double sum = 0.0;
    for (const double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    agg.mean_error[c] = mean;
    agg.std_error[c] =
        n >= 2 ? std::sqrt(ss / (n - 1)) : std::numeric_limits<double>::quiet_NaN();
  }
  return agg;
}

}  // namespace olre
