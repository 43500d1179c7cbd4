#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "olre/experiment.hpp"
#include "test_util.hpp"

using namespace olre;

namespace {

MethodConfig olre_method(double alpha = 0.1, double sigma = 0.6) {
  MethodConfig m;
  m.kind = MethodKind::Olre;
  m.alpha = alpha;
  m.sigma = sigma;
  m.beta = 0.5;
  m.a = 4.0;
  m.t0 = 100;
  return m;
}

}  // namespace

TEST_CASE("test sets are deterministic and disjoint across seeds") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  const TestSet a = make_test_set(scn, 50, 7);
  const TestSet b = make_test_set(scn, 50, 7);
  const TestSet c = make_test_set(scn, 50, 8);
  CHECK(testutil::exact_equal(a.x, b.x));
  CHECK(testutil::exact_equal(a.x_prime, b.x_prime));
  CHECK(!testutil::exact_equal(a.x, c.x));
  CHECK_THROWS_AS(make_test_set(scn, 0, 7), std::invalid_argument);
}

TEST_CASE("l2_error: oracle plug-in is exactly zero, zero function on Identical is one") {
  const ScenarioSpec ident = scenario_spec(Scenario::Identical);
  const TestSet test = make_test_set(ident, 200, 5);
  const double alpha = 0.37;

  const Eigen::VectorXd rx = true_ratio_batch(ident, alpha, test.x);
  const Eigen::VectorXd rq = true_ratio_batch(ident, alpha, test.x_prime);
  CHECK(l2_error_from_values(rx, rq, rx, rq, alpha) == 0.0);

  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(test.size());
  // r = 1 everywhere on Identical, so the residual is exactly 1
  CHECK(l2_error_from_values(zx, zx, rx, rq, alpha) == doctest::Approx(1.0).epsilon(1e-12));

  WeightedExpansion zero;
  CHECK(l2_error(zero, KernelSpec(1.0), ident, alpha, test) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("l2_error: 4-pair hand computation and permutation invariance") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  const TestSet test = make_test_set(scn, 4, 11);
  const double alpha = 0.1;
  const KernelSpec spec(0.8);
  WeightedExpansion f;
  f.append(testutil::vec1(0.2), 0.7);
  f.append(testutil::vec1(-0.5), 0.4);

  double sp = 0.0, sq = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double dx = evaluate(f, spec, test.x.col(i)) - true_ratio(scn, alpha, test.x.col(i));
    const double dq = evaluate(f, spec, test.x_prime.col(i)) -
                      true_ratio(scn, alpha, test.x_prime.col(i));
    sp += dx * dx;
    sq += dq * dq;
  }
  const double expected = 0.9 * sp / 4 + 0.1 * sq / 4;
  CHECK(l2_error(f, spec, scn, alpha, test) == doctest::Approx(expected).epsilon(1e-12));

  TestSet permuted = test;
  permuted.x.col(0).swap(permuted.x.col(3));
  permuted.x_prime.col(1).swap(permuted.x_prime.col(2));
  CHECK(l2_error(f, spec, scn, alpha, permuted) ==
        doctest::Approx(l2_error(f, spec, scn, alpha, test)).epsilon(1e-14));

  CHECK_THROWS_AS(l2_error_from_values(Eigen::VectorXd(), Eigen::VectorXd(),
                                       Eigen::VectorXd(), Eigen::VectorXd(), alpha),
                  std::invalid_argument);
}

TEST_CASE("estimate_pe_divergence: constants and oracle dominance") {
  const ScenarioSpec ident = scenario_spec(Scenario::Identical);
  const TestSet test = make_test_set(ident, 500, 13);

  WeightedExpansion zero;
  CHECK(estimate_pe_divergence(zero, KernelSpec(1.0), test, 0.1) == -0.5);

  // Identical with the oracle r = 1: estimate is exactly 0
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(test.size());
  CHECK(estimate_pe_divergence_from_values(ones, ones, 0.1) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // ExpI: the plug-in at the true ratio dominates f = 0 and small perturbations
  const ScenarioSpec expI = scenario_spec(Scenario::ExpI);
  const TestSet t2 = make_test_set(expI, 20000, 17);
  const double alpha = 0.1;
  const Eigen::VectorXd rx = true_ratio_batch(expI, alpha, t2.x);
  const Eigen::VectorXd rq = true_ratio_batch(expI, alpha, t2.x_prime);
  const double at_oracle = estimate_pe_divergence_from_values(rx, rq, alpha);
  CHECK(at_oracle > -0.5);

  Rng rng(19);
  const KernelSpec spec(1.0);
  for (int k = 0; k < 20; ++k) {
    WeightedExpansion delta;
    for (int m = 0; m < 3; ++m)
      delta.append(testutil::vec1(rng.uniform(-2, 2)), rng.uniform(-0.2, 0.2));
    const Eigen::VectorXd dx = evaluate_batch(delta, spec, t2.x);
    const Eigen::VectorXd dq = evaluate_batch(delta, spec, t2.x_prime);
    const double perturbed = estimate_pe_divergence_from_values(rx + dx, rq + dq, alpha);
    // sup at the true ratio, up to Monte-Carlo noise (4 SE of the difference)
    const Eigen::ArrayXd diff_q =
        dq.array() - alpha * (rq.array() * dq.array() + 0.5 * dq.array().square());
    const Eigen::ArrayXd diff_p =
        -(1.0 - alpha) * (rx.array() * dx.array() + 0.5 * dx.array().square());
    const double n = static_cast<double>(t2.size());
    const double mq = diff_q.mean(), mp = diff_p.mean();
    const double vq = (diff_q - mq).square().sum() / (n - 1);
    const double vp = (diff_p - mp).square().sum() / (n - 1);
    const double se = std::sqrt((vq + vp) / n);
    CHECK(perturbed <= at_oracle + 4.0 * se);
  }
}

TEST_CASE("run_trial: T=1 composition, determinism, invalid checkpoints") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  const TestSet test = make_test_set(scn, 100, 3);
  const MethodConfig m = olre_method();

  const TrialReport rep = run_trial(scn, m, 1, {1}, test, 42);
  REQUIRE(rep.errors.size() == 1);

  // closed-form f1 from the same stream seed
  Rng rng(42);
  const ObservationPair pair = sample_pair(scn, rng);
  OlreConfig cfg;
  cfg.alpha = m.alpha;
  cfg.beta = m.beta;
  cfg.a = m.a;
  cfg.t0 = m.t0;
  cfg.kernel = KernelSpec(m.sigma);
  OnlineEstimator est(cfg);
  est.step(pair);
  CHECK(rep.errors[0] == l2_error(est.expansion(), cfg.kernel, scn, m.alpha, test));

  const TrialReport rep2 = run_trial(scn, m, 1, {1}, test, 42);
  CHECK(rep2.errors == rep.errors);

  CHECK_THROWS_AS(run_trial(scn, m, 5, {6}, test, 42), std::invalid_argument);
  CHECK_THROWS_AS(run_trial(scn, m, 5, {0}, test, 42), std::invalid_argument);
  CHECK_THROWS_AS(run_trial(scn, m, 5, {2, 2}, test, 42), std::invalid_argument);
}

TEST_CASE("rulsif trials share the stream with olre trials of the same seed") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  const TestSet test = make_test_set(scn, 200, 3);
  MethodConfig r;
  r.kind = MethodKind::Rulsif;
  r.alpha = 0.1;
  r.sigma = 0.6;
  r.lambda = 0.1;
  r.dictionary_size = 10;
  const TrialReport rep = run_trial(scn, r, 50, {10, 50}, test, 7);
  REQUIRE(rep.errors.size() == 2);
  CHECK(rep.errors[0] >= 0.0);
  const TrialReport rep2 = run_trial(scn, r, 50, {10, 50}, test, 7);
  CHECK(rep2.errors == rep.errors);
}

TEST_CASE("olre error decreases from t=50 to t=500 in at least 18 of 20 seeds") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  const TestSet test = make_test_set(scn, 2000, 999);
  const MethodConfig m = olre_method();
  int improved = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TrialReport rep = run_trial(scn, m, 500, {50, 500}, test, 1000 + seed);
    if (rep.errors[1] < rep.errors[0]) ++improved;
  }
  CHECK(improved >= 18);
}

TEST_CASE("aggregate: repeated report, two-point std, permutation invariance") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  const TestSet test = make_test_set(scn, 50, 3);
  const MethodConfig m = olre_method();
  const TrialReport rep = run_trial(scn, m, 5, {1, 5}, test, 11);

  std::vector<TrialReport> same(4, rep);
  const AggregateReport agg = aggregate(same);
  CHECK(agg.n_trials == 4);
  for (std::size_t c = 0; c < rep.errors.size(); ++c) {
    CHECK(agg.mean_error[c] == doctest::Approx(rep.errors[c]).epsilon(1e-15));
    CHECK(agg.std_error[c] == 0.0);
  }

  TrialReport a = rep, b = rep;
  a.errors = {0.0, 0.0};
  b.errors = {2.0, 2.0};
  const AggregateReport two = aggregate({a, b});
  CHECK(two.mean_error[0] == 1.0);
  CHECK(two.std_error[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const AggregateReport swapped = aggregate({b, a});
  CHECK(swapped.mean_error == two.mean_error);
  CHECK(swapped.std_error == two.std_error);

  // single trial: std undefined
  const AggregateReport one = aggregate({a});
  CHECK(std::isnan(one.std_error[0]));

  // mixed configurations are rejected
  TrialReport other = rep;
  other.config.sigma = 0.9;
  CHECK_THROWS_AS(aggregate({rep, other}), std::invalid_argument);
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}
