#include <doctest.h>

#include <cmath>

#include "olre/synthetic.hpp"
#include "test_util.hpp"

using namespace olre;
using testutil::vec1;
using testutil::vec2;

TEST_CASE("scenario specs and names") {
  CHECK(scenario_spec(Scenario::ExpI).dim == 1);
  CHECK(scenario_spec(Scenario::ExpII).dim == 2);
  CHECK(scenario_spec(Scenario::ExpIII).dim == 2);
  CHECK(scenario_spec(Scenario::Identical).dim == 2);
  CHECK(scenario_from_string("expI") == Scenario::ExpI);
  CHECK(to_string(Scenario::ExpIII) == "expIII");
  CHECK_THROWS_AS(scenario_from_string("nope"), std::invalid_argument);
}

TEST_CASE("density values, frozen oracles") {
  const ScenarioSpec expI = scenario_spec(Scenario::ExpI);
  // uniform on an interval of length 2 sqrt(3)
  CHECK(density_p(expI, vec1(0)) == doctest::Approx(0.28867513459481288).epsilon(1e-14));
  // Laplace with scale 1/sqrt(2) at the origin
  CHECK(density_q(expI, vec1(0)) == doctest::Approx(0.70710678118654752).epsilon(1e-14));
  CHECK(density_p(expI, vec1(2.0)) == 0.0);
  CHECK(density_p(expI, vec1(-9.0)) == 0.0);
  CHECK_THROWS_AS(density_p(expI, vec2(0, 0)), std::invalid_argument);
}

TEST_CASE("true_ratio: frozen value, identical control, saturation at 1/alpha") {
  const ScenarioSpec expI = scenario_spec(Scenario::ExpI);
  CHECK(true_ratio(expI, 0.1, vec1(0)) ==
        doctest::Approx(2.1393876913398137).epsilon(1e-12));
  CHECK(true_ratio(expI, 0.1, vec1(2.0)) == doctest::Approx(10.0).epsilon(1e-14));

  const ScenarioSpec ident = scenario_spec(Scenario::Identical);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = testutil::random_vector(rng, 2, -3, 3);
    for (const double alpha : {0.0, 0.01, 0.5})
      CHECK(true_ratio(ident, alpha, x) == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(true_ratio(expI, 0.0, vec1(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(true_ratio(expI, 1.0, vec1(0.0)), std::invalid_argument);
}

TEST_CASE("ratio bound 0 <= r <= 1/alpha on sampled points") {
  for (const Scenario id :
       {Scenario::ExpI, Scenario::ExpII, Scenario::ExpIII, Scenario::Identical}) {
    const ScenarioSpec scn = scenario_spec(id);
    Rng rng(100 + static_cast<std::uint64_t>(id));
    for (const double alpha : {0.01, 0.1, 0.5}) {
      for (int i = 0; i < 500; ++i) {
        const ObservationPair pair = sample_pair(scn, rng);
        for (const auto& x : {pair.x, pair.x_prime}) {
          const double r = true_ratio(scn, alpha, x);
          CHECK(r >= 0.0);
          CHECK(r <= 1.0 / alpha + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("ExpI draws stay inside the uniform support") {
  const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
  Rng rng(5);
  const double s3 = std::sqrt(3.0);
  for (int i = 0; i < 2000; ++i) {
    const ObservationPair pair = sample_pair(scn, rng);
    CHECK(pair.x[0] >= -s3);
    CHECK(pair.x[0] <= s3);
  }
}

TEST_CASE("sampling is deterministic given the seed") {
  for (const Scenario id : {Scenario::ExpI, Scenario::ExpII, Scenario::ExpIII}) {
    const ScenarioSpec scn = scenario_spec(id);
    Rng a(99), b(99);
    for (int i = 0; i < 50; ++i) {
      const ObservationPair pa = sample_pair(scn, a);
      const ObservationPair pb = sample_pair(scn, b);
      CHECK(testutil::exact_equal(pa.x, pb.x));
      CHECK(testutil::exact_equal(pa.x_prime, pb.x_prime));
    }
  }
}

TEST_CASE("moment checks: ExpI/ExpII/ExpIII sample statistics") {
  const int n = 100000;

  // ExpI: both marginals have zero mean and unit variance.
  {
    const ScenarioSpec scn = scenario_spec(Scenario::ExpI);
    Rng rng(7);
    double sx = 0, sxx = 0, sq = 0, sqq = 0;
    for (int i = 0; i < n; ++i) {
      const ObservationPair p = sample_pair(scn, rng);
      sx += p.x[0];
      sxx += p.x[0] * p.x[0];
      sq += p.x_prime[0];
      sqq += p.x_prime[0] * p.x_prime[0];
    }
    CHECK(sx / n == doctest::Approx(0.0).epsilon(0.02));
    CHECK(sxx / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(sq / n == doctest::Approx(0.0).epsilon(0.02));
    CHECK(sqq / n == doctest::Approx(1.0).epsilon(0.03));
  }

  // ExpII: q-coordinates correlate at 0.8 +- 0.01.
  {
    const ScenarioSpec scn = scenario_spec(Scenario::ExpII);
    Rng rng(8);
    double s0 = 0, s1 = 0, s00 = 0, s11 = 0, s01 = 0;
    for (int i = 0; i < n; ++i) {
      const ObservationPair p = sample_pair(scn, rng);
      s0 += p.x_prime[0];
      s1 += p.x_prime[1];
      s00 += p.x_prime[0] * p.x_prime[0];
      s11 += p.x_prime[1] * p.x_prime[1];
      s01 += p.x_prime[0] * p.x_prime[1];
    }
    const double m0 = s0 / n, m1 = s1 / n;
    const double v0 = s00 / n - m0 * m0, v1 = s11 / n - m1 * m1;
    const double corr = (s01 / n - m0 * m1) / std::sqrt(v0 * v1);
    CHECK(std::abs(corr - 0.8) <= 0.01);
  }

  // ExpIII: the mixture is symmetric, mean within 0.05 per coordinate.
  {
    const ScenarioSpec scn = scenario_spec(Scenario::ExpIII);
    Rng rng(9);
    double s0 = 0, s1 = 0;
    for (int i = 0; i < n; ++i) {
      const ObservationPair p = sample_pair(scn, rng);
      s0 += p.x_prime[0];
      s1 += p.x_prime[1];
    }
    CHECK(std::abs(s0 / n) <= 0.05);
    CHECK(std::abs(s1 / n) <= 0.05);
  }
}

TEST_CASE("densities integrate to one") {
  const ScenarioSpec expI = scenario_spec(Scenario::ExpI);
  const double s3 = std::sqrt(3.0);
  const double ip = testutil::adaptive_simpson(
      [&](double x) { return density_p(expI, vec1(x)); }, -s3 + 1e-12, s3 - 1e-12);
  CHECK(ip == doctest::Approx(1.0).epsilon(1e-3));
  const double iq = testutil::adaptive_simpson(
      [&](double x) { return density_q(expI, vec1(x)); }, -30.0, 30.0);
  CHECK(iq == doctest::Approx(1.0).epsilon(1e-3));

  const ScenarioSpec expII = scenario_spec(Scenario::ExpII);
  const double ip2 = testutil::simpson_2d(
      [&](double x, double y) { return density_p(expII, vec2(x, y)); }, -8, 8, -8, 8, 400);
  CHECK(ip2 == doctest::Approx(1.0).epsilon(1e-3));
  const double iq2 = testutil::simpson_2d(
      [&](double x, double y) { return density_q(expII, vec2(x, y)); }, -8, 8, -8, 8, 400);
  CHECK(iq2 == doctest::Approx(1.0).epsilon(1e-3));

  const ScenarioSpec expIII = scenario_spec(Scenario::ExpIII);
  const double ip3 = testutil::simpson_2d(
      [&](double x, double y) { return density_p(expIII, vec2(x, y)); }, -30, 30, -30, 30,
      600);
  CHECK(ip3 == doctest::Approx(1.0).epsilon(1e-3));
  const double iq3 = testutil::simpson_2d(
      [&](double x, double y) { return density_q(expIII, vec2(x, y)); }, -30, 30, -30, 30,
      600);
  CHECK(iq3 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("change-of-measure identity holds at Monte-Carlo resolution") {
  // For smooth g: (1-alpha) E_p[g r] + alpha E_q[g r] = E_q[g], within 4 SE.
  auto g = [](const Eigen::VectorXd& x) { return std::exp(-x.squaredNorm() / 4.0) + 0.1 * x[0]; };
  const int n = 100000;
  for (const Scenario id : {Scenario::ExpI, Scenario::ExpII, Scenario::ExpIII}) {
    const ScenarioSpec scn = scenario_spec(id);
    for (const double alpha : {0.1, 0.5}) {
      Rng rng(1000 + static_cast<std::uint64_t>(id));
      double sum_p = 0, sumsq_p = 0, sum_d = 0, sumsq_d = 0;
      for (int i = 0; i < n; ++i) {
        const ObservationPair pair = sample_pair(scn, rng);
        const double termp = (1.0 - alpha) * g(pair.x) * true_ratio(scn, alpha, pair.x);
        const double termq =
            alpha * g(pair.x_prime) * true_ratio(scn, alpha, pair.x_prime) -
            g(pair.x_prime);
        sum_p += termp;
        sumsq_p += termp * termp;
        sum_d += termq;
        sumsq_d += termq * termq;
      }
      const double mean = (sum_p + sum_d) / n;
      const double var_p = sumsq_p / n - (sum_p / n) * (sum_p / n);
      const double var_d = sumsq_d / n - (sum_d / n) * (sum_d / n);
      const double se = std::sqrt((var_p + var_d) / n);
      CHECK(std::abs(mean) <= 4.0 * se);
    }
  }
}
