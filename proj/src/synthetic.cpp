#include "olre/synthetic.hpp"

#include <array>
#include <cmath>

namespace olre {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kLaplaceScale = 1.0 / std::sqrt(2.0);  // unit variance: 2 b^2 = 1

// ExpII q-covariance [[1, 4/5], [4/5, 1]]; Cholesky factor [[1,0],[4/5,3/5]].
constexpr double kRho = 0.8;
const double kCholL22 = 0.6;

// ExpIII mixture component means.
const std::array<std::array<double, 2>, 5> kMixMeans = {
    {{0.0, 0.0}, {0.0, 5.0}, {0.0, -5.0}, {5.0, 0.0}, {-5.0, 0.0}}};
constexpr double kVarP3 = 10.0;
constexpr double kVarQ3 = 5.0;

double normal_pdf_iso(const Eigen::Ref<const Eigen::VectorXd>& x, double mu0, double mu1,
                      double variance) {
  const double d0 = x[0] - mu0;
  const double d1 = x[1] - mu1;
  return std::exp(-(d0 * d0 + d1 * d1) / (2.0 * variance)) /
         (2.0 * M_PI * variance);
}

void check_dim(const ScenarioSpec& spec, Eigen::Index got, const char* who) {
  if (got != spec.dim)
    throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}

}  // namespace

ScenarioSpec scenario_spec(Scenario id) {
  return ScenarioSpec{id, id == Scenario::ExpI ? 1 : 2};
}

std::string to_string(Scenario id) {
  switch (id) {
    case Scenario::ExpI: return "expI";
    case Scenario::ExpII: return "expII";
    case Scenario::ExpIII: return "expIII";
    case Scenario::Identical: return "identical";
  }
  throw std::invalid_argument("to_string: unknown scenario");
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "expI") return Scenario::ExpI;
  if (name == "expII") return Scenario::ExpII;
  if (name == "expIII") return Scenario::ExpIII;
  if (name == "identical") return Scenario::Identical;
  throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

ObservationPair sample_pair(const ScenarioSpec& spec, Rng& rng) {
  Eigen::VectorXd x(spec.dim), xp(spec.dim);
  switch (spec.id) {
    case Scenario::ExpI:
      x[0] = rng.uniform(-kSqrt3, kSqrt3);
      xp[0] = rng.laplace(kLaplaceScale);
      break;
    case Scenario::ExpII: {
      double z0, z1;
      rng.normal2(z0, z1);
      x[0] = z0;
      x[1] = z1;
      rng.normal2(z0, z1);
      xp[0] = z0;
      xp[1] = kRho * z0 + kCholL22 * z1;
      break;
    }
    case Scenario::ExpIII: {
      double z0, z1;
      rng.normal2(z0, z1);
      const double sp = std::sqrt(kVarP3);
      x[0] = sp * z0;
      x[1] = sp * z1;
      const auto k = rng.uniform_int(kMixMeans.size());
      rng.normal2(z0, z1);
      const double sq = std::sqrt(kVarQ3);
      xp[0] = kMixMeans[k][0] + sq * z0;
      xp[1] = kMixMeans[k][1] + sq * z1;
      break;
    }
    case Scenario::Identical: {
      double z0, z1;
      rng.normal2(z0, z1);
      x[0] = z0;
      x[1] = z1;
      rng.normal2(z0, z1);
      xp[0] = z0;
      xp[1] = z1;
      break;
    }
  }
  return ObservationPair(std::move(x), std::move(xp));
}

double density_p(const ScenarioSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dim(spec, x.size(), "density_p");
  switch (spec.id) {
    case Scenario::ExpI:
      return std::abs(x[0]) <= kSqrt3 ? 1.0 / (2.0 * kSqrt3) : 0.0;
    case Scenario::ExpII:
    case Scenario::Identical:
      return normal_pdf_iso(x, 0.0, 0.0, 1.0);
    case Scenario::ExpIII:
      return normal_pdf_iso(x, 0.0, 0.0, kVarP3);
  }
  throw std::invalid_argument("density_p: unknown scenario");
}

double density_q(const ScenarioSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dim(spec, x.size(), "density_q");
  switch (spec.id) {
    case Scenario::ExpI:
      return std::exp(-std::abs(x[0]) / kLaplaceScale) / (2.0 * kLaplaceScale);
    case Scenario::ExpII: {
      // det S = 1 - rho^2 = 0.36
      const double det = 1.0 - kRho * kRho;
      const double quad = x[0] * x[0] - 2.0 * kRho * x[0] * x[1] + x[1] * x[1];
      return std::exp(-quad / (2.0 * det)) / (2.0 * M_PI * std::sqrt(det));
    }
    case Scenario::ExpIII: {
      double acc = 0.0;
      for (const auto& mu : kMixMeans) acc += normal_pdf_iso(x, mu[0], mu[1], kVarQ3);
      return acc / static_cast<double>(kMixMeans.size());
    }
    case Scenario::Identical:
      return normal_pdf_iso(x, 0.0, 0.0, 1.0);
  }
  throw std::invalid_argument("density_q: unknown scenario");
}

double true_ratio(const ScenarioSpec& spec, double alpha,
                  const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("true_ratio: alpha must be in [0,1)");
  const double p = density_p(spec, x);
  const double q = density_q(spec, x);
  if (alpha == 0.0 && p == 0.0)
    throw std::invalid_argument("true_ratio: undefined, alpha = 0 and p(x) = 0");
  return q / ((1.0 - alpha) * p + alpha * q);
}

Eigen::VectorXd true_ratio_batch(const ScenarioSpec& spec, double alpha,
                                 const Eigen::Ref<const Eigen::MatrixXd>& X) {
  Eigen::VectorXd out(X.cols());
  for (Eigen::Index i = 0; i < X.cols(); ++i) out[i] = true_ratio(spec, alpha, X.col(i));
  return out;
}

}  // namespace olre
