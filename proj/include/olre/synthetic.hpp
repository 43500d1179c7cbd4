#pragma once

#include <string>

#include "olre/observation.hpp"
#include "olre/random.hpp"

namespace olre {

// Benchmark scenarios with analytic densities and closed-form relative
// ratios.
//   ExpI       p = Uniform(-sqrt(3), sqrt(3));  q = Laplace(0, 1/sqrt(2))
//              (both zero mean, unit variance), dim 1.
//   ExpII      p = N(0, I2);  q = N(0, S) with S11 = S22 = 1, S12 = 4/5.
//   ExpIII     p = N(0, 10 I2);  q = equal-weight mixture of five
//              N(mu_k, 5 I2), mu_k in {(0,0),(0,5),(0,-5),(5,0),(-5,0)}.
//   Identical  p = q = N(0, I2); the ratio is identically 1 (control case).
enum class Scenario { ExpI, ExpII, ExpIII, Identical };

struct ScenarioSpec {
  Scenario id = Scenario::ExpI;
  int dim = 1;
};

ScenarioSpec scenario_spec(Scenario id);
std::string to_string(Scenario id);
Scenario scenario_from_string(const std::string& name);

// Draws x ~ p then x' ~ q (in that order) from the given stream.
ObservationPair sample_pair(const ScenarioSpec& spec, Rng& rng);

double density_p(const ScenarioSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x);
double density_q(const ScenarioSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x);

// Relative likelihood-ratio q / ((1-alpha) p + alpha q); bounded by 1/alpha
// whenever alpha > 0.
double true_ratio(const ScenarioSpec& spec, double alpha,
                  const Eigen::Ref<const Eigen::VectorXd>& x);

// true_ratio applied to every column of X.
Eigen::VectorXd true_ratio_batch(const ScenarioSpec& spec, double alpha,
                                 const Eigen::Ref<const Eigen::MatrixXd>& X);

}  // namespace olre
