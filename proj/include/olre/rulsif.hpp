#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "olre/kernel.hpp"

namespace olre {

// Offline penalized empirical Pearson-risk minimizer over a fixed finite
// dictionary: theta_hat = (H + lambda I)^-1 h, Euclidean penalty on theta.
struct RulsifModel {
  Dictionary dictionary;
  Eigen::VectorXd theta_hat;
  KernelSpec kernel;
  double alpha = 0.0;
  double lambda = 0.0;

  WeightedExpansion expansion() const { return WeightedExpansion(dictionary, theta_hat); }
};

struct CvPlan {
  std::vector<double> sigma_grid;
  std::vector<double> lambda_grid;
  int folds = 5;
  // selection rule: minimum mean validation score, first occurrence wins
};

struct CvCell {
  double sigma = 0.0;
  double lambda = 0.0;
  double mean_score = 0.0;
  bool failed = false;  // a fold failed to factorize; skipped by the argmin
};

struct CvResult {
  double best_sigma = 0.0;
  double best_lambda = 0.0;
  std::vector<CvCell> table;  // sigma-major, lambda-minor grid order
};

// Empirical quadratic form of the penalized risk:
//   H = (1-alpha)/n sum_x k_x k_x^T + alpha/n' sum_x' k_x' k_x'^T
//   h = 1/n' sum_x' k_x'
// with k_y = K(D, y). Samples are columns of X and X_prime.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_h_matrices(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::MatrixXd>& X_prime, const Dictionary& dict,
    const KernelSpec& spec, double alpha);

// Solves (H + lambda I) theta = h by Cholesky factorization and verifies the
// residual; throws numerical_error with a diagnostic if the system is
// degenerate (possible when lambda = 0 and H is singular).
RulsifModel fit(const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::MatrixXd>& X_prime, const Dictionary& dict,
                const KernelSpec& spec, double alpha, double lambda);

// Unpenalized empirical Pearson objective on held-out samples; lower is
// better: (1-alpha)/2 mean_X f^2 + alpha/2 mean_X' f^2 - mean_X' f.
double pe_score(const WeightedExpansion& f, const KernelSpec& spec,
                const Eigen::Ref<const Eigen::MatrixXd>& X_val,
                const Eigen::Ref<const Eigen::MatrixXd>& X_prime_val, double alpha);

// k-fold grid search. Both samples are split into `folds` contiguous blocks;
// fold j trains on the complement and scores on block j with a dictionary of
// M points drawn (seed + j) from the q-sample train block. Cells whose fit
// fails on any fold are marked failed and skipped; ties break toward the
// earlier grid entry (sigma index, then lambda index).
CvResult cross_validate(const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::MatrixXd>& X_prime,
                        const CvPlan& plan, double alpha, int dictionary_size,
                        std::uint64_t seed);

// M basis points sampled uniformly without replacement from the columns of
// X_prime; deterministic given the seed.
Dictionary random_dictionary(const Eigen::Ref<const Eigen::MatrixXd>& X_prime, int M,
                             std::uint64_t seed);

}  // namespace olre
