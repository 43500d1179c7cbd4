#include "olre/rulsif.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "olre/errors.hpp"
#include "olre/random.hpp"

namespace olre {

namespace {

// Contiguous fold boundaries: block j of a sample of size n is
// [j*n/k, (j+1)*n/k).
std::vector<Eigen::Index> fold_bounds(Eigen::Index n, int k) {
  std::vector<Eigen::Index> b(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) b[static_cast<std::size_t>(j)] = n * j / k;
  return b;
}

Eigen::MatrixXd drop_block(const Eigen::Ref<const Eigen::MatrixXd>& X, Eigen::Index lo,
                           Eigen::Index hi) {
  Eigen::MatrixXd out(X.rows(), X.cols() - (hi - lo));
  out.leftCols(lo) = X.leftCols(lo);
  out.rightCols(X.cols() - hi) = X.rightCols(X.cols() - hi);
  return out;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_h_matrices(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::MatrixXd>& X_prime, const Dictionary& dict,
    const KernelSpec& spec, double alpha) {
  if (X.cols() == 0 || X_prime.cols() == 0)
    throw std::invalid_argument("build_h_matrices: empty sample set");
  if (dict.empty()) throw std::invalid_argument("build_h_matrices: empty dictionary");

  const auto M = dict.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(M, M);
  if (alpha < 1.0) {
    const Eigen::MatrixXd Kp = gram_cross(dict, spec, X);
    H.selfadjointView<Eigen::Lower>().rankUpdate(
        Kp, (1.0 - alpha) / static_cast<double>(X.cols()));
  }
  const Eigen::MatrixXd Kq = gram_cross(dict, spec, X_prime);
  if (alpha > 0.0) {
    H.selfadjointView<Eigen::Lower>().rankUpdate(
        Kq, alpha / static_cast<double>(X_prime.cols()));
  }
  H = H.selfadjointView<Eigen::Lower>();
  const Eigen::VectorXd h = Kq.rowwise().sum() / static_cast<double>(X_prime.cols());
  return {H, h};
}

RulsifModel fit(const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::MatrixXd>& X_prime, const Dictionary& dict,
                const KernelSpec& spec, double alpha, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("fit: lambda must be >= 0");
  auto [H, h] = build_h_matrices(X, X_prime, dict, spec, alpha);
  Eigen::MatrixXd A = H;
  A.diagonal().array() += lambda;

  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  Eigen::VectorXd theta;
  double residual = std::numeric_limits<double>::infinity();
  if (llt.info() == Eigen::Success) {
    theta = llt.solve(h);
    residual = (A * theta - h).lpNorm<Eigen::Infinity>();
  }
  if (!(residual <= 1e-8)) {
    std::ostringstream msg;
    msg << "rulsif fit: (H + lambda I) solve failed (lambda = " << lambda
        << ", M = " << dict.size() << ", residual = " << residual << ")";
    throw numerical_error(msg.str());
  }
  return RulsifModel{dict, std::move(theta), spec, alpha, lambda};
}

double pe_score(const WeightedExpansion& f, const KernelSpec& spec,
                const Eigen::Ref<const Eigen::MatrixXd>& X_val,
                const Eigen::Ref<const Eigen::MatrixXd>& X_prime_val, double alpha) {
  if (X_val.cols() == 0 || X_prime_val.cols() == 0)
    throw std::invalid_argument("pe_score: empty validation set");
  const Eigen::VectorXd fp = evaluate_batch(f, spec, X_val);
  const Eigen::VectorXd fq = evaluate_batch(f, spec, X_prime_val);
  const double n = static_cast<double>(X_val.cols());
  const double np = static_cast<double>(X_prime_val.cols());
  return 0.5 * (1.0 - alpha) * fp.squaredNorm() / n +
         0.5 * alpha * fq.squaredNorm() / np - fq.sum() / np;
}

CvResult cross_validate(const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::MatrixXd>& X_prime,
                        const CvPlan& plan, double alpha, int dictionary_size,
                        std::uint64_t seed) {
  if (plan.folds < 2) throw std::invalid_argument("cross_validate: folds must be >= 2");
  if (plan.sigma_grid.empty() || plan.lambda_grid.empty())
    throw std::invalid_argument("cross_validate: empty hyperparameter grid");
  if (X.cols() < plan.folds || X_prime.cols() < plan.folds)
    throw std::invalid_argument("cross_validate: fewer samples than folds");
  if (dictionary_size < 1)
    throw std::invalid_argument("cross_validate: dictionary size must be >= 1");

  const auto bp = fold_bounds(X.cols(), plan.folds);
  const auto bq = fold_bounds(X_prime.cols(), plan.folds);

  struct Fold {
    Eigen::MatrixXd Xtr, Xval, Qtr, Qval;
    Dictionary dict;
  };
  std::vector<Fold> folds(static_cast<std::size_t>(plan.folds));
  for (int j = 0; j < plan.folds; ++j) {
    auto& f = folds[static_cast<std::size_t>(j)];
    f.Xtr = drop_block(X, bp[j], bp[j + 1]);
    f.Xval = X.middleCols(bp[j], bp[j + 1] - bp[j]);
    f.Qtr = drop_block(X_prime, bq[j], bq[j + 1]);
    f.Qval = X_prime.middleCols(bq[j], bq[j + 1] - bq[j]);
    if (f.Qtr.cols() < dictionary_size)
      throw std::invalid_argument(
          "cross_validate: dictionary size exceeds q-sample train fold");
    f.dict = random_dictionary(f.Qtr, dictionary_size, seed + static_cast<std::uint64_t>(j));
  }

  CvResult result;
  result.table.reserve(plan.sigma_grid.size() * plan.lambda_grid.size());
  bool have_best = false;
  double best_score = 0.0;
  for (const double sigma : plan.sigma_grid) {
    const KernelSpec spec(sigma);
    for (const double lambda : plan.lambda_grid) {
      CvCell cell{sigma, lambda, 0.0, false};
      double total = 0.0;
      try {
        for (const auto& f : folds) {
          const RulsifModel model = fit(f.Xtr, f.Qtr, f.dict, spec, alpha, lambda);
          total += pe_score(model.expansion(), spec, f.Xval, f.Qval, alpha);
        }
        cell.mean_score = total / plan.folds;
      } catch (const numerical_error&) {
        cell.failed = true;
        cell.mean_score = std::numeric_limits<double>::quiet_NaN();
      }
      if (!cell.failed && (!have_best || cell.mean_score < best_score)) {
        have_best = true;
        best_score = cell.mean_score;
        result.best_sigma = sigma;
        result.best_lambda = lambda;
      }
      result.table.push_back(cell);
    }
  }
  if (!have_best) throw numerical_error("cross_validate: every grid cell failed");
  return result;
}

Dictionary random_dictionary(const Eigen::Ref<const Eigen::MatrixXd>& X_prime, int M,
                             std::uint64_t seed) {
  const auto n = X_prime.cols();
  if (M < 1 || M > n)
    throw std::invalid_argument("random_dictionary: need 1 <= M <= |X_prime|");
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  Rng rng(seed);
  Dictionary dict;
  for (int i = 0; i < M; ++i) {
    const auto j = static_cast<Eigen::Index>(i) +
                   static_cast<Eigen::Index>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    dict.append(X_prime.col(idx[static_cast<std::size_t>(i)]));
  }
  return dict;
}

}  // namespace olre
