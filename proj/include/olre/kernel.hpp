#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace olre {

enum class KernelFamily { Gaussian };

// Mercer kernel family plus hyperparameters. For the Gaussian family
// K(x,y) = exp(-|x-y|^2 / (2 sigma^2)), so K(x,x) = 1 for every x.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double bandwidth = 1.0;  // length scale sigma, same units as the features

  KernelSpec() = default;
  explicit KernelSpec(double sigma, KernelFamily fam = KernelFamily::Gaussian)
      : family(fam), bandwidth(sigma) {
    if (!(bandwidth > 0.0))
      throw std::invalid_argument("KernelSpec: bandwidth must be > 0");
  }
};

// Append-only ordered set of basis points sharing one feature dimension.
// Index m is stable for the lifetime of the dictionary.
class Dictionary {
 public:
  Dictionary() = default;

  // Columns of `points` become dictionary entries, in column order.
  explicit Dictionary(const Eigen::Ref<const Eigen::MatrixXd>& points);

  void append(const Eigen::Ref<const Eigen::VectorXd>& x);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index size() const { return size_; }
  bool empty() const { return size_ == 0; }

  Eigen::VectorXd point(Eigen::Index m) const;

  // All points as a dim x size matrix (copy).
  Eigen::MatrixXd points() const;

  // Storage layout used by the evaluation kernels: row m of the first
  // size() rows is point m, one contiguous column per coordinate.
  const Eigen::MatrixXd& coords() const { return coords_; }

 private:
  Eigen::Index dim_ = 0;  // fixed by the first append
  Eigen::Index size_ = 0;
  Eigen::MatrixXd coords_;  // capacity x dim
};

// f(.) = sum_m theta_m K(x_m, .), an exact finite kernel expansion.
class WeightedExpansion {
 public:
  WeightedExpansion() = default;
  WeightedExpansion(Dictionary dictionary, const Eigen::Ref<const Eigen::VectorXd>& weights);

  const Dictionary& dictionary() const { return dict_; }
  Eigen::Index size() const { return size_; }

  Eigen::Ref<const Eigen::VectorXd> weights() const { return w_.head(size_); }

  void scale_weights(double factor) { w_.head(size_) *= factor; }
  void append(const Eigen::Ref<const Eigen::VectorXd>& x, double weight);

 private:
  Dictionary dict_;
  Eigen::VectorXd w_;  // capacity-managed, first size_ entries valid
  Eigen::Index size_ = 0;
};

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

// f(x); left-to-right accumulation in dictionary order, so repeated calls and
// the batch path below produce identical bits.
double evaluate(const WeightedExpansion& f, const KernelSpec& spec,
                const Eigen::Ref<const Eigen::VectorXd>& x);

// Element i is evaluate(f, spec, X.col(i)).
Eigen::VectorXd evaluate_batch(const WeightedExpansion& f, const KernelSpec& spec,
                               const Eigen::Ref<const Eigen::MatrixXd>& X);

// Gram matrix K(x_m, x_l) of the dictionary, size x size.
Eigen::MatrixXd gram(const Dictionary& dict, const KernelSpec& spec);

// Cross-gram: entry (m, i) = K(x_m, X.col(i)), size x X.cols().
Eigen::MatrixXd gram_cross(const Dictionary& dict, const KernelSpec& spec,
                           const Eigen::Ref<const Eigen::MatrixXd>& X);

}  // namespace olre
