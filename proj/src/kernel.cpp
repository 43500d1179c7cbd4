#include "olre/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace olre {

namespace {

constexpr Eigen::Index kChunk = 256;

// K(x_m, x) for m in [j0, j0+n), written to out[0..n). Squared distances are
// accumulated coordinate by coordinate over contiguous columns; no
// |x|^2 + |y|^2 - 2<x,y> expansion, which cancels badly at small bandwidths.
void kernel_slice(const Eigen::MatrixXd& coords, Eigen::Index j0, Eigen::Index n,
                  const Eigen::Ref<const Eigen::VectorXd>& x, double inv_two_sigma_sq,
                  double* out) {
  Eigen::Map<Eigen::ArrayXd> o(out, n);
  o = (coords.col(0).segment(j0, n).array() - x[0]).square();
  for (Eigen::Index k = 1; k < x.size(); ++k)
    o += (coords.col(k).segment(j0, n).array() - x[k]).square();
  o = (o * (-inv_two_sigma_sq)).exp();
}

void check_dim(const Dictionary& d, Eigen::Index got, const char* who) {
  if (!d.empty() && got != d.dim())
    throw std::invalid_argument(std::string(who) + ": feature dimension mismatch");
}

}  // namespace

Dictionary::Dictionary(const Eigen::Ref<const Eigen::MatrixXd>& points) {
  if (points.cols() == 0) return;
  dim_ = points.rows();
  if (dim_ == 0) throw std::invalid_argument("Dictionary: zero-dimensional points");
  size_ = points.cols();
  coords_ = points.transpose();
}

void Dictionary::append(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (size_ == 0 && dim_ == 0) {
    dim_ = x.size();
    if (dim_ == 0) throw std::invalid_argument("Dictionary: zero-dimensional point");
  } else if (x.size() != dim_) {
    throw std::invalid_argument("Dictionary::append: feature dimension mismatch");
  }
  if (size_ == coords_.rows())
    coords_.conservativeResize(std::max<Eigen::Index>(16, 2 * coords_.rows()), dim_);
  coords_.row(size_) = x.transpose();
  ++size_;
}

Eigen::VectorXd Dictionary::point(Eigen::Index m) const {
  if (m < 0 || m >= size_) throw std::invalid_argument("Dictionary::point: index out of range");
  return coords_.row(m).transpose();
}

Eigen::MatrixXd Dictionary::points() const {
  return coords_.topRows(size_).transpose();
}

WeightedExpansion::WeightedExpansion(Dictionary dictionary,
                                     const Eigen::Ref<const Eigen::VectorXd>& weights)
    : dict_(std::move(dictionary)), w_(weights), size_(weights.size()) {
  if (w_.size() != dict_.size())
    throw std::invalid_argument("WeightedExpansion: |weights| != |dictionary|");
}

void WeightedExpansion::append(const Eigen::Ref<const Eigen::VectorXd>& x, double weight) {
  dict_.append(x);
  if (size_ == w_.size())
    w_.conservativeResize(std::max<Eigen::Index>(16, 2 * w_.size()));
  w_[size_] = weight;
  ++size_;
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("kernel_eval: feature dimension mismatch");
  const double sq = (x - y).squaredNorm();
  return std::exp(-sq / (2.0 * spec.bandwidth * spec.bandwidth));
}

double evaluate(const WeightedExpansion& f, const KernelSpec& spec,
                const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Dictionary& dict = f.dictionary();
  if (dict.empty()) return 0.0;
  check_dim(dict, x.size(), "evaluate");

  const double inv2s2 = 1.0 / (2.0 * spec.bandwidth * spec.bandwidth);
  const auto theta = f.weights();
  double buf[kChunk];
  double acc = 0.0;
  for (Eigen::Index j0 = 0; j0 < dict.size(); j0 += kChunk) {
    const Eigen::Index n = std::min(kChunk, dict.size() - j0);
    kernel_slice(dict.coords(), j0, n, x, inv2s2, buf);
    for (Eigen::Index i = 0; i < n; ++i) acc += theta[j0 + i] * buf[i];
  }
  return acc;
}

Eigen::VectorXd evaluate_batch(const WeightedExpansion& f, const KernelSpec& spec,
                               const Eigen::Ref<const Eigen::MatrixXd>& X) {
  Eigen::VectorXd out(X.cols());
  if (X.cols() == 0) return out;
  check_dim(f.dictionary(), X.rows(), "evaluate_batch");
  for (Eigen::Index i = 0; i < X.cols(); ++i) out[i] = evaluate(f, spec, X.col(i));
  return out;
}

Eigen::MatrixXd gram(const Dictionary& dict, const KernelSpec& spec) {
  return gram_cross(dict, spec, dict.points());
}

Eigen::MatrixXd gram_cross(const Dictionary& dict, const KernelSpec& spec,
                           const Eigen::Ref<const Eigen::MatrixXd>& X) {
  Eigen::MatrixXd K(dict.size(), X.cols());
  if (dict.size() == 0 || X.cols() == 0) return K;
  check_dim(dict, X.rows(), "gram_cross");
  const double inv2s2 = 1.0 / (2.0 * spec.bandwidth * spec.bandwidth);
  for (Eigen::Index i = 0; i < X.cols(); ++i)
    kernel_slice(dict.coords(), 0, dict.size(), X.col(i), inv2s2, K.col(i).data());
  return K;
}

}  // namespace olre
