#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "olre/kernel.hpp"
#include "test_util.hpp"

using namespace olre;
using testutil::vec1;
using testutil::vec2;

TEST_CASE("kernel_eval matches the Gaussian formula") {
  const KernelSpec unit(1.0);
  CHECK(kernel_eval(unit, vec2(0, 0), vec2(0, 0)) == 1.0);
  // exp(-0.5), frozen from direct high-precision evaluation
  CHECK(kernel_eval(unit, vec1(0), vec1(1)) == doctest::Approx(0.60653065971263342).epsilon(1e-14));
  CHECK(kernel_eval(KernelSpec(2.0), vec2(0, 0), vec2(2, 0)) ==
        doctest::Approx(0.60653065971263342).epsilon(1e-14));
}

TEST_CASE("kernel_eval rejects mismatched dimensions") {
  CHECK_THROWS_AS(kernel_eval(KernelSpec(1.0), vec1(0), vec2(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(0.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(-1.0), std::invalid_argument);
}

TEST_CASE("kernel symmetry and bounds") {
  Rng rng(7);
  const KernelSpec spec(0.7);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd x = testutil::random_vector(rng, 3, -5, 5);
    const Eigen::VectorXd y = testutil::random_vector(rng, 3, -5, 5);
    const double kxy = kernel_eval(spec, x, y);
    CHECK(kernel_eval(spec, y, x) == kxy);  // exact, formula is symmetric
    CHECK(kxy > 0.0);
    CHECK(kxy <= 1.0);
    if (!testutil::exact_equal(x, y)) CHECK(kxy < 1.0);
  }
}

TEST_CASE("Gram matrices are positive semi-definite (spot test)") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const auto n = static_cast<Eigen::Index>(2 + rng.uniform_int(7));  // up to 8 points
    Dictionary dict(testutil::random_matrix(rng, 2, n, -3, 3));
    const Eigen::MatrixXd G = gram(dict, KernelSpec(0.5 + rng.uniform01()));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("evaluate: empty sum, identity case, two-point case") {
  const KernelSpec unit(1.0);
  WeightedExpansion empty;
  CHECK(evaluate(empty, unit, vec1(3.7)) == 0.0);
  CHECK(evaluate(empty, unit, vec2(1, 2)) == 0.0);

  WeightedExpansion f;
  f.append(vec1(0.25), 2.0);
  CHECK(evaluate(f, unit, vec1(0.25)) == 2.0);  // K(x,x) = 1 exactly

  WeightedExpansion g;
  g.append(vec1(0.0), 1.0);
  g.append(vec1(1.0), -1.0);
  // 1 - exp(-0.5), frozen from direct evaluation
  CHECK(evaluate(g, unit, vec1(0.0)) ==
        doctest::Approx(0.39346934028736658).epsilon(1e-14));
}

TEST_CASE("evaluate rejects mismatched dimensions") {
  WeightedExpansion f;
  f.append(vec2(0, 0), 1.0);
  CHECK_THROWS_AS(evaluate(f, KernelSpec(1.0), vec1(0)), std::invalid_argument);
  CHECK_THROWS_AS(f.append(vec1(0), 1.0), std::invalid_argument);
}

TEST_CASE("evaluate_batch agrees bitwise with the scalar path") {
  Rng rng(3);
  const KernelSpec spec(0.8);
  WeightedExpansion f;
  for (int m = 0; m < 700; ++m)  // long enough to cross chunk boundaries
    f.append(testutil::random_vector(rng, 2), rng.uniform(-1, 1));

  Eigen::MatrixXd X = testutil::random_matrix(rng, 2, 3);
  const Eigen::VectorXd batch = evaluate_batch(f, spec, X);
  REQUIRE(batch.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(batch[i] == evaluate(f, spec, X.col(i)));

  CHECK(evaluate_batch(f, spec, Eigen::MatrixXd(2, 0)).size() == 0);

  WeightedExpansion single;
  single.append(X.col(1), 1.0);
  const Eigen::VectorXd self = evaluate_batch(single, spec, X.col(1));
  CHECK(self[0] == 1.0);
}

TEST_CASE("evaluate is linear in the weights") {
  Rng rng(5);
  const KernelSpec spec(1.3);
  const Eigen::MatrixXd pts = testutil::random_matrix(rng, 2, 40);
  const Dictionary dict(pts);
  const Eigen::VectorXd th1 = testutil::random_vector(rng, 40);
  const Eigen::VectorXd th2 = testutil::random_vector(rng, 40);
  const WeightedExpansion f1(dict, th1), f2(dict, th2), f12(dict, th1 + th2);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = testutil::random_vector(rng, 2, -3, 3);
    CHECK(evaluate(f12, spec, x) ==
          doctest::Approx(evaluate(f1, spec, x) + evaluate(f2, spec, x)).epsilon(1e-12));
  }
}

TEST_CASE("dictionary order is append-only and stable") {
  Dictionary d;
  d.append(vec1(1));
  d.append(vec1(2));
  d.append(vec1(1));  // duplicates are kept
  REQUIRE(d.size() == 3);
  CHECK(d.point(0)[0] == 1.0);
  CHECK(d.point(1)[0] == 2.0);
  CHECK(d.point(2)[0] == 1.0);
  CHECK(d.points().cols() == 3);
  CHECK_THROWS_AS(d.point(3), std::invalid_argument);
  CHECK_THROWS_AS(WeightedExpansion(d, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}
