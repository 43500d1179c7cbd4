#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace olre {

// One time step of the stream: x drawn from p, x_prime drawn from q.
struct ObservationPair {
  Eigen::VectorXd x;
  Eigen::VectorXd x_prime;

  ObservationPair() = default;
  ObservationPair(Eigen::VectorXd x_, Eigen::VectorXd x_prime_)
      : x(std::move(x_)), x_prime(std::move(x_prime_)) {
    if (x.size() != x_prime.size())
      throw std::invalid_argument("ObservationPair: x and x_prime dimensions differ");
  }
};

}  // namespace olre
