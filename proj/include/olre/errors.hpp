#pragma once

#include <stdexcept>

namespace olre {

// Failure of a numerical routine (factorization, solve). Callers may treat
// it as recoverable, e.g. a cross-validation cell is marked failed instead
// of aborting the whole grid search.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace olre
