// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace risnet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when parameters fall outside the convergence strip of the bilateral
// transform; carries the violated margin for diagnostics.
struct FeasibilityError : std::runtime_error {
  explicit FeasibilityError(const std::string& what, double margin_)
      : std::runtime_error(what), margin(margin_) {}
  double margin;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace risnet
