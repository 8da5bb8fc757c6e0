#pragma once

#include <stdexcept>
#include <string>

namespace fravar {

/// Order of a fractional derivative or integral, restricted to (0, 1].
/// Orders k*alpha with integer k are realized by composing single-order
/// operators, never by constructing an order above 1.
class FractionalOrder {
 public:
  explicit FractionalOrder(double value) : value_(value) {
    if (!(value > 0.0) || !(value <= 1.0)) {
      throw std::invalid_argument("fractional order must lie in (0, 1], got " +
                                  std::to_string(value));
    }
  }

  double value() const { return value_; }

 private:
  double value_;
};

}  // namespace fravar
