#pragma once

#include <functional>
#include <utility>

namespace fravar {

/// A real function on a closed interval [a, b]. Continuity is assumed;
/// differentiability is not. Setting `smooth` declares the function
/// continuously differentiable, which lets the derivative operators take the
/// Caputo-form fast path. An explicit `derivative` callable, when present,
/// replaces the internal finite-difference derivative on that path.
struct ScalarFunction {
  std::function<double(double)> f;
  double a = 0.0;
  double b = 1.0;
  bool smooth = false;
  std::function<double(double)> derivative;

  double operator()(double x) const { return f(x); }
};

inline ScalarFunction make_scalar_function(std::function<double(double)> f, double a, double b,
                                           bool smooth = false) {
  return ScalarFunction{std::move(f), a, b, smooth, nullptr};
}

inline ScalarFunction with_derivative(std::function<double(double)> f,
                                      std::function<double(double)> df, double a, double b) {
  return ScalarFunction{std::move(f), a, b, true, std::move(df)};
}

}  // namespace fravar
