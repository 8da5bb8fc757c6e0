#include "fravar/fracops.hpp"

#include <cmath>
#include <string>

#include "fravar/error.hpp"
#include "fravar/gamma.hpp"

namespace fravar {

namespace {

void check_in_interval(const ScalarFunction& f, double x) {
  if (!(f.a <= x && x <= f.b)) {
    throw std::domain_error("evaluation point " + std::to_string(x) + " outside [" +
                            std::to_string(f.a) + ", " + std::to_string(f.b) + "]");
  }
}

// All operators work on the translated interval [0, b - a].
double translated(const ScalarFunction& f, double s) { return f.f(f.a + s); }

// Second-order finite-difference derivative of f at interior/edge points of
// [0, len] in translated coordinates.
double fd_derivative(const ScalarFunction& f, double s, double len) {
  const double step = std::cbrt(2.2e-16) * std::max(1.0, len);
  if (s - step < 0.0) {
    return (-3.0 * translated(f, s) + 4.0 * translated(f, s + step) -
            translated(f, s + 2.0 * step)) /
           (2.0 * step);
  }
  if (s + step > len) {
    return (3.0 * translated(f, s) - 4.0 * translated(f, s - step) +
            translated(f, s - 2.0 * step)) /
           (2.0 * step);
  }
  return (translated(f, s + step) - translated(f, s - step)) / (2.0 * step);
}

// Caputo-form evaluation for differentiable f:
//   integral_0^X (X-s)^(-alpha) f'(s) ds
// split at X/2. The near half keeps f' under the singular kernel; on the far
// half integration by parts removes f' entirely, so an integrable singularity
// of f' at the lower limit cannot spoil the quadrature:
//   integral_0^m K f' ds = K(m) f(m) - K(0) f(0) - alpha * integral_0^m (X-s)^(-alpha-1) f ds.
double caputo_value(const ScalarFunction& f, double al, double X, const QuadratureOptions& opt) {
  const double len = f.b - f.a;
  auto fp = [&](double s) {
    return f.derivative ? f.derivative(f.a + s) : fd_derivative(f, s, len);
  };
  const double mid = 0.5 * X;
  const double near = kernel_integral(fp, mid, X, 1.0 - al, opt);
  const double boundary =
      std::pow(X - mid, -al) * translated(f, mid) - std::pow(X, -al) * translated(f, 0.0);
  auto far_integrand = [&](double s) { return std::pow(X - s, -al - 1.0) * translated(f, s); };
  const double far = graded_integral(far_integrand, 0.0, mid, opt);
  return (near + boundary - al * far) / gamma(1.0 - al);
}

// Fallback for merely continuous f: central difference in x of the shifted
// Riemann-Liouville integral of order 1 - alpha.
double shifted_difference_value(const ScalarFunction& f, double al, double X,
                                const QuadratureOptions& opt) {
  const double len = f.b - f.a;
  const double f0 = translated(f, 0.0);
  QuadratureOptions inner = opt;
  inner.tolerance = std::max(opt.tolerance * 1e-4, 1e-14);
  auto shifted_rl = [&](double xx) {
    auto g = [&](double s) { return translated(f, s) - f0; };
    return kernel_integral(g, 0.0, xx, 1.0 - al, inner) / gamma(1.0 - al);
  };
  const double h = 1e-4 * len;
  if (X - h < 0.0) {
    return (-3.0 * shifted_rl(X) + 4.0 * shifted_rl(X + h) - shifted_rl(X + 2.0 * h)) / (2.0 * h);
  }
  if (X + h > len) {
    return (3.0 * shifted_rl(X) - 4.0 * shifted_rl(X - h) + shifted_rl(X - 2.0 * h)) / (2.0 * h);
  }
  return (shifted_rl(X + h) - shifted_rl(X - h)) / (2.0 * h);
}

}  // namespace

double rl_integral(const ScalarFunction& f, FractionalOrder alpha, double x,
                   const QuadratureOptions& opt) {
  check_in_interval(f, x);
  const double X = x - f.a;
  if (X <= 0.0) return 0.0;
  auto g = [&](double s) { return translated(f, s); };
  return kernel_integral(g, 0.0, X, alpha.value(), opt) / gamma(alpha.value());
}

double frac_integral_dxa(const ScalarFunction& f, FractionalOrder alpha, double x,
                         const QuadratureOptions& opt) {
  check_in_interval(f, x);
  const double al = alpha.value();
  if (!(al < 1.0)) {
    throw std::invalid_argument("frac_integral_dxa requires alpha in (0, 1)");
  }
  const double X = x - f.a;
  if (X <= 0.0) return 0.0;
  auto g = [&](double s) { return translated(f, s); };
  return al / gamma(1.0 + al) * kernel_integral(g, 0.0, X, al, opt);
}

double mrl_derivative(const ScalarFunction& f, FractionalOrder alpha, double x,
                      const QuadratureOptions& opt) {
  check_in_interval(f, x);
  const double al = alpha.value();
  if (!(al < 1.0)) {
    throw std::invalid_argument("mrl_derivative requires alpha in (0, 1)");
  }
  const double X = x - f.a;
  if (X <= 0.0) return 0.0;
  if (f.smooth || f.derivative) {
    return caputo_value(f, al, X, opt);
  }
  return shifted_difference_value(f, al, X, opt);
}

double power_law_oracle(double gamma_exp, FractionalOrder alpha, double x, PowerKind kind) {
  if (!(gamma_exp > -1.0)) {
    throw std::domain_error("power_law_oracle requires gamma_exp > -1");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("power_law_oracle requires x >= 0");
  }
  const double al = alpha.value();
  if (kind == PowerKind::derivative) {
    if (gamma_exp == 0.0) return 0.0;  // modified derivative of a constant
    return gamma(gamma_exp + 1.0) / gamma(gamma_exp + 1.0 - al) * std::pow(x, gamma_exp - al);
  }
  return gamma(gamma_exp + 1.0) / gamma(gamma_exp + 1.0 + al) * std::pow(x, gamma_exp + al);
}

}  // namespace fravar
