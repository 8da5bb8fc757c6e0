#pragma once

#include "fravar/fractional_order.hpp"
#include "fravar/quadrature.hpp"
#include "fravar/scalar_function.hpp"

namespace fravar {

/// Left fractional integral of order alpha over [f.a, x],
///   (1/Gamma(alpha)) integral_a^x (x - s)^(alpha - 1) f(s) ds,
/// alpha in (0, 1]. Operators on [a, b] are evaluated on the translated
/// interval [0, b - a], so translated inputs give bitwise-equal results.
double rl_integral(const ScalarFunction& f, FractionalOrder alpha, double x,
                   const QuadratureOptions& opt = {});

/// The same integral in its (ds)^alpha form,
///   (1/Gamma(alpha + 1)) integral_a^x f(s) (ds)^alpha
/// realized as (alpha/Gamma(alpha + 1)) integral_a^x (x - s)^(alpha - 1) f(s) ds.
/// alpha in (0, 1).
double frac_integral_dxa(const ScalarFunction& f, FractionalOrder alpha, double x,
                         const QuadratureOptions& opt = {});

/// Modified (shifted) left Riemann-Liouville derivative of order alpha in (0, 1):
///   (1/Gamma(1 - alpha)) d/dx integral_a^x (x - s)^(-alpha) (f(s) - f(a)) ds.
/// Annihilates constants. For f declared smooth the equivalent Caputo form
/// (kernel against f') is used; otherwise the shifted integral is
/// differentiated numerically in x.
double mrl_derivative(const ScalarFunction& f, FractionalOrder alpha, double x,
                      const QuadratureOptions& opt = {});

enum class PowerKind { derivative, integral };

/// Closed form of the operators on f(s) = s^gamma_exp over [0, x]:
///   derivative: Gamma(g+1)/Gamma(g+1-alpha) * x^(g-alpha)   (0 when g = 0)
///   integral:   Gamma(g+1)/Gamma(g+1+alpha) * x^(g+alpha)
/// Test oracle only; requires gamma_exp > -1 and x >= 0.
double power_law_oracle(double gamma_exp, FractionalOrder alpha, double x, PowerKind kind);

}  // namespace fravar
