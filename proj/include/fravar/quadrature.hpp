#pragma once

#include <functional>

namespace fravar {

struct QuadratureOptions {
  double tolerance = 1e-8;  // stop when successive refinements agree to this
  int initial_depth = 8;    // geometric grading levels per endpoint
  int max_depth = 4096;
};

/// integral_{s_lo}^{x} (x - s)^(mu - 1) g(s) ds for mu in (0, 1].
///
/// The kernel endpoint singularity at s = x is absorbed by the substitution
/// u = (x - s)^mu; the transformed integrand is then integrated by per-cell
/// Gauss rules on a mesh graded geometrically toward both ends, doubling the
/// grading depth until successive estimates agree to tolerance. g must be
/// bounded on [s_lo, x]; unbounded derivatives at either end are fine.
double kernel_integral(const std::function<double(double)>& g, double s_lo, double x, double mu,
                       const QuadratureOptions& opt = {});

/// integral_a^b g(s) ds on the same both-ends graded geometric mesh. For
/// bounded g with possible derivative blow-up at the endpoints.
double graded_integral(const std::function<double(double)>& g, double a, double b,
                       const QuadratureOptions& opt = {});

}  // namespace fravar
