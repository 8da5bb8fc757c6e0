#pragma once

namespace fravar {

/// Gamma function for real arguments. Throws PoleError at 0, -1, -2, ...
/// Relative error is a few 1e-15 on (0, 10].
double gamma(double x);

}  // namespace fravar
