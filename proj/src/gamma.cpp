#include "fravar/gamma.hpp"

#include <cmath>

#include "fravar/error.hpp"

namespace fravar {

namespace {

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
  // caller guarantees x >= 0.5
  x -= 1.0;
  double acc = kLanczosCoeff[0];
  for (int i = 1; i < 9; ++i) {
    acc += kLanczosCoeff[i] / (x + i);
  }
  const double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("gamma pole at x = " + std::to_string(x));
  }
  if (x < 0.5) {
    // reflection; sin(pi*x) is nonzero because x is not an integer here
    return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

}  // namespace fravar
