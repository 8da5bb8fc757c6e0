#include "fravar/measure.hpp"

#include <cmath>

#include "fravar/gamma.hpp"

namespace fravar {

std::vector<double> dxa_line_weights(FractionalOrder mu, const Grid1D& grid) {
  const double m = mu.value();
  std::vector<double> w(grid.node_count(), 0.0);
  for (int i = 0; i < grid.n; ++i) {
    const double lo = grid.b - grid.node(i);
    // node(n) equals b up to rounding; a fractional power of that dust would
    // not vanish, so the final cell ends at exactly zero
    const double hi = i + 1 == grid.n ? 0.0 : grid.b - grid.node(i + 1);
    const double mass = std::pow(lo, m) - std::pow(hi < 0.0 ? 0.0 : hi, m);
    w[i] += 0.5 * mass;
    w[i + 1] += 0.5 * mass;
  }
  return w;
}

FracMeasure1D make_measure(FractionalOrder order, const Grid1D& grid) {
  std::vector<double> w = dxa_line_weights(order, grid);
  const double pref = 1.0 / gamma(1.0 + order.value());
  for (double& v : w) v *= pref;
  return FracMeasure1D{order, grid, std::move(w)};
}

FracMeasure2D make_measure(FractionalOrder alpha, FractionalOrder beta, const Grid2D& grid) {
  const std::vector<double> wt = dxa_line_weights(alpha, grid.t);
  const std::vector<double> wx = dxa_line_weights(beta, grid.x);
  const double pref = 1.0 / (gamma(1.0 + alpha.value()) * gamma(1.0 + beta.value()));
  std::vector<double> w;
  w.reserve(wt.size() * wx.size());
  for (double vt : wt) {
    for (double vx : wx) {
      w.push_back(pref * vt * vx);
    }
  }
  return FracMeasure2D{alpha, beta, grid, std::move(w)};
}

}  // namespace fravar
