#pragma once

#include <vector>

#include "fravar/fractional_order.hpp"
#include "fravar/grid.hpp"

namespace fravar {

/// Node weights for the line integral
///   integral_a^b g(s) (ds)^mu = mu * integral_a^b (b - s)^(mu - 1) g(s) ds,
/// anchored at the upper endpoint. Each cell's kernel mass is exact
/// ((b - s_i)^mu - (b - s_{i+1})^mu) and is split evenly between the cell's
/// two nodes. No gamma prefactor. Weights are nonnegative and sum exactly to
/// (b - a)^mu.
std::vector<double> dxa_line_weights(FractionalOrder mu, const Grid1D& grid);

/// Weighted 1D measure with the 1/Gamma(1 + order) prefactor baked in.
struct FracMeasure1D {
  FractionalOrder order;
  Grid1D grid;
  std::vector<double> node_weights;
};

FracMeasure1D make_measure(FractionalOrder order, const Grid1D& grid);

/// Tensor-product measure for integral ... (dt)^alpha (dx)^beta over the
/// rectangle, with the 1/(Gamma(1+alpha) Gamma(1+beta)) prefactor baked in.
/// Row-major in t like Field.
struct FracMeasure2D {
  FractionalOrder alpha;
  FractionalOrder beta;
  Grid2D grid;
  std::vector<double> node_weights;
};

FracMeasure2D make_measure(FractionalOrder alpha, FractionalOrder beta, const Grid2D& grid);

}  // namespace fravar
