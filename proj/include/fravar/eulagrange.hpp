#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fravar/functional.hpp"
#include "fravar/jetfields.hpp"
#include "fravar/lagexpr.hpp"
#include "fravar/measure.hpp"

namespace fravar {

/// A Lagrangian density together with the sampled fields it acts on. Order
/// alpha applies along t, beta along x; 1D problems use the t axis.
struct ELProblem {
  ExprPtr lagrangian;
  FieldMap fields;
  ParamMap params;
  FractionalOrder alpha{1.0};
  FractionalOrder beta{1.0};
};

/// Euler-Lagrange residual with respect to one field:
///   dL/dy + sum_m (-1)^m D_t^{m a} (dL/dD_t^{m a} y)
///        + sum_n (-1)^n D_x^{n b} (dL/dD_x^{n b} y),
/// with the partials taken structurally, evaluated pointwise through the
/// operator pipelines, and the outer derivatives applied by the same discrete
/// operators. Nodes near the lower limits inherit the stencil degradation of
/// the one-sided scheme; interior nodes are the meaningful ones.
Field el_residual(const ELProblem& p, const std::string& wrt);

/// Exact gradient of the discretized action (the measure-weighted sum of the
/// density) with respect to interior samples of the named field; rows of the
/// chain rule through the operators are supplied by the operator adjoints.
/// Boundary entries are forced to zero; `boundary_mask`, when nonempty, marks
/// additional nodes to zero (1 = masked).
Field discrete_gradient(const ELProblem& p, const std::string& wrt,
                        const std::vector<std::uint8_t>& boundary_mask = {});

/// Interior comparison of the measure-weighted residual (the formula the
/// integration-by-parts derivation would yield) against the exact discrete
/// gradient. Reports magnitudes only; the gap at fractional orders is a
/// measurement, never a pass/fail.
struct DiscrepancyRow {
  double alpha = 0.0;
  double beta = 0.0;
  int resolution = 0;
  double l2_rel = 0.0;
  double max_rel = 0.0;
};

DiscrepancyRow el_discrepancy_probe(const ELProblem& p, const std::string& wrt);

/// Ladder driver: resamples analytic fields at each resolution and each order
/// pair, collecting one DiscrepancyRow per cell.
struct DiscrepancyLadderConfig {
  ExprPtr lagrangian;
  std::map<std::string, std::function<double(double, double)>> field_fns;
  ParamMap params;
  std::string wrt;
  Grid2D base_grid;  // intervals; resolutions below override n
  std::vector<int> resolutions;
  std::vector<std::pair<double, double>> orders;
};

std::vector<DiscrepancyRow> el_discrepancy_ladder(const DiscrepancyLadderConfig& config);

}  // namespace fravar
