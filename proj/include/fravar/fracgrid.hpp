#pragma once

#include <vector>

#include "fravar/fractional_order.hpp"
#include "fravar/grid.hpp"

namespace fravar {

enum class OpKind { derivative, integral };

/// Discrete left fractional operator on a uniform grid: a lower-triangular
/// Toeplitz convolution with Grunwald-Letnikov weights. The derivative kind
/// carries shift_flag and acts on f - f(a), which makes it annihilate constant
/// fields exactly. Output at node i depends only on nodes j <= i.
struct FracOperator {
  FractionalOrder order;
  OpKind kind;
  Grid1D grid;
  std::vector<double> weights;  // length n + 1, scale h^(-+order) included
  bool shift_flag = false;
};

/// Grunwald-Letnikov weights by the stable recurrence
///   derivative: w_0 = h^-a, w_k = w_{k-1} * (k - 1 - a) / k
///   integral:   w_0 = h^+a, w_k = w_{k-1} * (k - 1 + a) / k
/// Accepts order in (0, 1]; order 1 reduces to backward differences and the
/// left-endpoint rectangle rule.
FracOperator build_operator(FractionalOrder order, OpKind kind, const Grid1D& grid);

Field apply_operator(const FracOperator& op, const Field& f);

/// Exact transpose of the operator matrix: the upper-triangular Toeplitz
/// convolution plus, for shifted operators, the rank-one correction from the
/// f(a) subtraction.
Field apply_adjoint(const FracOperator& op, const Field& f);

/// k-fold composition of one single-order operator; realizes order k*a as
/// D^a applied k times, never as a single operator of order k*a.
struct OperatorPipeline {
  FracOperator op;
  int repeats = 1;
};

OperatorPipeline compose_order(const FracOperator& op, int k);  // k in {1, 2, 3, 4}
Field apply_pipeline(const OperatorPipeline& p, const Field& f);
Field apply_pipeline_adjoint(const OperatorPipeline& p, const Field& f);

/// Applies the 1D operator independently along each grid line of a 2D field.
/// The operator grid must match the chosen axis.
Field apply_along_axis(const FracOperator& op, const Field& f, Axis axis);
Field apply_adjoint_along_axis(const FracOperator& op, const Field& f, Axis axis);

}  // namespace fravar
