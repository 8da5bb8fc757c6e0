#pragma once

#include <string>

#include "fravar/fracgrid.hpp"
#include "fravar/jetfields.hpp"
#include "fravar/lagexpr.hpp"
#include "fravar/measure.hpp"

namespace fravar {

/// Fractional action J = [1/(Gamma(1+alpha)Gamma(1+beta))] integral L (dt)^a (dx)^b,
/// with jet variables bound through the discrete operator pipelines and the
/// (ds)^mu line measure anchored at each axis upper endpoint.
double eval_functional(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure2D& measure);

/// 1D counterpart over the t axis.
double eval_functional(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure1D& measure);

/// Boundary-vanishing perturbation direction. epsilon <= 0 selects the
/// default step 1e-6 * max(1, |field|_inf).
struct Perturbation {
  Field eta;
  double epsilon = 0.0;
};

/// Zeroes the boundary entries of eta (the admissible class of variations).
Field clamp_boundary(const Field& eta);

/// Central-difference first variation (J[y + eps*eta] - J[y - eps*eta]) / (2 eps)
/// of the discretized functional with respect to the named field.
double first_variation(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure2D& measure, const Perturbation& pert,
                       const std::string& wrt);
double first_variation(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure1D& measure, const Perturbation& pert,
                       const std::string& wrt);

/// Rectangle Green identity probe:
///   lhs = [1/(G(1+a)G(1+b))] integral [D_t^a Q - D_x^b P] (dt)^a (dx)^b
///   rhs = [1/G(1+b)] contour Q (dx)^b - [1/G(1+a)] contour P (dt)^a
/// (counterclockwise boundary, per-edge (ds)^mu line integrals). A
/// measurement, not an assertion: the identity is exact only in the classical
/// limit.
struct GreenReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

GreenReport green_probe(const Field& P, const Field& Q, const FracMeasure2D& measure);

/// Interior norms of a residual field (nodes at least two cells from every
/// boundary).
struct ProbeNorms {
  double l2 = 0.0;
  double max = 0.0;
};

ProbeNorms interior_norms(const Field& residual);

/// Leibniz-rule probe: r = D(f g) - f D(g) - g D(f) for a 1D operator.
struct LeibnizReport {
  Field residual;
  ProbeNorms norms;
};

LeibnizReport leibniz_probe(const Field& f, const Field& g, const FracOperator& op);

/// Chain-rule probe: r = D(h(u)) - h'(u) D(u).
enum class OuterFunction { square_half, sin, cos, exp };

struct ChainReport {
  Field residual;
  ProbeNorms norms;
};

ChainReport chainrule_probe(const Field& u, const FracOperator& op, OuterFunction outer);

}  // namespace fravar
