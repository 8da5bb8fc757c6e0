#pragma once

#include <map>
#include <string>

#include "fravar/fracgrid.hpp"
#include "fravar/grid.hpp"
#include "fravar/lagexpr.hpp"

namespace fravar {

using FieldMap = std::map<std::string, Field>;
using ParamMap = std::map<std::string, double>;

/// Sampled values for every jet variable of an expression: bare fields bind
/// their own samples, derivative jets are produced by the composed discrete
/// operators (order alpha along t, beta along x). Bare names not found among
/// the fields are left to the parameter map at evaluation time.
struct JetFieldSet {
  std::map<JetVar, Field> jets;
};

JetFieldSet compute_jet_fields(const ExprPtr& e, const FieldMap& fields, FractionalOrder alpha,
                               FractionalOrder beta);

/// The grid shared by every field in the map; throws if they disagree.
Field common_grid_zeros(const FieldMap& fields);

/// Pointwise evaluation over the grid with coordinates, jets, and parameters
/// bound per node.
Field eval_over_grid(const ExprPtr& e, const JetFieldSet& jets, const ParamMap& params,
                     const Field& grid_like);

/// Discrete derivative pipeline for one jet variable (multiplicity-fold
/// composition along the jet's axis).
Field jet_derivative(const Field& base, Axis axis, int multiplicity, FractionalOrder order);

/// Adjoint of jet_derivative, for exact chain rules through the operators.
Field jet_derivative_adjoint(const Field& w, Axis axis, int multiplicity, FractionalOrder order);

}  // namespace fravar
