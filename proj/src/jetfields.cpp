#include "fravar/jetfields.hpp"

#include <cmath>
#include <stdexcept>

#include "fravar/error.hpp"

namespace fravar {

namespace {

const Grid1D& axis_grid(const Field& f, Axis axis) {
  if (f.dims() == 1) {
    if (axis != Axis::t) {
      throw std::invalid_argument("1D fields carry the t axis only");
    }
    return f.grid1();
  }
  return axis == Axis::t ? f.grid2().t : f.grid2().x;
}

}  // namespace

Field jet_derivative(const Field& base, Axis axis, int multiplicity, FractionalOrder order) {
  const FracOperator op = build_operator(order, OpKind::derivative, axis_grid(base, axis));
  Field out = base;
  if (base.dims() == 1) {
    const OperatorPipeline p = compose_order(op, multiplicity);
    out = apply_pipeline(p, base);
  } else {
    (void)compose_order(op, multiplicity);  // validates multiplicity bound
    for (int i = 0; i < multiplicity; ++i) out = apply_along_axis(op, out, axis);
  }
  return out;
}

Field jet_derivative_adjoint(const Field& w, Axis axis, int multiplicity, FractionalOrder order) {
  const FracOperator op = build_operator(order, OpKind::derivative, axis_grid(w, axis));
  Field out = w;
  if (w.dims() == 1) {
    const OperatorPipeline p = compose_order(op, multiplicity);
    out = apply_pipeline_adjoint(p, w);
  } else {
    (void)compose_order(op, multiplicity);
    for (int i = 0; i < multiplicity; ++i) out = apply_adjoint_along_axis(op, out, axis);
  }
  return out;
}

JetFieldSet compute_jet_fields(const ExprPtr& e, const FieldMap& fields, FractionalOrder alpha,
                               FractionalOrder beta) {
  std::set<JetVar> vars;
  collect_jets(e, vars);
  JetFieldSet out;
  for (const JetVar& v : vars) {
    auto it = fields.find(v.field);
    if (it == fields.end()) {
      if (v.multiplicity > 0) {
        throw EvalError("jet variable references unknown field '" + v.field + "'");
      }
      continue;  // bare name; resolved from parameters at evaluation
    }
    if (v.multiplicity == 0) {
      out.jets.emplace(v, it->second);
    } else {
      out.jets.emplace(v, jet_derivative(it->second, v.axis, v.multiplicity,
                                         v.axis == Axis::t ? alpha : beta));
    }
  }
  return out;
}

Field common_grid_zeros(const FieldMap& fields) {
  if (fields.empty()) {
    throw std::invalid_argument("field map is empty");
  }
  const Field& first = fields.begin()->second;
  for (const auto& [name, f] : fields) {
    if (!f.same_grid(first)) {
      throw std::invalid_argument("field '" + name + "' lives on a different grid");
    }
  }
  if (first.dims() == 1) return Field::zeros(first.grid1());
  return Field::zeros(first.grid2());
}

Field eval_over_grid(const ExprPtr& e, const JetFieldSet& jets, const ParamMap& params,
                     const Field& grid_like) {
  Field out = grid_like;
  Bindings b;
  for (const auto& [name, value] : params) b.set(name, value);
  if (grid_like.dims() == 1) {
    const Grid1D& g = grid_like.grid1();
    for (int i = 0; i <= g.n; ++i) {
      b.t = g.node(i);
      for (const auto& [var, f] : jets.jets) b.jets[var] = f.at(i);
      out.at(i) = evaluate(e, b);
    }
  } else {
    const Grid2D& g = grid_like.grid2();
    for (int it = 0; it <= g.t.n; ++it) {
      b.t = g.t.node(it);
      for (int ix = 0; ix <= g.x.n; ++ix) {
        b.x = g.x.node(ix);
        for (const auto& [var, f] : jets.jets) b.jets[var] = f.at(it, ix);
        out.at(it, ix) = evaluate(e, b);
      }
    }
  }
  return out;
}

}  // namespace fravar
