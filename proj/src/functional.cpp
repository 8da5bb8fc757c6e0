#include "fravar/functional.hpp"

#include <cmath>
#include <stdexcept>

#include "fravar/error.hpp"
#include "fravar/gamma.hpp"

namespace fravar {

namespace {

double weighted_sum(const Field& values, const std::vector<double>& weights) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += weights[i] * values.values()[i];
  }
  return acc;
}

template <typename Measure>
double functional_value(const ExprPtr& L, const FieldMap& fields, const ParamMap& params,
                        const Measure& measure, FractionalOrder alpha, FractionalOrder beta) {
  const Field zeros = common_grid_zeros(fields);
  const JetFieldSet jets = compute_jet_fields(L, fields, alpha, beta);
  const Field density = eval_over_grid(L, jets, params, zeros);
  return weighted_sum(density, measure.node_weights);
}

template <typename Measure>
double variation_value(const ExprPtr& L, const FieldMap& fields, const ParamMap& params,
                       const Measure& measure, const Perturbation& pert, const std::string& wrt,
                       FractionalOrder alpha, FractionalOrder beta) {
  auto it = fields.find(wrt);
  if (it == fields.end()) {
    throw std::invalid_argument("first_variation: unknown field '" + wrt + "'");
  }
  if (!it->second.same_grid(pert.eta)) {
    throw std::invalid_argument("first_variation: eta grid does not match");
  }
  {
    const Field clamped = clamp_boundary(pert.eta);
    for (std::size_t i = 0; i < clamped.size(); ++i) {
      if (clamped.values()[i] != pert.eta.values()[i]) {
        throw std::invalid_argument("first_variation: eta must vanish on the boundary");
      }
    }
  }
  double eps = pert.epsilon;
  if (eps <= 0.0) {
    double mag = 0.0;
    for (double v : it->second.values()) mag = std::max(mag, std::abs(v));
    eps = 1e-6 * std::max(1.0, mag);
  }
  FieldMap plus = fields;
  FieldMap minus = fields;
  for (std::size_t i = 0; i < pert.eta.size(); ++i) {
    plus.at(wrt).values()[i] += eps * pert.eta.values()[i];
    minus.at(wrt).values()[i] -= eps * pert.eta.values()[i];
  }
  const double jp = functional_value(L, plus, params, measure, alpha, beta);
  const double jm = functional_value(L, minus, params, measure, alpha, beta);
  return (jp - jm) / (2.0 * eps);
}

}  // namespace

double eval_functional(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure2D& measure) {
  return functional_value(lagrangian, fields, params, measure, measure.alpha, measure.beta);
}

double eval_functional(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure1D& measure) {
  return functional_value(lagrangian, fields, params, measure, measure.order, measure.order);
}

Field clamp_boundary(const Field& eta) {
  Field out = eta;
  if (eta.dims() == 1) {
    const Grid1D& g = eta.grid1();
    out.at(0) = 0.0;
    out.at(g.n) = 0.0;
  } else {
    const Grid2D& g = eta.grid2();
    for (int it = 0; it <= g.t.n; ++it) {
      out.at(it, 0) = 0.0;
      out.at(it, g.x.n) = 0.0;
    }
    for (int ix = 0; ix <= g.x.n; ++ix) {
      out.at(0, ix) = 0.0;
      out.at(g.t.n, ix) = 0.0;
    }
  }
  return out;
}

double first_variation(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure2D& measure, const Perturbation& pert,
                       const std::string& wrt) {
  return variation_value(lagrangian, fields, params, measure, pert, wrt, measure.alpha,
                         measure.beta);
}

double first_variation(const ExprPtr& lagrangian, const FieldMap& fields, const ParamMap& params,
                       const FracMeasure1D& measure, const Perturbation& pert,
                       const std::string& wrt) {
  return variation_value(lagrangian, fields, params, measure, pert, wrt, measure.order,
                         measure.order);
}

GreenReport green_probe(const Field& P, const Field& Q, const FracMeasure2D& measure) {
  if (P.dims() != 2 || Q.dims() != 2 || !P.same_grid(Q) || !(P.grid2() == measure.grid)) {
    throw std::invalid_argument("green_probe: P, Q, and measure grids must match");
  }
  const Grid2D& g = measure.grid;
  const FracOperator dt = build_operator(measure.alpha, OpKind::derivative, g.t);
  const FracOperator dx = build_operator(measure.beta, OpKind::derivative, g.x);
  const Field qt = apply_along_axis(dt, Q, Axis::t);
  const Field px = apply_along_axis(dx, P, Axis::x);

  double lhs = 0.0;
  for (std::size_t i = 0; i < qt.size(); ++i) {
    lhs += measure.node_weights[i] * (qt.values()[i] - px.values()[i]);
  }

  // Counterclockwise rectangle boundary, assembled edge by edge with the
  // (ds)^mu line weights of each axis.
  const std::vector<double> wt = dxa_line_weights(measure.alpha, g.t);
  const std::vector<double> wx = dxa_line_weights(measure.beta, g.x);
  double q_edges = 0.0;
  for (int ix = 0; ix <= g.x.n; ++ix) {
    q_edges += wx[ix] * (Q.at(g.t.n, ix) - Q.at(0, ix));
  }
  double p_edges = 0.0;
  for (int it = 0; it <= g.t.n; ++it) {
    p_edges += wt[it] * (P.at(it, g.x.n) - P.at(it, 0));
  }
  const double rhs = q_edges / gamma(1.0 + measure.beta.value()) -
                     p_edges / gamma(1.0 + measure.alpha.value());
  return GreenReport{lhs, rhs, lhs - rhs};
}

ProbeNorms interior_norms(const Field& residual) {
  ProbeNorms out;
  double sq = 0.0;
  std::size_t count = 0;
  if (residual.dims() == 1) {
    const Grid1D& g = residual.grid1();
    for (int i = 2; i <= g.n - 2; ++i) {
      const double v = residual.at(i);
      sq += v * v;
      out.max = std::max(out.max, std::abs(v));
      ++count;
    }
  } else {
    const Grid2D& g = residual.grid2();
    for (int it = 2; it <= g.t.n - 2; ++it) {
      for (int ix = 2; ix <= g.x.n - 2; ++ix) {
        const double v = residual.at(it, ix);
        sq += v * v;
        out.max = std::max(out.max, std::abs(v));
        ++count;
      }
    }
  }
  out.l2 = count > 0 ? std::sqrt(sq / count) : 0.0;
  return out;
}

LeibnizReport leibniz_probe(const Field& f, const Field& g, const FracOperator& op) {
  if (f.dims() != 1 || !f.same_grid(g) || !(f.grid1() == op.grid)) {
    throw std::invalid_argument("leibniz_probe: grids must match");
  }
  Field product = f;
  for (std::size_t i = 0; i < product.size(); ++i) {
    product.values()[i] = f.values()[i] * g.values()[i];
  }
  const Field d_product = apply_operator(op, product);
  const Field df = apply_operator(op, f);
  const Field dg = apply_operator(op, g);
  Field residual = d_product;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    residual.values()[i] -= f.values()[i] * dg.values()[i] + g.values()[i] * df.values()[i];
  }
  return LeibnizReport{residual, interior_norms(residual)};
}

ChainReport chainrule_probe(const Field& u, const FracOperator& op, OuterFunction outer) {
  if (u.dims() != 1 || !(u.grid1() == op.grid)) {
    throw std::invalid_argument("chainrule_probe: grids must match");
  }
  Field h = u;
  Field hp = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u.values()[i];
    switch (outer) {
      case OuterFunction::square_half:
        h.values()[i] = 0.5 * v * v;
        hp.values()[i] = v;
        break;
      case OuterFunction::sin:
        h.values()[i] = std::sin(v);
        hp.values()[i] = std::cos(v);
        break;
      case OuterFunction::cos:
        h.values()[i] = std::cos(v);
        hp.values()[i] = -std::sin(v);
        break;
      case OuterFunction::exp:
        h.values()[i] = std::exp(v);
        hp.values()[i] = std::exp(v);
        break;
    }
  }
  const Field dh = apply_operator(op, h);
  const Field du = apply_operator(op, u);
  Field residual = dh;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    residual.values()[i] -= hp.values()[i] * du.values()[i];
  }
  return ChainReport{residual, interior_norms(residual)};
}

}  // namespace fravar
