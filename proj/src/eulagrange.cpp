#include "fravar/eulagrange.hpp"

#include <cmath>
#include <stdexcept>

#include "fravar/error.hpp"

namespace fravar {

namespace {

std::set<JetVar> jets_of(const ExprPtr& e, const std::string& field) {
  std::set<JetVar> all;
  collect_jets(e, all);
  std::set<JetVar> mine;
  for (const JetVar& v : all) {
    if (v.field == field) mine.insert(v);
  }
  return mine;
}

std::vector<double> measure_weights(const Field& like, FractionalOrder alpha,
                                    FractionalOrder beta) {
  if (like.dims() == 1) {
    return make_measure(alpha, like.grid1()).node_weights;
  }
  return make_measure(alpha, beta, like.grid2()).node_weights;
}

void zero_boundary(Field& f) {
  if (f.dims() == 1) {
    f.at(0) = 0.0;
    f.at(f.grid1().n) = 0.0;
  } else {
    const Grid2D& g = f.grid2();
    for (int it = 0; it <= g.t.n; ++it) {
      f.at(it, 0) = 0.0;
      f.at(it, g.x.n) = 0.0;
    }
    for (int ix = 0; ix <= g.x.n; ++ix) {
      f.at(0, ix) = 0.0;
      f.at(g.t.n, ix) = 0.0;
    }
  }
}

}  // namespace

Field el_residual(const ELProblem& p, const std::string& wrt) {
  if (!p.fields.contains(wrt)) {
    throw std::invalid_argument("el_residual: unknown field '" + wrt + "'");
  }
  const Field zeros = common_grid_zeros(p.fields);
  const JetFieldSet jets = compute_jet_fields(p.lagrangian, p.fields, p.alpha, p.beta);
  Field residual = zeros;
  for (const JetVar& v : jets_of(p.lagrangian, wrt)) {
    const ExprPtr partial = partial_jet(p.lagrangian, v);
    Field term = eval_over_grid(partial, jets, p.params, zeros);
    if (v.multiplicity > 0) {
      term = jet_derivative(term, v.axis, v.multiplicity,
                            v.axis == Axis::t ? p.alpha : p.beta);
    }
    const double sign = v.multiplicity % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual.values()[i] += sign * term.values()[i];
    }
  }
  return residual;
}

Field discrete_gradient(const ELProblem& p, const std::string& wrt,
                        const std::vector<std::uint8_t>& boundary_mask) {
  if (!p.fields.contains(wrt)) {
    throw std::invalid_argument("discrete_gradient: unknown field '" + wrt + "'");
  }
  const Field zeros = common_grid_zeros(p.fields);
  if (!boundary_mask.empty() && boundary_mask.size() != zeros.size()) {
    throw std::invalid_argument("discrete_gradient: mask length mismatch");
  }
  const JetFieldSet jets = compute_jet_fields(p.lagrangian, p.fields, p.alpha, p.beta);
  const std::vector<double> weights = measure_weights(zeros, p.alpha, p.beta);
  Field gradient = zeros;
  for (const JetVar& v : jets_of(p.lagrangian, wrt)) {
    const ExprPtr partial = partial_jet(p.lagrangian, v);
    Field term = eval_over_grid(partial, jets, p.params, zeros);
    for (std::size_t i = 0; i < term.size(); ++i) {
      term.values()[i] *= weights[i];
    }
    if (v.multiplicity > 0) {
      term = jet_derivative_adjoint(term, v.axis, v.multiplicity,
                                    v.axis == Axis::t ? p.alpha : p.beta);
    }
    for (std::size_t i = 0; i < gradient.size(); ++i) {
      gradient.values()[i] += term.values()[i];
    }
  }
  zero_boundary(gradient);
  if (!boundary_mask.empty()) {
    for (std::size_t i = 0; i < gradient.size(); ++i) {
      if (boundary_mask[i]) gradient.values()[i] = 0.0;
    }
  }
  return gradient;
}

DiscrepancyRow el_discrepancy_probe(const ELProblem& p, const std::string& wrt) {
  const Field zeros = common_grid_zeros(p.fields);
  const std::vector<double> weights = measure_weights(zeros, p.alpha, p.beta);
  Field weighted_residual = el_residual(p, wrt);
  for (std::size_t i = 0; i < weighted_residual.size(); ++i) {
    weighted_residual.values()[i] *= weights[i];
  }
  const Field gradient = discrete_gradient(p, wrt);
  Field diff = weighted_residual;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff.values()[i] -= gradient.values()[i];
  }
  const ProbeNorms dn = interior_norms(diff);
  const ProbeNorms gn = interior_norms(gradient);
  DiscrepancyRow row;
  row.alpha = p.alpha.value();
  row.beta = p.beta.value();
  row.resolution = zeros.dims() == 1 ? zeros.grid1().n : zeros.grid2().t.n;
  const double l2_floor = std::max(gn.l2, 1e-300);
  const double max_floor = std::max(gn.max, 1e-300);
  row.l2_rel = dn.l2 / l2_floor;
  row.max_rel = dn.max / max_floor;
  return row;
}

std::vector<DiscrepancyRow> el_discrepancy_ladder(const DiscrepancyLadderConfig& config) {
  std::vector<DiscrepancyRow> rows;
  for (const auto& [a, b] : config.orders) {
    for (int n : config.resolutions) {
      const Grid2D grid{make_grid(config.base_grid.t.a, config.base_grid.t.b, n),
                        make_grid(config.base_grid.x.a, config.base_grid.x.b, n)};
      FieldMap fields;
      for (const auto& [name, fn] : config.field_fns) {
        fields.emplace(name, sample_field(fn, grid));
      }
      ELProblem p{config.lagrangian, std::move(fields), config.params, FractionalOrder(a),
                  FractionalOrder(b)};
      rows.push_back(el_discrepancy_probe(p, config.wrt));
    }
  }
  return rows;
}

}  // namespace fravar
