#include "fravar/semiinverse.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fravar/error.hpp"
#include "fravar/lsq.hpp"

namespace fravar {

namespace {

// Applies D_axis^m algebraically. Defined for expressions linear in jet
// variables with constant coefficients; jets shift multiplicity, constants
// are annihilated. Anything nonlinear has no jet-form image and is rejected.
ExprPtr alg_derivative(const ExprPtr& e, Axis axis, int m) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return Expr::constant(0.0);
    case Expr::Kind::jet: {
      const JetVar& v = e->jet;
      if (v.multiplicity == 0) {
        return Expr::jet_var(JetVar{v.field, axis, m});
      }
      if (v.axis == axis) {
        if (v.multiplicity + m > 4) {
          throw std::invalid_argument("operator bounds exceeded: multiplicity " +
                                      std::to_string(v.multiplicity + m));
        }
        return Expr::jet_var(JetVar{v.field, axis, v.multiplicity + m});
      }
      throw std::invalid_argument("mixed-axis jet has no single-axis jet form");
    }
    case Expr::Kind::binary:
      switch (e->op) {
        case '+':
        case '-':
          return Expr::binary(e->op, alg_derivative(e->lhs, axis, m),
                              alg_derivative(e->rhs, axis, m));
        case '*':
          if (e->lhs->kind == Expr::Kind::constant) {
            return Expr::binary('*', e->lhs, alg_derivative(e->rhs, axis, m));
          }
          if (e->rhs->kind == Expr::Kind::constant) {
            return Expr::binary('*', alg_derivative(e->lhs, axis, m), e->rhs);
          }
          break;
        case '/':
          if (e->rhs->kind == Expr::Kind::constant) {
            return Expr::binary('/', alg_derivative(e->lhs, axis, m), e->rhs);
          }
          break;
      }
      [[fallthrough]];
    default:
      throw std::invalid_argument(
          "cannot apply a fractional derivative algebraically to nonlinear term '" + format(e) +
          "'");
  }
}

// Replaces jets of the potential by the constraint right-hand sides;
// multiplicities above one push the algebraic derivative through the
// substituted expression.
ExprPtr substitute_potential(const ExprPtr& e, const SystemFixture& fix) {
  switch (e->kind) {
    case Expr::Kind::jet: {
      const JetVar& v = e->jet;
      if (v.field != fix.potential_field) return e;
      if (v.multiplicity == 0) {
        throw std::invalid_argument("bare potential '" + v.field + "' has no jet-form value");
      }
      for (const Constraint& c : fix.constraints) {
        if (c.lhs.axis == v.axis) {
          if (v.multiplicity == c.lhs.multiplicity) return c.rhs;
          if (v.multiplicity > c.lhs.multiplicity) {
            return alg_derivative(c.rhs, v.axis, v.multiplicity - c.lhs.multiplicity);
          }
        }
      }
      throw std::invalid_argument("no constraint defines jet '" + format(e) + "'");
    }
    case Expr::Kind::unary:
      return Expr::unary(e->func, substitute_potential(e->lhs, fix));
    case Expr::Kind::power:
      return Expr::power(substitute_potential(e->lhs, fix), e->exponent);
    case Expr::Kind::binary:
      return Expr::binary(e->op, substitute_potential(e->lhs, fix),
                          substitute_potential(e->rhs, fix));
    default:
      return e;
  }
}

FractionalOrder axis_order(Axis axis, FractionalOrder alpha, FractionalOrder beta) {
  return axis == Axis::t ? alpha : beta;
}

bool symbols_bindable(const ExprPtr& e, const SystemFixture& fix, const FieldMap& sample) {
  std::set<JetVar> vars;
  collect_jets(e, vars);
  for (const JetVar& v : vars) {
    if (v.multiplicity > 0) {
      if (!sample.contains(v.field)) return false;
      continue;
    }
    if (!sample.contains(v.field) && !fix.params.contains(v.field)) return false;
  }
  return true;
}

std::vector<std::size_t> interior_indices(const Field& like) {
  std::vector<std::size_t> idx;
  if (like.dims() == 1) {
    const Grid1D& g = like.grid1();
    for (int i = 2; i <= g.n - 2; ++i) idx.push_back(i);
  } else {
    const Grid2D& g = like.grid2();
    for (int it = 2; it <= g.t.n - 2; ++it) {
      for (int ix = 2; ix <= g.x.n - 2; ++ix) {
        idx.push_back(static_cast<std::size_t>(it) * g.x.node_count() + ix);
      }
    }
  }
  return idx;
}

}  // namespace

ExprPtr el_in_jet_form(const SystemFixture& fixture, const ExprPtr& lagrangian) {
  std::set<JetVar> vars;
  collect_jets(lagrangian, vars);
  ExprPtr acc = Expr::constant(0.0);
  for (const JetVar& v : vars) {
    if (v.field != fixture.primary_field) continue;
    ExprPtr partial = partial_jet(lagrangian, v);
    ExprPtr term =
        v.multiplicity == 0 ? partial : alg_derivative(partial, v.axis, v.multiplicity);
    if (v.multiplicity % 2 == 1) term = Expr::negate(term);
    acc = Expr::binary('+', acc, term);
  }
  return substitute_potential(acc, fixture);
}

SystemFixture builtin_system(const std::string& name) {
  SystemFixture fix;
  fix.name = name;
  if (name == "oscillator") {
    fix.trial_lagrangian = parse("0.5*D[theta,t,1]^2 - 0.5*mgl*theta^2");
    fix.target_pde = {{-1.0, Axis::t, 2, parse("theta")}, {-1.0, Axis::none, 0, parse("mgl*theta")}};
    fix.params = {{"mgl", 1.0}};
    fix.primary_field = "theta";
    fix.el_field = "theta";
    return fix;
  }
  if (name == "pendulum") {
    fix.trial_lagrangian = parse("D[y,t,1]^2/2 + cos(y)");
    fix.target_pde = {{-1.0, Axis::t, 2, parse("y")}, {-1.0, Axis::none, 0, parse("sin(y)")}};
    fix.primary_field = "y";
    fix.el_field = "y";
    return fix;
  }
  if (name == "burgers") {
    fix.trial_lagrangian = parse("u*D[phi,t,1] - (u^2/2 + F)*D[phi,x,1] + G");
    fix.placeholder = "G";
    fix.constraints = {{JetVar{"phi", Axis::x, 1}, parse("u")},
                       {JetVar{"phi", Axis::t, 1}, parse("u^2/2 + F")}};
    fix.expected_completion = parse("u^3/6 - F*u");
    fix.target_pde = {{-1.0, Axis::t, 1, parse("u")}, {1.0, Axis::x, 1, parse("u^2/2 + F")}};
    fix.primary_field = "u";
    fix.potential_field = "phi";
    fix.el_field = "phi";
    return fix;
  }
  if (name == "kdv") {
    fix.trial_lagrangian = parse("u*D[phi,t,1] - (3*u^2 + D[u,x,2])*D[phi,x,1] + F");
    fix.placeholder = "F";
    fix.constraints = {{JetVar{"phi", Axis::x, 1}, parse("u")},
                       {JetVar{"phi", Axis::t, 1}, parse("3*u^2 + D[u,x,2]")}};
    fix.expected_completion = parse("u^3");
    fix.target_pde = {{-1.0, Axis::t, 1, parse("u")},
                      {1.0, Axis::x, 1, parse("3*u^2 + D[u,x,2]")}};
    fix.primary_field = "u";
    fix.potential_field = "phi";
    fix.el_field = "phi";
    return fix;
  }
  throw std::invalid_argument("unknown system '" + name + "'");
}

std::vector<std::string> builtin_system_names() {
  return {"oscillator", "pendulum", "burgers", "kdv"};
}

Field potential_from_field(const Field& u, FractionalOrder beta) {
  if (u.dims() == 1) {
    const FracOperator op = build_operator(beta, OpKind::integral, u.grid1());
    Field phi = apply_operator(op, u);
    phi.at(0) = 0.0;
    return phi;
  }
  const FracOperator op = build_operator(beta, OpKind::integral, u.grid2().x);
  Field phi = apply_along_axis(op, u, Axis::x);
  for (int it = 0; it <= u.grid2().t.n; ++it) phi.at(it, 0) = 0.0;
  return phi;
}

std::vector<ConstraintResidual> constraint_residual(const SystemFixture& fixture,
                                                    const FieldMap& fields, FractionalOrder alpha,
                                                    FractionalOrder beta) {
  if (fixture.constraints.empty()) {
    throw std::invalid_argument("system '" + fixture.name + "' has no constraints");
  }
  const Field zeros = common_grid_zeros(fields);
  std::vector<ConstraintResidual> out;
  for (const Constraint& c : fixture.constraints) {
    auto it = fields.find(c.lhs.field);
    if (it == fields.end()) {
      throw std::invalid_argument("constraint field '" + c.lhs.field + "' missing");
    }
    Field lhs = jet_derivative(it->second, c.lhs.axis, c.lhs.multiplicity,
                               axis_order(c.lhs.axis, alpha, beta));
    const JetFieldSet jets = compute_jet_fields(c.rhs, fields, alpha, beta);
    const Field rhs = eval_over_grid(c.rhs, jets, fixture.params, zeros);
    Field residual = lhs;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual.values()[i] -= rhs.values()[i];
    }
    out.push_back(
        {format(Expr::jet_var(c.lhs)), residual, interior_norms(residual)});
  }
  return out;
}

MonomialAnsatz default_ansatz() {
  return MonomialAnsatz{{parse("u"), parse("u^2"), parse("u^3"), parse("F*u"),
                         parse("u*D[u,x,2]")}};
}

IdentifiedCompletion identify_completion(const SystemFixture& fixture,
                                         const MonomialAnsatz& ansatz,
                                         const std::vector<FieldMap>& samples,
                                         FractionalOrder alpha, FractionalOrder beta) {
  if (!fixture.placeholder) {
    throw std::invalid_argument("system '" + fixture.name + "' has no completion placeholder");
  }
  if (ansatz.basis.empty()) {
    throw std::invalid_argument("ansatz basis is empty");
  }
  if (samples.size() < 3) {
    throw std::invalid_argument("identification needs at least 3 sample field sets");
  }
  for (const ExprPtr& monomial : ansatz.basis) {
    std::set<JetVar> vars;
    collect_jets(monomial, vars);
    for (const JetVar& v : vars) {
      if (v.field == fixture.potential_field) {
        throw std::invalid_argument("ansatz monomial '" + format(monomial) +
                                    "' references the potential");
      }
    }
  }

  const ExprPtr trial_without_completion =
      substitute_symbol(fixture.trial_lagrangian, *fixture.placeholder, Expr::constant(0.0));
  const ExprPtr base_residual = el_in_jet_form(fixture, trial_without_completion);

  // Monomials whose symbols have no binding in the samples (for example an
  // exogenous field absent from this system) cannot enter the least-squares
  // problem; their coefficients are reported as exact zeros.
  std::vector<std::size_t> active;
  std::vector<ExprPtr> images(ansatz.basis.size());
  for (std::size_t j = 0; j < ansatz.basis.size(); ++j) {
    images[j] = el_in_jet_form(fixture, ansatz.basis[j]);
    if (symbols_bindable(images[j], fixture, samples.front())) {
      active.push_back(j);
    }
  }
  if (active.empty()) {
    throw RankDeficientError("no ansatz monomial is bindable on the samples");
  }

  std::vector<double> a;
  std::vector<double> rhs;
  for (const FieldMap& sample : samples) {
    const Field zeros = common_grid_zeros(sample);
    ExprPtr combined = base_residual;
    for (std::size_t j : active) combined = Expr::binary('+', combined, images[j]);
    const JetFieldSet jets = compute_jet_fields(combined, sample, alpha, beta);
    const Field base = eval_over_grid(base_residual, jets, fixture.params, zeros);
    std::vector<Field> cols;
    cols.reserve(active.size());
    for (std::size_t j : active) {
      cols.push_back(eval_over_grid(images[j], jets, fixture.params, zeros));
    }
    for (std::size_t idx : interior_indices(zeros)) {
      for (const Field& col : cols) a.push_back(col.values()[idx]);
      rhs.push_back(-base.values()[idx]);
    }
  }

  const std::size_t rows = rhs.size();
  const std::vector<double> solved =
      lsq_solve(std::move(a), rows, active.size(), std::move(rhs));

  IdentifiedCompletion out;
  out.coefficients.assign(ansatz.basis.size(), 0.0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    out.coefficients[active[k]] = std::abs(solved[k]) < 1e-8 ? 0.0 : solved[k];
  }
  ExprPtr completion = Expr::constant(0.0);
  for (std::size_t j = 0; j < ansatz.basis.size(); ++j) {
    out.names.push_back(format(ansatz.basis[j]));
    if (out.coefficients[j] != 0.0) {
      completion = Expr::binary(
          '+', completion, Expr::binary('*', Expr::constant(out.coefficients[j]), ansatz.basis[j]));
    }
  }
  out.completion = completion;
  return out;
}

std::vector<FieldMap> make_consistent_samples(const SystemFixture& fixture, const Grid2D& grid,
                                              FractionalOrder alpha, FractionalOrder beta,
                                              int count, std::uint64_t seed) {
  if (fixture.potential_field.empty()) {
    throw std::invalid_argument("system '" + fixture.name + "' has no potential field");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<FieldMap> out;
  for (int s = 0; s < count; ++s) {
    // smooth random polynomial potential of total degree <= 3
    std::vector<double> c;
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; p + q <= 3; ++q) c.push_back(coeff(rng));
    }
    auto phi_fn = [c](double t, double x) {
      double acc = 0.0;
      std::size_t k = 0;
      for (int p = 0; p <= 3; ++p) {
        for (int q = 0; p + q <= 3; ++q, ++k) {
          acc += c[k] * std::pow(t, p) * std::pow(x, q);
        }
      }
      return acc;
    };
    const Field phi = sample_field(std::function<double(double, double)>(phi_fn), grid);
    const Field u = jet_derivative(phi, Axis::x, 1, beta);
    FieldMap sample;
    sample.emplace("phi", phi);
    sample.emplace("u", u);
    if (fixture.name == "burgers") {
      // F from the t constraint: F = D_t^a phi - u^2/2
      Field F = jet_derivative(phi, Axis::t, 1, alpha);
      for (std::size_t i = 0; i < F.size(); ++i) {
        F.values()[i] -= 0.5 * u.values()[i] * u.values()[i];
      }
      sample.emplace("F", F);
    }
    out.push_back(std::move(sample));
  }
  return out;
}

Field target_pde_residual(const SystemFixture& fixture, const FieldMap& fields,
                          FractionalOrder alpha, FractionalOrder beta) {
  const Field zeros = common_grid_zeros(fields);
  Field residual = zeros;
  for (const PdeTerm& term : fixture.target_pde) {
    const JetFieldSet jets = compute_jet_fields(term.inner, fields, alpha, beta);
    Field value = eval_over_grid(term.inner, jets, fixture.params, zeros);
    if (term.mult > 0) {
      value = jet_derivative(value, term.axis, term.mult, axis_order(term.axis, alpha, beta));
    }
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual.values()[i] += term.coeff * value.values()[i];
    }
  }
  return residual;
}

ExprPtr completed_lagrangian(const SystemFixture& fixture, const ExprPtr& completion) {
  if (!fixture.placeholder) {
    return fixture.trial_lagrangian;
  }
  const ExprPtr fill = completion ? completion : fixture.expected_completion;
  if (!fill) {
    throw std::invalid_argument("placeholder '" + *fixture.placeholder + "' unresolved");
  }
  return substitute_symbol(fixture.trial_lagrangian, *fixture.placeholder, fill);
}

RecoveryReport verify_el_recovery(const SystemFixture& fixture, const FieldMap& fields,
                                  FractionalOrder alpha, FractionalOrder beta) {
  const ExprPtr lagrangian = completed_lagrangian(fixture);
  ELProblem p{lagrangian, fields, fixture.params, alpha, beta};
  const Field r_el = el_residual(p, fixture.el_field);
  const Field r_pde = target_pde_residual(fixture, fields, alpha, beta);
  Field diff = r_el;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff.values()[i] -= r_pde.values()[i];
  }
  const ProbeNorms agreement = interior_norms(diff);
  RecoveryReport report;
  report.agreement_l2 = agreement.l2;
  report.agreement_max = agreement.max;
  report.residual_l2 = interior_norms(r_pde).l2;

  const Field zeros = common_grid_zeros(fields);
  const ExprPtr integrand = fixture.name == "burgers" ? fixture.expected_completion : lagrangian;
  if (zeros.dims() == 1) {
    report.functional_value =
        eval_functional(integrand, fields, fixture.params, make_measure(alpha, zeros.grid1()));
  } else {
    report.functional_value = eval_functional(integrand, fields, fixture.params,
                                              make_measure(alpha, beta, zeros.grid2()));
  }
  return report;
}

}  // namespace fravar
