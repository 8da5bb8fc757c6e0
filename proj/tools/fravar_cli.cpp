// Command-line front end: operators, EL checks, functionals, probes, and the
// semi-inverse workflows, with CSV/JSON file I/O for scripting.
//
// Exit codes: 0 success, 2 usage or validation error, 1 numerical failure
// (non-convergence, rank deficiency, evaluation failure).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fravar/csvio.hpp"
#include "fravar/error.hpp"
#include "fravar/eulagrange.hpp"
#include "fravar/fracops.hpp"
#include "fravar/functional.hpp"
#include "fravar/report.hpp"
#include "fravar/semiinverse.hpp"

using namespace fravar;

namespace {

struct CommonOut {
  std::string out_path;  // empty = stdout
  bool json = false;
};

void emit(const CommonOut& common, const std::string& text) {
  if (common.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(common.out_path);
  if (!os) throw std::invalid_argument("cannot open '" + common.out_path + "' for writing");
  os << text;
}

double env_tolerance() {
  if (const char* v = std::getenv("FRAVAR_TOL")) {
    const double tol = std::stod(v);
    if (tol > 0.0) return tol;
  }
  return 1e-8;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

ExprPtr expr_from_flags(const std::string& text, const std::string& file) {
  if (!text.empty() && !file.empty()) {
    throw std::invalid_argument("give either an inline expression or --expr-file, not both");
  }
  if (!text.empty()) return parse(text);
  if (!file.empty()) return parse(slurp(file));
  throw std::invalid_argument("an expression is required");
}

// Univariate function of one coordinate, with its structural derivative.
ScalarFunction scalar_from_expr(const ExprPtr& e, Axis var, double a, double b) {
  const Axis other = var == Axis::x ? Axis::t : Axis::x;
  if (contains_coordinate(e, other)) {
    throw std::invalid_argument("expression must be univariate in the chosen variable");
  }
  std::set<JetVar> jets;
  collect_jets(e, jets);
  if (!jets.empty()) {
    throw std::invalid_argument("operator expressions take coordinates only, not jets");
  }
  const ExprPtr de = partial_coord(e, var);
  auto value = [e, var](double s) {
    Bindings bind;
    (var == Axis::x ? bind.x : bind.t) = s;
    return evaluate(e, bind);
  };
  auto deriv = [de, var](double s) {
    Bindings bind;
    (var == Axis::x ? bind.x : bind.t) = s;
    return evaluate(de, bind);
  };
  return with_derivative(value, deriv, a, b);
}

std::vector<int> parse_ladder(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stoi(cell));
  if (out.empty()) throw std::invalid_argument("empty resolution ladder");
  return out;
}

struct FieldFlags {
  std::vector<std::string> csv_specs;   // name=path
  std::vector<std::string> expr_specs;  // name=expr
  std::vector<std::string> param_specs; // name=value
  std::vector<double> grid_spec;        // t0,t1,nt[,x0,x1,nx]
};

void add_field_flags(CLI::App* cmd, FieldFlags& flags) {
  cmd->add_option("--field", flags.csv_specs, "field as name=path.csv (repeatable)");
  cmd->add_option("--field-expr", flags.expr_specs,
                  "field sampled from an expression of t,x as name=expr (repeatable)");
  cmd->add_option("--param", flags.param_specs, "named constant as name=value (repeatable)");
  cmd->add_option("--grid", flags.grid_spec,
                  "sampling grid t0,t1,nt[,x0,x1,nx] for --field-expr")
      ->expected(3, 6)->delimiter(',');
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("expected name=value, got '" + spec + "'");
  }
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

FieldMap load_fields(const FieldFlags& flags) {
  FieldMap fields;
  for (const std::string& spec : flags.csv_specs) {
    const auto [name, path] = split_spec(spec);
    fields.emplace(name, read_field_csv(path).field);
  }
  if (!flags.expr_specs.empty()) {
    if (flags.grid_spec.size() == 3) {
      const Grid1D g = make_grid(flags.grid_spec[0], flags.grid_spec[1],
                                 static_cast<int>(flags.grid_spec[2]));
      for (const std::string& spec : flags.expr_specs) {
        const auto [name, text] = split_spec(spec);
        const ExprPtr e = parse(text);
        fields.emplace(name, sample_field(
                                 [e](double t) {
                                   Bindings b;
                                   b.t = t;
                                   return evaluate(e, b);
                                 },
                                 g));
      }
    } else if (flags.grid_spec.size() == 6) {
      const Grid2D g{make_grid(flags.grid_spec[0], flags.grid_spec[1],
                               static_cast<int>(flags.grid_spec[2])),
                     make_grid(flags.grid_spec[3], flags.grid_spec[4],
                               static_cast<int>(flags.grid_spec[5]))};
      for (const std::string& spec : flags.expr_specs) {
        const auto [name, text] = split_spec(spec);
        const ExprPtr e = parse(text);
        fields.emplace(name, sample_field(
                                 [e](double t, double x) {
                                   Bindings b;
                                   b.t = t;
                                   b.x = x;
                                   return evaluate(e, b);
                                 },
                                 g));
      }
    } else {
      throw std::invalid_argument("--field-expr requires --grid t0,t1,nt[,x0,x1,nx]");
    }
  }
  if (fields.empty()) throw std::invalid_argument("at least one field is required");
  return fields;
}

ParamMap load_params(const FieldFlags& flags) {
  ParamMap params;
  for (const std::string& spec : flags.param_specs) {
    const auto [name, value] = split_spec(spec);
    params[name] = std::stod(value);
  }
  return params;
}

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

Json norms_json(const ProbeNorms& n) {
  Json j = Json::object();
  j.set("l2", Json::number(n.l2));
  j.set("max", Json::number(n.max));
  return j;
}

// ---------------------------------------------------------------------------
// subcommand payloads

int run_point_operator(bool derivative, double alpha, const std::string& expr_text,
                       const std::string& expr_file, std::vector<double> interval, double at,
                       const std::string& var, const std::string& form, const CommonOut& common) {
  if (interval.size() != 2) throw std::invalid_argument("--interval takes two values");
  const Axis axis = var == "t" ? Axis::t : Axis::x;
  const ScalarFunction f =
      scalar_from_expr(expr_from_flags(expr_text, expr_file), axis, interval[0], interval[1]);
  QuadratureOptions opt;
  opt.tolerance = env_tolerance();
  double value = 0.0;
  std::string kind;
  if (derivative) {
    value = mrl_derivative(f, FractionalOrder(alpha), at, opt);
    kind = "deriv";
  } else if (form == "dxa") {
    value = frac_integral_dxa(f, FractionalOrder(alpha), at, opt);
    kind = "integral-dxa";
  } else {
    value = rl_integral(f, FractionalOrder(alpha), at, opt);
    kind = "integral";
  }
  if (common.json) {
    Json j = make_report(kind);
    j.set("alpha", Json::number(alpha));
    j.set("at", Json::number(at));
    j.set("value", Json::number(value));
    emit(common, j.dump());
  } else {
    emit(common, human(value) + "\n");
  }
  return 0;
}

int run_field_op(const std::string& kind, double order, const std::string& field_path,
                 const std::string& axis_name, int repeats, const CommonOut& common) {
  const FieldCsv in = read_field_csv(field_path);
  const OpKind op_kind = kind == "integral" ? OpKind::integral : OpKind::derivative;
  const FractionalOrder ord(order);
  Field out = in.field;
  if (in.field.dims() == 1) {
    const FracOperator op = build_operator(ord, op_kind, in.field.grid1());
    const OperatorPipeline p = compose_order(op, repeats);
    out = apply_pipeline(p, in.field);
  } else {
    const Axis axis = axis_name == "t" ? Axis::t : Axis::x;
    const Grid1D& g = axis == Axis::t ? in.field.grid2().t : in.field.grid2().x;
    const FracOperator op = build_operator(ord, op_kind, g);
    (void)compose_order(op, repeats);
    for (int i = 0; i < repeats; ++i) out = apply_along_axis(op, out, axis);
  }
  const double alpha = in.field.dims() == 1 || axis_name == "t" ? order : 1.0;
  const double beta = in.field.dims() == 2 && axis_name == "x" ? order : 1.0;
  std::stringstream ss;
  write_field_csv(ss, out, alpha, beta);
  emit(common, ss.str());
  return 0;
}

int run_elcheck(const std::string& lagrangian_text, const std::string& lagrangian_file,
                const FieldFlags& flags, double alpha, double beta, const std::string& wrt,
                const std::string& format_kind, const CommonOut& common) {
  const ExprPtr L = expr_from_flags(lagrangian_text, lagrangian_file);
  ELProblem p{L, load_fields(flags), load_params(flags), FractionalOrder(alpha),
              FractionalOrder(beta)};
  const Field residual = el_residual(p, wrt);
  if (format_kind == "csv") {
    std::stringstream ss;
    write_field_csv(ss, residual, alpha, beta);
    emit(common, ss.str());
    return 0;
  }
  Json j = make_report("elcheck");
  j.set("lagrangian", Json::string(format(L)));
  j.set("wrt", Json::string(wrt));
  j.set("alpha", Json::number(alpha));
  j.set("beta", Json::number(beta));
  j.set("interior", norms_json(interior_norms(residual)));
  emit(common, j.dump());
  return 0;
}

int run_functional(const std::string& lagrangian_text, const std::string& lagrangian_file,
                   const FieldFlags& flags, double alpha, double beta, const CommonOut& common) {
  const ExprPtr L = expr_from_flags(lagrangian_text, lagrangian_file);
  const FieldMap fields = load_fields(flags);
  const ParamMap params = load_params(flags);
  const Field zeros = common_grid_zeros(fields);
  double value = 0.0;
  if (zeros.dims() == 1) {
    value = eval_functional(L, fields, params, make_measure(FractionalOrder(alpha), zeros.grid1()));
  } else {
    value = eval_functional(
        L, fields, params,
        make_measure(FractionalOrder(alpha), FractionalOrder(beta), zeros.grid2()));
  }
  if (common.json) {
    Json j = make_report("functional");
    j.set("alpha", Json::number(alpha));
    j.set("beta", Json::number(beta));
    j.set("value", Json::number(value));
    emit(common, j.dump());
  } else {
    emit(common, human(value) + "\n");
  }
  return 0;
}

int run_stationarity(const std::string& lagrangian_text, const std::string& lagrangian_file,
                     const FieldFlags& flags, double alpha, double beta, const std::string& wrt,
                     std::uint64_t seed, double eps, const CommonOut& common) {
  const ExprPtr L = expr_from_flags(lagrangian_text, lagrangian_file);
  const FieldMap fields = load_fields(flags);
  const ParamMap params = load_params(flags);
  const Field zeros = common_grid_zeros(fields);
  ELProblem p{L, fields, params, FractionalOrder(alpha), FractionalOrder(beta)};
  const Field grad = discrete_gradient(p, wrt);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field eta = zeros;
  for (double& v : eta.values()) v = dist(rng);
  eta = clamp_boundary(eta);

  double fd = 0.0;
  if (zeros.dims() == 1) {
    fd = first_variation(L, fields, params, make_measure(FractionalOrder(alpha), zeros.grid1()),
                         Perturbation{eta, eps}, wrt);
  } else {
    fd = first_variation(
        L, fields, params,
        make_measure(FractionalOrder(alpha), FractionalOrder(beta), zeros.grid2()),
        Perturbation{eta, eps}, wrt);
  }
  double pairing = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) pairing += grad.values()[i] * eta.values()[i];
  const double gap = std::abs(fd - pairing) / std::max(1.0, std::abs(pairing));

  Json j = make_report("stationarity");
  j.set("wrt", Json::string(wrt));
  j.set("alpha", Json::number(alpha));
  j.set("beta", Json::number(beta));
  j.set("first_variation", Json::number(fd));
  j.set("gradient_pairing", Json::number(pairing));
  j.set("rel_gap", Json::number(gap));
  emit(common, j.dump());
  return 0;
}

int run_probe_green(double alpha, double beta, const std::string& ladder_text,
                    const std::string& p_text, const std::string& q_text,
                    std::vector<double> rect, const CommonOut& common) {
  if (rect.size() != 4) throw std::invalid_argument("--rect takes t0,t1,x0,x1");
  const ExprPtr pe = parse(p_text);
  const ExprPtr qe = parse(q_text);
  auto sample2 = [](const ExprPtr& e, const Grid2D& g) {
    return sample_field(
        [e](double t, double x) {
          Bindings b;
          b.t = t;
          b.x = x;
          return evaluate(e, b);
        },
        g);
  };
  Json rows = Json::array();
  for (int n : parse_ladder(ladder_text)) {
    const Grid2D g{make_grid(rect[0], rect[1], n), make_grid(rect[2], rect[3], n)};
    const FracMeasure2D m = make_measure(FractionalOrder(alpha), FractionalOrder(beta), g);
    const GreenReport r = green_probe(sample2(pe, g), sample2(qe, g), m);
    Json row = Json::object();
    row.set("n", Json::integer(n));
    row.set("lhs", Json::number(r.lhs));
    row.set("rhs", Json::number(r.rhs));
    row.set("gap", Json::number(r.gap));
    rows.push(std::move(row));
  }
  Json j = make_report("probe-green");
  j.set("alpha", Json::number(alpha));
  j.set("beta", Json::number(beta));
  j.set("p", Json::string(format(pe)));
  j.set("q", Json::string(format(qe)));
  j.set("rows", std::move(rows));
  emit(common, j.dump());
  return 0;
}

int run_probe_line(const std::string& which, double order, const std::string& ladder_text,
                   const std::string& f_text, const std::string& g_text,
                   const std::string& outer_name, std::vector<double> interval,
                   const CommonOut& common) {
  if (interval.size() != 2) throw std::invalid_argument("--interval takes two values");
  auto sample1 = [](const ExprPtr& e, const Grid1D& g) {
    return sample_field(
        [e](double s) {
          Bindings b;
          b.t = s;
          b.x = s;
          return evaluate(e, b);
        },
        g);
  };
  const ExprPtr fe = parse(f_text);
  Json rows = Json::array();
  for (int n : parse_ladder(ladder_text)) {
    const Grid1D g = make_grid(interval[0], interval[1], n);
    const FracOperator op = build_operator(FractionalOrder(order), OpKind::derivative, g);
    ProbeNorms norms;
    if (which == "leibniz") {
      const ExprPtr ge = parse(g_text);
      norms = leibniz_probe(sample1(fe, g), sample1(ge, g), op).norms;
    } else {
      OuterFunction outer = OuterFunction::square_half;
      if (outer_name == "sin") outer = OuterFunction::sin;
      else if (outer_name == "cos") outer = OuterFunction::cos;
      else if (outer_name == "exp") outer = OuterFunction::exp;
      else if (outer_name != "square_half") throw std::invalid_argument("unknown outer function");
      norms = chainrule_probe(sample1(fe, g), op, outer).norms;
    }
    Json row = Json::object();
    row.set("n", Json::integer(n));
    row.set("l2", Json::number(norms.l2));
    row.set("max", Json::number(norms.max));
    rows.push(std::move(row));
  }
  Json j = make_report("probe-" + which);
  j.set("order", Json::number(order));
  j.set("rows", std::move(rows));
  emit(common, j.dump());
  return 0;
}

int run_probe_discrepancy(const std::string& lagrangian_text, const std::string& lagrangian_file,
                          const FieldFlags& flags, const std::string& wrt, double alpha,
                          double beta, const std::string& ladder_text,
                          std::vector<double> rect, const CommonOut& common) {
  if (rect.size() != 4) throw std::invalid_argument("--rect takes t0,t1,x0,x1");
  DiscrepancyLadderConfig config;
  config.lagrangian = expr_from_flags(lagrangian_text, lagrangian_file);
  config.params = load_params(flags);
  config.wrt = wrt;
  config.base_grid = Grid2D{make_grid(rect[0], rect[1], 2), make_grid(rect[2], rect[3], 2)};
  config.resolutions = parse_ladder(ladder_text);
  config.orders = {{alpha, beta}};
  for (const std::string& spec : flags.expr_specs) {
    const auto [name, text] = split_spec(spec);
    const ExprPtr e = parse(text);
    config.field_fns[name] = [e](double t, double x) {
      Bindings b;
      b.t = t;
      b.x = x;
      return evaluate(e, b);
    };
  }
  if (config.field_fns.empty()) {
    throw std::invalid_argument("probe el-discrepancy needs --field-expr fields");
  }
  Json rows = Json::array();
  for (const DiscrepancyRow& r : el_discrepancy_ladder(config)) {
    Json row = Json::object();
    row.set("alpha", Json::number(r.alpha));
    row.set("beta", Json::number(r.beta));
    row.set("n", Json::integer(r.resolution));
    row.set("l2_rel", Json::number(r.l2_rel));
    row.set("max_rel", Json::number(r.max_rel));
    rows.push(std::move(row));
  }
  Json j = make_report("probe-el-discrepancy");
  j.set("wrt", Json::string(wrt));
  j.set("rows", std::move(rows));
  emit(common, j.dump());
  return 0;
}

int run_identify(const std::string& system, double alpha, double beta, int nt, int nx,
                 int sample_count, std::uint64_t seed, const CommonOut& common) {
  const SystemFixture fix = builtin_system(system);
  const Grid2D grid{make_grid(0.0, 1.0, nt), make_grid(0.0, 1.0, nx)};
  const FractionalOrder al(alpha), be(beta);
  const std::vector<FieldMap> samples =
      make_consistent_samples(fix, grid, al, be, sample_count, seed);
  const IdentifiedCompletion got = identify_completion(fix, default_ansatz(), samples, al, be);
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < got.names.size(); ++i) {
    coeffs.set(got.names[i], Json::number(got.coefficients[i]));
  }
  Json j = make_report("semiinverse-identify");
  j.set("system", Json::string(system));
  j.set("alpha", Json::number(alpha));
  j.set("beta", Json::number(beta));
  j.set("samples", Json::integer(sample_count));
  j.set("coefficients", std::move(coeffs));
  j.set("completion", Json::string(format(got.completion)));
  emit(common, j.dump());
  return 0;
}

int run_verify(const std::string& system, double alpha, double beta, int nt, int nx,
               std::uint64_t seed, const CommonOut& common) {
  const SystemFixture fix = builtin_system(system);
  const FractionalOrder al(alpha), be(beta);
  FieldMap fields;
  if (!fix.potential_field.empty()) {
    const Grid2D grid{make_grid(0.0, 1.0, nt), make_grid(0.0, 1.0, nx)};
    fields = make_consistent_samples(fix, grid, al, be, 1, seed).front();
  } else {
    const Grid1D grid = make_grid(0.0, 1.0, nt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    const double a0 = dist(rng), a1 = dist(rng);
    fields.emplace(fix.primary_field, sample_field(
                                          [&](double t) {
                                            return a0 * std::sin(2.0 * t) + a1 * t * t + 0.3;
                                          },
                                          grid));
  }
  const RecoveryReport report = verify_el_recovery(fix, fields, al, be);
  Json j = make_report("semiinverse-verify");
  j.set("system", Json::string(system));
  j.set("alpha", Json::number(alpha));
  j.set("beta", Json::number(beta));
  j.set("agreement_l2", Json::number(report.agreement_l2));
  j.set("agreement_max", Json::number(report.agreement_max));
  j.set("pde_residual_l2", Json::number(report.residual_l2));
  j.set("functional_value", Json::number(report.functional_value));
  emit(common, j.dump());
  return 0;
}

int run_fixtures(const std::string& only, const CommonOut& common) {
  Json list = Json::array();
  for (const std::string& name : builtin_system_names()) {
    if (!only.empty() && only != name) continue;
    const SystemFixture fix = builtin_system(name);
    Json j = Json::object();
    j.set("name", Json::string(fix.name));
    j.set("lagrangian", Json::string(format(fix.trial_lagrangian)));
    if (fix.placeholder) j.set("placeholder", Json::string(*fix.placeholder));
    if (!fix.constraints.empty()) {
      Json cons = Json::array();
      for (const Constraint& c : fix.constraints) {
        cons.push(Json::string(format(Expr::jet_var(c.lhs)) + " = " + format(c.rhs)));
      }
      j.set("constraints", std::move(cons));
    }
    if (fix.expected_completion) {
      j.set("expected_completion", Json::string(format(fix.expected_completion)));
    }
    if (!fix.params.empty()) {
      Json params = Json::object();
      for (const auto& [k, v] : fix.params) params.set(k, Json::number(v));
      j.set("parameters", std::move(params));
    }
    j.set("primary_field", Json::string(fix.primary_field));
    if (!fix.potential_field.empty()) j.set("potential_field", Json::string(fix.potential_field));
    list.push(std::move(j));
  }
  Json j = make_report("fixtures");
  j.set("systems", std::move(list));
  emit(common, j.dump());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional variational calculus toolkit"};
  app.require_subcommand(1);

  CommonOut common;
  app.fallthrough();
  app.add_option("--out", common.out_path, "write output to a file instead of stdout");

  // deriv / integral
  struct {
    double alpha = 0.5;
    std::string expr, expr_file;
    std::vector<double> interval{0.0, 1.0};
    double at = 1.0;
    std::string var = "x";
    std::string form = "rl";
  } point;
  CLI::App* deriv = app.add_subcommand("deriv", "modified fractional derivative at a point");
  CLI::App* integral = app.add_subcommand("integral", "fractional integral at a point");
  for (CLI::App* cmd : {deriv, integral}) {
    cmd->add_option("--alpha", point.alpha, "fractional order")->required();
    cmd->add_option("--expr", point.expr, "expression in the chosen variable");
    cmd->add_option("--expr-file", point.expr_file, "expression file");
    cmd->add_option("--interval", point.interval, "domain [a, b]")->expected(2)->delimiter(',');
    cmd->add_option("--at", point.at, "evaluation point")->required();
    cmd->add_option("--var", point.var, "variable, x or t")->check(CLI::IsMember({"x", "t"}));
    cmd->add_flag("--json", common.json, "JSON output");
  }
  integral->add_option("--form", point.form, "rl or dxa")->check(CLI::IsMember({"rl", "dxa"}));

  // field-op
  struct {
    std::string kind = "deriv";
    double order = 0.5;
    std::string field;
    std::string axis = "x";
    int repeats = 1;
  } fop;
  CLI::App* field_op = app.add_subcommand("field-op", "apply a discrete operator to a field");
  field_op->add_option("--kind", fop.kind, "deriv or integral")
      ->check(CLI::IsMember({"deriv", "integral"}));
  field_op->add_option("--order", fop.order, "fractional order")->required();
  field_op->add_option("--field", fop.field, "input field CSV")->required();
  field_op->add_option("--axis", fop.axis, "axis for 2D fields")->check(CLI::IsMember({"t", "x"}));
  field_op->add_option("--repeats", fop.repeats, "composition count (1..4)");

  // elcheck / functional / stationarity
  struct {
    std::string lagrangian, lagrangian_file;
    double alpha = 1.0, beta = 1.0;
    std::string wrt = "y";
    std::string format_kind = "json";
    std::uint64_t seed = 1;
    double eps = 0.0;
  } el;
  FieldFlags el_fields;
  CLI::App* elcheck = app.add_subcommand("elcheck", "Euler-Lagrange residual of a density");
  CLI::App* functional = app.add_subcommand("functional", "evaluate the fractional action");
  CLI::App* stationarity =
      app.add_subcommand("stationarity", "first variation against the adjoint gradient");
  for (CLI::App* cmd : {elcheck, functional, stationarity}) {
    cmd->add_option("--lagrangian", el.lagrangian, "Lagrangian density expression");
    cmd->add_option("--expr-file", el.lagrangian_file, "Lagrangian density file");
    cmd->add_option("--alpha", el.alpha, "t-axis order");
    cmd->add_option("--beta", el.beta, "x-axis order");
    add_field_flags(cmd, el_fields);
  }
  elcheck->add_option("--wrt", el.wrt, "field to vary")->required();
  elcheck->add_option("--format", el.format_kind, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  stationarity->add_option("--wrt", el.wrt, "field to vary")->required();
  stationarity->add_option("--seed", el.seed, "perturbation seed");
  stationarity->add_option("--eps", el.eps, "finite-difference step (0 = auto)");
  functional->add_flag("--json", common.json, "JSON output");

  // probe
  CLI::App* probe = app.add_subcommand("probe", "numerical probes of the calculus identities");
  probe->require_subcommand(1);
  struct {
    double alpha = 0.5, beta = 0.5, order = 0.5;
    std::string ladder = "32,64,128";
    std::string p = "sin(t)*x^2", q = "t^2*cos(x)";
    std::string f = "sin(2*x)", g = "exp(x/2)", u = "x";
    std::string outer = "square_half";
    std::vector<double> rect{0.0, 1.0, 0.0, 1.0};
    std::vector<double> interval{0.0, 1.0};
    std::string wrt = "y";
  } pr;
  CLI::App* green = probe->add_subcommand("green", "rectangle Green identity");
  green->add_option("--alpha", pr.alpha, "t-axis order");
  green->add_option("--beta", pr.beta, "x-axis order");
  green->add_option("--ladder", pr.ladder, "comma-separated resolutions");
  green->add_option("--p-expr", pr.p, "P(t,x)");
  green->add_option("--q-expr", pr.q, "Q(t,x)");
  green->add_option("--rect", pr.rect, "t0,t1,x0,x1")->expected(4)->delimiter(',');

  CLI::App* leibniz = probe->add_subcommand("leibniz", "product-rule residual");
  leibniz->add_option("--alpha", pr.order, "operator order");
  leibniz->add_option("--ladder", pr.ladder, "comma-separated resolutions");
  leibniz->add_option("--f-expr", pr.f, "first factor");
  leibniz->add_option("--g-expr", pr.g, "second factor");
  leibniz->add_option("--interval", pr.interval, "domain [a, b]")->expected(2)->delimiter(',');

  CLI::App* chain = probe->add_subcommand("chain", "chain-rule residual");
  chain->add_option("--beta", pr.order, "operator order");
  chain->add_option("--ladder", pr.ladder, "comma-separated resolutions");
  chain->add_option("--u-expr", pr.u, "inner field");
  chain->add_option("--outer", pr.outer, "square_half, sin, cos, or exp");
  chain->add_option("--interval", pr.interval, "domain [a, b]")->expected(2)->delimiter(',');

  CLI::App* discrepancy =
      probe->add_subcommand("el-discrepancy", "weighted EL residual against the exact gradient");
  FieldFlags probe_fields;
  discrepancy->add_option("--lagrangian", el.lagrangian, "Lagrangian density expression");
  discrepancy->add_option("--expr-file", el.lagrangian_file, "Lagrangian density file");
  discrepancy->add_option("--alpha", pr.alpha, "t-axis order");
  discrepancy->add_option("--beta", pr.beta, "x-axis order");
  discrepancy->add_option("--ladder", pr.ladder, "comma-separated resolutions");
  discrepancy->add_option("--wrt", pr.wrt, "field to vary");
  discrepancy->add_option("--rect", pr.rect, "t0,t1,x0,x1")->expected(4)->delimiter(',');
  discrepancy->add_option("--field-expr", probe_fields.expr_specs,
                          "field sampled from an expression of t,x as name=expr (repeatable)");
  discrepancy->add_option("--param", probe_fields.param_specs, "named constant (repeatable)");

  // semiinverse
  CLI::App* semi = app.add_subcommand("semiinverse", "trial-Lagrangian completion workflows");
  semi->require_subcommand(1);
  struct {
    std::string system;
    double alpha = 0.5, beta = 0.5;
    int nt = 16, nx = 16;
    int samples = 4;
    std::uint64_t seed = 1;
  } si;
  CLI::App* identify = semi->add_subcommand("identify", "identify the unknown completion");
  CLI::App* verify = semi->add_subcommand("verify", "verify the EL equation recovers the PDE");
  for (CLI::App* cmd : {identify, verify}) {
    cmd->add_option("--system", si.system, "oscillator|pendulum|burgers|kdv")->required();
    cmd->add_option("--alpha", si.alpha, "t-axis order");
    cmd->add_option("--beta", si.beta, "x-axis order");
    cmd->add_option("--nt", si.nt, "t-axis intervals");
    cmd->add_option("--nx", si.nx, "x-axis intervals");
    cmd->add_option("--seed", si.seed, "sample seed");
  }
  identify->add_option("--samples", si.samples, "number of sample field sets");

  // fixtures
  std::string fixtures_only;
  CLI::App* fixtures = app.add_subcommand("fixtures", "built-in worked systems");
  fixtures->add_option("--system", fixtures_only, "restrict to one system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (deriv->parsed() || integral->parsed()) {
      return run_point_operator(deriv->parsed(), point.alpha, point.expr, point.expr_file,
                                point.interval, point.at, point.var, point.form, common);
    }
    if (field_op->parsed()) {
      return run_field_op(fop.kind, fop.order, fop.field, fop.axis, fop.repeats, common);
    }
    if (elcheck->parsed()) {
      return run_elcheck(el.lagrangian, el.lagrangian_file, el_fields, el.alpha, el.beta, el.wrt,
                         el.format_kind, common);
    }
    if (functional->parsed()) {
      return run_functional(el.lagrangian, el.lagrangian_file, el_fields, el.alpha, el.beta,
                            common);
    }
    if (stationarity->parsed()) {
      return run_stationarity(el.lagrangian, el.lagrangian_file, el_fields, el.alpha, el.beta,
                              el.wrt, el.seed, el.eps, common);
    }
    if (probe->parsed()) {
      if (green->parsed()) {
        return run_probe_green(pr.alpha, pr.beta, pr.ladder, pr.p, pr.q, pr.rect, common);
      }
      if (leibniz->parsed()) {
        return run_probe_line("leibniz", pr.order, pr.ladder, pr.f, pr.g, "", pr.interval,
                              common);
      }
      if (chain->parsed()) {
        return run_probe_line("chain", pr.order, pr.ladder, pr.u, "", pr.outer, pr.interval,
                              common);
      }
      return run_probe_discrepancy(el.lagrangian, el.lagrangian_file, probe_fields, pr.wrt,
                                   pr.alpha, pr.beta, pr.ladder, pr.rect, common);
    }
    if (semi->parsed()) {
      if (identify->parsed()) {
        return run_identify(si.system, si.alpha, si.beta, si.nt, si.nx, si.samples, si.seed,
                            common);
      }
      return run_verify(si.system, si.alpha, si.beta, si.nt, si.nx, si.seed, common);
    }
    return run_fixtures(fixtures_only, common);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}
