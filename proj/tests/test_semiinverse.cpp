#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fravar/error.hpp"
#include "fravar/fracops.hpp"
#include "fravar/functional.hpp"
#include "fravar/semiinverse.hpp"
#include "support/test_support.hpp"

using namespace fravar;
using testsupport::random_field;

namespace {

Grid2D small_grid(int n = 16) { return Grid2D{make_grid(0.0, 1.0, n), make_grid(0.0, 1.0, n)}; }

FieldMap smooth_fields_2d(const std::vector<std::string>& names, const Grid2D& g,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FieldMap out;
  for (const std::string& name : names) {
    out.emplace(name, sample_field(testsupport::random_smooth_fn2(rng), g));
  }
  return out;
}

}  // namespace

TEST_CASE("builtin fixtures carry the worked systems") {
  const SystemFixture burgers = builtin_system("burgers");
  REQUIRE(burgers.constraints.size() == 2);
  CHECK(burgers.constraints[0].lhs == JetVar{"phi", Axis::x, 1});
  CHECK(structurally_equal(burgers.constraints[0].rhs, parse("u")));
  CHECK(burgers.constraints[1].lhs == JetVar{"phi", Axis::t, 1});
  CHECK(structurally_equal(burgers.constraints[1].rhs, parse("u^2/2 + F")));
  CHECK(structurally_equal(burgers.expected_completion, parse("u^3/6 - F*u")));
  CHECK(burgers.placeholder == "G");

  const SystemFixture kdv = builtin_system("kdv");
  REQUIRE(kdv.constraints.size() == 2);
  CHECK(kdv.constraints[0].lhs == JetVar{"phi", Axis::x, 1});
  CHECK(structurally_equal(kdv.constraints[0].rhs, parse("u")));
  CHECK(kdv.constraints[1].lhs == JetVar{"phi", Axis::t, 1});
  CHECK(structurally_equal(kdv.constraints[1].rhs, parse("3*u^2 + D[u,x,2]")));
  CHECK(structurally_equal(kdv.expected_completion, parse("u^3")));

  const SystemFixture pendulum = builtin_system("pendulum");
  CHECK(structurally_equal(pendulum.trial_lagrangian, parse("D[y,t,1]^2/2 + cos(y)")));
  CHECK(!pendulum.placeholder.has_value());

  const SystemFixture oscillator = builtin_system("oscillator");
  CHECK(oscillator.params.at("mgl") == 1.0);

  CHECK_THROWS_AS(builtin_system("heat"), std::invalid_argument);
}

TEST_CASE("jet-form EL of the burgers trial after substitution") {
  const SystemFixture fix = builtin_system("burgers");
  const ExprPtr trial0 = substitute_symbol(fix.trial_lagrangian, "G", Expr::constant(0.0));
  const ExprPtr r0 = el_in_jet_form(fix, trial0);
  // (u^2/2 + F) - u*u evaluated pointwise
  Bindings b;
  b.set("u", 0.7);
  b.set("F", 0.3);
  CHECK(evaluate(r0, b) == doctest::Approx(0.3 - 0.5 * 0.49).epsilon(1e-14));
}

TEST_CASE("jet-form EL of the kdv trial cancels the dispersive jets") {
  const SystemFixture fix = builtin_system("kdv");
  const ExprPtr trial0 = substitute_symbol(fix.trial_lagrangian, "F", Expr::constant(0.0));
  const ExprPtr r0 = el_in_jet_form(fix, trial0);
  Bindings b;
  b.set("u", 0.6);
  b.set(JetVar{"u", Axis::x, 2}, 1.9);  // must cancel between the two substitutions
  CHECK(evaluate(r0, b) == doctest::Approx(-3.0 * 0.36).epsilon(1e-12));
}

TEST_CASE("potential_from_field") {
  // classical antiderivative at beta = 1
  const Grid1D g = make_grid(0.0, 1.0, 512);
  const Field u = sample_field([](double s) { return std::cos(2.0 * s); }, g);
  const Field phi = potential_from_field(u, FractionalOrder(1.0));
  CHECK(phi.at(0) == 0.0);
  for (int i = 8; i <= g.n; i += 64) {
    CHECK(std::abs(phi.at(i) - 0.5 * std::sin(2.0 * g.node(i))) <= 5e-3);
  }

  // oracle round trip: u = D^0.5 x sampled in closed form, so phi ~ x
  const Grid1D gl = make_grid(0.0, 1.0, 1024);
  const Field du = sample_field(
      [](double s) {
        return power_law_oracle(1.0, FractionalOrder(0.5), s, PowerKind::derivative);
      },
      gl);
  const Field back = potential_from_field(du, FractionalOrder(0.5));
  for (int i = 16; i <= gl.n; i += 64) {
    CHECK(std::abs(back.at(i) - gl.node(i)) <= 5e-3);
  }

  // zero in, zero out
  const Field zero = potential_from_field(Field::zeros(gl), FractionalOrder(0.5));
  for (double v : zero.values()) CHECK(v == 0.0);
}

TEST_CASE("constructed samples satisfy the constraints to rounding") {
  const SystemFixture fix = builtin_system("burgers");
  const Grid2D g = small_grid(20);
  const FractionalOrder al(0.6), be(0.4);
  const std::vector<FieldMap> samples = make_consistent_samples(fix, g, al, be, 2, 99);
  for (const FieldMap& sample : samples) {
    const std::vector<ConstraintResidual> res = constraint_residual(fix, sample, al, be);
    REQUIRE(res.size() == 2);
    for (const ConstraintResidual& cr : res) {
      CHECK(cr.norms.max <= 1e-12);
    }
  }
}

TEST_CASE("classical burgers potential at beta = 1 has first-order residuals") {
  const SystemFixture fix = builtin_system("burgers");
  // phi(t, x) = sin(x) * exp(-t): u = phi_x, F = phi_t - u^2/2, all analytic
  auto phi_fn = [](double t, double x) { return std::sin(x) * std::exp(-t); };
  auto u_fn = [](double t, double x) { return std::cos(x) * std::exp(-t); };
  auto f_fn = [&](double t, double x) {
    const double u = u_fn(t, x);
    return -std::sin(x) * std::exp(-t) - 0.5 * u * u;
  };
  double l2[2];
  int idx = 0;
  for (int n : {64, 128}) {
    const Grid2D g = small_grid(n);
    FieldMap fields;
    fields.emplace("phi", sample_field(std::function<double(double, double)>(phi_fn), g));
    fields.emplace("u", sample_field(std::function<double(double, double)>(u_fn), g));
    fields.emplace("F", sample_field(std::function<double(double, double)>(f_fn), g));
    const std::vector<ConstraintResidual> res =
        constraint_residual(fix, fields, FractionalOrder(1.0), FractionalOrder(1.0));
    l2[idx++] = std::max(res[0].norms.l2, res[1].norms.l2);
  }
  CHECK(l2[0] / l2[1] >= 1.5);
  CHECK(l2[1] <= 0.05);
}

TEST_CASE("mismatched fields leave a visible constraint residual") {
  const SystemFixture fix = builtin_system("burgers");
  const Grid2D g = small_grid(12);
  std::mt19937_64 rng(1);
  FieldMap fields;
  fields.emplace("phi", random_field(g, rng));
  fields.emplace("u", random_field(g, rng));
  fields.emplace("F", random_field(g, rng));
  const std::vector<ConstraintResidual> res =
      constraint_residual(fix, fields, FractionalOrder(0.5), FractionalOrder(0.5));
  CHECK(res[0].norms.l2 > 0.1);
}

TEST_CASE("burgers completion is identified across order pairs") {
  const SystemFixture fix = builtin_system("burgers");
  const MonomialAnsatz ansatz = default_ansatz();
  for (double a : {0.3, 0.5, 0.8, 1.0}) {
    for (double b : {0.3, 0.5, 0.8, 1.0}) {
      const FractionalOrder al(a), be(b);
      const std::vector<FieldMap> samples =
          make_consistent_samples(fix, small_grid(), al, be, 3, 2024);
      const IdentifiedCompletion got = identify_completion(fix, ansatz, samples, al, be);
      REQUIRE(got.coefficients.size() == 5);
      CHECK(got.names[2] == "u^3");
      CHECK(got.names[3] == "F*u");
      CHECK(std::abs(got.coefficients[0]) <= 1e-8);        // u
      CHECK(std::abs(got.coefficients[1]) <= 1e-8);        // u^2
      CHECK(std::abs(got.coefficients[2] - 1.0 / 6.0) <= 1e-8);
      CHECK(std::abs(got.coefficients[3] + 1.0) <= 1e-8);  // F*u
      CHECK(std::abs(got.coefficients[4]) <= 1e-8);        // u*D[u,x,2]
    }
  }
}

TEST_CASE("kdv completion is identified across order pairs") {
  const SystemFixture fix = builtin_system("kdv");
  const MonomialAnsatz ansatz = default_ansatz();
  for (double a : {0.3, 0.5, 0.8, 1.0}) {
    for (double b : {0.3, 0.5, 0.8, 1.0}) {
      const FractionalOrder al(a), be(b);
      const std::vector<FieldMap> samples =
          make_consistent_samples(fix, small_grid(), al, be, 3, 777);
      const IdentifiedCompletion got = identify_completion(fix, ansatz, samples, al, be);
      CHECK(std::abs(got.coefficients[2] - 1.0) <= 1e-8);  // u^3
      CHECK(got.coefficients[0] == 0.0);
      CHECK(got.coefficients[1] == 0.0);
      CHECK(got.coefficients[3] == 0.0);  // F*u has no binding in this system
      CHECK(std::abs(got.coefficients[4]) <= 1e-8);
    }
  }
}

TEST_CASE("one-monomial ansatz fits with coefficient one") {
  const SystemFixture fix = builtin_system("burgers");
  const MonomialAnsatz ansatz{{fix.expected_completion}};
  const FractionalOrder al(0.5), be(0.5);
  const std::vector<FieldMap> samples = make_consistent_samples(fix, small_grid(), al, be, 3, 5);
  const IdentifiedCompletion got = identify_completion(fix, ansatz, samples, al, be);
  CHECK(std::abs(got.coefficients[0] - 1.0) <= 1e-10);
}

TEST_CASE("identification error paths") {
  const SystemFixture burgers = builtin_system("burgers");
  const FractionalOrder al(0.5), be(0.5);
  const std::vector<FieldMap> samples =
      make_consistent_samples(burgers, small_grid(), al, be, 3, 5);

  // no placeholder to identify
  CHECK_THROWS_AS(
      identify_completion(builtin_system("oscillator"), default_ansatz(), samples, al, be),
      std::invalid_argument);

  // too few samples
  const std::vector<FieldMap> two(samples.begin(), samples.begin() + 2);
  CHECK_THROWS_AS(identify_completion(burgers, default_ansatz(), two, al, be),
                  std::invalid_argument);

  // ansatz referencing the potential
  MonomialAnsatz bad;
  bad.basis = {parse("u*D[phi,x,1]")};
  CHECK_THROWS_AS(identify_completion(burgers, bad, samples, al, be), std::invalid_argument);

  // degenerate samples: u identically zero collapses most columns
  const Grid2D g = small_grid(10);
  std::vector<FieldMap> degenerate(3);
  for (FieldMap& s : degenerate) {
    s.emplace("u", Field::zeros(g));
    s.emplace("phi", Field::zeros(g));
    s.emplace("F", Field::zeros(g));
  }
  CHECK_THROWS_AS(identify_completion(burgers, default_ansatz(), degenerate, al, be),
                  RankDeficientError);
}

TEST_CASE("EL residual of the completed trial is the conservative PDE residual") {
  for (const char* name : {"burgers", "kdv"}) {
    const SystemFixture fix = builtin_system(name);
    const Grid2D g = small_grid(24);
    std::vector<std::string> names = {"u", "phi"};
    if (fix.name == "burgers") names.push_back("F");
    const FieldMap fields = smooth_fields_2d(names, g, 88);
    const RecoveryReport report =
        verify_el_recovery(fix, fields, FractionalOrder(0.6), FractionalOrder(0.4));
    CHECK(report.agreement_max <= 1e-8);
    CHECK(std::isfinite(report.functional_value));
    CHECK(report.residual_l2 > 0.0);  // random fields do not solve the equation
  }
}

TEST_CASE("classical kdv residual matches its analytic form at first order") {
  const SystemFixture fix = builtin_system("kdv");
  auto u_fn = [](double t, double x) { return 0.3 * std::sin(x + 0.5 * t); };
  auto classical = [&](double t, double x) {
    const double u = u_fn(t, x);
    const double ut = 0.3 * 0.5 * std::cos(x + 0.5 * t);
    const double ux = 0.3 * std::cos(x + 0.5 * t);
    const double uxxx = -0.3 * std::cos(x + 0.5 * t);
    return -ut + 6.0 * u * ux + uxxx;
  };
  double maxerr[2];
  int idx = 0;
  for (int n : {96, 192}) {
    const Grid2D g = small_grid(n);
    FieldMap fields;
    fields.emplace("u", sample_field(std::function<double(double, double)>(u_fn), g));
    fields.emplace("phi", Field::zeros(g));  // unused by the conservative residual
    const Field r = target_pde_residual(fix, fields, FractionalOrder(1.0), FractionalOrder(1.0));
    double worst = 0.0;
    for (int it = 4; it <= g.t.n - 4; ++it) {
      for (int ix = 4; ix <= g.x.n - 4; ++ix) {
        worst = std::max(worst,
                         std::abs(r.at(it, ix) - classical(g.t.node(it), g.x.node(ix))));
      }
    }
    maxerr[idx++] = worst;
  }
  CHECK(maxerr[0] / maxerr[1] >= 1.5);
  CHECK(maxerr[1] <= 0.1);
}

TEST_CASE("oscillator and pendulum recover their target residuals") {
  std::mt19937_64 rng(314);
  const Grid1D g = make_grid(0.0, 1.0, 128);
  for (const char* name : {"oscillator", "pendulum"}) {
    const SystemFixture fix = builtin_system(name);
    FieldMap fields;
    fields.emplace(fix.primary_field, random_field(g, rng));
    const RecoveryReport report =
        verify_el_recovery(fix, fields, FractionalOrder(0.5), FractionalOrder(1.0));
    CHECK(report.agreement_max <= 1e-8);
  }
}

TEST_CASE("oscillator matches the classical oracle at alpha = 1") {
  const SystemFixture fix = builtin_system("oscillator");
  auto y_fn = [](double t) { return std::sin(2.0 * t) + 0.1 * t; };
  double maxerr[2];
  int idx = 0;
  for (int n : {512, 1024}) {
    const Grid1D g = make_grid(0.0, 1.0, n);
    FieldMap fields;
    fields.emplace("theta", sample_field(y_fn, g));
    ELProblem p{fix.trial_lagrangian, fields, fix.params, FractionalOrder(1.0),
                FractionalOrder(1.0)};
    const Field r = el_residual(p, "theta");
    double worst = 0.0;
    for (int i = 2; i <= g.n - 2; ++i) {
      const double t = g.node(i);
      const double classical = -(-4.0 * std::sin(2.0 * t)) - 1.0 * y_fn(t);
      // residual is -mgl*theta - y''; compare against -y'' - mgl*y
      const double expect = 4.0 * std::sin(2.0 * t) - y_fn(t);
      (void)classical;
      worst = std::max(worst, std::abs(r.at(i) - expect));
    }
    maxerr[idx++] = worst;
  }
  CHECK(maxerr[0] / maxerr[1] >= 1.5);
  CHECK(maxerr[1] <= 0.05);
}

TEST_CASE("nonconservative term differs from the conservative one by the chain residual") {
  const Grid1D g = make_grid(0.0, 1.0, 256);
  const FracOperator op = build_operator(FractionalOrder(0.5), OpKind::derivative, g);
  const Field u = sample_field([](double s) { return 0.4 * std::sin(3.0 * s) + 0.6; }, g);
  Field half_sq = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    half_sq.values()[i] = 0.5 * u.values()[i] * u.values()[i];
  }
  const Field conservative = apply_operator(op, half_sq);
  const Field du = apply_operator(op, u);
  const ChainReport probe = chainrule_probe(u, op, OuterFunction::square_half);
  for (int i = 0; i <= g.n; ++i) {
    const double direct = conservative.at(i) - u.at(i) * du.at(i);
    CHECK(std::abs(direct - probe.residual.at(i)) <= 1e-10);
  }
}

TEST_CASE("completed_lagrangian error path") {
  SystemFixture broken = builtin_system("burgers");
  broken.expected_completion = nullptr;
  CHECK_THROWS_AS(completed_lagrangian(broken), std::invalid_argument);
}
