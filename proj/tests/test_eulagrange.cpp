#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fravar/eulagrange.hpp"
#include "fravar/functional.hpp"
#include "support/test_support.hpp"

using namespace fravar;
using testsupport::random_field;

namespace {

double inner(const Field& a, const Field& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.values()[i] * b.values()[i];
  return acc;
}

// Central-difference check of the gradient along a random interior direction.
double gradient_fd_gap(const ELProblem& p, const std::string& wrt, std::uint64_t seed) {
  const Field grad = discrete_gradient(p, wrt);
  std::mt19937_64 rng(seed);
  Field eta = grad;
  {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& v : eta.values()) v = dist(rng);
  }
  eta = clamp_boundary(eta);
  double mag = 0.0;
  for (double v : p.fields.at(wrt).values()) mag = std::max(mag, std::abs(v));
  const double eps = 1e-6 * std::max(1.0, mag);

  auto j_at = [&](double sign) {
    ELProblem shifted = p;
    Field& f = shifted.fields.at(wrt);
    for (std::size_t i = 0; i < f.size(); ++i) f.values()[i] += sign * eps * eta.values()[i];
    const Field zeros = common_grid_zeros(shifted.fields);
    if (zeros.dims() == 1) {
      return eval_functional(shifted.lagrangian, shifted.fields, shifted.params,
                             make_measure(shifted.alpha, zeros.grid1()));
    }
    return eval_functional(shifted.lagrangian, shifted.fields, shifted.params,
                           make_measure(shifted.alpha, shifted.beta, zeros.grid2()));
  };
  const double fd = (j_at(1.0) - j_at(-1.0)) / (2.0 * eps);
  const double pairing = inner(grad, eta);
  return std::abs(fd - pairing) / std::max(1.0, std::abs(pairing));
}

}  // namespace

TEST_CASE("pendulum residual equals the hand-composed pipeline") {
  const Grid1D g = make_grid(0.0, 1.0, 128);
  std::mt19937_64 rng(5150);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng));
  ELProblem p{parse("D[y,t,1]^2/2 + cos(y)"), fields, {}, FractionalOrder(0.6),
              FractionalOrder(1.0)};
  const Field r = el_residual(p, "y");

  const FracOperator op = build_operator(FractionalOrder(0.6), OpKind::derivative, g);
  const Field d2y = apply_operator(op, apply_operator(op, fields.at("y")));
  for (int i = 0; i <= g.n; ++i) {
    const double expect = -std::sin(fields.at("y").at(i)) - d2y.at(i);
    CHECK(std::abs(r.at(i) - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("classical reduction: second-derivative density on y = t^2") {
  const Grid1D g = make_grid(0.0, 1.0, 1024);
  FieldMap fields;
  fields.emplace("y", sample_field([](double t) { return t * t; }, g));
  ELProblem p{parse("D[y,t,1]^2/2"), fields, {}, FractionalOrder(1.0), FractionalOrder(1.0)};
  const Field r = el_residual(p, "y");
  for (int i = 2; i <= g.n - 2; ++i) {
    CHECK(std::abs(r.at(i) - (-2.0)) <= 5e-2);
  }
}

TEST_CASE("density without derivative jets reduces to the bare partial") {
  const Grid1D g = make_grid(0.0, 1.0, 32);
  std::mt19937_64 rng(17);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng));
  ELProblem p{parse("y^2/2"), fields, {}, FractionalOrder(0.5), FractionalOrder(1.0)};
  const Field r = el_residual(p, "y");
  for (int i = 0; i <= g.n; ++i) CHECK(r.at(i) == fields.at("y").at(i));
}

TEST_CASE("el_residual is linear in the density") {
  const Grid1D g = make_grid(0.0, 1.0, 64);
  std::mt19937_64 rng(23);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng, 0.2, 1.0));
  const FractionalOrder al(0.5);
  ELProblem p1{parse("D[y,t,1]^2/2"), fields, {}, al, FractionalOrder(1.0)};
  ELProblem p2{parse("cos(y)"), fields, {}, al, FractionalOrder(1.0)};
  ELProblem combo{parse("D[y,t,1]^2/2 + 3*cos(y)"), fields, {}, al, FractionalOrder(1.0)};
  const Field r1 = el_residual(p1, "y");
  const Field r2 = el_residual(p2, "y");
  const Field rc = el_residual(combo, "y");
  for (int i = 0; i <= g.n; ++i) {
    CHECK(std::abs(rc.at(i) - (r1.at(i) + 3.0 * r2.at(i))) <=
          1e-12 * std::max(1.0, std::abs(rc.at(i))));
  }
}

TEST_CASE("sign convention: potential enters with a minus sign") {
  // L = D[y,t,1]^2/2 - V(y) with V = y^3 gives residual -V'(y) - D^{2a}y
  const Grid1D g = make_grid(0.0, 1.0, 64);
  FieldMap fields;
  fields.emplace("y", sample_field([](double t) { return 0.3 + 0.2 * t; }, g));
  ELProblem p{parse("D[y,t,1]^2/2 - y^3"), fields, {}, FractionalOrder(0.5),
              FractionalOrder(1.0)};
  const Field r = el_residual(p, "y");
  const FracOperator op = build_operator(FractionalOrder(0.5), OpKind::derivative, g);
  const Field d2y = apply_operator(op, apply_operator(op, fields.at("y")));
  for (int i = 0; i <= g.n; ++i) {
    const double y = fields.at("y").at(i);
    CHECK(r.at(i) == doctest::Approx(-3.0 * y * y - d2y.at(i)).epsilon(1e-12));
  }
}

TEST_CASE("discrete gradient passes the finite-difference check") {
  std::mt19937_64 rng(31415);

  SUBCASE("pendulum density, 1D") {
    const Grid1D g = make_grid(0.0, 1.0, 64);
    FieldMap fields;
    fields.emplace("y", random_field(g, rng));
    ELProblem p{parse("D[y,t,1]^2/2 + cos(y)"), fields, {}, FractionalOrder(0.7),
                FractionalOrder(1.0)};
    CHECK(gradient_fd_gap(p, "y", 99) <= 1e-6);
  }

  SUBCASE("2D density with mixed jets and coordinates") {
    const Grid2D g{make_grid(0.0, 1.0, 20), make_grid(0.0, 1.0, 24)};
    FieldMap fields;
    fields.emplace("y", random_field(g, rng, 0.2, 1.2));
    ELProblem p{parse("D[y,t,1]^2/2 + y*D[y,x,1] + sin(y)*x"), fields, {},
                FractionalOrder(0.5), FractionalOrder(0.8)};
    CHECK(gradient_fd_gap(p, "y", 123) <= 1e-6);
  }

  SUBCASE("higher multiplicity jets") {
    const Grid2D g{make_grid(0.0, 1.0, 16), make_grid(0.0, 1.0, 16)};
    FieldMap fields;
    fields.emplace("u", random_field(g, rng, 0.2, 1.0));
    ELProblem p{parse("u*D[u,x,2] + D[u,t,1]^2/2"), fields, {}, FractionalOrder(0.5),
                FractionalOrder(0.5)};
    CHECK(gradient_fd_gap(p, "u", 77) <= 1e-6);
  }
}

TEST_CASE("quadratic density gradient equals weights times samples") {
  std::mt19937_64 rng(2718);
  const Grid2D g{make_grid(0.0, 1.0, 12), make_grid(0.0, 1.0, 12)};
  FieldMap fields;
  fields.emplace("y", random_field(g, rng));
  ELProblem p{parse("y^2/2"), fields, {}, FractionalOrder(1.0), FractionalOrder(1.0)};
  const Field grad = discrete_gradient(p, "y");
  const FracMeasure2D m = make_measure(FractionalOrder(1.0), FractionalOrder(1.0), g);
  for (int it = 1; it < g.t.n; ++it) {
    for (int ix = 1; ix < g.x.n; ++ix) {
      const std::size_t k = static_cast<std::size_t>(it) * g.x.node_count() + ix;
      CHECK(grad.at(it, ix) ==
            doctest::Approx(m.node_weights[k] * fields.at("y").at(it, ix)).epsilon(1e-13));
    }
  }
  // boundary entries are forced to zero
  CHECK(grad.at(0, 3) == 0.0);
  CHECK(grad.at(g.t.n, 5) == 0.0);
}

TEST_CASE("zero field with an odd density has zero gradient") {
  const Grid1D g = make_grid(0.0, 1.0, 24);
  FieldMap fields;
  fields.emplace("y", Field::zeros(g));
  ELProblem p{parse("y^3/3 + y*D[y,t,1]"), fields, {}, FractionalOrder(0.5),
              FractionalOrder(1.0)};
  const Field grad = discrete_gradient(p, "y");
  for (double v : grad.values()) CHECK(v == 0.0);
}

TEST_CASE("discrepancy probe is null for derivative-free densities") {
  std::mt19937_64 rng(46);
  const Grid2D g{make_grid(0.0, 1.0, 16), make_grid(0.0, 1.0, 16)};
  FieldMap fields;
  fields.emplace("y", random_field(g, rng, 0.2, 1.0));
  ELProblem p{parse("y^2/2"), fields, {}, FractionalOrder(0.5), FractionalOrder(0.5)};
  const DiscrepancyRow row = el_discrepancy_probe(p, "y");
  CHECK(row.l2_rel <= 1e-12);
  CHECK(row.max_rel <= 1e-12);
}

TEST_CASE("discrepancy vanishes at first order in the classical limit") {
  DiscrepancyLadderConfig config;
  config.lagrangian = parse("D[y,t,1]^2/2 + D[y,x,1]^2/2 + y^2/2");
  config.field_fns["y"] = [](double t, double x) {
    return std::sin(2.0 * t) * std::cos(x) + 0.3 * t * x;
  };
  config.wrt = "y";
  config.base_grid = Grid2D{make_grid(0.0, 1.0, 2), make_grid(0.0, 1.0, 2)};
  config.resolutions = {32, 64, 128};
  config.orders = {{1.0, 1.0}};
  const std::vector<DiscrepancyRow> rows = el_discrepancy_ladder(config);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].l2_rel / rows[1].l2_rel >= 1.5);
  CHECK(rows[1].l2_rel / rows[2].l2_rel >= 1.5);
  CHECK(rows[2].l2_rel <= 0.05);
}

TEST_CASE("discrepancy at fractional orders is recorded, not judged") {
  DiscrepancyLadderConfig config;
  config.lagrangian = parse("D[y,t,1]^2/2 + cos(y)");
  config.field_fns["y"] = [](double t, double x) { return std::sin(t + x); };
  config.wrt = "y";
  config.base_grid = Grid2D{make_grid(0.0, 1.0, 2), make_grid(0.0, 1.0, 2)};
  config.resolutions = {32, 64};
  config.orders = {{0.5, 0.5}, {0.8, 0.3}};
  const std::vector<DiscrepancyRow> rows = el_discrepancy_ladder(config);
  REQUIRE(rows.size() == 4);
  for (const DiscrepancyRow& row : rows) {
    CHECK(std::isfinite(row.l2_rel));
    CHECK(std::isfinite(row.max_rel));
    CHECK(row.resolution > 0);
  }
}

TEST_CASE("unknown field names are rejected") {
  const Grid1D g = make_grid(0.0, 1.0, 16);
  FieldMap fields;
  fields.emplace("y", Field::zeros(g));
  ELProblem p{parse("y^2"), fields, {}, FractionalOrder(0.5), FractionalOrder(1.0)};
  CHECK_THROWS_AS(el_residual(p, "z"), std::invalid_argument);
  CHECK_THROWS_AS(discrete_gradient(p, "z"), std::invalid_argument);
}
