#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fravar/error.hpp"
#include "fravar/eulagrange.hpp"
#include "fravar/fracops.hpp"
#include "fravar/functional.hpp"
#include "fravar/gamma.hpp"
#include "support/test_support.hpp"

using namespace fravar;
using testsupport::random_field;

namespace {

Grid2D unit_square(int n) { return Grid2D{make_grid(0.0, 1.0, n), make_grid(0.0, 1.0, n)}; }

}  // namespace

TEST_CASE("measure weights are nonnegative and normalized") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> lo(-1.0, 0.5), len(0.4, 2.0), ord(0.1, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = lo(rng), b = a + len(rng);
    const double c = lo(rng), d = c + len(rng);
    const FractionalOrder alpha(ord(rng)), beta(ord(rng));
    const Grid2D g{make_grid(a, b, 24), make_grid(c, d, 18)};
    const FracMeasure2D m = make_measure(alpha, beta, g);
    double sum = 0.0;
    for (double w : m.node_weights) {
      CHECK(w >= 0.0);
      sum += w;
    }
    const double expect = std::pow(b - a, alpha.value()) * std::pow(d - c, beta.value()) /
                          (fravar::gamma(1.0 + alpha.value()) * fravar::gamma(1.0 + beta.value()));
    CHECK(std::abs(sum - expect) <= 1e-6 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("unit density on the unit square") {
  const Grid2D g = unit_square(32);
  FieldMap fields;
  fields.emplace("y", Field::zeros(g));

  const FracMeasure2D classical = make_measure(FractionalOrder(1.0), FractionalOrder(1.0), g);
  CHECK(std::abs(eval_functional(parse("1"), fields, {}, classical) - 1.0) <= 1e-10);

  const FracMeasure2D half = make_measure(FractionalOrder(0.5), FractionalOrder(0.5), g);
  CHECK(std::abs(eval_functional(parse("1"), fields, {}, half) - 4.0 / M_PI) <= 1e-6);
}

TEST_CASE("zero field gives zero quadratic action") {
  const Grid2D g = unit_square(16);
  FieldMap fields;
  fields.emplace("y", Field::zeros(g));
  const FracMeasure2D m = make_measure(FractionalOrder(0.7), FractionalOrder(0.6), g);
  CHECK(eval_functional(parse("y^2"), fields, {}, m) == 0.0);
}

TEST_CASE("functional is linear in the density") {
  std::mt19937_64 rng(7);
  const Grid2D g = unit_square(12);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng, 0.2, 1.0));
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(0.8), g);
  const ExprPtr l1 = parse("y^2 + sin(y)");
  const ExprPtr l2 = parse("D[y,t,1]^2 + y*x");
  const ExprPtr combo = parse("y^2 + sin(y) + 2.5*(D[y,t,1]^2 + y*x)");
  const double j = eval_functional(combo, fields, {}, m);
  const double expect = eval_functional(l1, fields, {}, m) + 2.5 * eval_functional(l2, fields, {}, m);
  CHECK(std::abs(j - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
}

TEST_CASE("additivity over subrectangles in the classical limit") {
  // The end-anchored (ds)^mu measure is not additive under domain splitting
  // for mu < 1 ((1/2)^mu + (1/2)^mu != 1); at mu = 1 it is the classical
  // integral and splitting must agree.
  auto density = [](double t, double x) { return 0.3 + t * t + std::sin(2.0 * x); };
  auto value_on = [&](double t0, double t1, int n) {
    const Grid2D g{make_grid(t0, t1, n), make_grid(0.0, 1.0, 64)};
    FieldMap fields;
    fields.emplace("y", sample_field(density, g));
    const FracMeasure2D m = make_measure(FractionalOrder(1.0), FractionalOrder(1.0), g);
    return eval_functional(parse("y"), fields, {}, m);
  };
  const double whole = value_on(0.0, 1.0, 128);
  const double split = value_on(0.0, 0.5, 64) + value_on(0.5, 1.0, 64);
  CHECK(std::abs(whole - split) <= 1e-8);
}

TEST_CASE("first variation is exact for quadratic functionals") {
  std::mt19937_64 rng(404);
  const Grid2D g = unit_square(20);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng));
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(1.0), g);
  const ExprPtr L = parse("y^2/2");

  const Field eta = clamp_boundary(random_field(g, rng));
  const double fd = first_variation(L, fields, {}, m, Perturbation{eta, 1e-4}, "y");

  ELProblem p{L, fields, {}, m.alpha, m.beta};
  const Field grad = discrete_gradient(p, "y");
  double pairing = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) pairing += grad.values()[i] * eta.values()[i];
  CHECK(std::abs(fd - pairing) <= 1e-10 * std::max(1.0, std::abs(pairing)));
}

TEST_CASE("first variation matches the adjoint gradient on the pendulum density") {
  std::mt19937_64 rng(808);
  const Grid1D g = make_grid(0.0, 1.0, 96);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng));
  const FracMeasure1D m = make_measure(FractionalOrder(0.6), g);
  const ExprPtr L = parse("D[y,t,1]^2/2 + cos(y)");

  const Field eta = clamp_boundary(random_field(g, rng));
  const double fd = first_variation(L, fields, {}, m, Perturbation{eta, 0.0}, "y");

  ELProblem p{L, fields, {}, m.order, FractionalOrder(1.0)};
  const Field grad = discrete_gradient(p, "y");
  double pairing = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) pairing += grad.values()[i] * eta.values()[i];
  CHECK(std::abs(fd - pairing) <= 1e-6 * std::max(1.0, std::abs(pairing)));
}

TEST_CASE("first variation vanishes for a zero perturbation") {
  const Grid2D g = unit_square(10);
  FieldMap fields;
  fields.emplace("y", sample_field([](double t, double x) { return t + x; }, g));
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(0.5), g);
  const double fd =
      first_variation(parse("y^2"), fields, {}, m, Perturbation{Field::zeros(g), 0.0}, "y");
  CHECK(fd == 0.0);
}

TEST_CASE("first variation rejects boundary-supported perturbations") {
  const Grid2D g = unit_square(10);
  FieldMap fields;
  fields.emplace("y", Field::zeros(g));
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(0.5), g);
  Field eta = Field::zeros(g);
  eta.at(0, 3) = 1.0;
  CHECK_THROWS_AS(first_variation(parse("y^2"), fields, {}, m, Perturbation{eta, 0.0}, "y"),
                  std::invalid_argument);
}

TEST_CASE("single-node perturbation picks out one gradient entry") {
  std::mt19937_64 rng(11);
  const Grid2D g = unit_square(14);
  FieldMap fields;
  fields.emplace("y", random_field(g, rng, 0.3, 1.0));
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(0.7), g);
  const ExprPtr L = parse("y^3/3 + D[y,x,1]^2/2");
  Field eta = Field::zeros(g);
  eta.at(6, 7) = 0.8;
  const double fd = first_variation(L, fields, {}, m, Perturbation{eta, 0.0}, "y");
  ELProblem p{L, fields, {}, m.alpha, m.beta};
  const Field grad = discrete_gradient(p, "y");
  CHECK(std::abs(fd - 0.8 * grad.at(6, 7)) <= 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("green probe reduces to the classical identity at first order") {
  auto pfn = [](double t, double x) { return std::sin(t) * x * x + 0.2 * t; };
  auto qfn = [](double t, double x) { return t * t * std::cos(x) - 0.1 * x; };
  double gaps[3];
  int idx = 0;
  for (int n : {16, 32, 64}) {
    const Grid2D g = unit_square(n);
    const FracMeasure2D m = make_measure(FractionalOrder(1.0), FractionalOrder(1.0), g);
    const GreenReport r = green_probe(sample_field(pfn, g), sample_field(qfn, g), m);
    gaps[idx++] = std::abs(r.gap);
  }
  CHECK(gaps[0] / gaps[1] >= 1.5);
  CHECK(gaps[1] / gaps[2] >= 1.5);
  CHECK(gaps[2] <= 0.05);
}

TEST_CASE("green probe with constant fields") {
  const Grid2D g = unit_square(12);
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(0.5), g);
  const Field c = sample_field([](double, double) { return 2.5; }, g);
  const GreenReport r = green_probe(c, c, m);
  CHECK(r.lhs == 0.0);  // shifted operators annihilate constants
  CHECK(std::isfinite(r.rhs));
  CHECK(std::isfinite(r.gap));
}

TEST_CASE("green probe records a fractional-order gap without judging it") {
  const Grid2D g = unit_square(64);
  const FracMeasure2D m = make_measure(FractionalOrder(0.5), FractionalOrder(0.5), g);
  const Field p = sample_field([](double t, double x) { return t * x * x; }, g);
  const Field q = sample_field([](double t, double x) { return t * t + x; }, g);
  const GreenReport r = green_probe(p, q, m);
  CHECK(std::isfinite(r.lhs));
  CHECK(std::isfinite(r.rhs));
  CHECK(r.gap == r.lhs - r.rhs);
}

TEST_CASE("leibniz probe: constant factor leaves only linearity residue") {
  const Grid1D g = make_grid(0.0, 1.0, 64);
  const FracOperator op = build_operator(FractionalOrder(0.5), OpKind::derivative, g);
  const Field c = sample_field([](double) { return 1.7; }, g);
  const Field f = sample_field([](double s) { return std::sin(2.0 * s) + 0.3; }, g);
  const LeibnizReport r = leibniz_probe(c, f, op);
  CHECK(r.norms.max <= 1e-10);
}

TEST_CASE("leibniz probe vanishes at first order in the classical limit") {
  double l2[2];
  int idx = 0;
  for (int n : {128, 256}) {
    const Grid1D g = make_grid(0.0, 1.0, n);
    const FracOperator op = build_operator(FractionalOrder(1.0), OpKind::derivative, g);
    const Field f = sample_field([](double s) { return std::sin(3.0 * s); }, g);
    const Field h = sample_field([](double s) { return std::exp(0.5 * s); }, g);
    l2[idx++] = leibniz_probe(f, h, op).norms.l2;
  }
  CHECK(l2[0] / l2[1] >= 1.5);
  CHECK(l2[1] <= 0.05);
}

TEST_CASE("leibniz probe against the closed form for f = g = x") {
  const Grid1D g = make_grid(0.0, 1.0, 1024);
  const FracOperator op = build_operator(FractionalOrder(0.5), OpKind::derivative, g);
  const Field f = sample_field([](double s) { return s; }, g);
  const LeibnizReport r = leibniz_probe(f, f, op);
  // closed form: D(x^2) - 2 x D(x) = (G(3)/G(2.5) - 2 G(2)/G(1.5)) x^1.5
  const double coeff = fravar::gamma(3.0) / fravar::gamma(2.5) -
                       2.0 * fravar::gamma(2.0) / fravar::gamma(1.5);
  for (int i = 2; i <= g.n - 2; ++i) {
    const double expect = coeff * std::pow(g.node(i), 1.5);
    CHECK(std::abs(r.residual.at(i) - expect) <= 5e-3);
  }
  CHECK(r.norms.l2 > 0.01);  // genuinely nonzero at fractional order
}

TEST_CASE("chain rule probe: constants and the classical limit") {
  const Grid1D g = make_grid(0.0, 1.0, 128);
  const FracOperator half = build_operator(FractionalOrder(0.5), OpKind::derivative, g);
  const Field c = sample_field([](double) { return 0.9; }, g);
  CHECK(chainrule_probe(c, half, OuterFunction::square_half).norms.max <= 1e-10);
  CHECK(chainrule_probe(c, half, OuterFunction::exp).norms.max <= 1e-10);

  double l2[2];
  int idx = 0;
  for (int n : {128, 256}) {
    const Grid1D gn = make_grid(0.0, 1.0, n);
    const FracOperator op = build_operator(FractionalOrder(1.0), OpKind::derivative, gn);
    const Field u = sample_field([](double s) { return std::cos(2.0 * s); }, gn);
    l2[idx++] = chainrule_probe(u, op, OuterFunction::square_half).norms.l2;
  }
  CHECK(l2[0] / l2[1] >= 1.5);
}

TEST_CASE("chain rule probe against the closed form for u = x") {
  const Grid1D g = make_grid(0.0, 1.0, 1024);
  const FracOperator op = build_operator(FractionalOrder(0.5), OpKind::derivative, g);
  const Field u = sample_field([](double s) { return s; }, g);
  const ChainReport r = chainrule_probe(u, op, OuterFunction::square_half);
  const double coeff = 0.5 * fravar::gamma(3.0) / fravar::gamma(2.5) -
                       fravar::gamma(2.0) / fravar::gamma(1.5);
  for (int i = 2; i <= g.n - 2; ++i) {
    const double expect = coeff * std::pow(g.node(i), 1.5);
    CHECK(std::abs(r.residual.at(i) - expect) <= 5e-3);
  }
}
