#include "fravar/quadrature.hpp"

#include <cmath>
#include <vector>

#include "fravar/error.hpp"

namespace fravar {

namespace {

struct GaussPoint {
  double node;
  double weight;
};

constexpr GaussPoint kGauss16[16] = {
    {-0.98940093499164994, 0.027152459411754037},
    {-0.9445750230732326, 0.062253523938647706},
    {-0.86563120238783176, 0.095158511682492591},
    {-0.755404408355003, 0.12462897125553403},
    {-0.61787624440264377, 0.14959598881657676},
    {-0.45801677765722737, 0.16915651939500262},
    {-0.28160355077925892, 0.18260341504492361},
    {-0.095012509837637454, 0.18945061045506859},
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
};

// Breakpoints on [0, 1] clustered geometrically toward 0 and 1:
// 0, 2^-m, ..., 1/2, 1 - 1/4, ..., 1 - 2^-m, 1.
std::vector<double> graded_breakpoints(int depth) {
  std::vector<double> bps;
  bps.reserve(2 * depth + 1);
  bps.push_back(0.0);
  for (int k = depth; k >= 1; --k) bps.push_back(std::ldexp(1.0, -k));
  for (int k = 2; k <= depth; ++k) bps.push_back(1.0 - std::ldexp(1.0, -k));
  bps.push_back(1.0);
  return bps;
}

// Single refinement pass: composite 16-point Gauss over the graded mesh of
// `eval`, a function of the unit coordinate.
double composite_pass(const std::function<double(double)>& eval, int depth) {
  const std::vector<double> bps = graded_breakpoints(depth);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const double mid = 0.5 * (bps[i] + bps[i + 1]);
    const double half = 0.5 * (bps[i + 1] - bps[i]);
    double cell = 0.0;
    for (const GaussPoint& p : kGauss16) {
      cell += p.weight * eval(mid + half * p.node);
    }
    total += half * cell;
  }
  return total;
}

double refine_until_converged(const std::function<double(double)>& eval, double scale,
                              const QuadratureOptions& opt, const char* what) {
  double prev = 0.0;
  bool have_prev = false;
  for (int depth = opt.initial_depth; depth <= opt.max_depth; depth *= 2) {
    const double total = scale * composite_pass(eval, depth);
    if (have_prev && std::abs(total - prev) <= opt.tolerance * std::max(1.0, std::abs(total))) {
      return total;
    }
    prev = total;
    have_prev = true;
  }
  throw ConvergenceError(std::string(what) + ": graded quadrature did not converge at depth " +
                         std::to_string(opt.max_depth));
}

}  // namespace

double kernel_integral(const std::function<double(double)>& g, double s_lo, double x, double mu,
                       const QuadratureOptions& opt) {
  const double len = x - s_lo;
  if (len <= 0.0) return 0.0;
  const double u_end = std::pow(len, mu);
  const double inv_mu = 1.0 / mu;
  // u = (x - s)^mu mapped to the unit coordinate; s recovered stably at both
  // ends (plain pow near u = 0, expm1/log near u = u_end).
  auto eval = [&](double ufrac) {
    double s;
    if (ufrac <= 0.0) {
      s = x;
    } else if (ufrac >= 1.0) {
      s = s_lo;
    } else if (ufrac <= 0.5) {
      s = x - len * std::pow(ufrac, inv_mu);
    } else {
      s = s_lo - len * std::expm1(std::log(ufrac) * inv_mu);
    }
    if (s < s_lo) s = s_lo;
    if (s > x) s = x;
    return g(s) * inv_mu;
  };
  return refine_until_converged(eval, u_end, opt, "kernel_integral");
}

double graded_integral(const std::function<double(double)>& g, double a, double b,
                       const QuadratureOptions& opt) {
  const double len = b - a;
  if (len <= 0.0) return 0.0;
  auto eval = [&](double frac) { return g(a + len * frac); };
  return refine_until_converged(eval, len, opt, "graded_integral");
}

}  // namespace fravar
