#include "fravar/fracgrid.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace fravar {

namespace {

void check_grid(const FracOperator& op, const Field& f) {
  if (f.dims() != 1 || !(f.grid1() == op.grid)) {
    throw std::invalid_argument("operator and field grids do not match");
  }
}

// out_i = sum_{k<=i} w_k g_{i-k} with g = f - shift * f_0
void convolve(std::span<const double> w, std::span<const double> f, bool shift,
              std::span<double> out) {
  const std::size_t n = f.size();
  const double f0 = shift ? f[0] : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= i; ++k) {
      acc += w[k] * (f[i - k] - f0);
    }
    out[i] = acc;
  }
}

// Transpose of the matrix behind convolve: out_j = sum_{i>=j} w_{i-j} g_i,
// and for shifted operators out_0 -= sum_i s_i g_i with s_i = sum_{k<=i} w_k.
void convolve_adjoint(std::span<const double> w, std::span<const double> f, bool shift,
                      std::span<double> out) {
  const std::size_t n = f.size();
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = j; i < n; ++i) {
      acc += w[i - j] * f[i];
    }
    out[j] = acc;
  }
  if (shift) {
    double correction = 0.0;
    double prefix = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      prefix += w[i];
      correction += prefix * f[i];
    }
    out[0] -= correction;
  }
}

template <typename LineOp>
Field map_lines(const Field& f, Axis axis, const Grid1D& op_grid, LineOp line_op) {
  const Grid2D& g = f.grid2();
  const int nt = g.t.node_count();
  const int nx = g.x.node_count();
  Field out = Field::zeros(g);
  if (axis == Axis::t) {
    if (!(op_grid == g.t)) throw std::invalid_argument("operator grid does not match t axis");
    std::vector<double> line(nt), res(nt);
    for (int ix = 0; ix < nx; ++ix) {
      for (int it = 0; it < nt; ++it) line[it] = f.at(it, ix);
      line_op(line, res);
      for (int it = 0; it < nt; ++it) out.at(it, ix) = res[it];
    }
  } else if (axis == Axis::x) {
    if (!(op_grid == g.x)) throw std::invalid_argument("operator grid does not match x axis");
    std::vector<double> line(nx), res(nx);
    for (int it = 0; it < nt; ++it) {
      for (int ix = 0; ix < nx; ++ix) line[ix] = f.at(it, ix);
      line_op(line, res);
      for (int ix = 0; ix < nx; ++ix) out.at(it, ix) = res[ix];
    }
  } else {
    throw std::invalid_argument("axis must be t or x");
  }
  return out;
}

}  // namespace

FracOperator build_operator(FractionalOrder order, OpKind kind, const Grid1D& grid) {
  const double a = order.value();
  const int n = grid.n;
  std::vector<double> w(n + 1);
  const double scale = kind == OpKind::derivative ? std::pow(grid.h, -a) : std::pow(grid.h, a);
  w[0] = scale;
  for (int k = 1; k <= n; ++k) {
    const double factor =
        kind == OpKind::derivative ? (k - 1.0 - a) / k : (k - 1.0 + a) / k;
    w[k] = w[k - 1] * factor;
  }
  return FracOperator{order, kind, grid, std::move(w), kind == OpKind::derivative};
}

Field apply_operator(const FracOperator& op, const Field& f) {
  check_grid(op, f);
  Field out = Field::zeros(op.grid);
  convolve(op.weights, f.values(), op.shift_flag, out.values());
  return out;
}

Field apply_adjoint(const FracOperator& op, const Field& f) {
  check_grid(op, f);
  Field out = Field::zeros(op.grid);
  convolve_adjoint(op.weights, f.values(), op.shift_flag, out.values());
  return out;
}

OperatorPipeline compose_order(const FracOperator& op, int k) {
  if (k < 1 || k > 4) {
    throw std::invalid_argument("composition count must be in {1, 2, 3, 4}, got " +
                                std::to_string(k));
  }
  return OperatorPipeline{op, k};
}

Field apply_pipeline(const OperatorPipeline& p, const Field& f) {
  Field out = apply_operator(p.op, f);
  for (int i = 1; i < p.repeats; ++i) out = apply_operator(p.op, out);
  return out;
}

Field apply_pipeline_adjoint(const OperatorPipeline& p, const Field& f) {
  Field out = apply_adjoint(p.op, f);
  for (int i = 1; i < p.repeats; ++i) out = apply_adjoint(p.op, out);
  return out;
}

Field apply_along_axis(const FracOperator& op, const Field& f, Axis axis) {
  return map_lines(f, axis, op.grid, [&](const std::vector<double>& line, std::vector<double>& res) {
    convolve(op.weights, line, op.shift_flag, res);
  });
}

Field apply_adjoint_along_axis(const FracOperator& op, const Field& f, Axis axis) {
  return map_lines(f, axis, op.grid, [&](const std::vector<double>& line, std::vector<double>& res) {
    convolve_adjoint(op.weights, line, op.shift_flag, res);
  });
}

}  // namespace fravar
