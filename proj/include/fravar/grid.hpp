#pragma once

#include <functional>
#include <variant>
#include <vector>

namespace fravar {

enum class Axis { none, t, x };

/// Uniform grid with n intervals on [a, b]; nodes x_i = a + i*h, i = 0..n.
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  int n = 2;
  double h = 0.5;

  double node(int i) const { return a + i * h; }
  int node_count() const { return n + 1; }
  bool operator==(const Grid1D& o) const { return a == o.a && b == o.b && n == o.n; }
};

Grid1D make_grid(double a, double b, int n);

/// Closed rectangle: t in [t_grid.a, t_grid.b], x in [x_grid.a, x_grid.b].
struct Grid2D {
  Grid1D t;
  Grid1D x;
  bool operator==(const Grid2D& o) const { return t == o.t && x == o.x; }
};

/// Real samples on a 1D or 2D grid. 2D storage is row-major in t:
/// values[it * (nx + 1) + ix].
class Field {
 public:
  Field(Grid1D grid, std::vector<double> values);
  Field(Grid2D grid, std::vector<double> values);

  static Field zeros(const Grid1D& grid);
  static Field zeros(const Grid2D& grid);

  int dims() const { return std::holds_alternative<Grid1D>(grid_) ? 1 : 2; }
  const Grid1D& grid1() const;
  const Grid2D& grid2() const;

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  std::size_t size() const { return values_.size(); }

  double at(int i) const { return values_[i]; }
  double& at(int i) { return values_[i]; }
  double at(int it, int ix) const;
  double& at(int it, int ix);

  bool same_grid(const Field& other) const { return grid_ == other.grid_; }

 private:
  std::variant<Grid1D, Grid2D> grid_;
  std::vector<double> values_;
};

/// Pointwise samples; throws EvalError on a non-finite sample.
Field sample_field(const std::function<double(double)>& f, const Grid1D& grid);
Field sample_field(const std::function<double(double, double)>& f, const Grid2D& grid);  // f(t, x)

}  // namespace fravar
