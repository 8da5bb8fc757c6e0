#include "fravar/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fravar/error.hpp"

namespace fravar {

Grid1D make_grid(double a, double b, int n) {
  if (!(a < b)) {
    throw std::invalid_argument("grid requires a < b");
  }
  if (n < 2) {
    throw std::invalid_argument("grid requires n >= 2, got " + std::to_string(n));
  }
  return Grid1D{a, b, n, (b - a) / n};
}

Field::Field(Grid1D grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.node_count())) {
    throw std::invalid_argument("field length does not match node count");
  }
}

Field::Field(Grid2D grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  const std::size_t expected =
      static_cast<std::size_t>(grid.t.node_count()) * grid.x.node_count();
  if (values_.size() != expected) {
    throw std::invalid_argument("field length does not match node count");
  }
}

Field Field::zeros(const Grid1D& grid) {
  return Field(grid, std::vector<double>(grid.node_count(), 0.0));
}

Field Field::zeros(const Grid2D& grid) {
  return Field(grid, std::vector<double>(
                         static_cast<std::size_t>(grid.t.node_count()) * grid.x.node_count(),
                         0.0));
}

const Grid1D& Field::grid1() const {
  if (const Grid1D* g = std::get_if<Grid1D>(&grid_)) return *g;
  throw std::logic_error("field is 2D, grid1() is invalid");
}

const Grid2D& Field::grid2() const {
  if (const Grid2D* g = std::get_if<Grid2D>(&grid_)) return *g;
  throw std::logic_error("field is 1D, grid2() is invalid");
}

double Field::at(int it, int ix) const {
  return values_[static_cast<std::size_t>(it) * grid2().x.node_count() + ix];
}

double& Field::at(int it, int ix) {
  return values_[static_cast<std::size_t>(it) * grid2().x.node_count() + ix];
}

Field sample_field(const std::function<double(double)>& f, const Grid1D& grid) {
  std::vector<double> v(grid.node_count());
  for (int i = 0; i <= grid.n; ++i) {
    v[i] = f(grid.node(i));
    if (!std::isfinite(v[i])) {
      throw EvalError("non-finite sample at node " + std::to_string(i));
    }
  }
  return Field(grid, std::move(v));
}

Field sample_field(const std::function<double(double, double)>& f, const Grid2D& grid) {
  std::vector<double> v(static_cast<std::size_t>(grid.t.node_count()) * grid.x.node_count());
  std::size_t k = 0;
  for (int it = 0; it <= grid.t.n; ++it) {
    for (int ix = 0; ix <= grid.x.n; ++ix, ++k) {
      v[k] = f(grid.t.node(it), grid.x.node(ix));
      if (!std::isfinite(v[k])) {
        throw EvalError("non-finite sample at node (" + std::to_string(it) + ", " +
                        std::to_string(ix) + ")");
      }
    }
  }
  return Field(grid, std::move(v));
}

}  // namespace fravar
