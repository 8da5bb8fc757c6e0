#include "fravar/lsq.hpp"

#include <cmath>
#include <stdexcept>

#include "fravar/error.hpp"

namespace fravar {

std::vector<double> lsq_solve(std::vector<double> a, std::size_t rows, std::size_t cols,
                              std::vector<double> b) {
  if (rows < cols || a.size() != rows * cols || b.size() != rows) {
    throw std::invalid_argument("lsq_solve: inconsistent dimensions");
  }
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * cols + c]; };

  // Householder reduction applied to [A | b]
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += at(i, k) * at(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;  // caught by the rank check below
    const double alpha = at(k, k) >= 0.0 ? -norm : norm;
    std::vector<double> v(rows - k);
    v[0] = at(k, k) - alpha;
    for (std::size_t i = k + 1; i < rows; ++i) v[i - k] = at(i, k);
    double vnorm2 = 0.0;
    for (double vi : v) vnorm2 += vi * vi;
    if (vnorm2 == 0.0) continue;
    at(k, k) = alpha;
    for (std::size_t i = k + 1; i < rows; ++i) at(i, k) = 0.0;
    for (std::size_t c = k + 1; c < cols; ++c) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * at(i, c);
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) at(i, c) -= f * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * b[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < rows; ++i) b[i] -= f * v[i - k];
  }

  double diag_max = 0.0;
  for (std::size_t k = 0; k < cols; ++k) diag_max = std::max(diag_max, std::abs(at(k, k)));
  for (std::size_t k = 0; k < cols; ++k) {
    if (std::abs(at(k, k)) <= 1e-10 * std::max(diag_max, 1e-30)) {
      throw RankDeficientError("least-squares system is rank deficient (column " +
                               std::to_string(k) + ")");
    }
  }

  std::vector<double> c(cols, 0.0);
  for (std::size_t k = cols; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < cols; ++j) acc -= at(k, j) * c[j];
    c[k] = acc / at(k, k);
  }
  return c;
}

}  // namespace fravar
