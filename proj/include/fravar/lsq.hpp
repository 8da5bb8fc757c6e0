#pragma once

#include <vector>

namespace fravar {

/// Dense least-squares min ||A c - b||_2 by Householder QR. A is row-major
/// with `cols` columns. Throws RankDeficientError when a diagonal of R falls
/// below a relative threshold.
std::vector<double> lsq_solve(std::vector<double> a, std::size_t rows, std::size_t cols,
                              std::vector<double> b);

}  // namespace fravar
