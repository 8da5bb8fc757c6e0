#pragma once

#include <iosfwd>
#include <string>

#include "fravar/grid.hpp"

namespace fravar {

/// Field CSV, format `fravar-field v1`:
///   1D:  # fravar-field v1, axes=1, a,b,n, alpha,beta
///        x,value rows
///   2D:  # fravar-field v1, axes=2, a,b,n, c,d,m, alpha,beta
///        t,x,value rows, row-major in t
/// [a,b] is the t interval, [c,d] the x interval. alpha and beta ride along
/// as metadata for the orders the samples were produced under (1 when not
/// meaningful). Numbers are written at 17 significant digits.
struct FieldCsv {
  Field field;
  double alpha = 1.0;
  double beta = 1.0;
};

void write_field_csv(std::ostream& os, const Field& field, double alpha, double beta);
void write_field_csv(const std::string& path, const Field& field, double alpha, double beta);

FieldCsv read_field_csv(std::istream& is);
FieldCsv read_field_csv(const std::string& path);

}  // namespace fravar
