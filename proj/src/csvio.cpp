#include "fravar/csvio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fravar/report.hpp"

namespace fravar {

namespace {

std::vector<double> parse_csv_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    out.push_back(std::stod(cell));
  }
  return out;
}

}  // namespace

void write_field_csv(std::ostream& os, const Field& field, double alpha, double beta) {
  if (field.dims() == 1) {
    const Grid1D& g = field.grid1();
    os << "# fravar-field v1, axes=1, " << format_double(g.a) << ',' << format_double(g.b) << ','
       << g.n << ", " << format_double(alpha) << ',' << format_double(beta) << '\n';
    for (int i = 0; i <= g.n; ++i) {
      os << format_double(g.node(i)) << ',' << format_double(field.at(i)) << '\n';
    }
    return;
  }
  const Grid2D& g = field.grid2();
  os << "# fravar-field v1, axes=2, " << format_double(g.t.a) << ',' << format_double(g.t.b)
     << ',' << g.t.n << ", " << format_double(g.x.a) << ',' << format_double(g.x.b) << ','
     << g.x.n << ", " << format_double(alpha) << ',' << format_double(beta) << '\n';
  for (int it = 0; it <= g.t.n; ++it) {
    for (int ix = 0; ix <= g.x.n; ++ix) {
      os << format_double(g.t.node(it)) << ',' << format_double(g.x.node(ix)) << ','
         << format_double(field.at(it, ix)) << '\n';
    }
  }
}

void write_field_csv(const std::string& path, const Field& field, double alpha, double beta) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_field_csv(os, field, alpha, beta);
}

FieldCsv read_field_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("empty field CSV");
  const std::string magic = "# fravar-field v1,";
  if (header.rfind(magic, 0) != 0) {
    throw std::runtime_error("not a fravar-field v1 CSV");
  }
  std::string rest = header.substr(magic.size());
  int axes = 0;
  {
    const auto pos = rest.find("axes=");
    if (pos == std::string::npos) throw std::runtime_error("field CSV header missing axes=");
    axes = std::stoi(rest.substr(pos + 5));
    const auto comma = rest.find(',', pos);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
  }
  const std::vector<double> meta = parse_csv_numbers(rest);
  FieldCsv out{Field::zeros(make_grid(0.0, 1.0, 2)), 1.0, 1.0};
  std::vector<double> values;
  std::string line;
  if (axes == 1) {
    if (meta.size() != 5) throw std::runtime_error("1D field CSV header needs a,b,n,alpha,beta");
    const Grid1D g = make_grid(meta[0], meta[1], static_cast<int>(meta[2]));
    out.alpha = meta[3];
    out.beta = meta[4];
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      const std::vector<double> row = parse_csv_numbers(line);
      if (row.size() != 2) throw std::runtime_error("1D field CSV rows are x,value");
      values.push_back(row[1]);
    }
    if (values.size() != static_cast<std::size_t>(g.node_count())) {
      throw std::runtime_error("field CSV row count does not match grid");
    }
    out.field = Field(g, std::move(values));
    return out;
  }
  if (axes != 2) throw std::runtime_error("field CSV axes must be 1 or 2");
  if (meta.size() != 8) {
    throw std::runtime_error("2D field CSV header needs a,b,n,c,d,m,alpha,beta");
  }
  const Grid2D g{make_grid(meta[0], meta[1], static_cast<int>(meta[2])),
                 make_grid(meta[3], meta[4], static_cast<int>(meta[5]))};
  out.alpha = meta[6];
  out.beta = meta[7];
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> row = parse_csv_numbers(line);
    if (row.size() != 3) throw std::runtime_error("2D field CSV rows are t,x,value");
    values.push_back(row[2]);
  }
  if (values.size() != static_cast<std::size_t>(g.t.node_count()) * g.x.node_count()) {
    throw std::runtime_error("field CSV row count does not match grid");
  }
  out.field = Field(g, std::move(values));
  return out;
}

FieldCsv read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_field_csv(is);
}

}  // namespace fravar
