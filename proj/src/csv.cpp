#include "kdist/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kdist/errors.hpp"

namespace kdist {

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

EmpiricalMeasure read_points_csv(std::istream& in) {
  std::vector<double> flat;
  int dim = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        const double v = std::stod(cell);
        if (!std::isfinite(v)) throw validation_error("");
        flat.push_back(v);
      } catch (const std::exception&) {
        throw validation_error("points csv: bad value '" + cell + "' on line " +
                               std::to_string(lineno));
      }
      ++cols;
    }
    if (dim == -1) dim = cols;
    if (cols != dim)
      throw validation_error("points csv: inconsistent column count on line " +
                             std::to_string(lineno));
  }
  if (dim <= 0 || flat.empty()) throw validation_error("points csv: no data rows");
  return EmpiricalMeasure(std::move(flat), dim);
}

EmpiricalMeasure read_points_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open points csv: " + path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const EmpiricalMeasure& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (int k = 0; k < m.dim(); ++k) {
      if (k > 0) out << ',';
      out << format_double(m.coord(i, k));
    }
    out << '\n';
  }
}

}  // namespace kdist
