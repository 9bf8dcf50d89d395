#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kdist/measures.hpp"

namespace kdist {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// One point per row, comma-separated finite decimal columns, no header.
// '#'-prefixed lines are ignored.
EmpiricalMeasure read_points_csv(std::istream& in);
EmpiricalMeasure read_points_csv_file(const std::string& path);
void write_points_csv(std::ostream& out, const EmpiricalMeasure& m);

}  // namespace kdist
