#include "nlse/csv.hpp"

#include <cstdio>
#include <fstream>

#include "nlse/errors.hpp"

namespace nlse {

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::pair<double, double>> read_samples_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double z, v;
    if (std::sscanf(line.c_str(), "%lf,%lf", &z, &v) != 2) {
      if (first) {
        first = false;  // header row
        continue;
      }
      fail(ErrorCode::Io, "samples csv: malformed row in " + path);
    }
    first = false;
    rows.emplace_back(z, v);
  }
  if (rows.empty()) fail(ErrorCode::Io, "samples csv: no data rows in " + path);
  return rows;
}

}  // namespace nlse
