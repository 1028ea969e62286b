#pragma once

#include <string>
#include <vector>

namespace nlse {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

/// Minimal self-contained line chart. Non-finite points are skipped; with
/// log_y only positive values are drawn. Output is deterministic for equal
/// inputs.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool log_y = false);

}  // namespace nlse
