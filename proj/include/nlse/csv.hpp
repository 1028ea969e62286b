#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nlse {

/// Shortest round-trippable decimal representation ("%.17g").
std::string fmt_g17(double x);

/// Two-column numeric CSV `z,value`; a header row is accepted and skipped.
std::vector<std::pair<double, double>> read_samples_csv(const std::string& path);

}  // namespace nlse
