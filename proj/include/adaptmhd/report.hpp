#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace adaptmhd {

// Serialized as {name, residuals: {label: value}, tolerance, verdict}.
struct Report {
  std::string name;
  std::vector<std::pair<std::string, double>> residuals;
  double tolerance = 0.0;
  bool verdict = false;

  double residual(const std::string& label) const;
  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::json& j);
};

// value / scale, or value itself when the scale vanishes.
inline double relative(double value, double scale) {
  return scale > 0.0 ? value / scale : value;
}

}  // namespace adaptmhd
