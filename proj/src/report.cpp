#include "adaptmhd/report.hpp"

#include "adaptmhd/errors.hpp"

namespace adaptmhd {

double Report::residual(const std::string& label) const {
  for (const auto& [k, v] : residuals) {
    if (k == label) return v;
  }
  throw KindError("report '" + name + "' has no residual '" + label + "'");
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["residuals"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : residuals) j["residuals"][k] = v;
  j["tolerance"] = tolerance;
  j["verdict"] = verdict;
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  try {
    Report r;
    r.name = j.at("name").get<std::string>();
    for (const auto& [k, v] : j.at("residuals").items()) {
      r.residuals.emplace_back(k, v.get<double>());
    }
    r.tolerance = j.at("tolerance").get<double>();
    r.verdict = j.at("verdict").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

}  // namespace adaptmhd
