#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "catgen/experiments.hpp"

namespace catgen {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const SweepResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.schema.size(); ++i) out += (i ? "," : "") + result.schema[i];
  out += '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  j["schema"] = result.schema;
  j["rows"] = result.rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

std::string state_to_json(const FockState& state, const std::vector<std::pair<std::string, std::string>>& metadata) {
  nlohmann::ordered_json j;
  j["dim"] = state.dim();
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  for (int n = 0; n < state.dim(); ++n) amps.push_back({state[n].real(), state[n].imag()});
  j["amplitudes"] = amps;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

}  // namespace catgen
