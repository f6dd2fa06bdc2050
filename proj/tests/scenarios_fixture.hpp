#pragma once

#include <string>

#include "json.hpp"
#include "spectra/scenario.hpp"

namespace fixture {

inline nlohmann::json moebius(double c = 2.0) { return {{"kind", "moebius"}, {"c", c}}; }
inline nlohmann::json ex(const std::string& text) { return {{"kind", "expression"}, {"expr", text}}; }
inline nlohmann::json constant(double v) { return {{"kind", "constant"}, {"value", v}}; }

inline nlohmann::json example3_map() {
  return {{"kind", "piecewise_linear_family"},
          {"generators",
           {{{"name", "a"}, {"nonneg", "1/2^(n+1)"}, {"neg", "1-1/2^(-n+1)"}},
            {{"name", "b"}, {"nonneg", "1/2^(n+2)+1/4^(n+2)"}, {"neg", "1-1/2^(-n+1)-1/4^(-n+1)"}}}},
          {"n_max", 64}};
}

inline nlohmann::json example4_map(int n_max = 256) {
  return {{"kind", "piecewise_linear_family"},
          {"generators",
           {{{"name", "a"}, {"nonneg", "1/(n+2)"}, {"neg", "1-1/(-n+2)"}},
            {{"name", "b"}, {"nonneg", "(1/(n+2)+1/(n+3))/2"}, {"neg", "1-1/(-n+2)-1/2^(-n+3)"}},
            {{"name", "c"}, {"nonneg", "1/(n+3)+1/2^(n+3)+(3/4)^(n+3)"}, {"neg", "1-1/(-n+2)-1/2^(-n+3)-(2/3)^(-n+3)"}},
            {{"name", "d"}, {"nonneg", "1/(n+3)+1/2^(n+3)"}, {"neg", "(1-1/(-n+2)+1-1/(-n+1))/2"}}}},
          {"index_offset", "auto"},
          {"n_max", n_max}};
}

inline spectra::Scenario make(const std::string& family, int n, const nlohmann::json& phi, const nlohmann::json& w,
                              nlohmann::json options = nlohmann::json::object()) {
  nlohmann::json j = {{"space", {{"family", family}, {"n", n}}}, {"phi", phi}, {"w", w}};
  if (!options.empty()) j["options"] = options;
  return spectra::scenario_from_json(j);
}

inline spectra::Scenario make_w(int n, double p, const nlohmann::json& phi, const nlohmann::json& w,
                                nlohmann::json options = nlohmann::json::object()) {
  nlohmann::json j = {{"space", {{"family", "W"}, {"n", n}, {"p", p}}}, {"phi", phi}, {"w", w}};
  if (!options.empty()) j["options"] = options;
  return spectra::scenario_from_json(j);
}

}  // namespace fixture
