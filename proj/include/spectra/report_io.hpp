#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "spectra/numerics.hpp"
#include "spectra/report.hpp"
#include "spectra/scenario.hpp"

namespace spectra {

inline constexpr const char* kToolVersion = "1.0.0";

/// Report file contents: the scenario echo, the report and optional verdicts.
struct ReportDocument {
  std::string tool_version = kToolVersion;
  Scenario scenario;
  SpectrumReport report;
  std::optional<std::vector<numerics::OracleVerdict>> verdicts;
};

/// Set names accepted by the --sigma filter.
std::set<std::string> all_set_names();  ///< "1".."5", "ap", "adjoint"
std::set<std::string> parse_set_selection(const std::string& csv);

nlohmann::ordered_json to_json(const SpectrumReport& r, const std::set<std::string>& sets = all_set_names());
SpectrumReport report_from_json(const nlohmann::json& j, const std::string& pointer = "");

nlohmann::ordered_json to_json(const numerics::OracleVerdict& v);
numerics::OracleVerdict verdict_from_json(const nlohmann::json& j, const std::string& pointer);

nlohmann::ordered_json to_json(const ReportDocument& d, const std::set<std::string>& sets = all_set_names());
ReportDocument report_document_from_json(const nlohmann::json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace spectra
