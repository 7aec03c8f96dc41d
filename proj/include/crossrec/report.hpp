#pragma once

#include <filesystem>

#include <json.hpp>

#include "crossrec/evaluate.hpp"

namespace crossrec {

nlohmann::json filter_to_json(const FilterSpec& spec);
FilterSpec filter_from_json(const nlohmann::json& j);

// include_runtime=false gives the byte-stable view used for determinism
// checks.
nlohmann::json report_to_json(const EvalReport& report, bool include_runtime = true);

void save_report(const std::filesystem::path& path, const EvalReport& report);
void save_recommendations(const std::filesystem::path& path,
                          const std::vector<Recommendation>& recs);

// rows = alpha or ratio; cols = metrics. For plotting.
void save_metric_csv(const std::filesystem::path& path, const std::string& row_label,
                     const std::vector<std::pair<std::string, const EvalReport*>>& rows);

std::string format_double(double v);

}  // namespace crossrec
