#include "crossrec/report.hpp"

#include <cstdio>
#include <fstream>

#include "crossrec/errors.hpp"

namespace crossrec {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json filter_to_json(const FilterSpec& spec) {
  json j{{"kind", to_string(spec.kind)}};
  if (spec.kind == FilterKind::LinearOrderK) j["coeffs"] = spec.coeffs;
  if (spec.needs_lowpass()) j["lowpass_rank"] = spec.lowpass_rank;
  if (spec.kind == FilterKind::Mixed) j["mix_weight"] = spec.mix_weight;
  return j;
}

FilterSpec filter_from_json(const json& j) {
  FilterSpec spec;
  spec.kind = filter_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("coeffs")) spec.coeffs = j.at("coeffs").get<std::vector<double>>();
  if (j.contains("lowpass_rank")) spec.lowpass_rank = j.at("lowpass_rank").get<Index>();
  if (j.contains("mix_weight")) spec.mix_weight = j.at("mix_weight").get<double>();
  spec.validate();
  return spec;
}

json report_to_json(const EvalReport& report, bool include_runtime) {
  json j{{"scenario", to_string(report.scenario)},
         {"strategy", to_string(report.strategy)},
         {"alpha", report.alpha},
         {"filter", filter_to_json(report.filter)},
         {"n_list", report.n_list},
         {"metrics", report.metrics},
         {"n_users_evaluated", report.n_users_evaluated},
         {"n_users_skipped", report.n_users_skipped},
         {"seed", report.seed},
         {"dataset_hash", report.dataset_hash},
         {"config_hash", report.config_hash},
         {"tool_version", report.tool_version}};
  if (include_runtime) j["runtime_seconds"] = report.runtime_seconds;
  if (report.alpha_selection) {
    const auto& sel = *report.alpha_selection;
    j["alpha_selection"] = json{{"grid", sel.grid},
                                {"validation_ndcg", sel.validation_ndcg},
                                {"chosen_alpha", sel.chosen_alpha},
                                {"selection_metric", sel.selection_metric}};
  }
  if (report.overlap_tag) {
    const auto& tag = *report.overlap_tag;
    j["overlap"] = json{{"requested_ratio", tag.requested_ratio},
                        {"achieved_ratio", tag.achieved_ratio},
                        {"n_overlap", tag.n_overlap},
                        {"subsample_seed", tag.subsample_seed}};
  }
  if (!report.per_user.empty()) {
    json arr = json::array();
    for (const auto& d : report.per_user)
      arr.push_back(json{{"user_key", d.user_key}, {"metrics", d.metrics}});
    j["per_user"] = arr;
  }
  return j;
}

void save_report(const std::filesystem::path& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report: " + path.string());
  out << report_to_json(report).dump(2) << "\n";
}

void save_recommendations(const std::filesystem::path& path,
                          const std::vector<Recommendation>& recs) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write recommendations: " + path.string());
  for (const auto& rec : recs) {
    json j{{"user_key", rec.user_key}, {"items", rec.item_keys}, {"scores", rec.scores}};
    out << j.dump() << "\n";
  }
}

void save_metric_csv(const std::filesystem::path& path, const std::string& row_label,
                     const std::vector<std::pair<std::string, const EvalReport*>>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write csv: " + path.string());
  if (rows.empty()) return;
  out << row_label;
  const auto& first = *rows.front().second;
  for (const auto& [key, value] : first.metrics) out << "," << key;
  out << ",n_users_evaluated,n_users_skipped";
  if (first.overlap_tag) out << ",achieved_ratio,n_overlap,subsample_seed";
  out << "\n";
  for (const auto& [label, report] : rows) {
    out << label;
    for (const auto& [key, value] : report->metrics) out << "," << format_double(value);
    out << "," << report->n_users_evaluated << "," << report->n_users_skipped;
    if (report->overlap_tag)
      out << "," << format_double(report->overlap_tag->achieved_ratio) << ","
          << report->overlap_tag->n_overlap << "," << report->overlap_tag->subsample_seed;
    out << "\n";
  }
}

}  // namespace crossrec
