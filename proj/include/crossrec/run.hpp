#pragma once

#include <json.hpp>

#include "crossrec/graph.hpp"
#include "crossrec/report.hpp"

namespace crossrec {

// Everything one experiment needs. Flags override config-file values; the
// config hash covers only result-affecting fields (output paths, cache
// location and thread count are excluded).
struct RunConfig {
  std::filesystem::path source_path;
  std::filesystem::path target_path;
  FileFormat format = FileFormat::Tsv;
  bool has_header = false;
  Scenario scenario = Scenario::Intra;
  Strategy strategy = Strategy::ItemsOnly;

  bool alpha_select = false;  // false: fixed alpha; true: validation-driven
  double alpha = 0.85;
  double grid_lo = 0.0, grid_hi = 1.0, grid_step = 0.1;

  FilterSpec filter;
  std::vector<Index> n_list{10, 20};
  Index topn = 20;  // recommendation dump length
  std::uint64_t seed = 0;
  double train_ratio = 0.8;
  double validation_ratio = 0.2;
  double test_user_fraction = 0.5;
  bool mask_seen = true;
  bool symmetrize_graph = false;
  bool per_user_detail = false;

  std::filesystem::path out_dir = "out";
  std::optional<std::filesystem::path> cache_dir;
  int threads = 0;

  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load_file(const std::filesystem::path& path);
  std::string config_hash_hex() const;
};

// Subcommand bodies. Each returns 0 on success and throws ConfigError /
// DataError / std::runtime_error otherwise; main maps those to exit codes
// 1 / 2 / 3. No artifact is written before the pipeline has fully
// succeeded.
int cmd_ingest(const RunConfig& config);
int cmd_split(const RunConfig& config);
int cmd_run(const RunConfig& config);
int cmd_sweep_alpha(const RunConfig& config);
int cmd_ablate_overlap(const RunConfig& config, const std::vector<double>& ratios,
                       const std::vector<std::uint64_t>& seeds);
int cmd_eval_manifest(const RunConfig& config, const std::filesystem::path& manifest_path);

}  // namespace crossrec
