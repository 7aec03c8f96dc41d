#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossrec/metrics.hpp"

namespace crossrec {

struct AlphaSelection {
  std::vector<double> grid;
  std::vector<double> validation_ndcg;  // aligned with grid
  double chosen_alpha = 0.0;
  std::string selection_metric = "ndcg@20";
};

struct OverlapTag {
  double requested_ratio = 1.0;
  double achieved_ratio = 1.0;
  Index n_overlap = 0;
  std::uint64_t subsample_seed = 0;
};

struct UserDetail {
  std::string user_key;
  std::map<std::string, double> metrics;  // "recall@20" -> value
};

struct EvalReport {
  Scenario scenario = Scenario::Intra;
  Strategy strategy = Strategy::ItemsOnly;
  double alpha = 0.0;
  FilterSpec filter;
  std::vector<Index> n_list;
  std::map<std::string, double> metrics;  // "recall@20" -> mean over evaluated users
  Index n_users_evaluated = 0;
  Index n_users_skipped = 0;
  std::vector<UserDetail> per_user;  // filled when requested
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string dataset_hash;
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::optional<AlphaSelection> alpha_selection;
  std::optional<OverlapTag> overlap_tag;
};

struct EvalOptions {
  std::vector<Index> n_list{10, 20};
  bool mask_seen_items = true;  // intra only; inter masks nothing
  int threads = 0;              // 0 = hardware concurrency
  bool per_user_detail = false;
  Index dump_top_n = 0;  // > 0 collects per-user recommendation lists
};

struct Recommendation {
  std::string user_key;
  std::vector<std::string> item_keys;
  std::vector<double> scores;
};

std::string metric_key(const std::string& name, Index n);

// Scores every test user over the full target catalog and aggregates
// unweighted metric means. Users with no catalog-mappable relevant items or
// an all-zero signal are skipped and counted. Masked items (training plus
// validation history) never appear in rankings. Deterministic for a fixed
// config regardless of thread count.
EvalReport evaluate(const CrossDomainData& data, const CrossDomainGraph& graph,
                    const FilterSpec& filter, const LowPassState* lowpass,
                    const std::vector<KeyPair>& test, const std::vector<KeyPair>& validation,
                    Scenario scenario, const EvalOptions& opts,
                    std::vector<Recommendation>* recommendations = nullptr);

// Validation-driven blend selection: mean NDCG@20 per grid point, argmax
// with smallest-alpha tie-break. Endpoint outputs are computed once per
// user and recombined per alpha whenever the filter is linear in the graph.
AlphaSelection select_alpha(const std::vector<double>& grid, const std::vector<KeyPair>& validation,
                            const CrossDomainData& data, Strategy strategy,
                            const FilterSpec& filter, const LowPassState* lowpass,
                            const EvalOptions& opts, const GraphOptions& graph_opts = {});

// Overlap-ratio ablation: subsample, rebuild, evaluate, once per
// (ratio, seed), each report tagged with the achieved ratio. `run_seed`
// seeds the low-pass fit; the target side is untouched by subsampling so
// one fit serves every cell.
std::vector<EvalReport> ablate_overlap(const std::vector<double>& ratios,
                                       const std::vector<std::uint64_t>& seeds,
                                       const CrossDomainData& data, Strategy strategy,
                                       double alpha, const FilterSpec& filter,
                                       const std::vector<KeyPair>& test,
                                       const std::vector<KeyPair>& validation, Scenario scenario,
                                       std::uint64_t run_seed, const EvalOptions& opts,
                                       const GraphOptions& graph_opts = {});

std::vector<double> alpha_grid(double lo, double hi, double step);

}  // namespace crossrec
