#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "crossrec/errors.hpp"
#include "crossrec/run.hpp"

namespace {

using crossrec::ConfigError;
using crossrec::RunConfig;

// Raw flag values; only flags the user actually passed override the config
// file.
struct Flags {
  std::string config_file;
  std::string source, target, format = "tsv", scenario = "intra", strategy = "io";
  bool header = false;
  double alpha = 0.85;
  std::string alpha_select;  // "LO:HI:STEP"
  std::string filter = "linear";
  std::int64_t lowpass_rank = 64;
  double mix_weight = 0.3;
  std::int64_t order = 1;
  std::string coeffs;
  std::vector<std::int64_t> n_list;
  std::int64_t topn = 20;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool mask_seen = true;
  int threads = 0;
  std::string cache;
  double train_ratio = 0.8, val_ratio = 0.2, test_user_fraction = 0.5;
  bool sym_graph = false;
  bool per_user = false;

  std::string ratios = "0.2,0.4,0.6,0.8,1.0";  // ablate-overlap
  std::string seeds = "1,2,3";
  std::string manifest;  // eval
};

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError(std::string("cannot parse ") + what + " entry '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + " list is empty");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (double v : parse_double_list(s, "seed")) out.push_back(static_cast<std::uint64_t>(v));
  return out;
}

void parse_alpha_select(const std::string& s, RunConfig& config) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(s);
  if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':')
    throw ConfigError("--alpha-select expects LO:HI:STEP, got '" + s + "'");
  config.alpha_select = true;
  config.grid_lo = lo;
  config.grid_hi = hi;
  config.grid_step = step;
}

void add_common_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its values");
  cmd->add_option("--source", f.source, "source-domain interaction file");
  cmd->add_option("--target", f.target, "target-domain interaction file");
  cmd->add_option("--format", f.format, "input format")
      ->check(CLI::IsMember({"tsv", "csv"}));
  cmd->add_flag("--header", f.header, "inputs carry a header line");
  cmd->add_option("--scenario", f.scenario)->check(CLI::IsMember({"intra", "inter"}));
  cmd->add_option("--strategy", f.strategy)->check(CLI::IsMember({"io", "oa", "ua"}));
  cmd->add_option("--alpha", f.alpha, "fixed blend weight in [0, 1]");
  cmd->add_option("--alpha-select", f.alpha_select,
                  "validation-driven alpha selection over grid LO:HI:STEP");
  cmd->add_option("--filter", f.filter)
      ->check(CLI::IsMember({"linear", "linear-k", "lowpass", "mixed"}));
  cmd->add_option("--lowpass-rank", f.lowpass_rank, "retained spectral components");
  cmd->add_option("--mix-weight", f.mix_weight, "low-pass weight of the mixed filter");
  cmd->add_option("--order", f.order, "K of the order-K linear filter");
  cmd->add_option("--coeffs", f.coeffs, "comma-separated order-K coefficients b0,b1,...");
  cmd->add_option("--n-list", f.n_list, "metric cutoffs (default 10 20)");
  cmd->add_option("--topn", f.topn, "recommendation dump length");
  cmd->add_option("--seed", f.seed, "top-level seed for all randomness");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--mask-seen,!--no-mask-seen", f.mask_seen,
                "exclude training items from intra-domain rankings");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  cmd->add_option("--cache", f.cache, "cache directory for reusable factors");
  cmd->add_option("--train-ratio", f.train_ratio);
  cmd->add_option("--val-ratio", f.val_ratio);
  cmd->add_option("--test-user-fraction", f.test_user_fraction);
  cmd->add_flag("--sym-graph", f.sym_graph, "score with (G + G^T)/2");
  cmd->add_flag("--per-user", f.per_user, "include per-user metrics in the report");
}

RunConfig merge(const CLI::App* cmd, const Flags& f) {
  RunConfig config;
  if (!f.config_file.empty()) config = RunConfig::load_file(f.config_file);

  const auto given = [&](const std::string& name) { return cmd->count(name) > 0; };
  if (given("--source")) config.source_path = f.source;
  if (given("--target")) config.target_path = f.target;
  if (given("--format"))
    config.format = f.format == "tsv" ? crossrec::FileFormat::Tsv : crossrec::FileFormat::Csv;
  if (given("--header")) config.has_header = f.header;
  if (given("--scenario")) config.scenario = crossrec::scenario_from_string(f.scenario);
  if (given("--strategy")) config.strategy = crossrec::strategy_from_string(f.strategy);
  if (given("--alpha")) {
    config.alpha = f.alpha;
    config.alpha_select = false;
  }
  if (given("--alpha-select")) parse_alpha_select(f.alpha_select, config);

  if (given("--filter") || given("--order") || given("--coeffs") || given("--lowpass-rank") ||
      given("--mix-weight")) {
    crossrec::FilterSpec spec;
    spec.kind = crossrec::filter_kind_from_string(given("--filter") ? f.filter : "linear");
    if (spec.kind == crossrec::FilterKind::LinearOrderK) {
      if (given("--coeffs")) {
        spec.coeffs = parse_double_list(f.coeffs, "coefficient");
        if (given("--order") && static_cast<std::int64_t>(spec.coeffs.size()) != f.order)
          throw ConfigError("--order disagrees with the number of --coeffs");
      } else {
        // Default order-K coefficients (0, 1, 0, ...): one graph pass.
        const auto k = std::max<std::int64_t>(1, f.order);
        spec.coeffs.assign(static_cast<std::size_t>(k), 0.0);
        spec.coeffs[k > 1 ? 1 : 0] = 1.0;
      }
    }
    spec.lowpass_rank = f.lowpass_rank;
    spec.mix_weight = f.mix_weight;
    config.filter = spec;
  }

  if (given("--n-list")) config.n_list.assign(f.n_list.begin(), f.n_list.end());
  if (given("--topn")) config.topn = f.topn;
  if (given("--seed")) config.seed = f.seed;
  if (given("--out")) config.out_dir = f.out;
  if (given("--mask-seen") || given("--no-mask-seen")) config.mask_seen = f.mask_seen;
  if (given("--threads")) config.threads = f.threads;
  if (given("--cache")) config.cache_dir = f.cache;
  if (given("--train-ratio")) config.train_ratio = f.train_ratio;
  if (given("--val-ratio")) config.validation_ratio = f.val_ratio;
  if (given("--test-user-fraction")) config.test_user_fraction = f.test_user_fraction;
  if (given("--sym-graph")) config.symmetrize_graph = f.sym_graph;
  if (given("--per-user")) config.per_user_detail = f.per_user;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossrec: training-free cross-domain recommendations by graph signal filtering"};
  app.require_subcommand(1);

  Flags f;
  auto* ingest = app.add_subcommand("ingest", "load, prune and summarize a domain pair");
  auto* split_cmd = app.add_subcommand("split", "write a replayable train/val/test manifest");
  auto* run = app.add_subcommand("run", "full pipeline: split, build, evaluate, report");
  auto* sweep = app.add_subcommand("sweep-alpha", "evaluate across an alpha grid");
  auto* ablate = app.add_subcommand("ablate-overlap", "overlap-ratio ablation");
  auto* eval = app.add_subcommand("eval", "evaluate from an existing split manifest");
  for (auto* cmd : {ingest, split_cmd, run, sweep, ablate, eval}) add_common_options(cmd, f);
  ablate->add_option("--ratios", f.ratios, "comma-separated overlap keep ratios");
  ablate->add_option("--seeds", f.seeds, "comma-separated subsample seeds");
  eval->add_option("--manifest", f.manifest, "split manifest to replay")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ingest)) return crossrec::cmd_ingest(merge(ingest, f));
    if (app.got_subcommand(split_cmd)) return crossrec::cmd_split(merge(split_cmd, f));
    if (app.got_subcommand(run)) return crossrec::cmd_run(merge(run, f));
    if (app.got_subcommand(sweep)) {
      auto config = merge(sweep, f);
      if (!sweep->count("--alpha-select")) parse_alpha_select("0.0:1.0:0.1", config);
      return crossrec::cmd_sweep_alpha(config);
    }
    if (app.got_subcommand(ablate))
      return crossrec::cmd_ablate_overlap(merge(ablate, f),
                                          parse_double_list(f.ratios, "ratio"),
                                          parse_seed_list(f.seeds));
    if (app.got_subcommand(eval)) return crossrec::cmd_eval_manifest(merge(eval, f), f.manifest);
  } catch (const crossrec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const crossrec::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
