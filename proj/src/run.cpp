#include "crossrec/run.hpp"

#include <fstream>
#include <iostream>

#include "crossrec/errors.hpp"
#include "crossrec/parallel.hpp"
#include "crossrec/rng.hpp"

namespace crossrec {

using nlohmann::json;

void RunConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
  if (alpha_select) {
    if (grid_step <= 0.0 || grid_hi < grid_lo)
      throw ConfigError("alpha grid must be LO:HI:STEP with step > 0 and hi >= lo");
    if (grid_lo < 0.0 || grid_hi > 1.0) throw ConfigError("alpha grid must stay in [0, 1]");
  }
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (Index n : n_list)
    if (n < 1) throw ConfigError("n_list entries must be >= 1");
  if (topn < 1) throw ConfigError("topn must be >= 1");
  filter.validate();
}

json RunConfig::to_json() const {
  return json{{"source", source_path.string()},
              {"target", target_path.string()},
              {"format", format == FileFormat::Tsv ? "tsv" : "csv"},
              {"header", has_header},
              {"scenario", to_string(scenario)},
              {"strategy", to_string(strategy)},
              {"alpha_select", alpha_select},
              {"alpha", alpha},
              {"alpha_grid", {grid_lo, grid_hi, grid_step}},
              {"filter", filter_to_json(filter)},
              {"n_list", n_list},
              {"topn", topn},
              {"seed", seed},
              {"train_ratio", train_ratio},
              {"validation_ratio", validation_ratio},
              {"test_user_fraction", test_user_fraction},
              {"mask_seen", mask_seen},
              {"symmetrize_graph", symmetrize_graph},
              {"per_user_detail", per_user_detail}};
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  if (j.contains("source")) c.source_path = j.at("source").get<std::string>();
  if (j.contains("target")) c.target_path = j.at("target").get<std::string>();
  if (j.contains("format")) {
    const auto f = j.at("format").get<std::string>();
    if (f != "tsv" && f != "csv") throw ConfigError("format must be tsv or csv");
    c.format = f == "tsv" ? FileFormat::Tsv : FileFormat::Csv;
  }
  if (j.contains("header")) c.has_header = j.at("header").get<bool>();
  if (j.contains("scenario")) c.scenario = scenario_from_string(j.at("scenario"));
  if (j.contains("strategy")) c.strategy = strategy_from_string(j.at("strategy"));
  if (j.contains("alpha_select")) c.alpha_select = j.at("alpha_select").get<bool>();
  if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
  if (j.contains("alpha_grid")) {
    const auto& g = j.at("alpha_grid");
    c.grid_lo = g.at(0).get<double>();
    c.grid_hi = g.at(1).get<double>();
    c.grid_step = g.at(2).get<double>();
  }
  if (j.contains("filter")) c.filter = filter_from_json(j.at("filter"));
  if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<Index>>();
  if (j.contains("topn")) c.topn = j.at("topn").get<Index>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("train_ratio")) c.train_ratio = j.at("train_ratio").get<double>();
  if (j.contains("validation_ratio"))
    c.validation_ratio = j.at("validation_ratio").get<double>();
  if (j.contains("test_user_fraction"))
    c.test_user_fraction = j.at("test_user_fraction").get<double>();
  if (j.contains("mask_seen")) c.mask_seen = j.at("mask_seen").get<bool>();
  if (j.contains("symmetrize_graph")) c.symmetrize_graph = j.at("symmetrize_graph").get<bool>();
  if (j.contains("per_user_detail")) c.per_user_detail = j.at("per_user_detail").get<bool>();
  if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
  if (j.contains("cache")) c.cache_dir = std::filesystem::path(j.at("cache").get<std::string>());
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  return c;
}

RunConfig RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed config file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::string RunConfig::config_hash_hex() const {
  const std::string canon = to_json().dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

namespace {

struct Pipeline {
  InteractionSet raw_source, raw_target;
  SplitResult split_result;
  CrossDomainData data;
};

Pipeline prepare(const RunConfig& config) {
  Pipeline p;
  LoadOptions load_opts{config.format, config.has_header, 1, 1};
  p.raw_source = load_interactions(config.source_path, load_opts);
  p.raw_target = load_interactions(config.target_path, load_opts);

  SplitSpec spec;
  spec.scenario = config.scenario;
  spec.train_ratio = config.train_ratio;
  spec.validation_ratio = config.validation_ratio;
  spec.test_user_fraction = config.test_user_fraction;
  spec.seed = config.seed;
  p.split_result = split(p.raw_target, p.raw_source, spec);
  p.data = CrossDomainData::build(p.split_result.train_source, p.split_result.train_target);
  return p;
}

GraphOptions graph_options(const RunConfig& config, const CrossDomainData& data) {
  GraphOptions opts;
  opts.symmetrize = config.symmetrize_graph;
  opts.cache_dir = config.cache_dir;
  opts.cache_key = dataset_hash(data.source, data.target) ^ config.seed;
  return opts;
}

std::optional<LowPassState> maybe_fit_lowpass(const RunConfig& config,
                                              const CrossDomainData& data) {
  if (!config.filter.needs_lowpass()) return std::nullopt;
  if (config.cache_dir) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(dataset_hash(data.source, data.target)));
    const auto path = *config.cache_dir / (std::string("lowpass_") + buf + "_k" +
                                           std::to_string(config.filter.lowpass_rank) + ".bin");
    if (std::filesystem::exists(path)) {
      auto state = LowPassState::load(path);
      if (state.basis.rows() == data.r_t->cols()) return state;
    }
    auto state = fit_lowpass(*data.r_t, config.filter.lowpass_rank, config.seed);
    state.dataset_hash = dataset_hash(data.source, data.target);
    std::filesystem::create_directories(*config.cache_dir);
    state.save(path);
    return state;
  }
  return fit_lowpass(*data.r_t, config.filter.lowpass_rank, config.seed);
}

EvalOptions eval_options(const RunConfig& config, Index dump_top_n = 0) {
  EvalOptions opts;
  opts.n_list = config.n_list;
  opts.mask_seen_items = config.mask_seen;
  opts.threads = config.threads;
  opts.per_user_detail = config.per_user_detail;
  opts.dump_top_n = dump_top_n;
  return opts;
}

void stamp(EvalReport& report, const RunConfig& config) {
  report.seed = config.seed;
  report.config_hash = config.config_hash_hex();
}

void write_summary(const std::filesystem::path& path, const EvalReport& report,
                   const RunConfig& config) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write summary: " + path.string());
  out << "crossrec " << kToolVersion << "\n"
      << "scenario   " << to_string(report.scenario) << "\n"
      << "strategy   " << to_string(report.strategy) << "\n"
      << "filter     " << to_string(report.filter.kind) << "\n"
      << "alpha      " << format_double(report.alpha)
      << (config.alpha_select ? " (validation-selected)" : " (fixed)") << "\n"
      << "seed       " << report.seed << "\n"
      << "dataset    " << report.dataset_hash << "\n"
      << "config     " << report.config_hash << "\n"
      << "users      " << report.n_users_evaluated << " evaluated, " << report.n_users_skipped
      << " skipped\n";
  for (const auto& [key, value] : report.metrics)
    out << key << std::string(key.size() < 11 ? 11 - key.size() : 1, ' ')
        << format_double(value) << "\n";
  out << "runtime    " << format_double(report.runtime_seconds) << "s\n";
}

// Evaluation core shared by run/eval-manifest: alpha selection, graph
// assembly, test evaluation, artifact bundle.
int run_on_split(const RunConfig& config, const Pipeline& p) {
  const GraphOptions gopts = graph_options(config, p.data);
  const auto lowpass = maybe_fit_lowpass(config, p.data);
  const LowPassState* lp = lowpass ? &*lowpass : nullptr;

  double alpha = config.alpha;
  std::optional<AlphaSelection> selection;
  if (config.alpha_select) {
    const auto grid = alpha_grid(config.grid_lo, config.grid_hi, config.grid_step);
    selection = select_alpha(grid, p.split_result.validation, p.data, config.strategy,
                             config.filter, lp, eval_options(config), gopts);
    alpha = selection->chosen_alpha;
  }

  const CrossDomainGraph graph = assemble(config.strategy, alpha, p.data, gopts);
  std::vector<Recommendation> recs;
  EvalReport report =
      evaluate(p.data, graph, config.filter, lp, p.split_result.test, p.split_result.validation,
               config.scenario, eval_options(config, config.topn), &recs);
  stamp(report, config);
  report.alpha_selection = selection;

  std::filesystem::create_directories(config.out_dir);
  save_split_manifest(config.out_dir / "split_manifest.json", p.split_result);
  save_report(config.out_dir / "report.json", report);
  save_recommendations(config.out_dir / "recommendations.jsonl", recs);
  write_summary(config.out_dir / "summary.txt", report, config);
  std::cout << "report written to " << (config.out_dir / "report.json").string() << "\n";
  return 0;
}

}  // namespace

int cmd_ingest(const RunConfig& config) {
  config.validate();
  LoadOptions load_opts{config.format, config.has_header, 1, 1};
  const auto src = load_interactions(config.source_path, load_opts);
  const auto tgt = load_interactions(config.target_path, load_opts);
  const auto overlap = detect_overlap(src, tgt);

  auto stats = [](const InteractionSet& s) {
    const double cells = static_cast<double>(s.n_users()) * static_cast<double>(s.n_items());
    return json{{"domain", s.domain_name},
                {"n_users", s.n_users()},
                {"n_items", s.n_items()},
                {"n_interactions", s.n_interactions()},
                {"sparsity",
                 cells == 0.0 ? 1.0 : 1.0 - static_cast<double>(s.n_interactions()) / cells}};
  };
  json j{{"source", stats(src)},
         {"target", stats(tgt)},
         {"n_overlap_users", overlap.size()},
         {"overlap_ratio", tgt.n_users() == 0 ? 0.0
                                              : static_cast<double>(overlap.size()) /
                                                    static_cast<double>(tgt.n_users())},
         {"dataset_hash", dataset_hash_hex(src, tgt)},
         {"tool_version", kToolVersion}};

  std::filesystem::create_directories(config.out_dir);
  const auto path = config.out_dir / "dataset_stats.json";
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_split(const RunConfig& config) {
  config.validate();
  const Pipeline p = prepare(config);
  std::filesystem::create_directories(config.out_dir);
  save_split_manifest(config.out_dir / "split_manifest.json", p.split_result);
  std::cout << "split manifest written: " << p.split_result.train_target.n_interactions()
            << " train, " << p.split_result.validation.size() << " validation, "
            << p.split_result.test.size() << " test pairs\n";
  return 0;
}

int cmd_run(const RunConfig& config) {
  config.validate();
  const Pipeline p = prepare(config);
  return run_on_split(config, p);
}

int cmd_eval_manifest(const RunConfig& config, const std::filesystem::path& manifest_path) {
  config.validate();
  Pipeline p;
  p.split_result = load_split_manifest(manifest_path);
  if (p.split_result.spec.scenario != config.scenario)
    throw ConfigError("manifest scenario does not match --scenario");
  p.data = CrossDomainData::build(p.split_result.train_source, p.split_result.train_target);
  return run_on_split(config, p);
}

int cmd_sweep_alpha(const RunConfig& config) {
  config.validate();
  const Pipeline p = prepare(config);
  const auto grid = alpha_grid(config.grid_lo, config.grid_hi, config.grid_step);
  const GraphOptions gopts = graph_options(config, p.data);
  const auto lowpass = maybe_fit_lowpass(config, p.data);
  const LowPassState* lp = lowpass ? &*lowpass : nullptr;

  CrossDomainGraph graph = assemble(config.strategy, grid.front(), p.data, gopts);
  std::vector<EvalReport> reports;
  reports.reserve(grid.size());
  for (double a : grid) {
    graph.alpha = a;  // factor chains are shared; only the blend changes
    EvalReport report = evaluate(p.data, graph, config.filter, lp, p.split_result.test,
                                 p.split_result.validation, config.scenario,
                                 eval_options(config));
    stamp(report, config);
    reports.push_back(std::move(report));
  }

  std::filesystem::create_directories(config.out_dir);
  std::vector<std::pair<std::string, const EvalReport*>> rows;
  json jreports = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rows.emplace_back(format_double(grid[i]), &reports[i]);
    jreports.push_back(report_to_json(reports[i]));
  }
  save_metric_csv(config.out_dir / "sweep_alpha.csv", "alpha", rows);
  std::ofstream out(config.out_dir / "sweep_alpha.json");
  out << jreports.dump(2) << "\n";
  std::cout << "alpha sweep written: " << grid.size() << " grid points\n";
  return 0;
}

int cmd_ablate_overlap(const RunConfig& config, const std::vector<double>& ratios,
                       const std::vector<std::uint64_t>& seeds) {
  config.validate();
  if (ratios.empty()) throw ConfigError("ablate-overlap requires at least one ratio");
  if (seeds.empty()) throw ConfigError("ablate-overlap requires at least one seed");
  const Pipeline p = prepare(config);
  const GraphOptions gopts = graph_options(config, p.data);

  // With selection enabled, alpha is chosen once on the un-ablated data and
  // held fixed across cells, so the sweep isolates the overlap effect.
  double alpha = config.alpha;
  if (config.alpha_select) {
    const auto lowpass = maybe_fit_lowpass(config, p.data);
    alpha = select_alpha(alpha_grid(config.grid_lo, config.grid_hi, config.grid_step),
                         p.split_result.validation, p.data, config.strategy, config.filter,
                         lowpass ? &*lowpass : nullptr, eval_options(config), gopts)
                .chosen_alpha;
  }

  auto reports = ablate_overlap(ratios, seeds, p.data, config.strategy, alpha,
                                config.filter, p.split_result.test, p.split_result.validation,
                                config.scenario, config.seed, eval_options(config), gopts);
  for (auto& r : reports) stamp(r, config);

  // Per-cell rows plus one mean row per ratio.
  std::vector<EvalReport> means;
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    EvalReport mean = reports[ri * seeds.size()];
    for (auto& [key, value] : mean.metrics) {
      KahanSum sum;
      for (std::size_t si = 0; si < seeds.size(); ++si)
        sum.add(reports[ri * seeds.size() + si].metrics.at(key));
      value = sum.sum / static_cast<double>(seeds.size());
    }
    means.push_back(std::move(mean));
  }

  std::filesystem::create_directories(config.out_dir);
  std::vector<std::pair<std::string, const EvalReport*>> rows;
  json jreports = json::array();
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const auto& r = reports[ri * seeds.size() + si];
      rows.emplace_back(format_double(ratios[ri]) + "," + std::to_string(seeds[si]), &r);
      jreports.push_back(report_to_json(r));
    }
  }
  for (std::size_t ri = 0; ri < ratios.size(); ++ri)
    rows.emplace_back(format_double(ratios[ri]) + ",mean", &means[ri]);
  save_metric_csv(config.out_dir / "ablate_overlap.csv", "ratio,seed", rows);
  std::ofstream out(config.out_dir / "ablate_overlap.json");
  out << jreports.dump(2) << "\n";
  std::cout << "overlap ablation written: " << ratios.size() << " ratios x " << seeds.size()
            << " seeds\n";
  return 0;
}

}  // namespace crossrec
