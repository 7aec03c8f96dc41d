#include "crossrec/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "crossrec/errors.hpp"
#include "crossrec/parallel.hpp"

namespace crossrec {

std::string metric_key(const std::string& name, Index n) {
  return name + "@" + std::to_string(n);
}

std::vector<double> alpha_grid(double lo, double hi, double step) {
  if (step <= 0.0 || hi < lo) throw ConfigError("alpha grid: expected LO:HI:STEP with step > 0");
  std::vector<double> grid;
  const auto count = static_cast<Index>(std::llround((hi - lo) / step));
  for (Index i = 0; i <= count; ++i) {
    double a = lo + static_cast<double>(i) * step;
    a = std::min(a, hi);
    if (a < 0.0 || a > 1.0) throw ConfigError("alpha grid values must stay in [0, 1]");
    grid.push_back(a);
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

struct TestUser {
  std::string key;
  Index signal_row = -1;  // target row (intra) or source row (inter)
  ItemSet relevant;       // catalog item indices
  std::vector<Index> seen;
};

// Groups held-out pairs by user and resolves keys against the training
// catalog. Unmappable users/items are dropped here and counted as skips.
std::vector<TestUser> resolve_test_users(const CrossDomainData& data,
                                         const std::vector<KeyPair>& test,
                                         const std::vector<KeyPair>& validation,
                                         Scenario scenario, bool mask_seen_items,
                                         Index* n_unresolved) {
  std::map<std::string, TestUser> by_key;
  for (const auto& p : test) {
    auto& tu = by_key[p.user];
    tu.key = p.user;
    if (auto idx = data.target.item_index(p.item)) tu.relevant.insert(*idx);
  }

  std::map<std::string, std::vector<Index>> val_items;
  if (scenario == Scenario::Intra && mask_seen_items) {
    for (const auto& p : validation)
      if (auto idx = data.target.item_index(p.item)) val_items[p.user].push_back(*idx);
  }
  const auto train_adj = (scenario == Scenario::Intra && mask_seen_items)
                             ? data.target.items_by_user()
                             : std::vector<std::vector<Index>>{};

  std::vector<TestUser> users;
  users.reserve(by_key.size());
  *n_unresolved = 0;
  for (auto& [key, tu] : by_key) {
    const auto row = scenario == Scenario::Intra ? data.target.user_index(key)
                                                 : data.source.user_index(key);
    if (!row || tu.relevant.empty()) {
      ++*n_unresolved;
      continue;
    }
    tu.signal_row = *row;
    if (scenario == Scenario::Intra && mask_seen_items) {
      tu.seen = train_adj[static_cast<std::size_t>(*row)];
      if (auto it = val_items.find(key); it != val_items.end())
        tu.seen.insert(tu.seen.end(), it->second.begin(), it->second.end());
    }
    users.push_back(std::move(tu));
  }
  return users;
}

struct UserOutcome {
  bool skipped = true;
  std::map<std::string, double> metrics;
  Recommendation recs;
};

}  // namespace

EvalReport evaluate(const CrossDomainData& data, const CrossDomainGraph& graph,
                    const FilterSpec& filter, const LowPassState* lowpass,
                    const std::vector<KeyPair>& test, const std::vector<KeyPair>& validation,
                    Scenario scenario, const EvalOptions& opts,
                    std::vector<Recommendation>* recommendations) {
  if (test.empty()) throw DataError("evaluate: empty test set");
  if (opts.n_list.empty()) throw ConfigError("evaluate: empty N list");
  const auto started = std::chrono::steady_clock::now();

  Index n_unresolved = 0;
  const auto users = resolve_test_users(data, test, validation, scenario,
                                        opts.mask_seen_items, &n_unresolved);
  const SignalMatrix signal = build_signal(scenario, graph.strategy, data);
  const Index max_n =
      std::max(*std::max_element(opts.n_list.begin(), opts.n_list.end()), opts.dump_top_n);

  std::vector<UserOutcome> outcomes(users.size());
  parallel_for(static_cast<Index>(users.size()), opts.threads, [&](Index i) {
    const auto& tu = users[static_cast<std::size_t>(i)];
    auto& out = outcomes[static_cast<std::size_t>(i)];
    ScoreVector scores =
        score_user(signal.row(tu.signal_row), graph, filter, lowpass, tu.signal_row);
    if (scores.scores.cwiseAbs().maxCoeff() == 0.0) return;  // zero signal
    scores = mask_seen(std::move(scores), tu.seen);
    const RankedList ranked = top_n(scores, max_n);
    if (ranked.items.empty()) return;  // empty candidate pool
    out.skipped = false;
    for (Index n : opts.n_list) {
      out.metrics[metric_key("recall", n)] = recall_at_n(ranked, tu.relevant, n);
      out.metrics[metric_key("ndcg", n)] = ndcg_at_n(ranked, tu.relevant, n);
    }
    if (opts.dump_top_n > 0) {
      out.recs.user_key = tu.key;
      const auto take = std::min<Index>(opts.dump_top_n, static_cast<Index>(ranked.items.size()));
      for (Index p = 0; p < take; ++p) {
        const Index item = ranked.items[static_cast<std::size_t>(p)];
        out.recs.item_keys.push_back(data.target.items[static_cast<std::size_t>(item)]);
        out.recs.scores.push_back(scores.scores(item));
      }
    }
  });

  EvalReport report;
  report.scenario = scenario;
  report.strategy = graph.strategy;
  report.alpha = graph.alpha;
  report.filter = filter;
  report.n_list = opts.n_list;
  report.n_users_skipped = n_unresolved;
  report.dataset_hash = dataset_hash_hex(data.source, data.target);

  std::map<std::string, KahanSum> sums;
  for (std::size_t i = 0; i < users.size(); ++i) {
    auto& out = outcomes[i];
    if (out.skipped) {
      ++report.n_users_skipped;
      continue;
    }
    ++report.n_users_evaluated;
    for (const auto& [key, value] : out.metrics) sums[key].add(value);
    if (opts.per_user_detail) report.per_user.push_back({users[i].key, out.metrics});
    if (recommendations && opts.dump_top_n > 0)
      recommendations->push_back(std::move(out.recs));
  }
  if (report.n_users_evaluated == 0) throw DataError("evaluate: zero evaluable users");
  for (const auto& [key, sum] : sums)
    report.metrics[key] = sum.sum / static_cast<double>(report.n_users_evaluated);

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

AlphaSelection select_alpha(const std::vector<double>& grid, const std::vector<KeyPair>& validation,
                            const CrossDomainData& data, Strategy strategy,
                            const FilterSpec& filter, const LowPassState* lowpass,
                            const EvalOptions& opts, const GraphOptions& graph_opts) {
  if (grid.empty()) throw ConfigError("select_alpha: empty grid");
  for (double a : grid)
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("select_alpha: grid values must be in [0, 1]");
  if (validation.empty()) throw DataError("select_alpha: empty validation set");

  // Validation pairs are held-out target-domain history, so they are scored
  // with intra-style signals; only the user's remaining training items are
  // masked (the validation items themselves are the relevant set).
  Index n_unresolved = 0;
  const auto users = resolve_test_users(data, validation, {}, Scenario::Intra,
                                        opts.mask_seen_items, &n_unresolved);
  if (users.empty()) throw DataError("select_alpha: no resolvable validation users");

  CrossDomainGraph graph = assemble(strategy, 0.0, data, graph_opts);
  const SignalMatrix signal = build_signal(Scenario::Intra, strategy, data);
  constexpr Index kSelectionN = 20;

  AlphaSelection sel;
  sel.grid = grid;
  sel.validation_ndcg.assign(grid.size(), 0.0);

  // For filters linear in the graph the endpoint outputs are computed once
  // per user and the grid is a pure recombination; the order-K filter is
  // polynomial in alpha and recomputes per grid point.
  const bool endpoint_fast_path = filter.kind != FilterKind::LinearOrderK;

  if (endpoint_fast_path) {
    struct Endpoints {
      RowVec target, bridged, lowpass_part;
    };
    const BlockOperator target_t =
        graph.symmetrize ? graph.target_part.transposed() : BlockOperator{};
    const BlockOperator bridged_t =
        graph.symmetrize ? graph.bridged_part.transposed() : BlockOperator{};
    std::vector<Endpoints> parts(users.size());
    parallel_for(static_cast<Index>(users.size()), opts.threads, [&](Index i) {
      const auto& tu = users[static_cast<std::size_t>(i)];
      const RowVec x = signal.row(tu.signal_row);
      auto& ep = parts[static_cast<std::size_t>(i)];
      ep.target = graph.target_part.apply(x).rightCols(graph.n_items);
      ep.bridged = graph.bridged_part.apply(x).rightCols(graph.n_items);
      if (graph.symmetrize) {
        ep.target = 0.5 * (ep.target + target_t.apply(x).rightCols(graph.n_items));
        ep.bridged = 0.5 * (ep.bridged + bridged_t.apply(x).rightCols(graph.n_items));
      }
      if (filter.needs_lowpass())
        ep.lowpass_part = project_items(*lowpass, x.rightCols(graph.n_items));
    });

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const double a = grid[gi];
      KahanSum sum;
      Index evaluated = 0;
      for (std::size_t i = 0; i < users.size(); ++i) {
        const auto& tu = users[i];
        const auto& ep = parts[i];
        ScoreVector sv;
        sv.user = tu.signal_row;
        switch (filter.kind) {
          case FilterKind::Linear:
            sv.scores = (1.0 - a) * ep.target + a * ep.bridged;
            break;
          case FilterKind::IdealLowPass:
            sv.scores = ep.lowpass_part;
            break;
          case FilterKind::Mixed:
            sv.scores = (1.0 - a) * ep.target + a * ep.bridged +
                        filter.mix_weight * ep.lowpass_part;
            break;
          case FilterKind::LinearOrderK:
            throw std::logic_error("unreachable");
        }
        if (sv.scores.cwiseAbs().maxCoeff() == 0.0) continue;
        sv = mask_seen(std::move(sv), tu.seen);
        const RankedList ranked = top_n(sv, kSelectionN);
        if (ranked.items.empty()) continue;
        sum.add(ndcg_at_n(ranked, tu.relevant, kSelectionN));
        ++evaluated;
      }
      sel.validation_ndcg[gi] = evaluated == 0 ? 0.0 : sum.sum / static_cast<double>(evaluated);
    }
  } else {
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      graph.alpha = grid[gi];
      std::vector<double> ndcgs(users.size(), -1.0);
      parallel_for(static_cast<Index>(users.size()), opts.threads, [&](Index i) {
        const auto& tu = users[static_cast<std::size_t>(i)];
        ScoreVector sv =
            score_user(signal.row(tu.signal_row), graph, filter, lowpass, tu.signal_row);
        if (sv.scores.cwiseAbs().maxCoeff() == 0.0) return;
        sv = mask_seen(std::move(sv), tu.seen);
        const RankedList ranked = top_n(sv, kSelectionN);
        if (ranked.items.empty()) return;
        ndcgs[static_cast<std::size_t>(i)] = ndcg_at_n(ranked, tu.relevant, kSelectionN);
      });
      KahanSum sum;
      Index evaluated = 0;
      for (double v : ndcgs)
        if (v >= 0.0) {
          sum.add(v);
          ++evaluated;
        }
      sel.validation_ndcg[gi] = evaluated == 0 ? 0.0 : sum.sum / static_cast<double>(evaluated);
    }
  }

  // Ascending scan with strict improvement keeps the smallest alpha on ties.
  std::size_t best = 0;
  for (std::size_t gi = 1; gi < grid.size(); ++gi)
    if (sel.validation_ndcg[gi] > sel.validation_ndcg[best]) best = gi;
  sel.chosen_alpha = grid[best];
  return sel;
}

std::vector<EvalReport> ablate_overlap(const std::vector<double>& ratios,
                                       const std::vector<std::uint64_t>& seeds,
                                       const CrossDomainData& data, Strategy strategy,
                                       double alpha, const FilterSpec& filter,
                                       const std::vector<KeyPair>& test,
                                       const std::vector<KeyPair>& validation, Scenario scenario,
                                       std::uint64_t run_seed, const EvalOptions& opts,
                                       const GraphOptions& graph_opts) {
  for (double r : ratios)
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("ablate_overlap: ratios must be in [0, 1]");

  std::optional<LowPassState> lowpass;
  if (filter.needs_lowpass()) lowpass = fit_lowpass(*data.r_t, filter.lowpass_rank, run_seed);

  GraphOptions sub_opts = graph_opts;
  sub_opts.cache_dir.reset();  // subsampled data would poison a keyed cache

  std::vector<EvalReport> reports;
  for (double ratio : ratios) {
    for (std::uint64_t seed : seeds) {
      const SubsampleResult sub = subsample_overlap(data, ratio, seed);
      const CrossDomainGraph graph = assemble(strategy, alpha, sub.data, sub_opts);
      EvalReport report = evaluate(sub.data, graph, filter, lowpass ? &*lowpass : nullptr, test,
                                   validation, scenario, opts);
      report.overlap_tag = OverlapTag{ratio, sub.achieved_ratio, sub.n_overlap_after, seed};
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

}  // namespace crossrec
