#include "crossrec/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "crossrec/errors.hpp"
#include "crossrec/rng.hpp"

namespace crossrec {

using nlohmann::json;

std::string to_string(Scenario s) { return s == Scenario::Intra ? "intra" : "inter"; }

Scenario scenario_from_string(const std::string& s) {
  if (s == "intra") return Scenario::Intra;
  if (s == "inter") return Scenario::Inter;
  throw ConfigError("unknown scenario '" + s + "' (expected intra|inter)");
}

namespace {

void check_spec(const SplitSpec& spec) {
  if (!(spec.train_ratio > 0.0 && spec.train_ratio <= 1.0))
    throw ConfigError("train_ratio must be in (0, 1]");
  if (!(spec.validation_ratio >= 0.0 && spec.validation_ratio < 1.0))
    throw ConfigError("validation_ratio must be in [0, 1)");
  if (!(spec.test_user_fraction > 0.0 && spec.test_user_fraction <= 1.0))
    throw ConfigError("test_user_fraction must be in (0, 1]");
}

KeyPair key_pair(const InteractionSet& set, Index u, Index i) {
  return {set.users[static_cast<std::size_t>(u)], set.items[static_cast<std::size_t>(i)]};
}

// Holdout count for one user. The test carve guarantees every eligible
// user at least one pair; the validation carve does not. Neither ever
// takes the whole history.
Index holdout_count(Index degree, double ratio, bool at_least_one) {
  if (degree < 2) return 0;
  auto n = static_cast<Index>(std::llround(ratio * static_cast<double>(degree)));
  if (at_least_one) n = std::max<Index>(1, n);
  return std::min<Index>(n, degree - 1);
}

// Carve pairs per user out of `pool[u]`, appending them to `out`.
// Consumes rng in ascending user order so splits are reproducible.
void carve_per_user(std::vector<std::vector<Index>>& pool, const InteractionSet& set,
                    double ratio, bool at_least_one, std::mt19937_64& rng,
                    std::vector<KeyPair>& out) {
  for (Index u = 0; u < set.n_users(); ++u) {
    auto& its = pool[static_cast<std::size_t>(u)];
    const Index n_take = holdout_count(static_cast<Index>(its.size()), ratio, at_least_one);
    if (n_take == 0) continue;
    std::shuffle(its.begin(), its.end(), rng);
    for (Index k = 0; k < n_take; ++k) {
      out.push_back(key_pair(set, u, its.back()));
      its.pop_back();
    }
    std::sort(its.begin(), its.end());
  }
}

std::vector<std::pair<std::string, std::string>> to_records(
    const InteractionSet& set, const std::vector<std::vector<Index>>& pool) {
  std::vector<std::pair<std::string, std::string>> recs;
  for (Index u = 0; u < set.n_users(); ++u)
    for (Index i : pool[static_cast<std::size_t>(u)])
      recs.emplace_back(set.users[static_cast<std::size_t>(u)],
                        set.items[static_cast<std::size_t>(i)]);
  return recs;
}

}  // namespace

SplitResult split(const InteractionSet& tgt, const InteractionSet& src, const SplitSpec& spec) {
  check_spec(spec);
  SplitResult result;
  result.spec = spec;
  auto rng = make_rng(spec.seed, "split");

  auto pool = tgt.items_by_user();

  if (spec.scenario == Scenario::Intra) {
    bool warned = false;
    for (Index u = 0; u < tgt.n_users(); ++u) {
      if (pool[static_cast<std::size_t>(u)].size() < 2 && !warned) {
        warn("intra split: users with a single interaction contribute no test pair");
        warned = true;
      }
    }
    carve_per_user(pool, tgt, 1.0 - spec.train_ratio, true, rng, result.test);
    carve_per_user(pool, tgt, spec.validation_ratio, false, rng, result.validation);
    result.train_source = src;
  } else {
    const OverlapInfo overlap = detect_overlap(src, tgt);
    if (overlap.empty()) throw DataError("inter split requires a nonempty user overlap");

    auto test_rows = overlap.target_rows;
    auto user_rng = make_rng(spec.seed, "split-users");
    std::shuffle(test_rows.begin(), test_rows.end(), user_rng);
    const auto n_test = static_cast<Index>(
        std::llround(spec.test_user_fraction * static_cast<double>(test_rows.size())));
    test_rows.resize(static_cast<std::size_t>(std::max<Index>(1, n_test)));

    for (Index u : test_rows) {
      for (Index i : pool[static_cast<std::size_t>(u)]) result.test.push_back(key_pair(tgt, u, i));
      pool[static_cast<std::size_t>(u)].clear();
    }
    carve_per_user(pool, tgt, spec.validation_ratio, false, rng, result.validation);
    result.train_source = src;  // cold-start users keep their source history
  }

  result.train_target = make_interaction_set(tgt.domain_name, to_records(tgt, pool));
  if (result.train_target.interactions.empty())
    throw DataError("split produced an empty target training set");
  std::sort(result.validation.begin(), result.validation.end());
  std::sort(result.test.begin(), result.test.end());
  return result;
}

namespace {

json pairs_to_json(const std::vector<KeyPair>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back(json::array({p.user, p.item}));
  return arr;
}

std::vector<KeyPair> pairs_from_json(const json& arr) {
  std::vector<KeyPair> out;
  for (const auto& e : arr) out.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
  return out;
}

json set_to_json(const InteractionSet& set) {
  json pairs = json::array();
  for (const auto& [u, i] : set.interactions)
    pairs.push_back(json::array(
        {set.users[static_cast<std::size_t>(u)], set.items[static_cast<std::size_t>(i)]}));
  return json{{"domain", set.domain_name}, {"pairs", pairs}};
}

InteractionSet set_from_json(const json& j) {
  std::vector<std::pair<std::string, std::string>> recs;
  for (const auto& e : j.at("pairs"))
    recs.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  return make_interaction_set(j.at("domain").get<std::string>(), std::move(recs));
}

}  // namespace

void save_split_manifest(const std::filesystem::path& path, const SplitResult& result) {
  json j{{"spec",
          {{"scenario", to_string(result.spec.scenario)},
           {"train_ratio", result.spec.train_ratio},
           {"validation_ratio", result.spec.validation_ratio},
           {"test_user_fraction", result.spec.test_user_fraction},
           {"seed", result.spec.seed}}},
         {"train_source", set_to_json(result.train_source)},
         {"train_target", set_to_json(result.train_target)},
         {"validation", pairs_to_json(result.validation)},
         {"test", pairs_to_json(result.test)}};
  std::ofstream out(path);
  if (!out) throw DataError("cannot write split manifest: " + path.string());
  out << j.dump(2) << "\n";
}

SplitResult load_split_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read split manifest: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed split manifest " + path.string() + ": " + e.what());
  }
  SplitResult result;
  const auto& spec = j.at("spec");
  result.spec.scenario = scenario_from_string(spec.at("scenario").get<std::string>());
  result.spec.train_ratio = spec.at("train_ratio").get<double>();
  result.spec.validation_ratio = spec.at("validation_ratio").get<double>();
  result.spec.test_user_fraction = spec.at("test_user_fraction").get<double>();
  result.spec.seed = spec.at("seed").get<std::uint64_t>();
  result.train_source = set_from_json(j.at("train_source"));
  result.train_target = set_from_json(j.at("train_target"));
  result.validation = pairs_from_json(j.at("validation"));
  result.test = pairs_from_json(j.at("test"));
  return result;
}

}  // namespace crossrec
