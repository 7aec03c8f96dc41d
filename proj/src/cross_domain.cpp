#include "crossrec/cross_domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crossrec/errors.hpp"
#include "crossrec/rng.hpp"

namespace crossrec {

CrossDomainData CrossDomainData::build(InteractionSet src, InteractionSet tgt) {
  CrossDomainData data;
  data.source = std::move(src);
  data.target = std::move(tgt);
  data.overlap = detect_overlap(data.source, data.target);
  data.r_s = std::make_shared<SpMat>(normalize(data.source));
  data.r_t = std::make_shared<SpMat>(normalize(data.target));
  data.r_os = std::make_shared<SpMat>(slice_rows(*data.r_s, data.overlap.source_rows));
  data.r_ot = std::make_shared<SpMat>(slice_rows(*data.r_t, data.overlap.target_rows));
  return data;
}

SubsampleResult subsample_overlap(const CrossDomainData& data, double keep_ratio,
                                  std::uint64_t seed) {
  if (!(keep_ratio >= 0.0 && keep_ratio <= 1.0))
    throw ConfigError("keep_ratio must be in [0, 1]");

  const Index n_overlap = data.overlap.size();
  auto keys = data.overlap.overlap_keys;
  auto rng = make_rng(seed, "subsample");
  std::shuffle(keys.begin(), keys.end(), rng);
  const auto n_keep =
      static_cast<Index>(std::llround(keep_ratio * static_cast<double>(n_overlap)));
  const std::set<std::string> dropped(keys.begin() + n_keep, keys.end());

  std::vector<std::pair<std::string, std::string>> kept_records;
  kept_records.reserve(data.source.interactions.size());
  for (const auto& [u, i] : data.source.interactions) {
    const auto& user_key = data.source.users[static_cast<std::size_t>(u)];
    if (dropped.count(user_key)) continue;
    kept_records.emplace_back(user_key, data.source.items[static_cast<std::size_t>(i)]);
  }

  SubsampleResult result;
  result.n_overlap_before = n_overlap;
  result.requested_keep = keep_ratio;
  auto source = make_interaction_set(data.source.domain_name, std::move(kept_records));
  if (source.interactions.empty())
    warn("subsample_overlap: source domain emptied at keep_ratio " + std::to_string(keep_ratio));
  result.data = CrossDomainData::build(std::move(source), data.target);
  result.n_overlap_after = result.data.overlap.size();
  result.achieved_ratio = n_overlap == 0 ? 1.0
                                         : static_cast<double>(result.n_overlap_after) /
                                               static_cast<double>(n_overlap);
  return result;
}

}  // namespace crossrec
