#include "crossrec/reference/synthetic.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>
#include <vector>

#include "crossrec/rng.hpp"

namespace crossrec::reference {

namespace {

std::string key(const char* prefix, Index i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%04lld", prefix, static_cast<long long>(i));
  return buf;
}

// Users 0..n_overlap-1 of either domain are the shared ones.
std::string user_key(const SyntheticSpec& spec, const char* domain_prefix, Index u) {
  return u < spec.n_overlap ? key("ou", u) : key(domain_prefix, u);
}

}  // namespace

std::pair<InteractionSet, InteractionSet> generate_synthetic(const SyntheticSpec& spec,
                                                             std::uint64_t seed) {
  if (spec.n_clusters < 1 || spec.n_users_source < 1 || spec.n_users_target < 1 ||
      spec.n_items_source < 1 || spec.n_items_target < 1)
    throw std::invalid_argument("generate_synthetic: degenerate sizes");
  if (spec.n_overlap > std::min(spec.n_users_source, spec.n_users_target))
    throw std::invalid_argument("generate_synthetic: overlap exceeds user counts");
  if (!(spec.density_source > 0.0 && spec.density_source <= 1.0) ||
      !(spec.density_target > 0.0 && spec.density_target <= 1.0))
    throw std::invalid_argument("generate_synthetic: density must be in (0, 1]");

  auto rng = make_rng(seed, "synthetic");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Index> pick_cluster(0, spec.n_clusters - 1);

  const auto item_cluster = [&](Index i) { return i % spec.n_clusters; };

  // Source-domain user clusters are round-robin; target clusters of
  // overlapping users follow the source cluster with probability
  // `coherence`, everyone else is round-robin as well.
  std::vector<Index> source_cluster(static_cast<std::size_t>(spec.n_users_source));
  for (Index u = 0; u < spec.n_users_source; ++u)
    source_cluster[static_cast<std::size_t>(u)] = u % spec.n_clusters;
  std::vector<Index> target_cluster(static_cast<std::size_t>(spec.n_users_target));
  for (Index u = 0; u < spec.n_users_target; ++u) {
    if (u < spec.n_overlap)
      target_cluster[static_cast<std::size_t>(u)] = unit(rng) < spec.coherence
                                                        ? source_cluster[static_cast<std::size_t>(u)]
                                                        : pick_cluster(rng);
    else
      target_cluster[static_cast<std::size_t>(u)] = u % spec.n_clusters;
  }

  auto sample_domain = [&](Index n_users, Index n_items, double density,
                           const std::vector<Index>& user_cluster, const char* uprefix,
                           const char* iprefix) {
    std::vector<std::pair<std::string, std::string>> records;
    for (Index u = 0; u < n_users; ++u) {
      Index degree = 0;
      for (Index i = 0; i < n_items; ++i) {
        const bool within = user_cluster[static_cast<std::size_t>(u)] == item_cluster(i);
        const double p = density * (within ? spec.within_boost : 1.0 - spec.within_boost);
        if (unit(rng) < p) {
          records.emplace_back(user_key(spec, uprefix, u), key(iprefix, i));
          ++degree;
        }
      }
      if (degree == 0) {
        // Keep every user alive with one within-cluster interaction.
        std::vector<Index> in_cluster;
        for (Index i = 0; i < n_items; ++i)
          if (user_cluster[static_cast<std::size_t>(u)] == item_cluster(i))
            in_cluster.push_back(i);
        if (in_cluster.empty())
          for (Index i = 0; i < n_items; ++i) in_cluster.push_back(i);
        std::uniform_int_distribution<std::size_t> pick(0, in_cluster.size() - 1);
        records.emplace_back(user_key(spec, uprefix, u), key(iprefix, in_cluster[pick(rng)]));
      }
    }
    return records;
  };

  auto src_records = sample_domain(spec.n_users_source, spec.n_items_source, spec.density_source,
                                   source_cluster, "su", "si");
  auto tgt_records = sample_domain(spec.n_users_target, spec.n_items_target, spec.density_target,
                                   target_cluster, "tu", "ti");

  return {make_interaction_set("source", std::move(src_records)),
          make_interaction_set("target", std::move(tgt_records))};
}

}  // namespace crossrec::reference
