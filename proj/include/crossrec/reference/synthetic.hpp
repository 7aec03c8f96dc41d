#pragma once

#include <cstdint>
#include <utility>

#include "crossrec/interactions.hpp"

namespace crossrec::reference {

// Planted-cluster bipartite model for desk-scale experiments. Users and
// items carry cluster labels; a (user, item) pair interacts with
// probability density * within_boost inside the user's cluster and
// density * (1 - within_boost) across clusters. Overlapping users share one
// key across domains and keep the same cluster in both with probability
// `coherence`, which controls how much transferable signal the source
// domain carries.
struct SyntheticSpec {
  Index n_users_source = 40;
  Index n_users_target = 30;
  Index n_overlap = 20;
  Index n_items_source = 50;
  Index n_items_target = 50;
  double density_source = 0.05;
  double density_target = 0.05;
  Index n_clusters = 3;
  double within_boost = 0.9;
  double coherence = 1.0;
};

std::pair<InteractionSet, InteractionSet> generate_synthetic(const SyntheticSpec& spec,
                                                             std::uint64_t seed);

}  // namespace crossrec::reference
