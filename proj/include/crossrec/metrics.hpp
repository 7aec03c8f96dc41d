#pragma once

#include <cmath>
#include <span>
#include <unordered_set>

#include "crossrec/signal.hpp"

namespace crossrec {

using ItemSet = std::unordered_set<Index>;

// |top-N ∩ relevant| / |relevant|. Returns 0 for empty rankings; callers
// skip users with empty relevant sets.
inline double recall_at_n(std::span<const Index> ranked, const ItemSet& relevant, Index n) {
  if (relevant.empty()) return 0.0;
  const auto limit = std::min<Index>(n, static_cast<Index>(ranked.size()));
  Index hits = 0;
  for (Index p = 0; p < limit; ++p)
    if (relevant.count(ranked[static_cast<std::size_t>(p)])) ++hits;
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

// Binary-relevance NDCG with 1/log2(p+1) gains, positions starting at 1.
inline double ndcg_at_n(std::span<const Index> ranked, const ItemSet& relevant, Index n) {
  if (relevant.empty()) return 0.0;
  const auto limit = std::min<Index>(n, static_cast<Index>(ranked.size()));
  double dcg = 0.0;
  for (Index p = 0; p < limit; ++p)
    if (relevant.count(ranked[static_cast<std::size_t>(p)]))
      dcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  const auto ideal = std::min<Index>(n, static_cast<Index>(relevant.size()));
  double idcg = 0.0;
  for (Index p = 0; p < ideal; ++p) idcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  return idcg == 0.0 ? 0.0 : dcg / idcg;
}

inline double recall_at_n(const RankedList& ranked, const ItemSet& relevant, Index n) {
  return recall_at_n(std::span<const Index>(ranked.items), relevant, n);
}

inline double ndcg_at_n(const RankedList& ranked, const ItemSet& relevant, Index n) {
  return ndcg_at_n(std::span<const Index>(ranked.items), relevant, n);
}

}  // namespace crossrec
