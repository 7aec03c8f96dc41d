#pragma once

#include "crossrec/filter.hpp"
#include "crossrec/interactions.hpp"
#include "crossrec/split.hpp"

namespace crossrec::reference {

// Dense reference instance for desk-scale verification. Every quantity is
// rebuilt here from the raw interaction records with literal dense
// products — no factorization tricks, no caching, and no code shared with
// the engine beyond primitive dense multiplies. Intermediates are
// self-checked against an independent regrouping at build time.
struct DenseInstance {
  DenseMatrix source_binary, target_binary;
  std::vector<Index> overlap_source_rows, overlap_target_rows;
  DenseMatrix r_s, r_t, r_os, r_ot;  // normalized

  Index n_items() const { return r_t.cols(); }

  static DenseInstance build(const InteractionSet& src, const InteractionSet& tgt);
};

// Dense target-only and source-bridged similarity matrices over the
// strategy's augmented space.
DenseMatrix dense_target_only(const DenseInstance& inst, Strategy strategy);
DenseMatrix dense_source_bridged(const DenseInstance& inst, Strategy strategy);

// Dense personalized signals: one row per target user (intra) or source
// user (inter), over the strategy's augmented space.
DenseMatrix dense_signals(const DenseInstance& inst, Strategy strategy, Scenario scenario);

// Full pipeline by literal dense evaluation: filtered signals through
// (1-alpha) S + alpha S~, then the trailing-items slice. Guarded to total
// dimensions <= 2000.
DenseMatrix oracle_scores(const DenseInstance& inst, Strategy strategy, Scenario scenario,
                          double alpha, const FilterSpec& filter);

}  // namespace crossrec::reference
