#pragma once

#include <span>
#include <vector>

#include "crossrec/filter.hpp"
#include "crossrec/split.hpp"

namespace crossrec {

// Personalized input signals aligned to a graph's augmented row space,
// produced lazily one user row at a time.
//
// Row layouts ([user-block | item-block]):
//   intra ItemsOnly        x_u = r_u                      (r_u = row of R_T)
//   intra OverlapAugmented x_u = [r_u R_OT^T | r_u]
//   intra UserAugmented    x_u = [r_u R_T^T  | r_u]
//   inter ItemsOnly        x_u = s_u R_OS^T R_OT          (s_u = row of R_S)
//   inter OverlapAugmented x_u = [s_u R_OS^T | s_u R_OS^T R_OT]
//   inter UserAugmented    x_u = [q_u R_T^T  | q_u],  q_u = s_u R_OS^T R_OT
struct SignalMatrix {
  Scenario scenario = Scenario::Intra;
  Strategy strategy = Strategy::ItemsOnly;
  std::shared_ptr<const SpMat> r_s, r_t, r_os, r_ot;
  Index dim = 0;       // matches the paired graph's aug_dim
  Index user_dim = 0;  // width of the user block
  Index n_rows = 0;    // target users (intra) or source users (inter)

  RowVec row(Index u) const;
};

SignalMatrix build_signal(Scenario scenario, Strategy strategy, const CrossDomainData& data);

// Dense per-user scores over the target catalog with a seen-item mask.
// Masked items rank behind everything regardless of score.
struct ScoreVector {
  Index user = -1;
  RowVec scores;              // length n_items
  std::vector<char> masked;   // empty or length n_items

  bool is_masked(Index i) const {
    return !masked.empty() && masked[static_cast<std::size_t>(i)] != 0;
  }
};

// Full filtered application followed by the trailing-items slice (identity
// for items-only graphs). Scores are not normalized: rankings are
// scale-invariant.
ScoreVector score_user(const RowVec& x, const CrossDomainGraph& graph, const FilterSpec& spec,
                       const LowPassState* lowpass = nullptr, Index user = -1);

ScoreVector mask_seen(ScoreVector scores, std::span<const Index> seen);

struct RankedList {
  Index user = -1;
  std::vector<Index> items;  // score descending, index ascending on ties
};

RankedList top_n(const ScoreVector& scores, Index n);

}  // namespace crossrec
