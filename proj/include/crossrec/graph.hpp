#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "crossrec/cross_domain.hpp"
#include "crossrec/factor_chain.hpp"

namespace crossrec {

// How the cross-domain similarity graph is laid out:
//   ItemsOnly        — target items only                   (dim |I_T|)
//   OverlapAugmented — overlapping users + target items    (dim |U_O| + |I_T|)
//   UserAugmented    — all target users + target items     (dim |U_T| + |I_T|)
enum class Strategy { ItemsOnly, OverlapAugmented, UserAugmented };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

// 2x2 block operator over a [user-block | item-block] layout; user_dim may
// be zero (items-only). The lower-left block is the transpose of the
// upper-right one by construction.
struct BlockOperator {
  Index user_dim = 0;
  Index item_dim = 0;
  FactorChain uu;  // user x user
  FactorChain ui;  // user x item
  FactorChain iu;  // item x user (== ui transposed)
  FactorChain ii;  // item x item

  Index dim() const { return user_dim + item_dim; }
  bool is_zero() const;

  RowVec apply(const RowVec& x) const;
  BlockOperator transposed() const;
  DenseMatrix dense() const;

  static BlockOperator items_only(FactorChain ii);
  static BlockOperator zero(Index user_dim, Index item_dim);
};

struct GraphOptions {
  // The cross-Gram factor C = R_OS^T R_OT is shared by every bridged-chain
  // application; precompute it while its nnz fits the budget.
  bool cache_cross_gram = true;
  Index cross_gram_nnz_budget = 20'000'000;
  std::optional<std::filesystem::path> cache_dir;  // on-disk triplet cache
  std::uint64_t cache_key = 0;                     // dataset hash ^ split seed
  // Score with (G + G^T)/2 instead of G. Off by default: the bridged
  // similarity products are not symmetric in general and the equations are
  // applied as written.
  bool symmetrize = false;
};

// Target-only similarity blocks per strategy:
//   ItemsOnly:        S_it = R_T^T R_T
//   OverlapAugmented: [R_OT R_OT^T, R_OT R_T^T R_T; ., R_T^T R_T]
//   UserAugmented:    [R_T R_T^T,   R_T;            ., R_T^T R_T]
// OverlapAugmented with an empty overlap degrades to items-only (warned).
BlockOperator build_target_only(Strategy strategy, const CrossDomainData& data);

// Source-bridged similarity blocks routed through the overlapping users'
// cross-Gram factors. Empty overlap yields a zero operator (warned).
// `cross_gram`, when provided, substitutes C for the R_OS^T R_OT segments.
BlockOperator build_source_bridged(Strategy strategy, const CrossDomainData& data,
                                   std::shared_ptr<const SpMat> cross_gram = nullptr);

// The alpha-blended cross-domain similarity operator. The blend is applied
// to outputs — x G = (1-alpha) (x S) + alpha (x S~) — so G itself is never
// materialized outside of materialize().
struct CrossDomainGraph {
  Strategy strategy = Strategy::ItemsOnly;
  double alpha = 0.0;
  BlockOperator target_part;   // S
  BlockOperator bridged_part;  // S~
  Index n_items = 0;
  Index aug_dim = 0;
  bool symmetrize = false;

  Index user_dim() const { return aug_dim - n_items; }

  RowVec apply(const RowVec& x) const;

  // Explicit (1-alpha) S + alpha S~; refuses above max_dim to guard against
  // accidental dense blowups.
  DenseMatrix materialize(Index max_dim = 2000) const;
};

CrossDomainGraph assemble(Strategy strategy, double alpha, const CrossDomainData& data,
                          const GraphOptions& opts = {});

// C = R_OS^T R_OT, or nullptr when the overlap is empty or nnz exceeds the
// budget. Reads/writes the on-disk triplet cache when a cache_dir is set.
std::shared_ptr<const SpMat> compute_cross_gram(const CrossDomainData& data,
                                                const GraphOptions& opts);

}  // namespace crossrec
