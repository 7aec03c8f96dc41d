#pragma once

#include <memory>

#include "crossrec/interactions.hpp"
#include "crossrec/normalize.hpp"

namespace crossrec {

// Normalized training matrices for a domain pair plus the overlap slices.
// R_OS / R_OT are row slices of the fully normalized R_S / R_T. Immutable
// after build and safe to share across threads read-only.
struct CrossDomainData {
  InteractionSet source;
  InteractionSet target;
  OverlapInfo overlap;
  std::shared_ptr<const SpMat> r_s;   // |U_S| x |I_S|
  std::shared_ptr<const SpMat> r_t;   // |U_T| x |I_T|
  std::shared_ptr<const SpMat> r_os;  // |U_O| x |I_S|
  std::shared_ptr<const SpMat> r_ot;  // |U_O| x |I_T|

  Index n_items() const { return r_t->cols(); }

  static CrossDomainData build(InteractionSet src, InteractionSet tgt);
};

struct SubsampleResult {
  CrossDomainData data;
  Index n_overlap_before = 0;
  Index n_overlap_after = 0;
  double requested_keep = 1.0;
  double achieved_ratio = 1.0;  // retained / original overlap users
};

// Removes all source-domain interactions of a (1 - keep_ratio) fraction of
// overlapping users, then rebuilds the source side (re-pruned, renormalized).
// The target domain is untouched. Retained users are a prefix of one fixed
// seed-determined permutation, so keep_ratio r1 <= r2 retains a subset.
SubsampleResult subsample_overlap(const CrossDomainData& data, double keep_ratio,
                                  std::uint64_t seed);

}  // namespace crossrec
