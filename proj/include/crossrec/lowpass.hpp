#pragma once

#include <cstdint>
#include <filesystem>

#include "crossrec/types.hpp"

namespace crossrec {

// Discrete ideal low-pass state: the top-k right singular vectors of the
// normalized target matrix. The projector V_k V_k^T keeps the k leading
// spectral components of the item space.
struct LowPassState {
  DenseMatrix basis;       // n_items x k, orthonormal columns
  ColVec singular_values;  // length k, non-increasing
  Index requested_rank = 0;
  std::uint64_t dataset_hash = 0;

  Index rank() const { return basis.cols(); }

  void save(const std::filesystem::path& path) const;
  static LowPassState load(const std::filesystem::path& path);
};

struct LowPassOptions {
  double tol = 1e-8;  // relative residual target for the retained triplets
  int max_iter = 2000;
  int oversample = 8;
};

// Top-k singular triplets of a sparse matrix by seeded randomized subspace
// iteration with Ritz extraction. Iterations continue until the residual
// target is met (typically reaching machine precision on small problems);
// stagnation below tol is accepted, stagnation above tol is an error.
// Requests beyond the numerical rank return the achieved rank with a
// warning.
LowPassState fit_lowpass(const SpMat& r_t, Index k, std::uint64_t seed,
                         const LowPassOptions& opts = {});

// x V_k V_k^T for an item-space row signal.
RowVec project_items(const LowPassState& state, const RowVec& item_signal);

}  // namespace crossrec
