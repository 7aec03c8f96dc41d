#pragma once

#include <span>

#include "crossrec/interactions.hpp"
#include "crossrec/types.hpp"

namespace crossrec {

// Symmetric degree normalization of a binary interaction matrix: entry
// (u, i) becomes 1/sqrt(deg_u * deg_i). Degrees are row/column counts of
// the binary pattern. Throws DataError on zero-degree rows or columns.
SpMat normalize(const SpMat& binary);

inline SpMat normalize(const InteractionSet& set) { return normalize(set.binary_matrix()); }

// Row slice keeping the source matrix's values. Overlap slices are taken
// from the already-normalized full matrix, never renormalized, so overlap
// rows stay consistent with non-overlap rows.
SpMat slice_rows(const SpMat& m, std::span<const Index> rows);

}  // namespace crossrec
