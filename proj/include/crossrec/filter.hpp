#pragma once

#include <string>
#include <vector>

#include "crossrec/graph.hpp"
#include "crossrec/lowpass.hpp"

namespace crossrec {

enum class FilterKind { Linear, LinearOrderK, IdealLowPass, Mixed };

std::string to_string(FilterKind k);
FilterKind filter_kind_from_string(const std::string& s);

// Which spectral filter shapes the scores:
//   Linear       — one pass through the similarity operator (the operator
//                  itself realizes the first-order low-pass response).
//   LinearOrderK — sum_j coeffs[j] * (x through the graph j times),
//                  j = 0..K-1; coeffs (0, 1) reproduces Linear.
//   IdealLowPass — rank-k spectral projection of the item coordinates;
//                  user coordinates of augmented signals pass through.
//   Mixed        — Linear output + mix_weight * IdealLowPass output.
struct FilterSpec {
  FilterKind kind = FilterKind::Linear;
  std::vector<double> coeffs;  // LinearOrderK only, length K >= 1
  Index lowpass_rank = 64;     // IdealLowPass / Mixed
  double mix_weight = 0.3;     // Mixed

  bool needs_lowpass() const {
    return kind == FilterKind::IdealLowPass || kind == FilterKind::Mixed;
  }
  void validate() const;

  static FilterSpec linear() { return {}; }
  static FilterSpec linear_order_k(std::vector<double> coeffs);
  static FilterSpec ideal_lowpass(Index rank);
  static FilterSpec mixed(Index rank, double weight);
};

// Filtered application of a personalized signal to the blended graph.
// `lowpass` is required iff the filter projects (IdealLowPass / Mixed).
RowVec apply_filtered(const CrossDomainGraph& graph, const FilterSpec& spec,
                      const LowPassState* lowpass, const RowVec& x);

// Diagnostic quadratic form of a signal on a symmetric nonnegative
// adjacency: sum over ordered pairs of A_ij (x_i - x_j)^2, cross-checked
// against the Laplacian quadratic form 2 x^T (D - A) x. Dense, small
// graphs only.
double smoothness(const ColVec& x, const DenseMatrix& adjacency);

}  // namespace crossrec
