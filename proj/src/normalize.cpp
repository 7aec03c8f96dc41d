#include "crossrec/normalize.hpp"

#include <cmath>
#include <vector>

#include "crossrec/errors.hpp"

namespace crossrec {

SpMat normalize(const SpMat& binary) {
  std::vector<Index> user_deg(static_cast<std::size_t>(binary.rows()), 0);
  std::vector<Index> item_deg(static_cast<std::size_t>(binary.cols()), 0);
  for (Index r = 0; r < binary.outerSize(); ++r) {
    for (SpMat::InnerIterator it(binary, r); it; ++it) {
      ++user_deg[static_cast<std::size_t>(it.row())];
      ++item_deg[static_cast<std::size_t>(it.col())];
    }
  }
  for (Index u = 0; u < binary.rows(); ++u)
    if (user_deg[static_cast<std::size_t>(u)] == 0)
      throw DataError("normalize: zero-degree user row " + std::to_string(u));
  for (Index i = 0; i < binary.cols(); ++i)
    if (item_deg[static_cast<std::size_t>(i)] == 0)
      throw DataError("normalize: zero-degree item column " + std::to_string(i));

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(binary.nonZeros()));
  for (Index r = 0; r < binary.outerSize(); ++r) {
    for (SpMat::InnerIterator it(binary, r); it; ++it) {
      const double w = 1.0 / std::sqrt(static_cast<double>(user_deg[it.row()]) *
                                       static_cast<double>(item_deg[it.col()]));
      trips.emplace_back(it.row(), it.col(), w);
    }
  }
  SpMat out(binary.rows(), binary.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat slice_rows(const SpMat& m, std::span<const Index> rows) {
  std::vector<Triplet> trips;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (SpMat::InnerIterator it(m, rows[k]); it; ++it)
      trips.emplace_back(static_cast<Index>(k), it.col(), it.value());
  }
  SpMat out(static_cast<Index>(rows.size()), m.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace crossrec
