#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>

namespace crossrec {

using Scalar = double;
using Index = Eigen::Index;

// Interaction matrices are CSR throughout: per-user rows are the unit of work.
using SpMat = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Scalar>;

template <typename S>
using DenseMatrixT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using RowVecT = Eigen::Matrix<S, 1, Eigen::Dynamic>;
template <typename S>
using ColVecT = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using DenseMatrix = DenseMatrixT<Scalar>;
using RowVec = RowVecT<Scalar>;
using ColVec = ColVecT<Scalar>;

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace crossrec
