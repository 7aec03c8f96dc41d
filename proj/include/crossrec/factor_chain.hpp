#pragma once

#include <memory>
#include <vector>

#include "crossrec/types.hpp"

namespace crossrec {

// One factor of a lazy matrix product: a shared sparse matrix, optionally
// applied transposed.
struct ChainFactor {
  std::shared_ptr<const SpMat> matrix;
  bool transposed = false;

  Index rows() const { return transposed ? matrix->cols() : matrix->rows(); }
  Index cols() const { return transposed ? matrix->rows() : matrix->cols(); }
};

inline ChainFactor factor(std::shared_ptr<const SpMat> m) { return {std::move(m), false}; }
inline ChainFactor factor_t(std::shared_ptr<const SpMat> m) { return {std::move(m), true}; }

// x * M or x * M^T without forming M^T. Each step is one sparse mat-vec.
RowVec apply_factor(const RowVec& x, const ChainFactor& f);

// Lazy representation of a product F1 * F2 * ... * Fk. Applying a row
// vector folds left to right, so the product as a whole is never
// materialized: cost stays O(sum nnz) per application.
class FactorChain {
 public:
  FactorChain() = default;

  static FactorChain of(std::vector<ChainFactor> factors);
  static FactorChain zero(Index rows, Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_zero() const { return zero_; }
  const std::vector<ChainFactor>& factors() const { return factors_; }

  // Row-vector application x * (F1 ... Fk). Vector-first association: the
  // running operand is always a vector, never a matrix product.
  RowVec apply(const RowVec& x) const;

  // (F1 ... Fk)^T = Fk^T ... F1^T, still lazy.
  FactorChain transposed() const;

  // Explicit dense product; test and materialization support only.
  DenseMatrix dense() const;

 private:
  std::vector<ChainFactor> factors_;
  Index rows_ = 0;
  Index cols_ = 0;
  bool zero_ = false;
};

}  // namespace crossrec
