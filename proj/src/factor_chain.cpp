#include "crossrec/factor_chain.hpp"

#include <stdexcept>

namespace crossrec {

RowVec apply_factor(const RowVec& x, const ChainFactor& f) {
  if (x.cols() != f.rows()) throw std::invalid_argument("apply_factor: dimension mismatch");
  if (f.transposed) {
    // x * M^T  ==  (M * x^T)^T, a plain CSR mat-vec.
    return (*f.matrix * x.transpose()).transpose();
  }
  return x * *f.matrix;
}

FactorChain FactorChain::of(std::vector<ChainFactor> factors) {
  if (factors.empty()) throw std::invalid_argument("FactorChain: empty factor list");
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i].cols() != factors[i + 1].rows())
      throw std::invalid_argument("FactorChain: factors are not conformable");
  }
  FactorChain chain;
  chain.rows_ = factors.front().rows();
  chain.cols_ = factors.back().cols();
  chain.factors_ = std::move(factors);
  return chain;
}

FactorChain FactorChain::zero(Index rows, Index cols) {
  FactorChain chain;
  chain.rows_ = rows;
  chain.cols_ = cols;
  chain.zero_ = true;
  return chain;
}

RowVec FactorChain::apply(const RowVec& x) const {
  if (x.cols() != rows_) throw std::invalid_argument("FactorChain::apply: length mismatch");
  if (zero_) return RowVec::Zero(cols_);
  RowVec v = x;
  for (const auto& f : factors_) v = apply_factor(v, f);
  return v;
}

FactorChain FactorChain::transposed() const {
  if (zero_) return zero(cols_, rows_);
  std::vector<ChainFactor> rev(factors_.rbegin(), factors_.rend());
  for (auto& f : rev) f.transposed = !f.transposed;
  return of(std::move(rev));
}

DenseMatrix FactorChain::dense() const {
  if (zero_) return DenseMatrix::Zero(rows_, cols_);
  DenseMatrix acc = factors_.front().transposed
                        ? DenseMatrix(factors_.front().matrix->transpose())
                        : DenseMatrix(*factors_.front().matrix);
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.transposed)
      acc = acc * DenseMatrix(f.matrix->transpose());
    else
      acc = acc * DenseMatrix(*f.matrix);
  }
  return acc;
}

}  // namespace crossrec
