#include "crossrec/lowpass.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <random>

#include "crossrec/errors.hpp"
#include "crossrec/rng.hpp"

namespace crossrec {

LowPassState fit_lowpass(const SpMat& r_t, Index k, std::uint64_t seed,
                         const LowPassOptions& opts) {
  const Index min_dim = std::min(r_t.rows(), r_t.cols());
  if (k < 1) throw ConfigError("fit_lowpass: rank must be >= 1");
  if (min_dim == 0) throw DataError("fit_lowpass: empty matrix");
  if (k > min_dim) {
    warn("fit_lowpass: rank " + std::to_string(k) + " capped at min dimension " +
         std::to_string(min_dim));
    k = min_dim;
  }

  const Index block = std::min<Index>(k + opts.oversample, min_dim);
  auto rng = make_rng(seed, "lowpass-init");
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseMatrix v(r_t.cols(), block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < v.rows(); ++i) v(i, j) = gauss(rng);

  auto orthonormalize = [](DenseMatrix& m) {
    Eigen::HouseholderQR<DenseMatrix> qr(m);
    m = qr.householderQ() * DenseMatrix::Identity(m.rows(), m.cols());
  };
  orthonormalize(v);

  // Subspace iteration on R^T R with Ritz extraction via the small SVD of
  // R V. Convergence is judged on the residual ||R^T R v_j - s_j^2 v_j||
  // relative to s_1^2 for the k retained triplets. Iterations run to the
  // machine-precision floor; stagnation above the floor is accepted only
  // once the contract tolerance is met.
  ColVec sigma = ColVec::Zero(block);
  DenseMatrix ritz = v;
  double residual = std::numeric_limits<double>::infinity();
  double prev_residual = residual;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    DenseMatrix w = r_t * v;                       // m x b
    DenseMatrix y = SpMat(r_t.transpose()) * w;    // n x b, one power step
    orthonormalize(y);
    v = std::move(y);

    DenseMatrix b = r_t * v;  // m x b, small
    Eigen::JacobiSVD<DenseMatrix> svd(b, Eigen::ComputeThinV);
    sigma = svd.singularValues();
    ritz = v * svd.matrixV();

    const double scale = std::max(sigma(0) * sigma(0), 1e-300);
    residual = 0.0;
    DenseMatrix rv = r_t * ritz.leftCols(std::min<Index>(k, block));
    DenseMatrix rrv = SpMat(r_t.transpose()) * rv;
    for (Index j = 0; j < std::min<Index>(k, block); ++j) {
      const double res =
          (rrv.col(j) - sigma(j) * sigma(j) * ritz.col(j)).norm() / scale;
      residual = std::max(residual, res);
    }
    if (residual <= 1e-14) break;
    if (residual >= prev_residual * 0.999 && residual <= opts.tol) break;  // true stagnation
    prev_residual = residual;
  }
  if (residual > opts.tol)
    throw std::runtime_error("fit_lowpass: no convergence after " + std::to_string(iter) +
                             " iterations (residual " + std::to_string(residual) + ")");

  // Drop triplets beyond the numerical rank.
  Index achieved = 0;
  const double floor = sigma(0) * 1e-10;
  while (achieved < k && sigma(achieved) > floor) ++achieved;
  if (achieved < k)
    warn("fit_lowpass: requested rank " + std::to_string(k) + " exceeds numerical rank " +
         std::to_string(achieved));

  LowPassState state;
  state.requested_rank = k;
  state.basis = ritz.leftCols(achieved);
  state.singular_values = sigma.head(achieved);
  return state;
}

RowVec project_items(const LowPassState& state, const RowVec& item_signal) {
  if (item_signal.cols() != state.basis.rows())
    throw std::invalid_argument("project_items: length mismatch");
  return (item_signal * state.basis) * state.basis.transpose();
}

namespace {
constexpr char kLowPassMagic[4] = {'C', 'R', 'L', 'P'};
}

void LowPassState::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write low-pass state: " + path.string());
  const std::int64_t n = basis.rows(), k = basis.cols();
  out.write(kLowPassMagic, 4);
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&k), sizeof(k));
  out.write(reinterpret_cast<const char*>(&requested_rank), sizeof(requested_rank));
  out.write(reinterpret_cast<const char*>(&dataset_hash), sizeof(dataset_hash));
  out.write(reinterpret_cast<const char*>(singular_values.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(k)));
  for (Index i = 0; i < n; ++i)  // row-major
    for (Index j = 0; j < k; ++j) {
      const double x = basis(i, j);
      out.write(reinterpret_cast<const char*>(&x), sizeof(x));
    }
}

LowPassState LowPassState::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read low-pass state: " + path.string());
  char magic[4];
  std::int64_t n = 0, k = 0;
  LowPassState state;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&k), sizeof(k));
  in.read(reinterpret_cast<char*>(&state.requested_rank), sizeof(state.requested_rank));
  in.read(reinterpret_cast<char*>(&state.dataset_hash), sizeof(state.dataset_hash));
  if (!in || std::memcmp(magic, kLowPassMagic, 4) != 0)
    throw DataError("malformed low-pass state: " + path.string());
  state.singular_values.resize(k);
  in.read(reinterpret_cast<char*>(state.singular_values.data()),
          static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(k)));
  state.basis.resize(n, k);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < k; ++j) {
      double x = 0.0;
      in.read(reinterpret_cast<char*>(&x), sizeof(x));
      state.basis(i, j) = x;
    }
  if (!in) throw DataError("truncated low-pass state: " + path.string());
  return state;
}

}  // namespace crossrec
