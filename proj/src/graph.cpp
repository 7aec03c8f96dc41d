#include "crossrec/graph.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "crossrec/errors.hpp"

namespace crossrec {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::ItemsOnly: return "io";
    case Strategy::OverlapAugmented: return "oa";
    case Strategy::UserAugmented: return "ua";
  }
  return "io";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "io") return Strategy::ItemsOnly;
  if (s == "oa") return Strategy::OverlapAugmented;
  if (s == "ua") return Strategy::UserAugmented;
  throw ConfigError("unknown strategy '" + s + "' (expected io|oa|ua)");
}

bool BlockOperator::is_zero() const {
  if (user_dim == 0) return ii.is_zero();
  return uu.is_zero() && ui.is_zero() && iu.is_zero() && ii.is_zero();
}

RowVec BlockOperator::apply(const RowVec& x) const {
  if (x.cols() != dim()) throw std::invalid_argument("BlockOperator::apply: length mismatch");
  if (user_dim == 0) return ii.apply(x);
  // [xu, xi] * [UU UI; IU II] = [xu UU + xi IU, xu UI + xi II]
  const RowVec xu = x.leftCols(user_dim);
  const RowVec xi = x.rightCols(item_dim);
  RowVec out(dim());
  out.leftCols(user_dim) = uu.apply(xu) + iu.apply(xi);
  out.rightCols(item_dim) = ui.apply(xu) + ii.apply(xi);
  return out;
}

BlockOperator BlockOperator::transposed() const {
  if (user_dim == 0) return items_only(ii.transposed());
  BlockOperator t;
  t.user_dim = user_dim;
  t.item_dim = item_dim;
  t.uu = uu.transposed();
  t.ui = iu.transposed();
  t.iu = ui.transposed();
  t.ii = ii.transposed();
  return t;
}

DenseMatrix BlockOperator::dense() const {
  if (user_dim == 0) return ii.dense();
  DenseMatrix m(dim(), dim());
  m.topLeftCorner(user_dim, user_dim) = uu.dense();
  m.topRightCorner(user_dim, item_dim) = ui.dense();
  m.bottomLeftCorner(item_dim, user_dim) = iu.dense();
  m.bottomRightCorner(item_dim, item_dim) = ii.dense();
  return m;
}

BlockOperator BlockOperator::items_only(FactorChain ii_chain) {
  BlockOperator op;
  op.user_dim = 0;
  op.item_dim = ii_chain.cols();
  op.ii = std::move(ii_chain);
  return op;
}

BlockOperator BlockOperator::zero(Index user_dim, Index item_dim) {
  BlockOperator op;
  op.user_dim = user_dim;
  op.item_dim = item_dim;
  op.uu = FactorChain::zero(user_dim, user_dim);
  op.ui = FactorChain::zero(user_dim, item_dim);
  op.iu = FactorChain::zero(item_dim, user_dim);
  op.ii = FactorChain::zero(item_dim, item_dim);
  return op;
}

namespace {

// Two-factor segment realizing C = R_OS^T R_OT, or the cached product.
std::vector<ChainFactor> cross_gram_segment(const CrossDomainData& data,
                                            const std::shared_ptr<const SpMat>& cached) {
  if (cached) return {factor(cached)};
  return {factor_t(data.r_os), factor(data.r_ot)};
}

std::vector<ChainFactor> cross_gram_segment_t(const CrossDomainData& data,
                                              const std::shared_ptr<const SpMat>& cached) {
  if (cached) return {factor_t(cached)};
  return {factor_t(data.r_ot), factor(data.r_os)};
}

void append(std::vector<ChainFactor>& chain, std::vector<ChainFactor> tail) {
  chain.insert(chain.end(), tail.begin(), tail.end());
}

}  // namespace

BlockOperator build_target_only(Strategy strategy, const CrossDomainData& data) {
  const auto& r_t = data.r_t;
  const auto& r_ot = data.r_ot;
  FactorChain s_items = FactorChain::of({factor_t(r_t), factor(r_t)});  // R_T^T R_T

  switch (strategy) {
    case Strategy::ItemsOnly:
      return BlockOperator::items_only(std::move(s_items));
    case Strategy::OverlapAugmented: {
      if (data.overlap.empty()) {
        warn("overlap-augmented graph with empty overlap degrades to items-only");
        return BlockOperator::items_only(std::move(s_items));
      }
      BlockOperator op;
      op.user_dim = data.overlap.size();
      op.item_dim = data.n_items();
      op.uu = FactorChain::of({factor(r_ot), factor_t(r_ot)});
      op.ui = FactorChain::of({factor(r_ot), factor_t(r_t), factor(r_t)});
      op.iu = op.ui.transposed();
      op.ii = std::move(s_items);
      return op;
    }
    case Strategy::UserAugmented: {
      BlockOperator op;
      op.user_dim = data.r_t->rows();
      op.item_dim = data.n_items();
      op.uu = FactorChain::of({factor(r_t), factor_t(r_t)});
      op.ui = FactorChain::of({factor(r_t)});
      op.iu = op.ui.transposed();
      op.ii = std::move(s_items);
      return op;
    }
  }
  throw std::logic_error("unreachable strategy");
}

BlockOperator build_source_bridged(Strategy strategy, const CrossDomainData& data,
                                   std::shared_ptr<const SpMat> cross_gram) {
  const Index n_items = data.n_items();
  const auto& r_s = data.r_s;
  const auto& r_t = data.r_t;
  const auto& r_os = data.r_os;
  const auto& r_ot = data.r_ot;

  if (data.overlap.empty()) {
    warn("source-bridged similarity with empty overlap is the zero operator");
    switch (strategy) {
      case Strategy::ItemsOnly:
        return BlockOperator::items_only(FactorChain::zero(n_items, n_items));
      case Strategy::OverlapAugmented:
        // Degraded to items-only alongside the target part.
        return BlockOperator::items_only(FactorChain::zero(n_items, n_items));
      case Strategy::UserAugmented:
        return BlockOperator::zero(data.r_t->rows(), n_items);
    }
  }

  // S~_it = (R_OT^T R_OS)(R_OS^T R_OT)(R_T^T R_T) = C^T C R_T^T R_T
  auto bridged_items = [&]() {
    std::vector<ChainFactor> chain;
    append(chain, cross_gram_segment_t(data, cross_gram));
    append(chain, cross_gram_segment(data, cross_gram));
    append(chain, {factor_t(r_t), factor(r_t)});
    return FactorChain::of(std::move(chain));
  };

  switch (strategy) {
    case Strategy::ItemsOnly:
      return BlockOperator::items_only(bridged_items());
    case Strategy::OverlapAugmented: {
      BlockOperator op;
      op.user_dim = data.overlap.size();
      op.item_dim = n_items;
      // S~_uo = R_OT (R_OT^T R_OS)(R_OS^T R_OT) R_OT^T
      {
        std::vector<ChainFactor> chain{factor(r_ot)};
        append(chain, cross_gram_segment_t(data, cross_gram));
        append(chain, cross_gram_segment(data, cross_gram));
        chain.push_back(factor_t(r_ot));
        op.uu = FactorChain::of(std::move(chain));
      }
      // S~_uo,it = (R_OS R_S^T R_S)(R_OS^T R_OT)(R_T^T R_T)
      {
        std::vector<ChainFactor> chain{factor(r_os), factor_t(r_s), factor(r_s)};
        append(chain, cross_gram_segment(data, cross_gram));
        append(chain, {factor_t(r_t), factor(r_t)});
        op.ui = FactorChain::of(std::move(chain));
      }
      op.iu = op.ui.transposed();
      op.ii = bridged_items();
      return op;
    }
    case Strategy::UserAugmented: {
      BlockOperator op;
      op.user_dim = data.r_t->rows();
      op.item_dim = n_items;
      // S~_ut = R_T (R_OT^T R_OS)(R_OS^T R_OT) R_T^T
      {
        std::vector<ChainFactor> chain{factor(r_t)};
        append(chain, cross_gram_segment_t(data, cross_gram));
        append(chain, cross_gram_segment(data, cross_gram));
        chain.push_back(factor_t(r_t));
        op.uu = FactorChain::of(std::move(chain));
      }
      // S~_ut,it = R_T (R_OT^T R_OS)(R_S^T R_S)(R_OS^T R_OT)(R_T^T R_T)
      {
        std::vector<ChainFactor> chain{factor(r_t)};
        append(chain, cross_gram_segment_t(data, cross_gram));
        append(chain, {factor_t(r_s), factor(r_s)});
        append(chain, cross_gram_segment(data, cross_gram));
        append(chain, {factor_t(r_t), factor(r_t)});
        op.ui = FactorChain::of(std::move(chain));
      }
      op.iu = op.ui.transposed();
      op.ii = bridged_items();
      return op;
    }
  }
  throw std::logic_error("unreachable strategy");
}

RowVec CrossDomainGraph::apply(const RowVec& x) const {
  if (x.cols() != aug_dim) throw std::invalid_argument("graph apply: length mismatch");
  auto blend = [&](const BlockOperator& s, const BlockOperator& sb) -> RowVec {
    if (alpha == 0.0) return s.apply(x);
    if (alpha == 1.0) return sb.apply(x);
    return (1.0 - alpha) * s.apply(x) + alpha * sb.apply(x);
  };
  RowVec y = blend(target_part, bridged_part);
  if (symmetrize) y = 0.5 * (y + blend(target_part.transposed(), bridged_part.transposed()));
  return y;
}

DenseMatrix CrossDomainGraph::materialize(Index max_dim) const {
  if (aug_dim > max_dim)
    throw ConfigError("materialize: dimension " + std::to_string(aug_dim) + " exceeds max " +
                      std::to_string(max_dim));
  DenseMatrix g = (1.0 - alpha) * target_part.dense() + alpha * bridged_part.dense();
  if (symmetrize) g = 0.5 * (g + g.transpose()).eval();
  return g;
}

namespace {

constexpr char kCrossGramMagic[4] = {'C', 'R', 'X', 'G'};

std::filesystem::path cross_gram_path(const GraphOptions& opts) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(opts.cache_key));
  return *opts.cache_dir / (std::string("crossgram_") + buf + ".bin");
}

bool load_sparse(const std::filesystem::path& path, SpMat& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[4];
  std::int64_t rows = 0, cols = 0, nnz = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  in.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  in.read(reinterpret_cast<char*>(&nnz), sizeof(nnz));
  if (!in || std::memcmp(magic, kCrossGramMagic, 4) != 0) return false;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(nnz));
  for (std::int64_t k = 0; k < nnz; ++k) {
    std::int64_t r = 0, c = 0;
    double v = 0.0;
    in.read(reinterpret_cast<char*>(&r), sizeof(r));
    in.read(reinterpret_cast<char*>(&c), sizeof(c));
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) return false;
    trips.emplace_back(static_cast<Index>(r), static_cast<Index>(c), v);
  }
  out.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  out.setFromTriplets(trips.begin(), trips.end());
  return true;
}

void save_sparse(const std::filesystem::path& path, const SpMat& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return;  // cache write failures are non-fatal
  const std::int64_t rows = m.rows(), cols = m.cols(), nnz = m.nonZeros();
  out.write(kCrossGramMagic, 4);
  out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  out.write(reinterpret_cast<const char*>(&nnz), sizeof(nnz));
  for (Index r = 0; r < m.outerSize(); ++r) {
    for (SpMat::InnerIterator it(m, r); it; ++it) {
      const std::int64_t rr = it.row(), cc = it.col();
      const double v = it.value();
      out.write(reinterpret_cast<const char*>(&rr), sizeof(rr));
      out.write(reinterpret_cast<const char*>(&cc), sizeof(cc));
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
}

}  // namespace

std::shared_ptr<const SpMat> compute_cross_gram(const CrossDomainData& data,
                                                const GraphOptions& opts) {
  if (!opts.cache_cross_gram || data.overlap.empty()) return nullptr;
  if (opts.cache_dir) {
    SpMat cached;
    if (load_sparse(cross_gram_path(opts), cached) && cached.rows() == data.r_os->cols() &&
        cached.cols() == data.r_ot->cols())
      return std::make_shared<SpMat>(std::move(cached));
  }
  SpMat c = SpMat(data.r_os->transpose()) * *data.r_ot;  // |I_S| x |I_T|
  c.makeCompressed();
  if (c.nonZeros() > opts.cross_gram_nnz_budget) return nullptr;
  if (opts.cache_dir) {
    std::filesystem::create_directories(*opts.cache_dir);
    save_sparse(cross_gram_path(opts), c);
  }
  return std::make_shared<SpMat>(std::move(c));
}

CrossDomainGraph assemble(Strategy strategy, double alpha, const CrossDomainData& data,
                          const GraphOptions& opts) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
  CrossDomainGraph g;
  g.strategy = strategy;
  g.alpha = alpha;
  g.symmetrize = opts.symmetrize;
  auto cross_gram = compute_cross_gram(data, opts);
  g.target_part = build_target_only(strategy, data);
  g.bridged_part = build_source_bridged(strategy, data, cross_gram);
  g.n_items = data.n_items();
  g.aug_dim = g.target_part.dim();
  if (g.bridged_part.dim() != g.aug_dim)
    throw std::logic_error("assemble: target/bridged dimension mismatch");
  return g;
}

}  // namespace crossrec
