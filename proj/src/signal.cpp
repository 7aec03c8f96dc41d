#include "crossrec/signal.hpp"

#include <algorithm>
#include <numeric>

#include "crossrec/errors.hpp"

namespace crossrec {

namespace {

RowVec dense_row(const SpMat& m, Index u) {
  RowVec r = RowVec::Zero(m.cols());
  for (SpMat::InnerIterator it(m, u); it; ++it) r(it.col()) = it.value();
  return r;
}

RowVec times(const RowVec& x, const SpMat& m) { return x * m; }
RowVec times_t(const RowVec& x, const SpMat& m) { return (m * x.transpose()).transpose(); }

}  // namespace

RowVec SignalMatrix::row(Index u) const {
  if (u < 0 || u >= n_rows) throw std::invalid_argument("SignalMatrix::row: index out of range");
  RowVec out(dim);
  if (scenario == Scenario::Intra) {
    const RowVec r = dense_row(*r_t, u);
    switch (strategy) {
      case Strategy::ItemsOnly:
        return r;
      case Strategy::OverlapAugmented:
        if (user_dim > 0) out.leftCols(user_dim) = times_t(r, *r_ot);
        out.rightCols(r_t->cols()) = r;
        return out;
      case Strategy::UserAugmented:
        out.leftCols(user_dim) = times_t(r, *r_t);
        out.rightCols(r_t->cols()) = r;
        return out;
    }
  } else {
    const RowVec s = dense_row(*r_s, u);
    const RowVec through_overlap = times_t(s, *r_os);       // |U_O|
    const RowVec bridged = times(through_overlap, *r_ot);   // |I_T|
    switch (strategy) {
      case Strategy::ItemsOnly:
        return bridged;
      case Strategy::OverlapAugmented:
        if (user_dim > 0) out.leftCols(user_dim) = through_overlap;
        out.rightCols(r_t->cols()) = bridged;
        return out;
      case Strategy::UserAugmented:
        out.leftCols(user_dim) = times_t(bridged, *r_t);
        out.rightCols(r_t->cols()) = bridged;
        return out;
    }
  }
  throw std::logic_error("unreachable signal layout");
}

SignalMatrix build_signal(Scenario scenario, Strategy strategy, const CrossDomainData& data) {
  SignalMatrix sig;
  sig.scenario = scenario;
  sig.strategy = strategy;
  sig.r_s = data.r_s;
  sig.r_t = data.r_t;
  sig.r_os = data.r_os;
  sig.r_ot = data.r_ot;
  sig.n_rows = scenario == Scenario::Intra ? data.r_t->rows() : data.r_s->rows();
  switch (strategy) {
    case Strategy::ItemsOnly: sig.user_dim = 0; break;
    case Strategy::OverlapAugmented: sig.user_dim = data.overlap.size(); break;
    case Strategy::UserAugmented: sig.user_dim = data.r_t->rows(); break;
  }
  sig.dim = sig.user_dim + data.n_items();
  return sig;
}

ScoreVector score_user(const RowVec& x, const CrossDomainGraph& graph, const FilterSpec& spec,
                       const LowPassState* lowpass, Index user) {
  const RowVec filtered = apply_filtered(graph, spec, lowpass, x);
  ScoreVector sv;
  sv.user = user;
  sv.scores = filtered.rightCols(graph.n_items);
  return sv;
}

ScoreVector mask_seen(ScoreVector scores, std::span<const Index> seen) {
  if (seen.empty()) return scores;
  if (scores.masked.empty())
    scores.masked.assign(static_cast<std::size_t>(scores.scores.cols()), 0);
  for (Index i : seen) scores.masked[static_cast<std::size_t>(i)] = 1;
  return scores;
}

RankedList top_n(const ScoreVector& scores, Index n) {
  if (n < 1) throw ConfigError("top_n: n must be >= 1");
  RankedList out;
  out.user = scores.user;
  std::vector<Index> candidates;
  candidates.reserve(static_cast<std::size_t>(scores.scores.cols()));
  for (Index i = 0; i < scores.scores.cols(); ++i)
    if (!scores.is_masked(i)) candidates.push_back(i);

  const auto by_score = [&](Index a, Index b) {
    if (scores.scores(a) != scores.scores(b)) return scores.scores(a) > scores.scores(b);
    return a < b;
  };
  const auto take = std::min<Index>(n, static_cast<Index>(candidates.size()));
  std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(), by_score);
  out.items.assign(candidates.begin(), candidates.begin() + take);
  return out;
}

}  // namespace crossrec
