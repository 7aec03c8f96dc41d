#include "crossrec/reference/dense_pipeline.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

namespace crossrec::reference {

namespace {

void self_check(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      (a.rows() * a.cols() > 0 && (a - b).cwiseAbs().maxCoeff() > 1e-12))
    throw std::logic_error(std::string("dense reference self-check failed: ") + what);
}

DenseMatrix normalize_dense(const DenseMatrix& binary) {
  const ColVec user_deg = binary.rowwise().sum();
  const ColVec item_deg = binary.colwise().sum().transpose();
  DenseMatrix entrywise(binary.rows(), binary.cols());
  for (Index u = 0; u < binary.rows(); ++u)
    for (Index i = 0; i < binary.cols(); ++i)
      entrywise(u, i) =
          binary(u, i) == 0.0 ? 0.0 : 1.0 / std::sqrt(user_deg(u) * item_deg(i));

  // Independent route: explicit diagonal scaling.
  const DenseMatrix diag_route = user_deg.cwiseSqrt().cwiseInverse().asDiagonal() * binary *
                                 item_deg.cwiseSqrt().cwiseInverse().asDiagonal();
  self_check(entrywise, diag_route, "normalization");
  return entrywise;
}

DenseMatrix rows_of(const DenseMatrix& m, const std::vector<Index>& rows) {
  DenseMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Index>(k)) = m.row(rows[k]);
  return out;
}

}  // namespace

DenseInstance DenseInstance::build(const InteractionSet& src, const InteractionSet& tgt) {
  DenseInstance inst;
  inst.source_binary = DenseMatrix::Zero(src.n_users(), src.n_items());
  for (const auto& [u, i] : src.interactions) inst.source_binary(u, i) = 1.0;
  inst.target_binary = DenseMatrix::Zero(tgt.n_users(), tgt.n_items());
  for (const auto& [u, i] : tgt.interactions) inst.target_binary(u, i) = 1.0;

  // Overlap recomputed here from the key lists.
  for (std::size_t su = 0; su < src.users.size(); ++su) {
    const auto& key = src.users[su];
    const auto it = std::lower_bound(tgt.users.begin(), tgt.users.end(), key);
    if (it != tgt.users.end() && *it == key) {
      inst.overlap_source_rows.push_back(static_cast<Index>(su));
      inst.overlap_target_rows.push_back(static_cast<Index>(it - tgt.users.begin()));
    }
  }

  inst.r_s = normalize_dense(inst.source_binary);
  inst.r_t = normalize_dense(inst.target_binary);
  inst.r_os = rows_of(inst.r_s, inst.overlap_source_rows);
  inst.r_ot = rows_of(inst.r_t, inst.overlap_target_rows);
  return inst;
}

DenseMatrix dense_target_only(const DenseInstance& inst, Strategy strategy) {
  const DenseMatrix& rt = inst.r_t;
  const DenseMatrix& rot = inst.r_ot;
  const DenseMatrix s_items = rt.transpose() * rt;

  switch (strategy) {
    case Strategy::ItemsOnly:
      return s_items;
    case Strategy::OverlapAugmented: {
      const Index nu = rot.rows();
      if (nu == 0) return s_items;  // degraded layout
      const Index ni = rt.cols();
      DenseMatrix s(nu + ni, nu + ni);
      s.topLeftCorner(nu, nu) = rot * rot.transpose();
      s.topRightCorner(nu, ni) = rot * rt.transpose() * rt;
      s.bottomLeftCorner(ni, nu) = s.topRightCorner(nu, ni).transpose();
      s.bottomRightCorner(ni, ni) = s_items;
      return s;
    }
    case Strategy::UserAugmented: {
      const Index nu = rt.rows();
      const Index ni = rt.cols();
      DenseMatrix s(nu + ni, nu + ni);
      s.topLeftCorner(nu, nu) = rt * rt.transpose();
      s.topRightCorner(nu, ni) = rt;
      s.bottomLeftCorner(ni, nu) = rt.transpose();
      s.bottomRightCorner(ni, ni) = s_items;
      return s;
    }
  }
  throw std::logic_error("unreachable strategy");
}

DenseMatrix dense_source_bridged(const DenseInstance& inst, Strategy strategy) {
  const DenseMatrix& rs = inst.r_s;
  const DenseMatrix& rt = inst.r_t;
  const DenseMatrix& ros = inst.r_os;
  const DenseMatrix& rot = inst.r_ot;
  const Index ni = rt.cols();
  const bool empty_overlap = rot.rows() == 0;

  // Bridged item-item block, grouped two ways.
  const DenseMatrix cross = rot.transpose() * ros;  // |I_T| x |I_S|
  DenseMatrix bridged_items;
  if (empty_overlap) {
    bridged_items = DenseMatrix::Zero(ni, ni);
  } else {
    bridged_items = (cross * cross.transpose()) * (rt.transpose() * rt);
    const DenseMatrix regrouped =
        rot.transpose() * (ros * (ros.transpose() * (rot * (rt.transpose() * rt))));
    self_check(bridged_items, regrouped, "bridged item block");
  }

  switch (strategy) {
    case Strategy::ItemsOnly:
      return bridged_items;
    case Strategy::OverlapAugmented: {
      const Index nu = rot.rows();
      if (nu == 0) return bridged_items;  // degraded layout
      DenseMatrix s(nu + ni, nu + ni);
      const DenseMatrix uo = rot * (rot.transpose() * ros) * (ros.transpose() * rot) *
                             rot.transpose();
      const DenseMatrix uo_gram = (rot * cross) * (rot * cross).transpose();
      self_check(uo, uo_gram, "bridged overlap-user block");
      const DenseMatrix ui = (ros * rs.transpose() * rs) * (ros.transpose() * rot) *
                             (rt.transpose() * rt);
      const DenseMatrix ui_regrouped =
          ros * (rs.transpose() * (rs * (ros.transpose() * (rot * (rt.transpose() * rt)))));
      self_check(ui, ui_regrouped, "bridged overlap-user/item block");
      s.topLeftCorner(nu, nu) = uo;
      s.topRightCorner(nu, ni) = ui;
      s.bottomLeftCorner(ni, nu) = ui.transpose();
      s.bottomRightCorner(ni, ni) = bridged_items;
      return s;
    }
    case Strategy::UserAugmented: {
      const Index nu = rt.rows();
      DenseMatrix s = DenseMatrix::Zero(nu + ni, nu + ni);
      if (empty_overlap) return s;
      const DenseMatrix ut = rt * (rot.transpose() * ros) * (ros.transpose() * rot) *
                             rt.transpose();
      const DenseMatrix ut_gram = (rt * cross) * (rt * cross).transpose();
      self_check(ut, ut_gram, "bridged target-user block");
      const DenseMatrix ui = rt * (rot.transpose() * ros) * (rs.transpose() * rs) *
                             (ros.transpose() * rot) * (rt.transpose() * rt);
      const DenseMatrix ui_regrouped =
          rt *
          (rot.transpose() * (ros * (rs.transpose() * (rs * (ros.transpose() *
                                                             (rot * (rt.transpose() * rt)))))));
      self_check(ui, ui_regrouped, "bridged target-user/item block");
      s.topLeftCorner(nu, nu) = ut;
      s.topRightCorner(nu, ni) = ui;
      s.bottomLeftCorner(ni, nu) = ui.transpose();
      s.bottomRightCorner(ni, ni) = bridged_items;
      return s;
    }
  }
  throw std::logic_error("unreachable strategy");
}

DenseMatrix dense_signals(const DenseInstance& inst, Strategy strategy, Scenario scenario) {
  const DenseMatrix& rs = inst.r_s;
  const DenseMatrix& rt = inst.r_t;
  const DenseMatrix& ros = inst.r_os;
  const DenseMatrix& rot = inst.r_ot;
  const bool has_overlap = rot.rows() > 0;

  if (scenario == Scenario::Intra) {
    switch (strategy) {
      case Strategy::ItemsOnly:
        return rt;
      case Strategy::OverlapAugmented: {
        if (!has_overlap) return rt;  // degraded layout
        DenseMatrix x(rt.rows(), rot.rows() + rt.cols());
        x.leftCols(rot.rows()) = rt * rot.transpose();
        x.rightCols(rt.cols()) = rt;
        return x;
      }
      case Strategy::UserAugmented: {
        DenseMatrix x(rt.rows(), rt.rows() + rt.cols());
        x.leftCols(rt.rows()) = rt * rt.transpose();
        x.rightCols(rt.cols()) = rt;
        return x;
      }
    }
  } else {
    const DenseMatrix through = has_overlap
                                    ? DenseMatrix(rs * ros.transpose())
                                    : DenseMatrix::Zero(rs.rows(), 0);
    const DenseMatrix bridged = has_overlap
                                    ? DenseMatrix(through * rot)
                                    : DenseMatrix::Zero(rs.rows(), rt.cols());
    switch (strategy) {
      case Strategy::ItemsOnly:
        return bridged;
      case Strategy::OverlapAugmented: {
        if (!has_overlap) return bridged;  // degraded layout
        DenseMatrix x(rs.rows(), rot.rows() + rt.cols());
        x.leftCols(rot.rows()) = through;
        x.rightCols(rt.cols()) = bridged;
        return x;
      }
      case Strategy::UserAugmented: {
        DenseMatrix x(rs.rows(), rt.rows() + rt.cols());
        x.leftCols(rt.rows()) = bridged * rt.transpose();
        x.rightCols(rt.cols()) = bridged;
        return x;
      }
    }
  }
  throw std::logic_error("unreachable signal layout");
}

DenseMatrix oracle_scores(const DenseInstance& inst, Strategy strategy, Scenario scenario,
                          double alpha, const FilterSpec& filter) {
  const Index total = inst.r_s.rows() + inst.r_s.cols() + inst.r_t.rows() + inst.r_t.cols();
  if (total > 2000) throw std::invalid_argument("oracle_scores: instance too large");

  const DenseMatrix s = dense_target_only(inst, strategy);
  const DenseMatrix sb = dense_source_bridged(inst, strategy);
  const DenseMatrix g = (1.0 - alpha) * s + alpha * sb;
  const DenseMatrix x = dense_signals(inst, strategy, scenario);
  const Index ni = inst.n_items();

  DenseMatrix filtered;
  switch (filter.kind) {
    case FilterKind::Linear:
      filtered = x * g;
      break;
    case FilterKind::LinearOrderK: {
      DenseMatrix power = x;
      filtered = filter.coeffs[0] * power;
      for (std::size_t j = 1; j < filter.coeffs.size(); ++j) {
        power = power * g;
        filtered += filter.coeffs[j] * power;
      }
      break;
    }
    case FilterKind::IdealLowPass:
    case FilterKind::Mixed: {
      Eigen::JacobiSVD<DenseMatrix> svd(inst.r_t, Eigen::ComputeThinV);
      const Index k = std::min<Index>(filter.lowpass_rank, svd.singularValues().size());
      const DenseMatrix vk = svd.matrixV().leftCols(k);
      DenseMatrix projected = x;
      projected.rightCols(ni) = (x.rightCols(ni) * vk) * vk.transpose();
      filtered = filter.kind == FilterKind::IdealLowPass
                     ? projected
                     : DenseMatrix(x * g + filter.mix_weight * projected);
      break;
    }
  }
  return filtered.rightCols(ni);
}

}  // namespace crossrec::reference
