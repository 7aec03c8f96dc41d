#include "crossrec/filter.hpp"

#include <cmath>

#include "crossrec/errors.hpp"

namespace crossrec {

std::string to_string(FilterKind k) {
  switch (k) {
    case FilterKind::Linear: return "linear";
    case FilterKind::LinearOrderK: return "linear-k";
    case FilterKind::IdealLowPass: return "lowpass";
    case FilterKind::Mixed: return "mixed";
  }
  return "linear";
}

FilterKind filter_kind_from_string(const std::string& s) {
  if (s == "linear") return FilterKind::Linear;
  if (s == "linear-k") return FilterKind::LinearOrderK;
  if (s == "lowpass") return FilterKind::IdealLowPass;
  if (s == "mixed") return FilterKind::Mixed;
  throw ConfigError("unknown filter '" + s + "' (expected linear|linear-k|lowpass|mixed)");
}

void FilterSpec::validate() const {
  if (kind == FilterKind::LinearOrderK && coeffs.empty())
    throw ConfigError("linear-k filter requires at least one coefficient");
  if (kind != FilterKind::LinearOrderK && !coeffs.empty())
    throw ConfigError("coefficients are only valid for the linear-k filter");
  if (needs_lowpass() && lowpass_rank < 1) throw ConfigError("lowpass rank must be >= 1");
  if (kind == FilterKind::Mixed && mix_weight < 0.0)
    throw ConfigError("mix weight must be >= 0");
}

FilterSpec FilterSpec::linear_order_k(std::vector<double> coeffs) {
  FilterSpec spec;
  spec.kind = FilterKind::LinearOrderK;
  spec.coeffs = std::move(coeffs);
  spec.validate();
  return spec;
}

FilterSpec FilterSpec::ideal_lowpass(Index rank) {
  FilterSpec spec;
  spec.kind = FilterKind::IdealLowPass;
  spec.lowpass_rank = rank;
  spec.validate();
  return spec;
}

FilterSpec FilterSpec::mixed(Index rank, double weight) {
  FilterSpec spec;
  spec.kind = FilterKind::Mixed;
  spec.lowpass_rank = rank;
  spec.mix_weight = weight;
  spec.validate();
  return spec;
}

namespace {

// Item coordinates projected onto the retained spectral basis; user
// coordinates bypass the projector (the item-space basis has no user rows).
RowVec lowpass_output(const CrossDomainGraph& graph, const LowPassState& state,
                      const RowVec& x) {
  const Index user_dim = graph.user_dim();
  RowVec out(x.cols());
  if (user_dim > 0) out.leftCols(user_dim) = x.leftCols(user_dim);
  out.rightCols(graph.n_items) = project_items(state, x.rightCols(graph.n_items));
  return out;
}

}  // namespace

RowVec apply_filtered(const CrossDomainGraph& graph, const FilterSpec& spec,
                      const LowPassState* lowpass, const RowVec& x) {
  if (spec.needs_lowpass() && lowpass == nullptr)
    throw ConfigError("filter '" + to_string(spec.kind) + "' requires a fitted low-pass state");
  if (x.cols() != graph.aug_dim)
    throw std::invalid_argument("apply_filtered: length mismatch");

  switch (spec.kind) {
    case FilterKind::Linear:
      return graph.apply(x);
    case FilterKind::LinearOrderK: {
      RowVec power = x;  // graph applied j times
      RowVec acc = spec.coeffs[0] * power;
      for (std::size_t j = 1; j < spec.coeffs.size(); ++j) {
        power = graph.apply(power);
        acc += spec.coeffs[j] * power;
      }
      return acc;
    }
    case FilterKind::IdealLowPass:
      return lowpass_output(graph, *lowpass, x);
    case FilterKind::Mixed:
      return graph.apply(x) + spec.mix_weight * lowpass_output(graph, *lowpass, x);
  }
  throw std::logic_error("unreachable filter kind");
}

double smoothness(const ColVec& x, const DenseMatrix& adjacency) {
  const Index n = adjacency.rows();
  if (adjacency.cols() != n || x.size() != n)
    throw std::invalid_argument("smoothness: dimension mismatch");
  if (n > 2000) throw ConfigError("smoothness: diagnostic is limited to 2000 nodes");
  if (n == 0) return 0.0;
  if ((adjacency - adjacency.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("smoothness: adjacency must be symmetric");

  double pairwise = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double d = x(i) - x(j);
      pairwise += adjacency(i, j) * d * d;
    }

  // Laplacian route. The ordered-pair sum counts every edge twice, hence
  // the factor of two on x^T (D - A) x.
  const ColVec degrees = adjacency.rowwise().sum();
  const double quad = 2.0 * (x.dot(degrees.cwiseProduct(x)) - x.dot(adjacency * x));
  if (std::abs(pairwise - quad) > 1e-9)
    throw std::logic_error("smoothness: quadratic-form routes disagree");
  return pairwise;
}

}  // namespace crossrec
