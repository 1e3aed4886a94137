#include "vcsc/metrics.hpp"

#include <algorithm>

#include "vcsc/error.hpp"

namespace vcsc {

NodeVector weighted_degree(const SyndicationGraph& g) {
  NodeVector out{std::vector<double>(g.node_count(), 0.0), "weighted_degree", false};
  for (std::size_t i = 0; i < g.node_count(); ++i)
    for (const auto& nb : g.neighbors(i)) out.values[i] += nb.weight;
  return out;
}

NodeVector closeness(const SyndicationGraph& g, Execution exec) {
  if (g.node_count() < 2)
    throw Error(ErrorCode::SingleNode, "closeness needs at least 2 nodes, got " + std::to_string(g.node_count()));
  auto values = exec == Execution::Serial ? kernels::serial::closeness(g) : kernels::omp::closeness(g);
  return {std::move(values), "closeness", false};
}

NodeVector betweenness(const SyndicationGraph& g, Execution exec) {
  if (g.node_count() < 3)
    throw Error(ErrorCode::TooSmall, "betweenness needs at least 3 nodes, got " + std::to_string(g.node_count()));
  auto values = exec == Execution::Serial ? kernels::serial::betweenness(g) : kernels::omp::betweenness(g);
  return {std::move(values), "betweenness", false};
}

NodeVector constraint(const SyndicationGraph& g, Execution exec) {
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.degree(i) == 0) throw Error(ErrorCode::IsolatePresent, "node '" + g.nodes()[i] + "' has no edges");
  auto values = exec == Execution::Serial ? kernels::serial::constraint(g) : kernels::omp::constraint(g);
  return {std::move(values), "structural_hole", false};
}

NodeVector scale_minmax(const NodeVector& v) {
  if (v.values.empty()) throw Error(ErrorCode::EmptyColumn, "cannot scale empty vector '" + v.label + "'");
  const auto [lo, hi] = std::minmax_element(v.values.begin(), v.values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  NodeVector out{std::vector<double>(v.values.size(), 0.0), v.label, true};
  if (range > 0.0)
    for (std::size_t i = 0; i < v.values.size(); ++i) out.values[i] = (v.values[i] - min) / range;
  return out;
}

NodeVector one_minus(const NodeVector& v) {
  NodeVector out = v;
  for (auto& x : out.values) x = 1.0 - x;
  return out;
}

SocialCapitalMetrics compute_social_capital(const SyndicationGraph& g, StructuralHoleForm form, Execution exec) {
  SocialCapitalMetrics m;
  m.weighted_degree = weighted_degree(g);
  m.closeness = closeness(g, exec);
  m.betweenness = betweenness(g, exec);
  m.structural_hole = constraint(g, exec);
  if (form == StructuralHoleForm::OneMinusConstraint) m.structural_hole = one_minus(m.structural_hole);
  return m;
}

}  // namespace vcsc
