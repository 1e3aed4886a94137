#pragma once

#include <string>
#include <vector>

#include "vcsc/network.hpp"

namespace vcsc {

/// Per-node values aligned to SyndicationGraph::nodes().
struct NodeVector {
  std::vector<double> values;
  std::string label;
  bool scaled = false;
};

enum class Execution { Serial, Parallel };

/// Node strength: sum of incident edge weights.
NodeVector weighted_degree(const SyndicationGraph& g);

/// Harmonic closeness (1/(n-1)) * sum_j 1/d(i,j) over hop distances, with
/// unreachable nodes contributing 0. Throws SINGLE_NODE when n < 2.
NodeVector closeness(const SyndicationGraph& g, Execution exec = Execution::Parallel);

/// Brandes betweenness on hop-count shortest paths, unordered pairs counted
/// once, divided by (n-1)(n-2)/2. Throws TOO_SMALL when n < 3.
///
/// The parallel path splits sources into fixed-size blocks that depend only on
/// n, accumulates each block in source order and reduces blocks in order, so
/// the result is bitwise identical for any thread count.
NodeVector betweenness(const SyndicationGraph& g, Execution exec = Execution::Parallel);

/// Burt constraint with p_ij = w_ij / sum_q w_iq:
///   c_i = sum_{j in N(i)} (p_ij + sum_{q != i,j} p_iq p_qj)^2
/// Throws ISOLATE_PRESENT if any node has degree 0.
NodeVector constraint(const SyndicationGraph& g, Execution exec = Execution::Parallel);

/// (v - min) / (max - min); a constant vector maps to all zeros.
NodeVector scale_minmax(const NodeVector& v);

/// Element-wise 1 - v, used for the complement form of the structural-hole indicator.
NodeVector one_minus(const NodeVector& v);

enum class StructuralHoleForm { Constraint, OneMinusConstraint };

struct SocialCapitalMetrics {
  NodeVector weighted_degree;
  NodeVector closeness;
  NodeVector betweenness;
  NodeVector structural_hole;
};

/// All four indicators on an isolate-free graph.
SocialCapitalMetrics compute_social_capital(const SyndicationGraph& g, StructuralHoleForm form,
                                            Execution exec = Execution::Parallel);

namespace kernels {

namespace serial {
std::vector<double> closeness(const SyndicationGraph& g);
std::vector<double> betweenness(const SyndicationGraph& g);
std::vector<double> constraint(const SyndicationGraph& g);
}  // namespace serial

namespace omp {
std::vector<double> closeness(const SyndicationGraph& g);
std::vector<double> betweenness(const SyndicationGraph& g);
std::vector<double> constraint(const SyndicationGraph& g);
}  // namespace omp

}  // namespace kernels

}  // namespace vcsc
