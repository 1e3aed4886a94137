#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcsc/ingest.hpp"

namespace vcsc {

/// SameRound: an event node is a (company, round) pair.
/// DifferentRound: an event node is a company, regardless of round.
enum class ProjectionMode { SameRound, DifferentRound };

std::string_view to_string(ProjectionMode mode);  // "same-round" / "different-round"
ProjectionMode parse_projection_mode(std::string_view text);

struct EventKey {
  std::string company_id;
  std::string round_id;  // empty in DifferentRound mode

  auto operator<=>(const EventKey&) const = default;
};

/// Firms on one side, events on the other; edges only cross sides.
struct BipartiteGraph {
  ProjectionMode mode = ProjectionMode::SameRound;
  std::vector<std::string> vc_nodes;   // sorted, unique
  std::vector<EventKey> event_nodes;   // sorted, unique
  /// (vc index, event index), sorted, no duplicates.
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
};

BipartiteGraph build_bipartite(const EventLog& log, ProjectionMode mode);

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::uint32_t weight = 1;
};

struct Neighbor {
  std::size_t node = 0;
  std::uint32_t weight = 1;
};

/// Undirected weighted one-mode firm graph in compressed adjacency form.
/// Nodes are held in lexicographic order of their ids; neighbor lists are
/// sorted by node index.
class SyndicationGraph {
 public:
  SyndicationGraph() = default;

  /// `edges` index into `names`. Names are reordered lexicographically and
  /// edges remapped. Throws Error(InvalidArgument) on self-loops, zero
  /// weights, duplicate pairs, duplicate names or out-of-range indices.
  SyndicationGraph(std::vector<std::string> names, const std::vector<WeightedEdge>& edges,
                   ProjectionMode mode = ProjectionMode::SameRound);

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  const std::vector<std::string>& nodes() const { return names_; }
  ProjectionMode mode() const { return mode_; }

  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  /// 0 when not adjacent.
  std::uint32_t weight(std::size_t i, std::size_t j) const;

  /// Each undirected edge once with a < b, ordered by (a, b).
  std::vector<WeightedEdge> edges() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  ProjectionMode mode_ = ProjectionMode::SameRound;
};

/// Edge between two firms iff they share an event node; weight is the number
/// of distinct shared event nodes.
SyndicationGraph project(const BipartiteGraph& b);

SyndicationGraph remove_isolates(const SyndicationGraph& g);

/// Connected components as sorted node-index lists, ordered by smallest member.
std::vector<std::vector<std::size_t>> components(const SyndicationGraph& g);

/// Lines "vc_id_a,vc_id_b,weight" with vc_id_a < vc_id_b, sorted. No header.
void write_edge_list(std::ostream& out, const SyndicationGraph& g);

}  // namespace vcsc
