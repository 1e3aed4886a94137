#include "vcsc/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "vcsc/csv.hpp"
#include "vcsc/error.hpp"

namespace vcsc {

std::string_view to_string(ProjectionMode mode) {
  return mode == ProjectionMode::SameRound ? "same-round" : "different-round";
}

ProjectionMode parse_projection_mode(std::string_view text) {
  if (text == "same-round") return ProjectionMode::SameRound;
  if (text == "different-round") return ProjectionMode::DifferentRound;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(text) + "'");
}

BipartiteGraph build_bipartite(const EventLog& log, ProjectionMode mode) {
  BipartiteGraph b;
  b.mode = mode;
  std::map<std::string, std::size_t> vc_index;
  std::map<EventKey, std::size_t> event_index;
  auto key_of = [mode](const InvestmentEvent& e) {
    return mode == ProjectionMode::SameRound ? EventKey{e.company_id, e.round_id} : EventKey{e.company_id, {}};
  };
  for (const auto& e : log.investments) {
    vc_index.emplace(e.vc_id, 0);
    event_index.emplace(key_of(e), 0);
  }
  for (auto& [id, idx] : vc_index) {
    idx = b.vc_nodes.size();
    b.vc_nodes.push_back(id);
  }
  for (auto& [key, idx] : event_index) {
    idx = b.event_nodes.size();
    b.event_nodes.push_back(key);
  }
  b.incidence.reserve(log.investments.size());
  for (const auto& e : log.investments) b.incidence.emplace_back(vc_index.at(e.vc_id), event_index.at(key_of(e)));
  std::sort(b.incidence.begin(), b.incidence.end());
  b.incidence.erase(std::unique(b.incidence.begin(), b.incidence.end()), b.incidence.end());
  return b;
}

SyndicationGraph::SyndicationGraph(std::vector<std::string> names, const std::vector<WeightedEdge>& edges,
                                   ProjectionMode mode)
    : mode_(mode) {
  const std::size_t n = names.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
  std::vector<std::size_t> rank(n);
  names_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    rank[order[r]] = r;
    if (r > 0 && names[order[r]] == names_.back())
      throw Error(ErrorCode::InvalidArgument, "duplicate node id '" + names_.back() + "'");
    names_.push_back(std::move(names[order[r]]));
  }

  std::vector<std::vector<Neighbor>> adj(n);
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.a == e.b) throw Error(ErrorCode::InvalidArgument, "self-loop on '" + names_[rank[e.a]] + "'");
    if (e.weight == 0) throw Error(ErrorCode::InvalidArgument, "zero edge weight");
    const std::size_t a = rank[e.a];
    const std::size_t b = rank[e.b];
    adj[a].push_back({b, e.weight});
    adj[b].push_back({a, e.weight});
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = adj[i];
    std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    for (std::size_t k = 1; k < list.size(); ++k)
      if (list[k].node == list[k - 1].node)
        throw Error(ErrorCode::InvalidArgument,
                    "duplicate edge " + names_[i] + "-" + names_[list[k].node]);
    offsets_[i + 1] = offsets_[i] + list.size();
  }
  neighbors_.reserve(offsets_[n]);
  for (auto& list : adj) neighbors_.insert(neighbors_.end(), list.begin(), list.end());
}

std::uint32_t SyndicationGraph::weight(std::size_t i, std::size_t j) const {
  const auto nb = neighbors(i);
  const auto it = std::lower_bound(nb.begin(), nb.end(), j,
                                   [](const Neighbor& x, std::size_t node) { return x.node < node; });
  return it != nb.end() && it->node == j ? it->weight : 0;
}

std::vector<WeightedEdge> SyndicationGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < node_count(); ++i)
    for (const auto& nb : neighbors(i))
      if (nb.node > i) out.push_back({i, nb.node, nb.weight});
  return out;
}

SyndicationGraph project(const BipartiteGraph& b) {
  const std::size_t n = b.vc_nodes.size();
  std::vector<std::vector<std::size_t>> events_of(n);
  std::vector<std::vector<std::size_t>> members(b.event_nodes.size());
  for (const auto& [vc, ev] : b.incidence) {
    events_of[vc].push_back(ev);
    members[ev].push_back(vc);
  }

  std::vector<WeightedEdge> edges;
  std::vector<std::uint32_t> shared(n, 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t ev : events_of[i]) {
      for (std::size_t j : members[ev]) {
        if (j <= i) continue;
        if (shared[j]++ == 0) touched.push_back(j);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t j : touched) {
      edges.push_back({i, j, shared[j]});
      shared[j] = 0;
    }
    touched.clear();
  }
  return SyndicationGraph(b.vc_nodes, edges, b.mode);
}

SyndicationGraph remove_isolates(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> new_index(n, n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.degree(i) == 0) continue;
    new_index[i] = names.size();
    names.push_back(g.nodes()[i]);
  }
  std::vector<WeightedEdge> edges = g.edges();
  for (auto& e : edges) {
    e.a = new_index[e.a];
    e.b = new_index[e.b];
  }
  return SyndicationGraph(std::move(names), edges, g.mode());
}

std::vector<std::vector<std::size_t>> components(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  std::queue<std::size_t> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    seen[s] = true;
    frontier.push(s);
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      comp.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          frontier.push(nb.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

void write_edge_list(std::ostream& out, const SyndicationGraph& g) {
  for (const auto& e : g.edges())
    out << csv::escape(g.nodes()[e.a]) << ',' << csv::escape(g.nodes()[e.b]) << ',' << e.weight << '\n';
}

}  // namespace vcsc
