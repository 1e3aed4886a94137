// Serial kernels. These are the reference the OpenMP versions are tested against.
#include <cstdint>
#include <limits>
#include <vector>

#include "vcsc/metrics.hpp"

namespace vcsc::kernels::serial {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

void bfs_distances(const SyndicationGraph& g, std::size_t source, std::vector<std::size_t>& dist,
                   std::vector<std::size_t>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    for (const auto& nb : g.neighbors(v)) {
      if (dist[nb.node] == kUnreached) {
        dist[nb.node] = dist[v] + 1;
        queue.push_back(nb.node);
      }
    }
  }
}

}  // namespace

std::vector<double> closeness(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  std::vector<std::size_t> dist(n), queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    bfs_distances(g, s, dist, queue);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != s && dist[j] != kUnreached) sum += 1.0 / static_cast<double>(dist[j]);
    out[s] = sum / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> betweenness(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<std::size_t> dist(n), order;
  std::vector<double> sigma(n), delta(n);
  order.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::size_t v = order[head];
      for (const auto& nb : g.neighbors(v)) {
        const std::size_t w = nb.node;
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    // Dependencies in non-increasing distance; predecessors are the
    // neighbors one hop closer to s.
    for (std::size_t k = order.size(); k-- > 1;) {
      const std::size_t w = order[k];
      for (const auto& nb : g.neighbors(w)) {
        const std::size_t v = nb.node;
        if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      bc[w] += delta[w];
    }
  }
  // Each unordered pair was visited from both ends.
  const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (auto& v : bc) v /= norm;
  return bc;
}

std::vector<double> constraint(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> strength(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& nb : g.neighbors(i)) strength[i] += nb.weight;

  std::vector<double> out(n, 0.0);
  std::vector<double> p_i(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : g.neighbors(i)) p_i[nb.node] = nb.weight / strength[i];
    double c = 0.0;
    for (const auto& nj : g.neighbors(i)) {
      const std::size_t j = nj.node;
      double indirect = 0.0;
      // q ranges over common neighbors of i and j; p_i[q] is zero elsewhere.
      for (const auto& nq : g.neighbors(j)) {
        if (nq.node == i) continue;
        indirect += p_i[nq.node] * (nq.weight / strength[nq.node]);
      }
      const double term = p_i[j] + indirect;
      c += term * term;
    }
    out[i] = c;
    for (const auto& nb : g.neighbors(i)) p_i[nb.node] = 0.0;
  }
  return out;
}

}  // namespace vcsc::kernels::serial
