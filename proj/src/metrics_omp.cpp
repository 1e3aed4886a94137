// OpenMP kernels. Sources (or ego nodes) are distributed across threads; each
// thread owns its scratch buffers, and every write targets a slot that no
// other iteration touches.
#include <omp.h>

#include <algorithm>
#include <limits>
#include <vector>

#include "vcsc/metrics.hpp"

namespace vcsc::kernels::omp {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

struct BrandesScratch {
  explicit BrandesScratch(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }
  std::vector<std::size_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<std::size_t> order;
};

/// Adds the single-source dependencies of `s` into `acc`.
void accumulate_source(const SyndicationGraph& g, std::size_t s, BrandesScratch& w, std::vector<double>& acc) {
  std::fill(w.dist.begin(), w.dist.end(), kUnreached);
  std::fill(w.sigma.begin(), w.sigma.end(), 0.0);
  std::fill(w.delta.begin(), w.delta.end(), 0.0);
  w.order.clear();
  w.dist[s] = 0;
  w.sigma[s] = 1.0;
  w.order.push_back(s);
  for (std::size_t head = 0; head < w.order.size(); ++head) {
    const std::size_t v = w.order[head];
    const std::size_t dv = w.dist[v] + 1;
    for (const auto& nb : g.neighbors(v)) {
      const std::size_t u = nb.node;
      if (w.dist[u] == kUnreached) {
        w.dist[u] = dv;
        w.order.push_back(u);
      }
      if (w.dist[u] == dv) w.sigma[u] += w.sigma[v];
    }
  }
  for (std::size_t k = w.order.size(); k-- > 1;) {
    const std::size_t u = w.order[k];
    const double coeff = (1.0 + w.delta[u]) / w.sigma[u];
    for (const auto& nb : g.neighbors(u)) {
      const std::size_t v = nb.node;
      if (w.dist[v] + 1 == w.dist[u]) w.delta[v] += w.sigma[v] * coeff;
    }
    acc[u] += w.delta[u];
  }
}

/// Block size depends only on n so the reduction tree is fixed.
std::size_t source_block_size(std::size_t n) { return std::max<std::size_t>(32, (n + 255) / 256); }

}  // namespace

std::vector<double> closeness(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
#pragma omp parallel
  {
    std::vector<std::size_t> dist(n), queue;
    queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
      const auto s = static_cast<std::size_t>(si);
      std::fill(dist.begin(), dist.end(), kUnreached);
      queue.clear();
      dist[s] = 0;
      queue.push_back(s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        for (const auto& nb : g.neighbors(v)) {
          if (dist[nb.node] == kUnreached) {
            dist[nb.node] = dist[v] + 1;
            queue.push_back(nb.node);
          }
        }
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != s && dist[j] != kUnreached) sum += 1.0 / static_cast<double>(dist[j]);
      out[s] = sum / static_cast<double>(n - 1);
    }
  }
  return out;
}

std::vector<double> betweenness(const SyndicationGraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t block = source_block_size(n);
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<std::vector<double>> partial(blocks);

#pragma omp parallel
  {
    BrandesScratch scratch(n);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(blocks); ++bi) {
      const auto b = static_cast<std::size_t>(bi);
      std::vector<double> acc(n, 0.0);
      const std::size_t end = std::min(n, (b + 1) * block);
      for (std::size_t s = b * block; s < end; ++s) accumulate_source(g, s, scratch, acc);
      partial[b] = std::move(acc);
    }
  }

  std::vector<double> bc(n, 0.0);
  for (const auto& acc : partial)
    for (std::size_t i = 0; i < n; ++i) bc[i] += acc[i];
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
#pragma omp parallel
  {
    std::vector<double> p_i(n, 0.0);
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      for (const auto& nb : g.neighbors(i)) p_i[nb.node] = nb.weight / strength[i];
      double c = 0.0;
      for (const auto& nj : g.neighbors(i)) {
        double indirect = 0.0;
        for (const auto& nq : g.neighbors(nj.node)) {
          if (nq.node == i) continue;
          indirect += p_i[nq.node] * (nq.weight / strength[nq.node]);
        }
        const double term = p_i[nj.node] + indirect;
        c += term * term;
      }
      out[i] = c;
      for (const auto& nb : g.neighbors(i)) p_i[nb.node] = 0.0;
    }
  }
  return out;
}

}  // namespace vcsc::kernels::omp
