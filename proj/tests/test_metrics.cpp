#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include <omp.h>

#include "oracles.hpp"
#include "vcsc/error.hpp"
#include "vcsc/metrics.hpp"

using namespace vcsc;

namespace {

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-12) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(tol).scale(1.0));
}

SyndicationGraph path3() { return oracle::to_graph(oracle::from_edges(3, {{0, 1, 1}, {1, 2, 1}})); }

SyndicationGraph complete(std::size_t n, int w = 1) {
  oracle::Dense d(n, std::vector<int>(n, w));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  return oracle::to_graph(d);
}

// A connected random graph: random spanning tree plus extra edges.
oracle::Dense random_connected(std::mt19937_64& rng, std::size_t n, double density) {
  auto w = oracle::random_graph(rng, n, density, 4);
  std::uniform_int_distribution<int> wd(1, 4);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> p(0, i - 1);
    const auto j = p(rng);
    if (w[i][j] == 0) w[i][j] = w[j][i] = wd(rng);
  }
  return w;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("weighted degree sums incident weights") {
  const auto g = oracle::to_graph(oracle::from_edges(3, {{0, 1, 1}, {1, 2, 3}}));
  CHECK(weighted_degree(g).values == std::vector<double>{1, 4, 3});
}

TEST_CASE("closeness on a 3-node path") {
  check_close(closeness(path3()).values, {0.75, 1.0, 0.75});
}

TEST_CASE("closeness counts unreachable pairs as zero") {
  const auto g = oracle::to_graph(oracle::from_edges(4, {{0, 1, 1}, {2, 3, 1}}));
  check_close(closeness(g).values, {1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST_CASE("closeness ignores edge weights") {
  const auto a = oracle::to_graph(oracle::from_edges(3, {{0, 1, 1}, {1, 2, 1}}));
  const auto b = oracle::to_graph(oracle::from_edges(3, {{0, 1, 7}, {1, 2, 2}}));
  CHECK(closeness(a).values == closeness(b).values);
}

TEST_CASE("betweenness on small graphs") {
  check_close(betweenness(path3()).values, {0.0, 1.0, 0.0});
  check_close(betweenness(complete(4)).values, {0, 0, 0, 0});
  check_close(betweenness(complete(5, 3)).values, {0, 0, 0, 0, 0});
  // two disjoint edges: no node is ever intermediate
  check_close(betweenness(oracle::to_graph(oracle::from_edges(4, {{0, 1, 1}, {2, 3, 1}}))).values, {0, 0, 0, 0});
}

TEST_CASE("betweenness of a star center is 1") {
  const auto g = oracle::to_graph(oracle::from_edges(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}));
  check_close(betweenness(g).values, {1, 0, 0, 0, 0});
}

TEST_CASE("constraint on a uniform triangle") {
  check_close(constraint(complete(3)).values, {1.125, 1.125, 1.125});
  check_close(one_minus(constraint(complete(3))).values, {-0.125, -0.125, -0.125});
}

TEST_CASE("constraint on a 4-node star") {
  const auto g = oracle::to_graph(oracle::from_edges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}));
  check_close(constraint(g).values, {1.0 / 3, 1, 1, 1});
}

TEST_CASE("metric preconditions") {
  const SyndicationGraph single({"A"}, {});
  CHECK_THROWS_AS(closeness(single), Error);
  CHECK_THROWS_AS(betweenness(oracle::to_graph(oracle::from_edges(2, {{0, 1, 1}}))), Error);
  CHECK_THROWS_AS(constraint(oracle::to_graph(oracle::from_edges(3, {{0, 1, 1}}))), Error);
  try {
    constraint(oracle::to_graph(oracle::from_edges(3, {{0, 1, 1}})));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IsolatePresent);
  }
  try {
    betweenness(oracle::to_graph(oracle::from_edges(2, {{0, 1, 1}})));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooSmall);
  }
  try {
    closeness(single);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingleNode);
  }
}

TEST_CASE("metrics match brute-force oracles on every connected graph up to 5 nodes") {
  for (std::size_t n = 3; n <= 5; ++n) {
    for (bool weighted : {false, true}) {
      for (const auto& w : oracle::all_connected_graphs(n, weighted)) {
        const auto g = oracle::to_graph(w);
        for (auto exec : {Execution::Serial, Execution::Parallel}) {
          check_close(weighted_degree(g).values, oracle::weighted_degree(w));
          check_close(closeness(g, exec).values, oracle::closeness(w));
          check_close(betweenness(g, exec).values, oracle::betweenness(w));
          check_close(constraint(g, exec).values, oracle::constraint(w));
        }
      }
    }
  }
}

TEST_CASE("metrics match oracles on random graphs") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> nd(3, 12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto w = random_connected(rng, nd(rng), 0.3);
    const auto g = oracle::to_graph(w);
    check_close(closeness(g).values, oracle::closeness(w));
    check_close(betweenness(g).values, oracle::betweenness(w));
    check_close(constraint(g).values, oracle::constraint(w));
  }
}

TEST_CASE("betweenness is bounded and sums to the path-interior total") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + trial % 10;
    const auto w = random_connected(rng, n, 0.25);
    const auto g = oracle::to_graph(w);
    const auto b = betweenness(g).values;
    const auto d = oracle::floyd_warshall(w);
    double interior = 0;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t) interior += d[s][t] - 1;
    double sum = 0;
    for (double x : b) {
      CHECK(x >= -1e-15);
      CHECK(x <= 1 + 1e-12);
      sum += x;
    }
    CHECK(sum * (n - 1) * (n - 2) / 2 == doctest::Approx(interior).epsilon(1e-9));
  }
}

TEST_CASE("metrics are invariant under node relabeling") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10;
    const auto w = random_connected(rng, n, 0.3);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Dense pw(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pw[perm[i]][perm[j]] = w[i][j];
    const auto g = oracle::to_graph(w), pg = oracle::to_graph(pw);
    const auto c = closeness(g).values, pc = closeness(pg).values;
    const auto b = betweenness(g).values, pb = betweenness(pg).values;
    const auto k = constraint(g).values, pk = constraint(pg).values;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(pc[perm[i]] == doctest::Approx(c[i]).epsilon(1e-12));
      CHECK(pb[perm[i]] == doctest::Approx(b[i]).epsilon(1e-12));
      CHECK(pk[perm[i]] == doctest::Approx(k[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("adding an edge never lowers closeness") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    auto w = oracle::random_graph(rng, 9, 0.2, 1);
    const auto before = closeness(oracle::to_graph(w)).values;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = i + 1; j < 9; ++j)
        if (w[i][j] == 0) free.emplace_back(i, j);
    if (free.empty()) continue;
    const auto [a, b] = free[rng() % free.size()];
    w[a][b] = w[b][a] = 1;
    const auto after = closeness(oracle::to_graph(w)).values;
    for (std::size_t i = 0; i < 9; ++i) CHECK(after[i] >= before[i]);
  }
}

TEST_CASE("serial and parallel kernels agree to 1e-12") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::to_graph(random_connected(rng, 60 + 20 * trial, 0.05));
    check_close(kernels::omp::closeness(g), kernels::serial::closeness(g));
    check_close(kernels::omp::betweenness(g), kernels::serial::betweenness(g));
    check_close(kernels::omp::constraint(g), kernels::serial::constraint(g));
  }
}

TEST_CASE("parallel kernels are bitwise identical across thread counts") {
  std::mt19937_64 rng(43);
  const auto g = oracle::to_graph(random_connected(rng, 400, 0.02));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto c1 = kernels::omp::closeness(g), b1 = kernels::omp::betweenness(g), k1 = kernels::omp::constraint(g);
  for (int t : {2, 4}) {
    omp_set_num_threads(t);
    CHECK(bitwise_equal(kernels::omp::closeness(g), c1));
    CHECK(bitwise_equal(kernels::omp::betweenness(g), b1));
    CHECK(bitwise_equal(kernels::omp::constraint(g), k1));
  }
  omp_set_num_threads(saved);
}

TEST_CASE("min-max scaling") {
  NodeVector v{{2, 4, 6}, "x", false};
  const auto s = scale_minmax(v);
  CHECK(s.values == std::vector<double>{0, 0.5, 1});
  CHECK(s.scaled);
  CHECK(s.label == "x");
  CHECK(scale_minmax(NodeVector{{3, 3, 3}, "c", false}).values == std::vector<double>{0, 0, 0});
  CHECK_THROWS_AS(scale_minmax(NodeVector{{}, "e", false}), Error);

  std::mt19937_64 rng(47);
  std::normal_distribution<double> z(5, 3);
  for (int trial = 0; trial < 50; ++trial) {
    NodeVector r{{}, "r", false};
    for (int i = 0; i < 20; ++i) r.values.push_back(z(rng));
    const auto t = scale_minmax(r).values;
    CHECK(*std::min_element(t.begin(), t.end()) == 0.0);
    CHECK(*std::max_element(t.begin(), t.end()) == 1.0);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j)
        if (r.values[i] < r.values[j]) CHECK(t[i] <= t[j]);
  }
}

TEST_CASE("compute_social_capital assembles labeled indicators") {
  const auto g = complete(3);
  const auto m = compute_social_capital(g, StructuralHoleForm::OneMinusConstraint);
  CHECK(m.weighted_degree.label == "weighted_degree");
  CHECK(m.closeness.label == "closeness");
  CHECK(m.betweenness.label == "betweenness");
  CHECK(m.structural_hole.label == "structural_hole");
  check_close(m.structural_hole.values, {-0.125, -0.125, -0.125});
  check_close(compute_social_capital(g, StructuralHoleForm::Constraint).structural_hole.values, {1.125, 1.125, 1.125});
}
