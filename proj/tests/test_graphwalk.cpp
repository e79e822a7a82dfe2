#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gridrange/graphwalk.hpp"
#include "gridrange/oracle.hpp"

using namespace gridrange;
using namespace gridrange::graphwalk;

namespace {

std::vector<std::array<int, 2>> random_edges(std::mt19937_64& rng, int n,
                                             double p) {
  std::vector<std::array<int, 2>> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) edges.push_back({i, j});
  return edges;
}

std::vector<std::vector<i64>> adjacency_cube(
    int n, const std::vector<std::array<int, 2>>& edges) {
  std::vector<std::vector<i64>> a(static_cast<std::size_t>(n),
                                  std::vector<i64>(n, 0));
  for (auto& e : edges) {
    a[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = 1;
    a[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = 1;
  }
  auto mul = [&](const auto& x, const auto& y) {
    std::vector<std::vector<i64>> r(static_cast<std::size_t>(n),
                                    std::vector<i64>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          for (int j = 0; j < n; ++j)
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return r;
  };
  return mul(a, mul(a, a));
}

i64 dfs_simple_paths(const Graph& g, int u, int v) {
  i64 count = 0;
  for (auto& [a, wa] : g.neighbors(u)) {
    if (a == v) continue;
    for (auto& [b, wb] : g.neighbors(a)) {
      if (b == u || b == v) continue;
      count += wa * wb * g.edge_multiplicity(b, v);
    }
  }
  return count;
}

}  // namespace

TEST_CASE("two-walk basics") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  WalkCounter wc(k3);
  REQUIRE(wc.two_walk(0, 1) == 1);
  REQUIRE(wc.two_walk(0, 0) == 2);

  Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  WalkCounter ws(star);
  REQUIRE(ws.two_walk(0, 1) == 0);
  REQUIRE(ws.two_walk(1, 2) == 1);
  REQUIRE(ws.two_walk(0, 0) == 4);
  REQUIRE_THROWS_AS(ws.two_walk(0, 9), UnknownVertex);
}

TEST_CASE("three-walk fixed examples") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(WalkCounter(k3).three_walk(0, 1) == 3);

  Graph path(3, {{0, 1}, {1, 2}});
  REQUIRE(WalkCounter(path).three_walk(0, 1) == 2);

  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  REQUIRE(WalkCounter(c4).three_walk(0, 1) == 4);
}

TEST_CASE("three-walk matches the adjacency cube on random graphs") {
  std::mt19937_64 rng(60221023);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 39);
    auto edges = random_edges(rng, n, 0.08 + 0.25 * ((trial % 4) + 1) / 4.0);
    Graph g(n, edges);
    WalkCounter wc(g);
    auto cube = adjacency_cube(n, edges);
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        REQUIRE(wc.three_walk(u, v) ==
                cube[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
      }
  }
}

TEST_CASE("case breakdowns sum to the oracle count") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 10000) {
    int n = 4 + static_cast<int>(rng() % 30);
    auto edges = random_edges(rng, n, 0.2);
    Graph g(n, edges);
    WalkCounter wc(g);
    auto cube = adjacency_cube(n, edges);
    for (int rep = 0; rep < 60 && checked < 10000; ++rep, ++checked) {
      int u = static_cast<int>(rng() % static_cast<unsigned>(n));
      int v = static_cast<int>(rng() % static_cast<unsigned>(n));
      auto cases = wc.three_walk_cases(u, v);
      REQUIRE(cases.total() ==
              cube[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
    }
  }
}

TEST_CASE("three-walk is symmetric") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + static_cast<int>(rng() % 20);
    Graph g(n, random_edges(rng, n, 0.3));
    WalkCounter wc(g);
    for (int rep = 0; rep < 30; ++rep) {
      int u = static_cast<int>(rng() % static_cast<unsigned>(n));
      int v = static_cast<int>(rng() % static_cast<unsigned>(n));
      REQUIRE(wc.three_walk(u, v) == wc.three_walk(v, u));
    }
  }
}

TEST_CASE("answers are independent of the degree threshold") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + static_cast<int>(rng() % 24);
    auto edges = random_edges(rng, n, 0.25);
    Graph g(n, edges);
    WalkCounter w3(g, 0.3), w5(g, 0.5), w7(g, 0.7);
    for (int rep = 0; rep < 15; ++rep) {
      int u = static_cast<int>(rng() % static_cast<unsigned>(n));
      int v = static_cast<int>(rng() % static_cast<unsigned>(n));
      i64 a = w3.three_walk(u, v);
      REQUIRE(a == w5.three_walk(u, v));
      REQUIRE(a == w7.three_walk(u, v));
    }
  }
}

TEST_CASE("simple three paths") {
  Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(WalkCounter(k3).simple_three_path(0, 1) == 0);

  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  REQUIRE(WalkCounter(c4).simple_three_path(0, 1) == 1);

  REQUIRE_THROWS_AS(WalkCounter(k3).simple_three_path(1, 1), SameVertex);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 19);
    Graph g(n, random_edges(rng, n, 0.3));
    WalkCounter wc(g);
    for (int rep = 0; rep < 10; ++rep) {
      int u = static_cast<int>(rng() % static_cast<unsigned>(n));
      int v = static_cast<int>(rng() % static_cast<unsigned>(n));
      if (u == v) continue;
      REQUIRE(wc.simple_three_path(u, v) == dfs_simple_paths(g, u, v));
    }
  }
}

TEST_CASE("per-edge four-cycle counts") {
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  for (i64 c : WalkCounter(c4).edge_four_cycles()) REQUIRE(c == 1);

  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (i64 c : WalkCounter(k4).edge_four_cycles()) REQUIRE(c == 2);

  Graph tree(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
  for (i64 c : WalkCounter(tree).edge_four_cycles()) REQUIRE(c == 0);
}

TEST_CASE("matrix multiply") {
  Matrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
  Matrix a(3, 3);
  int fill = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.at(i, j) = fill++;
  auto r = multiply(id, a);
  REQUIRE(r.a == a.a);

  // adjacency of K3 squared: 2 on the diagonal, 1 elsewhere
  Matrix k3(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k3.at(i, j) = i == j ? 0 : 1;
  auto sq = multiply(k3, k3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) REQUIRE(sq.at(i, j) == (i == j ? 2 : 1));

  std::mt19937_64 rng(8);
  Matrix x(50, 50), y(50, 50);
  for (auto& v : x.a) v = static_cast<i64>(rng() % 19) - 9;
  for (auto& v : y.a) v = static_cast<i64>(rng() % 19) - 9;
  auto fast = multiply(x, y);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      i64 acc = 0;
      for (int k = 0; k < 50; ++k) acc += x.at(i, k) * y.at(k, j);
      REQUIRE(fast.at(i, j) == acc);
    }

  Matrix bad(3, 4);
  REQUIRE_THROWS_AS(multiply(bad, bad), DimensionMismatch);
}

TEST_CASE("graph validation") {
  REQUIRE_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(2, {{0, 5}}), UnknownVertex);
}

TEST_CASE("weighted multigraph walks match weighted cube") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 15);
    auto edges = random_edges(rng, n, 0.3);
    std::vector<i64> w(edges.size());
    for (auto& x : w) x = 1 + static_cast<i64>(rng() % 4);
    Graph g(n, edges, &w);
    WalkCounter wc(g);
    // weighted cube by hand
    std::vector<std::vector<i64>> a(static_cast<std::size_t>(n),
                                    std::vector<i64>(n, 0));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      a[static_cast<std::size_t>(edges[e][0])]
       [static_cast<std::size_t>(edges[e][1])] = w[e];
      a[static_cast<std::size_t>(edges[e][1])]
       [static_cast<std::size_t>(edges[e][0])] = w[e];
    }
    auto mul = [&](const auto& x, const auto& y) {
      std::vector<std::vector<i64>> r(static_cast<std::size_t>(n),
                                      std::vector<i64>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j)
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      return r;
    };
    auto cube = mul(a, mul(a, a));
    for (int rep = 0; rep < 20; ++rep) {
      int u = static_cast<int>(rng() % static_cast<unsigned>(n));
      int v = static_cast<int>(rng() % static_cast<unsigned>(n));
      REQUIRE(wc.three_walk(u, v) ==
              cube[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
    }
  }
}
