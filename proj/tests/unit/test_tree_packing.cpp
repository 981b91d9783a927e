#include <doctest.h>

#include <random>
#include <set>

#include "factorforge/error.hpp"
#include "factorforge/tree_packing.hpp"
#include "support.hpp"

using namespace factorforge;
using namespace fftest;

namespace {

void require_valid_packing(const TreePacking& p, const EdgeSubset& s) {
  const MultiGraph& g = s.host();
  std::set<EdgeId> seen;
  for (const auto& tree : p.trees) {
    REQUIRE(is_tree_oracle(g, tree));
    for (EdgeId e : tree) {
      REQUIRE(s.contains(e));
      REQUIRE(seen.insert(e).second);
    }
  }
}

}  // namespace

TEST_CASE("a tree packs itself") {
  const auto tree = make_graph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  const auto all = EdgeSubset::all(tree);
  const auto result = pack_spanning_trees(all, 1);
  REQUIRE(std::holds_alternative<TreePacking>(result));
  const auto& p = std::get<TreePacking>(result);
  REQUIRE(p.trees.size() == 1);
  CHECK(EdgeSubset(tree, p.trees[0]) == all);
  CHECK(is_m_tree_connected(all, 1));
}

TEST_CASE("K4 holds two disjoint spanning trees") {
  const auto k4 = complete_graph(4);
  const auto all = EdgeSubset::all(k4);
  const auto result = pack_spanning_trees(all, 2);
  REQUIRE(std::holds_alternative<TreePacking>(result));
  const auto& p = std::get<TreePacking>(result);
  CHECK(p.m == 2);
  REQUIRE(p.trees.size() == 2);
  require_valid_packing(p, all);
  CHECK(validate_packing(p, all));
  CHECK(is_m_tree_connected(all, 2));
  CHECK_FALSE(is_m_tree_connected(all, 3));
}

TEST_CASE("C4 with m = 2 is refuted by the singleton partition") {
  const auto c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto all = EdgeSubset::all(c4);
  const auto result = pack_spanning_trees(all, 2);
  REQUIRE(std::holds_alternative<PartitionCertificate>(result));
  const auto& c = std::get<PartitionCertificate>(result);
  CHECK(c.partition == std::vector<std::vector<Vertex>>{{0}, {1}, {2}, {3}});
  CHECK(c.cross_edge_count == 4);
  CHECK(c.cross_edge_count < 2 * 3);
  CHECK(validate_certificate(c, all, 2));
  CHECK_FALSE(is_m_tree_connected(all, 2));
  CHECK(is_m_tree_connected(all, 1));
}

TEST_CASE("packing input errors") {
  const MultiGraph empty(0);
  CHECK_THROWS_AS(pack_spanning_trees(EdgeSubset(empty), 1), InvalidInput);
  const auto k2 = make_graph(2, {{0, 1}});
  CHECK_THROWS_AS(pack_spanning_trees(EdgeSubset::all(k2), 0), InvalidInput);
  const MultiGraph lone(1);
  CHECK(is_m_tree_connected(EdgeSubset(lone), 3));
}

TEST_CASE("packing results always validate and match the partition oracle") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int m = 1 + static_cast<int>(rng() % 3);
    MultiGraph g(n);
    const int edges = static_cast<int>(rng() % (3 * n + 1));
    for (int k = 0; k < edges; ++k) {
      const int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u != v) g.add_edge(u, v);
    }
    const auto all = EdgeSubset::all(g);
    const auto result = pack_spanning_trees(all, m);
    const bool expected = tree_connected_oracle(g, all.ids(), m);
    if (const auto* p = std::get_if<TreePacking>(&result)) {
      REQUIRE(expected);
      REQUIRE(static_cast<int>(p->trees.size()) == m);
      require_valid_packing(*p, all);
    } else {
      REQUIRE_FALSE(expected);
      const auto& c = std::get<PartitionCertificate>(result);
      REQUIRE(count_cross_edges(all, c.partition) == c.cross_edge_count);
      REQUIRE(c.cross_edge_count < m * (static_cast<int>(c.partition.size()) - 1));
    }
  }
}

TEST_CASE("minimal tree-connected subgraph") {
  const auto c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto q = minimal_tree_connected_subgraph(EdgeSubset::all(c4), 1, 0, 2);
  CHECK(q.vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(q.edges.ids() == std::vector<EdgeId>{0, 1});
  // Every single-edge deletion of the answer loses the x-y connection.
  for (EdgeId e : q.edges.ids()) {
    CHECK_FALSE(shares_tree_connected_subgraph(q.edges.without(e), 1, 0, 2));
  }

  const auto twin = make_graph(2, {{0, 1}, {0, 1}});
  const auto q2 = minimal_tree_connected_subgraph(EdgeSubset::all(twin), 2, 0, 1);
  CHECK(q2.edges.ids() == std::vector<EdgeId>{0, 1});

  const auto k4 = complete_graph(4);
  const auto q3 = minimal_tree_connected_subgraph(EdgeSubset::all(k4), 2, 0, 1);
  CHECK(q3.edges == EdgeSubset::all(k4));
  CHECK(q3.vertices == std::vector<Vertex>{0, 1, 2, 3});

  CHECK_THROWS_AS(minimal_tree_connected_subgraph(EdgeSubset::all(c4), 2, 0, 2), PreconditionViolation);
  CHECK_THROWS_AS(minimal_tree_connected_subgraph(EdgeSubset::all(c4), 1, 1, 1), PreconditionViolation);
}

TEST_CASE("minimal subgraph for m = 1 is a path") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    MultiGraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(static_cast<int>(rng() % v), v);
    for (int k = 0; k < n; ++k) {
      const int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u != v) g.add_edge(u, v);
    }
    const int x = static_cast<int>(rng() % n);
    int y = static_cast<int>(rng() % n);
    if (x == y) y = (x + 1) % n;
    const auto q = minimal_tree_connected_subgraph(EdgeSubset::all(g), 1, x, y);
    const auto deg = degree_profile(q.edges);
    REQUIRE(static_cast<int>(q.edges.size()) == static_cast<int>(q.vertices.size()) - 1);
    for (Vertex v : q.vertices) REQUIRE(deg[v] == ((v == x || v == y) ? 1 : 2));
  }
}

TEST_CASE("find exchange edge") {
  const auto k4 = complete_graph(4);  // 0:01 1:02 2:03 3:12 4:13 5:23
  const auto cycle = pick(k4, {0, 3, 5, 2});
  CHECK(find_exchange_edge(cycle, 1, 0, EdgeSubset(k4), 1) == 0);

  const auto host = make_graph(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK_THROWS_AS(find_exchange_edge(pick(host, {0, 1}), 1, 1, pick(host, {1}), 2),
                  PreconditionViolation);

  auto doubled = complete_graph(4);
  const EdgeId twin = doubled.add_edge(0, 1);
  const auto k4_in_doubled = pick(doubled, {0, 1, 2, 3, 4, 5});
  const EdgeId e = find_exchange_edge(k4_in_doubled, 2, 0, EdgeSubset(doubled), twin);
  CHECK(e == 0);
  CHECK(is_m_tree_connected(k4_in_doubled.without(e).with(twin), 2));

  CHECK_THROWS_AS(find_exchange_edge(cycle, 1, 0, EdgeSubset(k4), 0), PreconditionViolation);
  // With every edge at the pivot forbidden there is nothing to trade.
  CHECK_THROWS_AS(find_exchange_edge(cycle, 1, 0, pick(k4, {0, 2}), 1), NotFound);
}
