#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <utility>
#include <vector>

#include "factorforge/graph.hpp"

namespace fftest {

using factorforge::EdgeId;
using factorforge::EdgeSubset;
using factorforge::MultiGraph;
using factorforge::Vertex;

inline MultiGraph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  MultiGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline EdgeSubset pick(const MultiGraph& g, std::initializer_list<EdgeId> ids) {
  return EdgeSubset(g, std::vector<EdgeId>(ids));
}

inline MultiGraph complete_graph(int n) {
  MultiGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Plain union-find used as an independent connectivity check.
class Dsu {
 public:
  explicit Dsu(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline int component_count(const MultiGraph& g, const std::vector<EdgeId>& ids,
                           int skip_vertex = -1) {
  Dsu d(g.vertex_count());
  int count = g.vertex_count() - (skip_vertex >= 0 ? 1 : 0);
  for (EdgeId e : ids) {
    const auto& edge = g.edge(e);
    if (edge.touches(skip_vertex)) continue;
    if (d.unite(edge.u, edge.v)) --count;
  }
  return count;
}

inline bool connected_oracle(const MultiGraph& g, const std::vector<EdgeId>& ids) {
  return g.vertex_count() <= 1 || component_count(g, ids) == 1;
}

inline bool is_tree_oracle(const MultiGraph& g, const std::vector<EdgeId>& ids) {
  return static_cast<int>(ids.size()) == g.vertex_count() - 1 && connected_oracle(g, ids);
}

}  // namespace fftest

namespace fftest {

// Tutte and Nash-Williams by brute force: the subset has m disjoint spanning
// trees iff every vertex partition P has at least m(|P| - 1) crossing edges.
inline bool tree_connected_oracle(const MultiGraph& g, const std::vector<EdgeId>& ids, int m) {
  const int n = g.vertex_count();
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  bool ok = true;
  auto visit = [&](auto&& self, int v, int blocks) -> void {
    if (!ok) return;
    if (v == n) {
      int cross = 0;
      for (EdgeId e : ids) cross += block[g.edge(e).u] != block[g.edge(e).v];
      if (cross < m * (blocks - 1)) ok = false;
      return;
    }
    for (int b = 0; b <= blocks && ok; ++b) {
      block[v] = b;
      self(self, v + 1, std::max(blocks, b + 1));
    }
  };
  if (n > 0) {
    block[0] = 0;
    visit(visit, 1, 1);
  }
  return ok;
}

}  // namespace fftest

namespace fftest {

// Every subset H of T ∪ F with F \ M ⊆ H (all of F when matching_inside),
// d_F <= d_H <= d_T + max(0, d_F - m) and H m-tree-connected.
inline std::vector<std::vector<EdgeId>> feasible_oracle(const MultiGraph& g,
                                                        const std::vector<EdgeId>& factor,
                                                        const std::vector<EdgeId>& tree,
                                                        const std::vector<EdgeId>& matching, int m,
                                                        bool matching_inside = false) {
  const int n = g.vertex_count();
  std::vector<EdgeId> pool = tree;
  for (EdgeId e : factor)
    if (std::find(pool.begin(), pool.end(), e) == pool.end()) pool.push_back(e);
  std::sort(pool.begin(), pool.end());
  std::vector<int> df(n, 0), dt(n, 0), cap(n, 0);
  for (EdgeId e : factor) ++df[g.edge(e).u], ++df[g.edge(e).v];
  for (EdgeId e : tree) ++dt[g.edge(e).u], ++dt[g.edge(e).v];
  for (int v = 0; v < n; ++v) cap[v] = dt[v] + std::max(0, df[v] - m);
  std::vector<EdgeId> required;
  for (EdgeId e : factor) {
    const bool matched = std::find(matching.begin(), matching.end(), e) != matching.end();
    if (!matched || matching_inside) required.push_back(e);
  }
  std::vector<std::vector<EdgeId>> out;
  const std::size_t k = pool.size();
  for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
    std::vector<EdgeId> h;
    std::vector<int> d(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1ul) {
        h.push_back(pool[i]);
        ++d[g.edge(pool[i]).u], ++d[g.edge(pool[i]).v];
      }
    }
    bool ok = true;
    for (EdgeId e : required) ok = ok && std::find(h.begin(), h.end(), e) != h.end();
    for (int v = 0; v < n && ok; ++v) ok = d[v] >= df[v] && d[v] <= cap[v];
    if (ok && (m == 1 ? connected_oracle(g, h) : tree_connected_oracle(g, h, m))) out.push_back(h);
  }
  return out;
}

inline bool contains_set(const std::vector<std::vector<EdgeId>>& family, const std::vector<EdgeId>& h) {
  return std::find(family.begin(), family.end(), h) != family.end();
}

}  // namespace fftest
