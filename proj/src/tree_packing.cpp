#include "factorforge/tree_packing.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <string>

#include "factorforge/error.hpp"

namespace factorforge {
namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

// m edge-disjoint forests over a local edge list, grown one edge at a time by
// shortest augmenting paths in the exchange graph of the union of m graphic
// matroids. Edge y points to x when y can replace x in the forest holding x;
// y is a sink when it can join some other forest outright.
class ForestUnion {
 public:
  ForestUnion(int vertex_count, int m, std::vector<Edge> edges)
      : n_(vertex_count),
        m_(m),
        edges_(std::move(edges)),
        owner_(edges_.size(), -1),
        adjacency_(static_cast<std::size_t>(m),
                   std::vector<std::vector<int>>(static_cast<std::size_t>(vertex_count))) {}

  int owner(int e) const { return owner_[static_cast<std::size_t>(e)]; }
  int size() const { return placed_; }

  bool insert(int start) {
    std::vector<std::pair<int, int>> parent(edges_.size(), {-1, -1});
    std::vector<bool> seen(edges_.size(), false);
    std::deque<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!queue.empty()) {
      const int y = queue.front();
      queue.pop_front();
      for (int i = 0; i < m_; ++i) {
        if (i == owner(y)) continue;
        auto path = path_in(i, edges_[static_cast<std::size_t>(y)].u,
                            edges_[static_cast<std::size_t>(y)].v);
        if (!path) {
          augment(y, i, parent);
          return true;
        }
        for (int x : *path) {
          if (seen[static_cast<std::size_t>(x)]) continue;
          seen[static_cast<std::size_t>(x)] = true;
          parent[static_cast<std::size_t>(x)] = {y, i};
          queue.push_back(x);
        }
      }
    }
    return false;
  }

  // Edges reachable in the exchange graph from every unplaced edge. Reaching
  // a sink would mean the union is not maximal.
  std::vector<bool> closure_of_rejected() const {
    std::vector<bool> seen(edges_.size(), false);
    std::deque<int> queue;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (owner_[e] == -1) {
        seen[e] = true;
        queue.push_back(static_cast<int>(e));
      }
    }
    while (!queue.empty()) {
      const int y = queue.front();
      queue.pop_front();
      for (int i = 0; i < m_; ++i) {
        if (i == owner(y)) continue;
        auto path = path_in(i, edges_[static_cast<std::size_t>(y)].u,
                            edges_[static_cast<std::size_t>(y)].v);
        if (!path) throw InternalInvariant("forest union is not maximal");
        for (int x : *path) {
          if (!seen[static_cast<std::size_t>(x)]) {
            seen[static_cast<std::size_t>(x)] = true;
            queue.push_back(x);
          }
        }
      }
    }
    return seen;
  }

 private:
  std::optional<std::vector<int>> path_in(int forest, Vertex from, Vertex to) const {
    const auto& adj = adjacency_[static_cast<std::size_t>(forest)];
    std::vector<int> via(static_cast<std::size_t>(n_), -2);
    std::deque<Vertex> queue{from};
    via[static_cast<std::size_t>(from)] = -1;
    while (!queue.empty() && via[static_cast<std::size_t>(to)] == -2) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (int e : adj[static_cast<std::size_t>(v)]) {
        const Vertex w = edges_[static_cast<std::size_t>(e)].other(v);
        if (via[static_cast<std::size_t>(w)] != -2) continue;
        via[static_cast<std::size_t>(w)] = e;
        queue.push_back(w);
      }
    }
    if (via[static_cast<std::size_t>(to)] == -2) return std::nullopt;
    std::vector<int> path;
    for (Vertex v = to; v != from;) {
      const int e = via[static_cast<std::size_t>(v)];
      path.push_back(e);
      v = edges_[static_cast<std::size_t>(e)].other(v);
    }
    return path;
  }

  void detach(int e) {
    const int f = owner(e);
    if (f < 0) return;
    auto& adj = adjacency_[static_cast<std::size_t>(f)];
    for (Vertex end : {edges_[static_cast<std::size_t>(e)].u, edges_[static_cast<std::size_t>(e)].v}) {
      auto& list = adj[static_cast<std::size_t>(end)];
      list.erase(std::find(list.begin(), list.end(), e));
    }
    owner_[static_cast<std::size_t>(e)] = -1;
  }

  void attach(int e, int f) {
    auto& adj = adjacency_[static_cast<std::size_t>(f)];
    adj[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].u)].push_back(e);
    adj[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].v)].push_back(e);
    owner_[static_cast<std::size_t>(e)] = f;
  }

  void augment(int sink, int forest, const std::vector<std::pair<int, int>>& parent) {
    int current = sink;
    int target = forest;
    while (true) {
      const int previous_owner = owner(current);
      detach(current);
      attach(current, target);
      if (previous_owner == -1) break;
      const auto [replacer, where] = parent[static_cast<std::size_t>(current)];
      current = replacer;
      target = where;
    }
    ++placed_;
    for (int f = 0; f < m_; ++f) {
      DisjointSets sets(static_cast<std::size_t>(n_));
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (owner_[e] == f && !sets.unite(edges_[e].u, edges_[e].v)) {
          throw InternalInvariant("augmentation produced a cycle in forest " +
                                  std::to_string(f));
        }
      }
    }
  }

  int n_;
  int m_;
  std::vector<Edge> edges_;
  std::vector<int> owner_;
  std::vector<std::vector<std::vector<int>>> adjacency_;
  int placed_ = 0;
};

void check_arguments(const EdgeSubset& subset, int m) {
  if (m < 1) throw InvalidInput("m must be a positive integer, got " + std::to_string(m));
  if (subset.host().vertex_count() == 0) throw InvalidInput("graph has no vertices");
}

std::vector<Edge> endpoints_of(const EdgeSubset& subset, const std::vector<EdgeId>& ids) {
  std::vector<Edge> out;
  out.reserve(ids.size());
  for (EdgeId e : ids) out.push_back(subset.host().edge(e));
  return out;
}

}  // namespace

int count_cross_edges(const EdgeSubset& subset,
                      const std::vector<std::vector<Vertex>>& partition) {
  const MultiGraph& g = subset.host();
  std::vector<int> cls(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (Vertex v : partition[i]) cls[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  int cross = 0;
  for (EdgeId e : subset.ids()) {
    if (cls[static_cast<std::size_t>(g.edge(e).u)] != cls[static_cast<std::size_t>(g.edge(e).v)]) {
      ++cross;
    }
  }
  return cross;
}

PackingResult pack_spanning_trees(const EdgeSubset& subset, int m) {
  check_arguments(subset, m);
  const MultiGraph& g = subset.host();
  const int n = g.vertex_count();
  const auto ids = subset.ids();
  ForestUnion forests(n, m, endpoints_of(subset, ids));
  const int target = m * (n - 1);
  for (std::size_t i = 0; i < ids.size() && forests.size() < target; ++i) {
    forests.insert(static_cast<int>(i));
  }

  if (forests.size() == target) {
    TreePacking packing{m, std::vector<std::vector<EdgeId>>(static_cast<std::size_t>(m))};
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int f = forests.owner(static_cast<int>(i));
      if (f >= 0) packing.trees[static_cast<std::size_t>(f)].push_back(ids[i]);
    }
    return packing;
  }

  const auto closure = forests.closure_of_rejected();
  DisjointSets sets(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (closure[i]) sets.unite(g.edge(ids[i]).u, g.edge(ids[i]).v);
  }
  std::vector<int> class_of_root(static_cast<std::size_t>(n), -1);
  PartitionCertificate cert;
  for (Vertex v = 0; v < n; ++v) {
    const int root = sets.find(v);
    int& cls = class_of_root[static_cast<std::size_t>(root)];
    if (cls == -1) {
      cls = static_cast<int>(cert.partition.size());
      cert.partition.emplace_back();
    }
    cert.partition[static_cast<std::size_t>(cls)].push_back(v);
  }
  cert.cross_edge_count = count_cross_edges(subset, cert.partition);
  if (!validate_certificate(cert, subset, m)) {
    throw InternalInvariant("closure partition does not violate the tree-packing count");
  }
  return cert;
}

bool is_m_tree_connected(const EdgeSubset& subset, int m) {
  return std::holds_alternative<TreePacking>(pack_spanning_trees(subset, m));
}

bool validate_packing(const TreePacking& packing, const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  if (packing.m < 1 || static_cast<int>(packing.trees.size()) != packing.m) return false;
  std::vector<bool> used(static_cast<std::size_t>(g.edge_count()), false);
  for (const auto& tree : packing.trees) {
    for (EdgeId e : tree) {
      if (!subset.contains(e) || used[static_cast<std::size_t>(e)]) return false;
      used[static_cast<std::size_t>(e)] = true;
    }
    if (!is_spanning_tree(EdgeSubset(g, tree))) return false;
    if (static_cast<int>(tree.size()) != g.vertex_count() - 1) return false;
  }
  return true;
}

bool validate_certificate(const PartitionCertificate& certificate,
                          const EdgeSubset& subset, int m) {
  const MultiGraph& g = subset.host();
  std::vector<int> hits(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& cls : certificate.partition) {
    if (cls.empty()) return false;
    for (Vertex v : cls) {
      if (!g.valid_vertex(v)) return false;
      ++hits[static_cast<std::size_t>(v)];
    }
  }
  if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) return false;
  const int parts = static_cast<int>(certificate.partition.size());
  return certificate.cross_edge_count == count_cross_edges(subset, certificate.partition) &&
         certificate.cross_edge_count < m * (parts - 1);
}

bool shares_tree_connected_subgraph(const EdgeSubset& subset, int m, Vertex x, Vertex y) {
  check_arguments(subset, m);
  const MultiGraph& g = subset.host();
  if (!g.valid_vertex(x) || !g.valid_vertex(y)) throw InvalidInput("vertex out of range");
  if (x == y) return true;
  // x and y share an m-tree-connected subgraph exactly when a virtual xy edge
  // is spanned by the union of m forests; its fundamental circuit minus xy is
  // the shared subgraph.
  const auto ids = subset.ids();
  auto edges = endpoints_of(subset, ids);
  edges.push_back({x, y});
  ForestUnion forests(g.vertex_count(), m, std::move(edges));
  for (std::size_t i = 0; i < ids.size(); ++i) forests.insert(static_cast<int>(i));
  return !forests.insert(static_cast<int>(ids.size()));
}

TreeConnectedPiece minimal_tree_connected_subgraph(const EdgeSubset& h, int m, Vertex x,
                                                   Vertex y) {
  check_arguments(h, m);
  if (x == y) throw PreconditionViolation("minimal subgraph needs two distinct vertices");
  if (!h.host().valid_vertex(x) || !h.host().valid_vertex(y)) {
    throw InvalidInput("vertex out of range");
  }
  if (!is_m_tree_connected(h, m)) {
    throw PreconditionViolation("subgraph is not " + std::to_string(m) + "-tree-connected");
  }
  EdgeSubset q = h;
  const auto ids = h.ids();
  for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
    EdgeSubset smaller = q.without(*it);
    if (shares_tree_connected_subgraph(smaller, m, x, y)) q = std::move(smaller);
  }
  std::vector<bool> touched(static_cast<std::size_t>(h.host().vertex_count()), false);
  touched[static_cast<std::size_t>(x)] = touched[static_cast<std::size_t>(y)] = true;
  for (EdgeId e : q.ids()) {
    touched[static_cast<std::size_t>(h.host().edge(e).u)] = true;
    touched[static_cast<std::size_t>(h.host().edge(e).v)] = true;
  }
  TreeConnectedPiece piece{{}, std::move(q)};
  for (std::size_t v = 0; v < touched.size(); ++v) {
    if (touched[v]) piece.vertices.push_back(static_cast<Vertex>(v));
  }
  return piece;
}

EdgeId find_exchange_edge(const EdgeSubset& h, int m, Vertex pivot,
                          const EdgeSubset& forbidden, EdgeId new_edge) {
  check_arguments(h, m);
  const MultiGraph& g = h.host();
  if (!g.valid_edge(new_edge)) throw InvalidInput("edge id " + std::to_string(new_edge) + " out of range");
  if (!g.valid_vertex(pivot)) throw InvalidInput("pivot vertex out of range");
  if (h.contains(new_edge)) {
    throw PreconditionViolation("edge " + std::to_string(new_edge) + " already belongs to the subgraph");
  }
  if (!is_m_tree_connected(h, m)) {
    throw PreconditionViolation("subgraph is not " + std::to_string(m) + "-tree-connected");
  }
  const EdgeSubset grown = h.with(new_edge);
  for (EdgeId e : g.incident(pivot)) {
    if (!h.contains(e) || forbidden.contains(e)) continue;
    if (is_m_tree_connected(grown.without(e), m)) return e;
  }
  throw NotFound("no exchange edge at vertex " + std::to_string(pivot) + " for edge " +
                 std::to_string(new_edge));
}

}  // namespace factorforge
