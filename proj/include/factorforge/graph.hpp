#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace factorforge {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool touches(Vertex w) const { return w == u || w == v; }
};

/**
   Loopless undirected multigraph on vertices 0..n-1.

   Edge ids are dense and follow insertion order. Parallel edges are distinct
   ids. Every other graph in the library is an EdgeSubset of one host.
 */
class MultiGraph {
 public:
  explicit MultiGraph(int vertex_count = 0);
  MultiGraph(int vertex_count, std::span<const Edge> edges);

  /// Throws InvalidInput on a loop or an out-of-range endpoint.
  EdgeId add_edge(Vertex u, Vertex v);

  int vertex_count() const { return static_cast<int>(incident_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }

  /// Edge ids at v, increasing.
  std::span<const EdgeId> incident(Vertex v) const {
    return incident_[static_cast<std::size_t>(v)];
  }

  bool valid_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }
  bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

  friend bool operator==(const MultiGraph& a, const MultiGraph& b);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

/**
   A spanning subgraph of a host: all host vertices plus a set of edge ids.

   Holds a non-owning pointer to the host, which must outlive the subset.
 */
class EdgeSubset {
 public:
  explicit EdgeSubset(const MultiGraph& host);
  EdgeSubset(const MultiGraph& host, std::span<const EdgeId> ids);

  static EdgeSubset all(const MultiGraph& host);

  const MultiGraph& host() const { return *host_; }

  bool contains(EdgeId e) const {
    return e >= 0 && static_cast<std::size_t>(e) < member_.size() &&
           member_[static_cast<std::size_t>(e)];
  }
  void insert(EdgeId e);
  void erase(EdgeId e);
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  /// Member ids, increasing.
  std::vector<EdgeId> ids() const;

  EdgeSubset with(EdgeId e) const;
  EdgeSubset without(EdgeId e) const;

  EdgeSubset operator|(const EdgeSubset& other) const;
  EdgeSubset operator&(const EdgeSubset& other) const;
  EdgeSubset operator-(const EdgeSubset& other) const;
  bool subset_of(const EdgeSubset& other) const;

  friend bool operator==(const EdgeSubset& a, const EdgeSubset& b) {
    return a.member_ == b.member_;
  }

 private:
  void check_same_host(const EdgeSubset& other) const;

  const MultiGraph* host_;
  std::vector<bool> member_;
  std::size_t count_ = 0;
};

/// Entry v is the number of member edges at v.
std::vector<int> degree_profile(const EdgeSubset& subset);

/// Largest entry of degree_profile; 0 on an empty vertex set.
int max_degree(const EdgeSubset& subset);

/// Connectivity classes, each sorted, ordered by smallest vertex. Isolated
/// vertices form singleton classes.
std::vector<std::vector<Vertex>> connected_components(const EdgeSubset& subset);

/// Class index per vertex, matching the order of connected_components.
std::vector<int> component_labels(const EdgeSubset& subset);

bool is_connected(const EdgeSubset& subset);

/// Vertices whose deletion disconnects their own component (articulation
/// points). Isolated vertices never qualify. Increasing order.
std::vector<Vertex> cut_vertices(const EdgeSubset& subset);

/// Spanning tree of one component, grown greedily over member edges in id
/// order. Throws PreconditionViolation when the vertices are not one
/// connected class.
EdgeSubset spanning_tree_of_component(const EdgeSubset& subset,
                                      std::span<const Vertex> component);

/// True iff subset is acyclic, connected and spans all host vertices.
bool is_spanning_tree(const EdgeSubset& subset);

/// Edge ids of the unique path from `from` to `to` inside a forest, in walk
/// order. Empty when from == to; throws NotFound when they are disconnected.
std::vector<EdgeId> forest_path(const EdgeSubset& forest, Vertex from, Vertex to);

}  // namespace factorforge
