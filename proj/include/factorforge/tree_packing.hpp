#pragma once

#include <variant>
#include <vector>

#include "factorforge/graph.hpp"

namespace factorforge {

/// m pairwise edge-disjoint spanning trees; each tree lists host edge ids in
/// increasing order.
struct TreePacking {
  int m = 0;
  std::vector<std::vector<EdgeId>> trees;
};

/// A vertex partition crossed by fewer than m(|partition| - 1) edges, which
/// rules out m edge-disjoint spanning trees.
struct PartitionCertificate {
  std::vector<std::vector<Vertex>> partition;
  int cross_edge_count = 0;
};

using PackingResult = std::variant<TreePacking, PartitionCertificate>;

/**
   Decides whether the subset holds m edge-disjoint spanning trees.

   Grows m disjoint forests by augmenting paths in the union of m graphic
   matroids. On success returns the trees; otherwise returns the partition
   given by the components of the edges reachable from the rejected ones,
   which is always a violating partition.

   Throws InvalidInput on an empty vertex set or m < 1.
 */
PackingResult pack_spanning_trees(const EdgeSubset& subset, int m);

bool is_m_tree_connected(const EdgeSubset& subset, int m);

/// Checks the TreePacking type invariants against subset.
bool validate_packing(const TreePacking& packing, const EdgeSubset& subset);

/// Checks that the partition covers the host vertices, that the count matches
/// and that it violates the m-tree-connectivity count.
bool validate_certificate(const PartitionCertificate& certificate,
                          const EdgeSubset& subset, int m);

/// Number of subset edges whose endpoints lie in different classes.
int count_cross_edges(const EdgeSubset& subset,
                      const std::vector<std::vector<Vertex>>& partition);

/// True iff some m-tree-connected subgraph of subset contains both x and y.
bool shares_tree_connected_subgraph(const EdgeSubset& subset, int m, Vertex x,
                                    Vertex y);

struct TreeConnectedPiece {
  std::vector<Vertex> vertices;
  EdgeSubset edges;
};

/**
   Inclusion-minimal m-tree-connected subgraph of h containing x and y.

   Edges are dropped greedily from the highest id down whenever the rest still
   holds such a subgraph, so the lowest-id witness survives. The vertex set is
   the endpoints of the remaining edges.

   Throws PreconditionViolation if h is not m-tree-connected or x == y.
 */
TreeConnectedPiece minimal_tree_connected_subgraph(const EdgeSubset& h, int m,
                                                   Vertex x, Vertex y);

/**
   Lowest-id edge e of h at pivot, outside forbidden, such that
   h - e + new_edge is m-tree-connected.

   Throws PreconditionViolation when h is not m-tree-connected or already
   contains new_edge, and NotFound when no candidate works.
 */
EdgeId find_exchange_edge(const EdgeSubset& h, int m, Vertex pivot,
                          const EdgeSubset& forbidden, EdgeId new_edge);

}  // namespace factorforge
