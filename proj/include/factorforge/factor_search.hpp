#pragma once

#include <optional>
#include <vector>

#include "factorforge/graph.hpp"

namespace factorforge {

/// The per-vertex functions g, f and optionally f'.
struct DegreeBounds {
  std::vector<int> g;
  std::vector<int> f;
  std::optional<std::vector<int>> f_prime;

  /// Throws InvalidInput on a length other than n, a negative entry, or
  /// g(v) > f(v).
  void validate(int vertex_count) const;
};

/// One matching edge of a component of F, with x the endpoint that is not a
/// cut vertex of F.
struct MatchedPair {
  EdgeId edge;
  Vertex x;
  Vertex y;
};

struct MatchingSelection {
  std::vector<MatchedPair> pairs;  // ordered by edge id

  std::vector<EdgeId> edges() const;
  EdgeSubset as_subset(const MultiGraph& host) const;
};

/// Default cap on host edges for the exhaustive factor search.
inline constexpr int kDefaultFactorEdgeCap = 24;

/// Cap from FACTORFORGE_CAP_EDGES when set to a positive integer, else
/// `fallback`.
int edge_cap_from_environment(int fallback);

/**
   Exact (g,f)-factor search by backtracking over edges in id order, trying
   inclusion first, so the result is the lexicographically first solution.
   Returns nullopt iff no factor exists.

   Throws CapacityExceeded when the host has more than `edge_cap` edges.
 */
std::optional<EdgeSubset> find_gf_factor(const MultiGraph& host, const DegreeBounds& bounds,
                                         int edge_cap = kDefaultFactorEdgeCap);

/// For every non-trivial component of F: the lowest-id leaf x of its greedy
/// spanning tree and the lowest-id F-edge at x.
MatchingSelection select_extension_matching(const EdgeSubset& factor);

/// Throws PreconditionViolation unless the selection is a matching inside F
/// with one edge per non-trivial component and non-cut x endpoints.
void validate_matching(const EdgeSubset& factor, const MatchingSelection& matching);

/// Builds designations for a bare edge list: per edge, x is the lowest-id
/// endpoint that is not a cut vertex of F.
MatchingSelection designate_matching(const EdgeSubset& factor, const std::vector<EdgeId>& edges);

bool verify_factor_bounds(const EdgeSubset& factor, const std::vector<int>& lower,
                          const std::vector<int>& upper);

}  // namespace factorforge
