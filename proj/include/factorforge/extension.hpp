#pragma once

#include <optional>
#include <string>
#include <vector>

#include "factorforge/factor_search.hpp"
#include "factorforge/graph.hpp"

namespace factorforge {

enum class StepKind {
  RemoveEdge,
  SwapInH,
  SwapInT0,
  RestoreMatchingEdge,
  PeelAA,
  PeelBB,
  T0Improve,
};

const char* to_string(StepKind kind);

/// Lexicographic progress measure; every step of a run strictly decreases it.
/// For the connected engine it is (|E(h)|, -|E(h) ∩ E(M)|).
struct Measure {
  int primary = 0;
  int secondary = 0;
  auto operator<=>(const Measure&) const = default;
};

struct ExchangeStep {
  StepKind kind;
  std::optional<EdgeId> removed;
  std::optional<EdgeId> added;
  Measure before;
  Measure after;
};

/// The working pair (h, t0) of the connected engine, over g0 = T ∪ F.
struct ExtensionState {
  EdgeSubset g0;
  EdgeSubset h;
  EdgeSubset t0;
  std::vector<ExchangeStep> trace;
};

/// Describes the first membership condition the state breaks, if any:
/// h connected and spanning, t0 a spanning tree inside h, F \ M inside h,
/// (i) saturated vertices carry no F-edge of t0, (ii) an x whose matching
/// edge is outside h carries no F-edge of t0.
std::optional<std::string> membership_violation(const ExtensionState& state,
                                                const EdgeSubset& factor,
                                                const EdgeSubset& tree,
                                                const MatchingSelection& matching);

struct VertexClassification {
  std::vector<Vertex> class_a;  // d_F(v) <= m
  std::vector<Vertex> class_b;  // d_F(v) >= m + 1
};

VertexClassification classify_vertices(const EdgeSubset& factor, int m);

struct ExtendOptions {
  /// Re-check state membership and measure decrease after every step.
  bool audit = false;
  /// Pick exchange edges from the minimal tree-connected subgraph instead of
  /// testing swaps directly.
  bool use_minimal_subgraph = false;
};

struct ExtensionResult {
  EdgeSubset h;
  std::vector<ExchangeStep> trace;
};

/**
   Extends F \ E(M) to a connected spanning subgraph H of T ∪ F with
   d_F(v) <= d_H(v) <= d_T(v) + max(0, d_F(v) - 1).

   Starts from (T ∪ F, T). Phase A deletes edges while some vertex u with
   d_F(u) > 0 has d_H(u) = d_T(u) + d_F(u); Phase B re-inserts matching
   edges for vertices left below d_F. Each step is one exchange on (H, t0).

   Throws PreconditionViolation when T is not a spanning tree or the matching
   is invalid for F.
 */
ExtensionResult connected_extend(const EdgeSubset& factor, const MatchingSelection& matching,
                                 const EdgeSubset& tree, const ExtendOptions& options = {});

/// connected_extend followed by adding M back. Requires M ⊆ T; then F ⊆ H
/// and vertices met by M get d_H <= d_T + d_F - 1.
ExtensionResult extend_with_matching_tree(const EdgeSubset& factor,
                                          const MatchingSelection& matching,
                                          const EdgeSubset& tree,
                                          const ExtendOptions& options = {});

/// Connected (g, f + f' - 1)-factor from a (g,f)-factor and a spanning
/// f'-tree. Requires f >= 1 and f' >= 1 everywhere.
ExtensionResult connected_factor_via_tree(const EdgeSubset& factor, const EdgeSubset& tree,
                                          const DegreeBounds& bounds,
                                          const ExtendOptions& options = {});

/**
   m-tree-connected H containing F \ E(M) with
   d_F(v) <= d_H(v) <= d_T(v) + max(0, d_F(v) - m), for F whose edges outside
   T all join class A to class B.

   Stage 1 swaps F-edges at A-vertices into t0; stage 2 starts from
   t0 ∪ (F \ M) and swaps M-edges in until every vertex reaches d_F.
 */
ExtensionResult tree_connected_extend_bipartite(const EdgeSubset& factor,
                                                const EdgeSubset& tree,
                                                const EdgeSubset& matching, int m,
                                                const ExtendOptions& options = {});

/// General m-tree-connected extension: peels F-edges outside T with both ends
/// in A (dropped) or both in B (set aside and re-added), then runs the
/// bipartite construction with M = F \ E(T).
ExtensionResult tree_connected_extend(const EdgeSubset& factor, const EdgeSubset& tree, int m,
                                      const ExtendOptions& options = {});

/// m-tree-connected (g, f + f' - m)-factor from a (g,f)-factor and an
/// m-tree-connected (m,f')-factor. Requires g <= f, m <= f and m <= f'.
ExtensionResult tree_connected_factor(const EdgeSubset& factor, const EdgeSubset& tree,
                                      const DegreeBounds& bounds, int m,
                                      const ExtendOptions& options = {});

}  // namespace factorforge
