#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factorforge/extension.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/instance.hpp"
#include "factorforge/tree_packing.hpp"

namespace factorforge {

inline constexpr int kPartitionVertexCap = 12;
inline constexpr int kFeasibleSetEdgeCap = 18;
inline constexpr int kCutVertexCap = 20;

/**
   Exhaustive Tutte–Nash-Williams check over all vertex partitions
   (restricted-growth strings). Returns the partition with the largest
   deficit m(|P| - 1) - cross, first in enumeration order on ties, or nullopt
   when no partition violates the count.

   Throws CapacityExceeded above kPartitionVertexCap vertices.
 */
std::optional<PartitionCertificate> enumerate_violating_partition(const EdgeSubset& subset, int m);

/// Minimum number of subset edges crossing a proper vertex cut, found by
/// enumerating every cut. 0 when disconnected; n <= 1 gives 0.
int brute_force_edge_connectivity(const EdgeSubset& subset);

/// Which theorem's conclusion a solution is checked against.
enum class TheoremTag {
  ConnectedExtend,          // extend-connected
  MatchingTree,             // extend-matching-tree
  ConnectedFactor,          // connected-factor
  TreeConnectedBipartite,   // tree-connected-bipartite
  TreeConnectedExtend,      // extend-tree-connected
  TreeConnectedFactor,      // factor-pipeline
};

/// Throws InvalidInput on an unknown name.
TheoremTag parse_theorem_tag(std::string_view name);
const char* to_string(TheoremTag tag);

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool overall = true;

  void add(std::string name, bool pass, std::string detail = {});
};

/**
   Runs every conclusion of the tagged theorem against h: connectivity or an
   independent tree packing, the degree window, containment of F or F \ M and,
   for the factor tags, the (g, f + f' - m) window. When a trace is supplied,
   also checks that each step strictly decreases its measure and that the run
   length is at most |E(T ∪ F)| + |M|.

   Missing instance fields the tag needs raise InvalidInput. For
   ConnectedExtend without a matching, the default selection is used.
 */
VerificationReport check_solution(const Instance& instance, const EdgeSubset& h, TheoremTag tag,
                                  const std::vector<ExchangeStep>* trace = nullptr);

/// Every subset of host edges satisfying the tagged conclusion, in
/// increasing bitmask order. Throws CapacityExceeded above `edge_cap` edges.
std::vector<EdgeSubset> brute_force_feasible_set(const Instance& instance, TheoremTag tag,
                                                 int edge_cap = kFeasibleSetEdgeCap);

enum class InstanceModel { PlantedTreeFactor, TwoHamPaths, RandomMulti };

/// Throws InvalidInput on an unknown name.
InstanceModel parse_instance_model(std::string_view name);
const char* to_string(InstanceModel model);

/**
   Deterministic random instance for a seed.

   planted-tree-factor: m random spanning trees form T, extra random edges
   complete the host (multiplicity at most max(2, m)), F is a random subset of
   host edges, and g, f, f' are drawn around d_F and d_T so every theorem
   hypothesis holds. two-ham-paths: T is two edge-disjoint Hamiltonian paths
   (m = 2, f' = 4). random-multi: like planted-tree-factor with more parallel
   edges. The matching field holds select_extension_matching(F).

   Throws InvalidInput when n < 2 (n < 4 for two-ham-paths) or m < 1.
 */
Instance generate_planted_instance(std::uint64_t seed, int n, InstanceModel model, int m);

}  // namespace factorforge
