#pragma once

#include <optional>
#include <vector>

#include "factorforge/factor_search.hpp"
#include "factorforge/graph.hpp"

namespace factorforge {

/// Everything one run needs: the host plus optional bounds and the planted
/// or user-supplied factor F, tree factor T and matching M, as edge ids.
struct Instance {
  MultiGraph host;
  std::optional<int> m{};
  std::optional<std::vector<int>> g{};
  std::optional<std::vector<int>> f{};
  std::optional<std::vector<int>> f_prime{};
  std::optional<std::vector<EdgeId>> factor{};
  std::optional<std::vector<EdgeId>> tree_factor{};
  std::optional<std::vector<EdgeId>> matching{};

  /// Bounds assembled from g, f, f_prime; missing g defaults to 0 and
  /// missing f to the host degree.
  DegreeBounds bounds() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

}  // namespace factorforge
