#include "factorforge/extension.hpp"

#include <algorithm>
#include <string>

#include "factorforge/error.hpp"
#include "factorforge/tree_packing.hpp"

namespace factorforge {

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::RemoveEdge: return "remove-edge";
    case StepKind::SwapInH: return "swap-in-h";
    case StepKind::SwapInT0: return "swap-in-t0";
    case StepKind::RestoreMatchingEdge: return "restore-matching-edge";
    case StepKind::PeelAA: return "peel-AA";
    case StepKind::PeelBB: return "peel-BB";
    case StepKind::T0Improve: return "t0-improve";
  }
  return "unknown";
}

namespace {

std::size_t at(Vertex v) { return static_cast<std::size_t>(v); }

std::string vertex_values(Vertex v, const char* lhs, int a, const char* rhs, int b) {
  return "vertex " + std::to_string(v) + ": " + lhs + "=" + std::to_string(a) + ", " + rhs +
         "=" + std::to_string(b);
}

int overlap(const EdgeSubset& a, const EdgeSubset& b) { return static_cast<int>((a & b).size()); }

// Upper cap d_T(v) + max(0, d_F(v) - m) shared by every extension theorem.
std::vector<int> extension_caps(const std::vector<int>& d_tree, const std::vector<int>& d_factor,
                                int m) {
  std::vector<int> caps(d_tree.size());
  for (std::size_t v = 0; v < caps.size(); ++v) {
    caps[v] = d_tree[v] + std::max(0, d_factor[v] - m);
  }
  return caps;
}

void require_window(const EdgeSubset& h, const std::vector<int>& lower,
                    const std::vector<int>& upper, const char* what) {
  const auto d = degree_profile(h);
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (d[v] < lower[v] || d[v] > upper[v]) {
      throw InternalInvariant(std::string(what) + ": vertex " + std::to_string(v) +
                              " has degree " + std::to_string(d[v]) + " outside [" +
                              std::to_string(lower[v]) + ", " + std::to_string(upper[v]) + "]");
    }
  }
}

void require_same_host(const EdgeSubset& a, const EdgeSubset& b) {
  if (&a.host() != &b.host() && !(a.host() == b.host())) {
    throw InvalidInput("factor and tree are over different host graphs");
  }
}

class ConnectedEngine {
 public:
  ConnectedEngine(const EdgeSubset& factor, const MatchingSelection& matching,
                  const EdgeSubset& tree, const ExtendOptions& options)
      : g_(factor.host()),
        factor_(factor),
        tree_(tree),
        matching_(matching),
        options_(options),
        m_(matching.as_subset(factor.host())),
        d_factor_(degree_profile(factor)),
        d_tree_(degree_profile(tree)),
        label_(component_labels(factor)),
        components_(connected_components(factor)),
        pair_of_component_(components_.size(), -1),
        pair_at_vertex_(static_cast<std::size_t>(g_.vertex_count()), -1),
        state_{tree | factor, tree | factor, tree, {}} {
    for (std::size_t v = 0; v < d_factor_.size(); ++v) {
      saturation_.push_back(d_tree_[v] + d_factor_[v]);
    }
    for (std::size_t i = 0; i < matching.pairs.size(); ++i) {
      const auto& p = matching.pairs[i];
      pair_of_component_[static_cast<std::size_t>(label_[at(p.x)])] = static_cast<int>(i);
      pair_at_vertex_[at(p.x)] = pair_at_vertex_[at(p.y)] = static_cast<int>(i);
    }
  }

  ExtensionResult run() {
    audit_state();
    while (phase_a_step()) {
    }
    while (phase_b_step()) {
    }
    return {state_.h, std::move(state_.trace)};
  }

 private:
  Measure measure() const {
    return {static_cast<int>(state_.h.size()), -overlap(state_.h, m_)};
  }

  bool saturated(const std::vector<int>& d_h, Vertex v) const {
    return d_h[at(v)] == saturation_[at(v)];
  }

  void record(StepKind kind, std::optional<EdgeId> removed, std::optional<EdgeId> added,
              Measure before) {
    const Measure after = measure();
    state_.trace.push_back({kind, removed, added, before, after});
    if (options_.audit) {
      if (!(after < before)) {
        throw InternalInvariant(std::string(to_string(kind)) + " step did not decrease the measure");
      }
      audit_state();
    }
  }

  void audit_state() const {
    if (!options_.audit) return;
    if (auto problem = membership_violation(state_, factor_, tree_, matching_)) {
      throw InternalInvariant("state left the admissible family: " + *problem);
    }
  }

  // One exchange resolving a vertex u with d_H(u) = d_T(u) + d_F(u) and
  // d_F(u) > 0; each step drops one edge of h.
  bool phase_a_step() {
    const auto d_h = degree_profile(state_.h);
    Vertex u = -1;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (d_factor_[at(v)] > 0 && saturated(d_h, v)) {
        u = v;
        break;
      }
    }
    if (u == -1) return false;

    const auto& component = components_[static_cast<std::size_t>(label_[at(u)])];
    const MatchedPair& pair =
        matching_.pairs[static_cast<std::size_t>(pair_of_component_[static_cast<std::size_t>(label_[at(u)])])];
    const Measure before = measure();

    if (std::all_of(component.begin(), component.end(),
                    [&](Vertex v) { return saturated(d_h, v); })) {
      if (!state_.h.contains(pair.edge) || state_.t0.contains(pair.edge)) {
        throw InternalInvariant("saturated component but matching edge " +
                                std::to_string(pair.edge) + " is not removable");
      }
      state_.h.erase(pair.edge);
      record(StepKind::RemoveEdge, pair.edge, std::nullopt, before);
      return true;
    }

    // Walk inside the component from an unsaturated start to u; the first
    // saturated vertex b on the walk and its predecessor a give the edge ab.
    EdgeSubset allowed = factor_;
    Vertex start = -1;
    if (state_.h.contains(pair.edge)) {
      start = *std::find_if(component.begin(), component.end(),
                            [&](Vertex v) { return !saturated(d_h, v); });
    } else {
      start = pair.y;
      if (saturated(d_h, start) || pair.x == u) {
        throw InternalInvariant("matching pair " + std::to_string(pair.edge) +
                                " is out of h but an endpoint is saturated");
      }
      for (EdgeId e : g_.incident(pair.x)) allowed.erase(e);
    }
    std::vector<EdgeId> walk;
    try {
      walk = forest_path(allowed, start, u);
    } catch (const NotFound&) {
      throw InternalInvariant("designated endpoint " + std::to_string(pair.x) +
                              " disconnects its factor component");
    }
    Vertex a = start;
    EdgeId ab = -1;
    for (EdgeId e : walk) {
      const Vertex next = g_.edge(e).other(a);
      if (saturated(d_h, next)) {
        ab = e;
        break;
      }
      a = next;
    }
    const Vertex b = g_.edge(ab).other(a);
    if (!state_.h.contains(ab) || state_.t0.contains(ab)) {
      throw InternalInvariant("edge " + std::to_string(ab) + " at saturated vertex " +
                              std::to_string(b) + " is missing from h or already in t0");
    }
    const EdgeId bc = forest_path(state_.t0, b, a).front();
    if (factor_.contains(bc)) {
      throw InternalInvariant("tree edge " + std::to_string(bc) + " at saturated vertex " +
                              std::to_string(b) + " lies in the factor");
    }
    state_.h.erase(bc);
    state_.t0.erase(bc);
    state_.t0.insert(ab);
    record(StepKind::SwapInT0, bc, ab, before);
    return true;
  }

  // Re-inserts the matching edge xy for a vertex y with d_H(y) < d_F(y),
  // trading away the t0-edge at x on the cycle xy closes.
  bool phase_b_step() {
    const auto d_h = degree_profile(state_.h);
    Vertex u = -1;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (d_h[at(v)] < d_factor_[at(v)]) {
        u = v;
        break;
      }
    }
    if (u == -1) return false;
    const int index = pair_at_vertex_[at(u)];
    if (index < 0) {
      throw InternalInvariant("vertex " + std::to_string(u) + " is below d_F without a matching edge");
    }
    const MatchedPair& pair = matching_.pairs[static_cast<std::size_t>(index)];
    if (state_.h.contains(pair.edge) || u == pair.x) {
      throw InternalInvariant("deficient vertex " + std::to_string(u) +
                              " is not the y end of a missing matching edge");
    }
    const Measure before = measure();
    const EdgeId xz = forest_path(state_.t0, pair.x, pair.y).front();
    if (factor_.contains(xz)) {
      throw InternalInvariant("tree edge " + std::to_string(xz) + " at " + std::to_string(pair.x) +
                              " lies in the factor");
    }
    state_.h.erase(xz);
    state_.h.insert(pair.edge);
    state_.t0.erase(xz);
    state_.t0.insert(pair.edge);
    record(StepKind::RestoreMatchingEdge, xz, pair.edge, before);
    if (options_.audit) {
      const auto d_after = degree_profile(state_.h);
      for (Vertex v = 0; v < g_.vertex_count(); ++v) {
        if (d_factor_[at(v)] > 0 && saturated(d_after, v)) {
          throw InternalInvariant("matching restore re-saturated vertex " + std::to_string(v));
        }
      }
    }
    return true;
  }

  const MultiGraph& g_;
  const EdgeSubset& factor_;
  const EdgeSubset& tree_;
  const MatchingSelection& matching_;
  ExtendOptions options_;
  EdgeSubset m_;
  std::vector<int> d_factor_;
  std::vector<int> d_tree_;
  std::vector<int> saturation_;
  std::vector<int> label_;
  std::vector<std::vector<Vertex>> components_;
  std::vector<int> pair_of_component_;
  std::vector<int> pair_at_vertex_;
  ExtensionState state_;
};

// Swap partner for new_edge at pivot, avoiding factor edges.
EdgeId exchange_partner(const EdgeSubset& current, int m, Vertex pivot, const EdgeSubset& factor,
                        EdgeId new_edge, const ExtendOptions& options) {
  const MultiGraph& g = current.host();
  if (options.use_minimal_subgraph) {
    const auto piece =
        minimal_tree_connected_subgraph(current, m, pivot, g.edge(new_edge).other(pivot));
    for (EdgeId e : g.incident(pivot)) {
      if (!piece.edges.contains(e) || factor.contains(e)) continue;
      if (!is_m_tree_connected(current.with(new_edge).without(e), m)) {
        throw InternalInvariant("swap through minimal subgraph edge " + std::to_string(e) +
                                " lost tree-connectivity");
      }
      return e;
    }
    throw InternalInvariant("minimal subgraph has no non-factor edge at vertex " +
                            std::to_string(pivot));
  }
  try {
    return find_exchange_edge(current, m, pivot, factor, new_edge);
  } catch (const NotFound& e) {
    throw InternalInvariant(e.what());
  }
}

void check_bipartite_inputs(const EdgeSubset& factor, const EdgeSubset& tree,
                            const EdgeSubset& matching, int m) {
  if (!is_m_tree_connected(tree, m)) {
    throw PreconditionViolation("tree factor is not " + std::to_string(m) + "-tree-connected");
  }
  const MultiGraph& g = factor.host();
  const auto d_factor = degree_profile(factor);
  for (EdgeId e : (factor - tree).ids()) {
    const bool a_u = d_factor[at(g.edge(e).u)] <= m;
    const bool a_v = d_factor[at(g.edge(e).v)] <= m;
    if (a_u == a_v) {
      throw PreconditionViolation("factor edge " + std::to_string(e) + " (" +
                                  std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v) +
                                  ") outside the tree factor has both ends in class " +
                                  (a_u ? "A" : "B"));
    }
  }
  if (!matching.subset_of(factor - tree)) {
    throw PreconditionViolation("M must be a subset of the factor edges outside the tree factor");
  }
  const auto d_m = degree_profile(matching);
  const auto d_shared = degree_profile(factor & tree);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (d_factor[at(v)] > m && d_m[at(v)] + d_shared[at(v)] < m) {
      throw PreconditionViolation(vertex_values(v, "d_M+d_FnT", d_m[at(v)] + d_shared[at(v)], "m", m));
    }
  }
}

}  // namespace

std::optional<std::string> membership_violation(const ExtensionState& state,
                                                const EdgeSubset& factor, const EdgeSubset& tree,
                                                const MatchingSelection& matching) {
  const MultiGraph& g = factor.host();
  if (!state.h.subset_of(state.g0)) return "h is not inside T ∪ F";
  if (!is_connected(state.h)) return "h is not connected";
  if (!is_spanning_tree(state.t0)) return "t0 is not a spanning tree";
  if (!state.t0.subset_of(state.h)) return "t0 is not inside h";
  const EdgeSubset m = matching.as_subset(g);
  if (!(factor - m).subset_of(state.h)) return "h lost an edge of F \\ M";
  const auto d_h = degree_profile(state.h);
  const auto d_f = degree_profile(factor);
  const auto d_t = degree_profile(tree);
  auto tree_factor_edge_at = [&](Vertex v) {
    const auto inc = g.incident(v);
    return std::any_of(inc.begin(), inc.end(),
                       [&](EdgeId e) { return state.t0.contains(e) && factor.contains(e); });
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (d_h[at(v)] == d_t[at(v)] + d_f[at(v)] && tree_factor_edge_at(v)) {
      return "condition (i) fails at vertex " + std::to_string(v);
    }
  }
  for (const auto& p : matching.pairs) {
    if (!state.h.contains(p.edge) && tree_factor_edge_at(p.x)) {
      return "condition (ii) fails at vertex " + std::to_string(p.x);
    }
  }
  return std::nullopt;
}

VertexClassification classify_vertices(const EdgeSubset& factor, int m) {
  VertexClassification out;
  const auto d = degree_profile(factor);
  for (std::size_t v = 0; v < d.size(); ++v) {
    (d[v] <= m ? out.class_a : out.class_b).push_back(static_cast<Vertex>(v));
  }
  return out;
}

ExtensionResult connected_extend(const EdgeSubset& factor, const MatchingSelection& matching,
                                 const EdgeSubset& tree, const ExtendOptions& options) {
  require_same_host(factor, tree);
  const MultiGraph& g = factor.host();
  if (!is_spanning_tree(tree)) throw PreconditionViolation("T is not a spanning tree of the host");
  validate_matching(factor, matching);
  if (g.vertex_count() <= 1) return {EdgeSubset(g), {}};
  if (factor.empty()) return {tree, {}};

  ExtensionResult result = ConnectedEngine(factor, matching, tree, options).run();

  const auto d_factor = degree_profile(factor);
  require_window(result.h, d_factor, extension_caps(degree_profile(tree), d_factor, 1),
                 "connected extension");
  if (!is_connected(result.h)) throw InternalInvariant("connected extension is disconnected");
  if (!(factor - matching.as_subset(g)).subset_of(result.h)) {
    throw InternalInvariant("connected extension dropped an edge of F \\ M");
  }
  return result;
}

ExtensionResult extend_with_matching_tree(const EdgeSubset& factor,
                                          const MatchingSelection& matching,
                                          const EdgeSubset& tree, const ExtendOptions& options) {
  require_same_host(factor, tree);
  const EdgeSubset m = matching.as_subset(factor.host());
  if (!m.subset_of(tree)) {
    throw PreconditionViolation("matching is not contained in the spanning tree");
  }
  ExtensionResult result = connected_extend(factor, matching, tree, options);
  result.h = result.h | m;

  const auto d_factor = degree_profile(factor);
  const auto d_tree = degree_profile(tree);
  const auto d_m = degree_profile(m);
  auto upper = extension_caps(d_tree, d_factor, 1);
  for (std::size_t v = 0; v < upper.size(); ++v) {
    if (d_m[v] > 0) upper[v] = d_tree[v] + d_factor[v] - 1;
  }
  require_window(result.h, d_factor, upper, "matching-tree extension");
  if (!factor.subset_of(result.h)) throw InternalInvariant("matching-tree extension lost F");
  if (!is_connected(result.h)) throw InternalInvariant("matching-tree extension is disconnected");
  return result;
}

ExtensionResult connected_factor_via_tree(const EdgeSubset& factor, const EdgeSubset& tree,
                                          const DegreeBounds& bounds,
                                          const ExtendOptions& options) {
  require_same_host(factor, tree);
  const MultiGraph& g = factor.host();
  bounds.validate(g.vertex_count());
  if (!bounds.f_prime) throw InvalidInput("f_prime is required for a spanning f'-tree");
  const auto& f_prime = *bounds.f_prime;
  const auto d_factor = degree_profile(factor);
  const auto d_tree = degree_profile(tree);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto i = at(v);
    if (bounds.f[i] < 1) throw PreconditionViolation(vertex_values(v, "f", bounds.f[i], "required", 1));
    if (f_prime[i] < 1) throw PreconditionViolation(vertex_values(v, "f'", f_prime[i], "required", 1));
    if (d_factor[i] < bounds.g[i] || d_factor[i] > bounds.f[i]) {
      throw PreconditionViolation(vertex_values(v, "d_F", d_factor[i], "window", bounds.g[i]) +
                                  ".." + std::to_string(bounds.f[i]));
    }
  }
  if (!is_spanning_tree(tree)) throw PreconditionViolation("T is not a spanning tree of the host");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (d_tree[at(v)] > f_prime[at(v)]) {
      throw PreconditionViolation(vertex_values(v, "d_T", d_tree[at(v)], "f'", f_prime[at(v)]));
    }
  }

  ExtensionResult result =
      connected_extend(factor, select_extension_matching(factor), tree, options);
  std::vector<int> upper(bounds.f.size());
  for (std::size_t v = 0; v < upper.size(); ++v) upper[v] = bounds.f[v] + f_prime[v] - 1;
  if (g.vertex_count() > 1) require_window(result.h, bounds.g, upper, "connected factor");
  return result;
}

ExtensionResult tree_connected_extend_bipartite(const EdgeSubset& factor, const EdgeSubset& tree,
                                                const EdgeSubset& matching, int m,
                                                const ExtendOptions& options) {
  require_same_host(factor, tree);
  require_same_host(factor, matching);
  if (m < 1) throw InvalidInput("m must be a positive integer");
  const MultiGraph& g = factor.host();
  if (g.vertex_count() <= 1) return {EdgeSubset(g), {}};
  check_bipartite_inputs(factor, tree, matching, m);
  if (factor.empty()) return {tree, {}};

  const auto d_factor = degree_profile(factor);
  const auto d_tree = degree_profile(tree);
  const auto caps = extension_caps(d_tree, d_factor, m);
  const EdgeSubset kept = factor - matching;
  const EdgeSubset shared = factor & tree;
  std::vector<ExchangeStep> trace;

  auto t0_violation = [&](const EdgeSubset& t0) -> std::optional<std::string> {
    if (!is_m_tree_connected(t0, m)) return "t0 is not tree-connected";
    if (!t0.subset_of((tree | factor) - matching)) return "t0 leaves G0 \\ M";
    if (!shared.subset_of(t0)) return "t0 lost an edge of F ∩ T";
    const auto d_t0 = degree_profile(t0);
    const auto d_t0_kept = degree_profile(t0 | kept);
    for (std::size_t v = 0; v < d_t0.size(); ++v) {
      if (d_factor[v] <= m && d_t0[v] > d_tree[v]) return "t0 grew at A-vertex " + std::to_string(v);
      if (d_factor[v] > m && d_t0_kept[v] > d_tree[v] + d_factor[v] - m) {
        return "t0 ∪ F' exceeds the cap at B-vertex " + std::to_string(v);
      }
    }
    return std::nullopt;
  };

  // Stage 1: pull every F'-edge at an A-vertex into t0, trading a non-factor
  // edge at the same vertex.
  EdgeSubset t0 = tree;
  while (true) {
    EdgeId next = -1;
    for (EdgeId e : (kept - t0).ids()) {
      next = e;
      break;
    }
    if (next == -1) break;
    const Edge& ed = g.edge(next);
    const Vertex v = d_factor[at(ed.u)] <= m ? ed.u : ed.v;
    const Measure before{static_cast<int>(t0.size()), -overlap(t0, factor)};
    const EdgeId out = exchange_partner(t0, m, v, factor, next, options);
    t0.erase(out);
    t0.insert(next);
    const Measure after{static_cast<int>(t0.size()), -overlap(t0, factor)};
    trace.push_back({StepKind::T0Improve, out, next, before, after});
    if (options.audit) {
      if (!(after < before)) throw InternalInvariant("t0 step did not gain a factor edge");
      if (auto problem = t0_violation(t0)) throw InternalInvariant(*problem);
    }
  }

  // Stage 2: H = t0 ∪ F', then restore M-edges at deficient B-vertices.
  EdgeSubset h = t0 | kept;
  require_window(h, std::vector<int>(d_factor.size(), 0), caps, "initial t0 ∪ F'");
  while (true) {
    const auto d_h = degree_profile(h);
    Vertex x = -1;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (d_h[at(v)] < d_factor[at(v)]) {
        x = v;
        break;
      }
    }
    if (x == -1) break;
    if (d_factor[at(x)] <= m) {
      throw InternalInvariant("A-vertex " + std::to_string(x) + " fell below d_F");
    }
    EdgeId next = -1;
    for (EdgeId e : g.incident(x)) {
      if (matching.contains(e) && !h.contains(e)) {
        next = e;
        break;
      }
    }
    if (next == -1) {
      throw InternalInvariant("deficient vertex " + std::to_string(x) + " has no missing M-edge");
    }
    const Vertex v = g.edge(next).other(x);
    const Measure before{static_cast<int>(h.size()), -overlap(h, matching)};
    const EdgeId out = exchange_partner(h, m, v, factor, next, options);
    h.erase(out);
    h.insert(next);
    const Measure after{static_cast<int>(h.size()), -overlap(h, matching)};
    trace.push_back({StepKind::SwapInH, out, next, before, after});
    if (options.audit) {
      if (!(after < before)) throw InternalInvariant("H step did not gain an M-edge");
      if (!is_m_tree_connected(h, m)) throw InternalInvariant("H lost tree-connectivity");
      require_window(h, std::vector<int>(d_factor.size(), 0), caps, "stage-2 H");
    }
  }

  require_window(h, d_factor, caps, "bipartite tree-connected extension");
  if (!kept.subset_of(h)) throw InternalInvariant("tree-connected extension dropped F \\ M");
  if (!is_m_tree_connected(h, m)) throw InternalInvariant("extension is not tree-connected");
  return {h, std::move(trace)};
}

ExtensionResult tree_connected_extend(const EdgeSubset& factor, const EdgeSubset& tree, int m,
                                      const ExtendOptions& options) {
  require_same_host(factor, tree);
  if (m < 1) throw InvalidInput("m must be a positive integer");
  const MultiGraph& g = factor.host();
  if (g.vertex_count() <= 1) return {EdgeSubset(g), {}};
  if (!is_m_tree_connected(tree, m)) {
    throw PreconditionViolation("tree factor is not " + std::to_string(m) + "-tree-connected");
  }
  if (factor.empty()) return {tree, {}};

  EdgeSubset current = factor;
  EdgeSubset set_aside(g);
  std::vector<ExchangeStep> trace;
  auto peel = [&](StepKind kind, EdgeId e) {
    const Measure before{static_cast<int>(current.size()), 0};
    current.erase(e);
    if (kind == StepKind::PeelBB) set_aside.insert(e);
    trace.push_back({kind, e, std::nullopt, before, {static_cast<int>(current.size()), 0}});
  };
  while (true) {
    const auto d = degree_profile(current);
    const auto outside = (current - tree).ids();
    auto both_in = [&](bool class_a) {
      return std::find_if(outside.begin(), outside.end(), [&](EdgeId e) {
        return (d[at(g.edge(e).u)] <= m) == class_a && (d[at(g.edge(e).v)] <= m) == class_a;
      });
    };
    if (auto it = both_in(true); it != outside.end()) {
      peel(StepKind::PeelAA, *it);
    } else if (auto jt = both_in(false); jt != outside.end()) {
      peel(StepKind::PeelBB, *jt);
    } else {
      break;
    }
  }

  ExtensionResult inner =
      tree_connected_extend_bipartite(current, tree, current - tree, m, options);
  trace.insert(trace.end(), inner.trace.begin(), inner.trace.end());
  ExtensionResult result{inner.h | set_aside, std::move(trace)};

  const auto d_factor = degree_profile(factor);
  require_window(result.h, d_factor, extension_caps(degree_profile(tree), d_factor, m),
                 "tree-connected extension");
  if (!is_m_tree_connected(result.h, m)) throw InternalInvariant("extension is not tree-connected");
  return result;
}

ExtensionResult tree_connected_factor(const EdgeSubset& factor, const EdgeSubset& tree,
                                      const DegreeBounds& bounds, int m,
                                      const ExtendOptions& options) {
  require_same_host(factor, tree);
  const MultiGraph& g = factor.host();
  if (m < 1) throw InvalidInput("m must be a positive integer");
  bounds.validate(g.vertex_count());
  if (!bounds.f_prime) throw InvalidInput("f_prime is required for an (m,f')-factor");
  const auto& f_prime = *bounds.f_prime;
  const auto d_factor = degree_profile(factor);
  const auto d_tree = degree_profile(tree);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto i = at(v);
    if (bounds.f[i] < m) throw PreconditionViolation(vertex_values(v, "f", bounds.f[i], "m", m));
    if (f_prime[i] < m) throw PreconditionViolation(vertex_values(v, "f'", f_prime[i], "m", m));
    if (d_factor[i] < bounds.g[i] || d_factor[i] > bounds.f[i]) {
      throw PreconditionViolation(vertex_values(v, "d_F", d_factor[i], "window", bounds.g[i]) +
                                  ".." + std::to_string(bounds.f[i]));
    }
    if (d_tree[i] > f_prime[i]) {
      throw PreconditionViolation(vertex_values(v, "d_T", d_tree[i], "f'", f_prime[i]));
    }
  }
  if (g.vertex_count() > 1 && !is_m_tree_connected(tree, m)) {
    throw PreconditionViolation("tree factor is not " + std::to_string(m) + "-tree-connected");
  }

  ExtensionResult result = tree_connected_extend(factor, tree, m, options);
  std::vector<int> upper(bounds.f.size());
  for (std::size_t v = 0; v < upper.size(); ++v) upper[v] = bounds.f[v] + f_prime[v] - m;
  if (g.vertex_count() > 1) require_window(result.h, bounds.g, upper, "tree-connected factor");
  return result;
}

}  // namespace factorforge
