#include "factorforge/factor_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "factorforge/error.hpp"

namespace factorforge {

void DegreeBounds::validate(int vertex_count) const {
  const auto n = static_cast<std::size_t>(vertex_count);
  auto check = [n](const std::vector<int>& vec, const char* name) {
    if (vec.size() != n) {
      throw InvalidInput(std::string(name) + " has length " + std::to_string(vec.size()) +
                         ", expected " + std::to_string(n));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (vec[v] < 0) {
        throw InvalidInput(std::string(name) + "(" + std::to_string(v) + ") is negative");
      }
    }
  };
  check(g, "g");
  check(f, "f");
  if (f_prime) check(*f_prime, "f_prime");
  for (std::size_t v = 0; v < n; ++v) {
    if (g[v] > f[v]) {
      throw InvalidInput("g(" + std::to_string(v) + ")=" + std::to_string(g[v]) + " exceeds f(" +
                         std::to_string(v) + ")=" + std::to_string(f[v]));
    }
  }
}

std::vector<EdgeId> MatchingSelection::edges() const {
  std::vector<EdgeId> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.edge);
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSubset MatchingSelection::as_subset(const MultiGraph& host) const {
  return EdgeSubset(host, edges());
}

int edge_cap_from_environment(int fallback) {
  const char* raw = std::getenv("FACTORFORGE_CAP_EDGES");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value <= 0) return fallback;
  return static_cast<int>(value);
}

namespace {

class FactorSearch {
 public:
  FactorSearch(const MultiGraph& host, const DegreeBounds& bounds)
      : host_(host),
        bounds_(bounds),
        degree_(static_cast<std::size_t>(host.vertex_count()), 0),
        undecided_(static_cast<std::size_t>(host.vertex_count()), 0),
        chosen_(static_cast<std::size_t>(host.edge_count()), false) {
    for (Vertex v = 0; v < host.vertex_count(); ++v) {
      undecided_[static_cast<std::size_t>(v)] = static_cast<int>(host.incident(v).size());
    }
  }

  std::optional<EdgeSubset> run() {
    for (Vertex v = 0; v < host_.vertex_count(); ++v) {
      if (undecided_[idx(v)] < bounds_.g[idx(v)]) return std::nullopt;
    }
    if (!descend(0)) return std::nullopt;
    EdgeSubset out(host_);
    for (EdgeId e = 0; e < host_.edge_count(); ++e) {
      if (chosen_[static_cast<std::size_t>(e)]) out.insert(e);
    }
    return out;
  }

 private:
  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

  bool descend(EdgeId e) {
    if (e == host_.edge_count()) return true;
    const Edge& ed = host_.edge(e);
    --undecided_[idx(ed.u)];
    --undecided_[idx(ed.v)];

    if (degree_[idx(ed.u)] < bounds_.f[idx(ed.u)] && degree_[idx(ed.v)] < bounds_.f[idx(ed.v)]) {
      ++degree_[idx(ed.u)];
      ++degree_[idx(ed.v)];
      chosen_[static_cast<std::size_t>(e)] = true;
      if (descend(e + 1)) return true;
      chosen_[static_cast<std::size_t>(e)] = false;
      --degree_[idx(ed.u)];
      --degree_[idx(ed.v)];
    }

    const bool can_skip = degree_[idx(ed.u)] + undecided_[idx(ed.u)] >= bounds_.g[idx(ed.u)] &&
                          degree_[idx(ed.v)] + undecided_[idx(ed.v)] >= bounds_.g[idx(ed.v)];
    if (can_skip && descend(e + 1)) return true;

    ++undecided_[idx(ed.u)];
    ++undecided_[idx(ed.v)];
    return false;
  }

  const MultiGraph& host_;
  const DegreeBounds& bounds_;
  std::vector<int> degree_;
  std::vector<int> undecided_;
  std::vector<bool> chosen_;
};

}  // namespace

std::optional<EdgeSubset> find_gf_factor(const MultiGraph& host, const DegreeBounds& bounds,
                                         int edge_cap) {
  bounds.validate(host.vertex_count());
  if (host.edge_count() > edge_cap) {
    throw CapacityExceeded("host has " + std::to_string(host.edge_count()) +
                           " edges; the exhaustive factor search is capped at " +
                           std::to_string(edge_cap));
  }
  return FactorSearch(host, bounds).run();
}

MatchingSelection select_extension_matching(const EdgeSubset& factor) {
  const MultiGraph& g = factor.host();
  MatchingSelection out;
  for (const auto& component : connected_components(factor)) {
    if (component.size() < 2) continue;
    const EdgeSubset tree = spanning_tree_of_component(factor, component);
    const auto tree_degree = degree_profile(tree);
    // A leaf of a spanning tree of the component is never a cut vertex of it.
    const auto leaf = *std::find_if(component.begin(), component.end(), [&](Vertex v) {
      return tree_degree[static_cast<std::size_t>(v)] == 1;
    });
    const auto incident = g.incident(leaf);
    const EdgeId edge = *std::find_if(incident.begin(), incident.end(),
                                      [&](EdgeId e) { return factor.contains(e); });
    out.pairs.push_back({edge, leaf, g.edge(edge).other(leaf)});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) { return a.edge < b.edge; });
  return out;
}

void validate_matching(const EdgeSubset& factor, const MatchingSelection& matching) {
  const MultiGraph& g = factor.host();
  const auto label = component_labels(factor);
  const auto components = connected_components(factor);
  const auto cuts = cut_vertices(factor);
  std::vector<bool> met(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<int> per_component(components.size(), 0);

  for (const auto& p : matching.pairs) {
    const std::string name = "matching edge " + std::to_string(p.edge);
    if (!g.valid_edge(p.edge)) throw PreconditionViolation(name + " is not a host edge");
    if (!factor.contains(p.edge)) throw PreconditionViolation(name + " is not in the factor");
    const Edge& ed = g.edge(p.edge);
    if (!((ed.u == p.x && ed.v == p.y) || (ed.u == p.y && ed.v == p.x))) {
      throw PreconditionViolation(name + " does not join its designated endpoints");
    }
    for (Vertex v : {p.x, p.y}) {
      if (met[static_cast<std::size_t>(v)]) {
        throw PreconditionViolation(name + " shares vertex " + std::to_string(v) +
                                    " with another matching edge");
      }
      met[static_cast<std::size_t>(v)] = true;
    }
    if (std::binary_search(cuts.begin(), cuts.end(), p.x)) {
      throw PreconditionViolation(name + ": designated endpoint " + std::to_string(p.x) +
                                  " is a cut vertex of the factor");
    }
    ++per_component[static_cast<std::size_t>(label[static_cast<std::size_t>(p.x)])];
  }
  for (std::size_t c = 0; c < components.size(); ++c) {
    const int expected = components[c].size() >= 2 ? 1 : 0;
    if (per_component[c] != expected) {
      throw PreconditionViolation("factor component containing vertex " +
                                  std::to_string(components[c].front()) + " has " +
                                  std::to_string(per_component[c]) + " matching edges, expected " +
                                  std::to_string(expected));
    }
  }
}

MatchingSelection designate_matching(const EdgeSubset& factor, const std::vector<EdgeId>& edges) {
  const MultiGraph& g = factor.host();
  const auto cuts = cut_vertices(factor);
  MatchingSelection out;
  for (EdgeId e : edges) {
    if (!g.valid_edge(e)) throw InvalidInput("matching edge id " + std::to_string(e) + " out of range");
    Vertex a = std::min(g.edge(e).u, g.edge(e).v);
    Vertex b = std::max(g.edge(e).u, g.edge(e).v);
    if (std::binary_search(cuts.begin(), cuts.end(), a)) std::swap(a, b);
    out.pairs.push_back({e, a, b});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) { return a.edge < b.edge; });
  return out;
}

bool verify_factor_bounds(const EdgeSubset& factor, const std::vector<int>& lower,
                          const std::vector<int>& upper) {
  const auto n = static_cast<std::size_t>(factor.host().vertex_count());
  if (lower.size() != n || upper.size() != n) {
    throw InvalidInput("bound vectors must have length " + std::to_string(n));
  }
  const auto deg = degree_profile(factor);
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] < lower[v] || deg[v] > upper[v]) return false;
  }
  return true;
}

}  // namespace factorforge
