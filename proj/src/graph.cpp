#include "factorforge/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <string>

#include "factorforge/error.hpp"

namespace factorforge {

MultiGraph::MultiGraph(int vertex_count) {
  if (vertex_count < 0) throw InvalidInput("negative vertex count");
  incident_.resize(static_cast<std::size_t>(vertex_count));
}

MultiGraph::MultiGraph(int vertex_count, std::span<const Edge> edges)
    : MultiGraph(vertex_count) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

EdgeId MultiGraph::add_edge(Vertex u, Vertex v) {
  if (!valid_vertex(u) || !valid_vertex(v)) {
    throw InvalidInput("edge " + std::to_string(u) + "-" + std::to_string(v) +
                       " has an endpoint outside 0.." +
                       std::to_string(vertex_count() - 1));
  }
  if (u == v) throw InvalidInput("loop at vertex " + std::to_string(u));
  const EdgeId id = edge_count();
  edges_.push_back({u, v});
  incident_[static_cast<std::size_t>(u)].push_back(id);
  incident_[static_cast<std::size_t>(v)].push_back(id);
  return id;
}

bool operator==(const MultiGraph& a, const MultiGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    if (a.edge(e).u != b.edge(e).u || a.edge(e).v != b.edge(e).v) return false;
  }
  return true;
}

EdgeSubset::EdgeSubset(const MultiGraph& host)
    : host_(&host), member_(static_cast<std::size_t>(host.edge_count()), false) {}

EdgeSubset::EdgeSubset(const MultiGraph& host, std::span<const EdgeId> ids)
    : EdgeSubset(host) {
  for (EdgeId e : ids) insert(e);
}

EdgeSubset EdgeSubset::all(const MultiGraph& host) {
  EdgeSubset s(host);
  std::fill(s.member_.begin(), s.member_.end(), true);
  s.count_ = s.member_.size();
  return s;
}

void EdgeSubset::insert(EdgeId e) {
  if (!host_->valid_edge(e)) {
    throw InvalidInput("edge id " + std::to_string(e) + " is not in the host graph");
  }
  auto ref = member_[static_cast<std::size_t>(e)];
  if (!ref) {
    ref = true;
    ++count_;
  }
}

void EdgeSubset::erase(EdgeId e) {
  if (!contains(e)) return;
  member_[static_cast<std::size_t>(e)] = false;
  --count_;
}

std::vector<EdgeId> EdgeSubset::ids() const {
  std::vector<EdgeId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) out.push_back(static_cast<EdgeId>(i));
  }
  return out;
}

EdgeSubset EdgeSubset::with(EdgeId e) const {
  EdgeSubset s = *this;
  s.insert(e);
  return s;
}

EdgeSubset EdgeSubset::without(EdgeId e) const {
  EdgeSubset s = *this;
  s.erase(e);
  return s;
}

void EdgeSubset::check_same_host(const EdgeSubset& other) const {
  if (host_ != other.host_ && !(*host_ == *other.host_)) {
    throw InvalidInput("edge subsets over different host graphs");
  }
}

EdgeSubset EdgeSubset::operator|(const EdgeSubset& other) const {
  check_same_host(other);
  EdgeSubset s = *this;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (other.member_[i] && !s.member_[i]) {
      s.member_[i] = true;
      ++s.count_;
    }
  }
  return s;
}

EdgeSubset EdgeSubset::operator&(const EdgeSubset& other) const {
  check_same_host(other);
  EdgeSubset s(*host_);
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i] && other.member_[i]) {
      s.member_[i] = true;
      ++s.count_;
    }
  }
  return s;
}

EdgeSubset EdgeSubset::operator-(const EdgeSubset& other) const {
  check_same_host(other);
  EdgeSubset s(*host_);
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i] && !other.member_[i]) {
      s.member_[i] = true;
      ++s.count_;
    }
  }
  return s;
}

bool EdgeSubset::subset_of(const EdgeSubset& other) const {
  check_same_host(other);
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i] && !other.member_[i]) return false;
  }
  return true;
}

std::vector<int> degree_profile(const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e : subset.ids()) {
    ++deg[static_cast<std::size_t>(g.edge(e).u)];
    ++deg[static_cast<std::size_t>(g.edge(e).v)];
  }
  return deg;
}

int max_degree(const EdgeSubset& subset) {
  const auto deg = degree_profile(subset);
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<int> component_labels(const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  const int n = g.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] != -1) continue;
    std::deque<Vertex> queue{s};
    label[static_cast<std::size_t>(s)] = next;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(v)) {
        if (!subset.contains(e)) continue;
        const Vertex w = g.edge(e).other(v);
        if (label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::vector<Vertex>> connected_components(const EdgeSubset& subset) {
  const auto label = component_labels(subset);
  int classes = 0;
  for (int l : label) classes = std::max(classes, l + 1);
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(classes));
  for (std::size_t v = 0; v < label.size(); ++v) {
    out[static_cast<std::size_t>(label[v])].push_back(static_cast<Vertex>(v));
  }
  return out;
}

bool is_connected(const EdgeSubset& subset) {
  return connected_components(subset).size() <= 1;
}

std::vector<Vertex> cut_vertices(const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> order(n, -1), low(n, 0);
  std::vector<bool> is_cut(n, false);
  int clock = 0;

  // Tarjan's lowpoint recursion; the tree edge is skipped by id so that a
  // parallel copy of it still counts as a back edge.
  std::function<void(Vertex, EdgeId)> visit = [&](Vertex v, EdgeId via) {
    const auto vi = static_cast<std::size_t>(v);
    order[vi] = low[vi] = clock++;
    int children = 0;
    for (EdgeId e : g.incident(v)) {
      if (!subset.contains(e) || e == via) continue;
      const Vertex w = g.edge(e).other(v);
      const auto wi = static_cast<std::size_t>(w);
      if (order[wi] == -1) {
        ++children;
        visit(w, e);
        low[vi] = std::min(low[vi], low[wi]);
        if (via != -1 && low[wi] >= order[vi]) is_cut[vi] = true;
      } else {
        low[vi] = std::min(low[vi], order[wi]);
      }
    }
    if (via == -1 && children > 1) is_cut[vi] = true;
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] == -1) visit(static_cast<Vertex>(v), -1);
  }
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_cut[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
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

}  // namespace

EdgeSubset spanning_tree_of_component(const EdgeSubset& subset,
                                      std::span<const Vertex> component) {
  const MultiGraph& g = subset.host();
  std::vector<bool> inside(static_cast<std::size_t>(g.vertex_count()), false);
  for (Vertex v : component) {
    if (!g.valid_vertex(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    inside[static_cast<std::size_t>(v)] = true;
  }
  DisjointSets sets(static_cast<std::size_t>(g.vertex_count()));
  EdgeSubset tree(g);
  for (EdgeId e : subset.ids()) {
    const Edge& ed = g.edge(e);
    const bool iu = inside[static_cast<std::size_t>(ed.u)];
    const bool iv = inside[static_cast<std::size_t>(ed.v)];
    if (iu != iv) {
      throw PreconditionViolation("vertex set is not a connected class: edge " +
                                  std::to_string(e) + " leaves it");
    }
    if (iu && sets.unite(ed.u, ed.v)) tree.insert(e);
  }
  if (!component.empty() && tree.size() + 1 != component.size()) {
    throw PreconditionViolation("vertex set is not connected under the subset");
  }
  return tree;
}

bool is_spanning_tree(const EdgeSubset& subset) {
  const int n = subset.host().vertex_count();
  if (n == 0) return subset.empty();
  return static_cast<int>(subset.size()) == n - 1 && is_connected(subset);
}

std::vector<EdgeId> forest_path(const EdgeSubset& forest, Vertex from, Vertex to) {
  const MultiGraph& g = forest.host();
  if (from == to) return {};
  std::vector<EdgeId> via(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::deque<Vertex> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty() && !seen[static_cast<std::size_t>(to)]) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      if (!forest.contains(e)) continue;
      const Vertex w = g.edge(e).other(v);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      via[static_cast<std::size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  if (!seen[static_cast<std::size_t>(to)]) {
    throw NotFound("no path between " + std::to_string(from) + " and " + std::to_string(to));
  }
  std::vector<EdgeId> path;
  for (Vertex v = to; v != from;) {
    const EdgeId e = via[static_cast<std::size_t>(v)];
    path.push_back(e);
    v = g.edge(e).other(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace factorforge
