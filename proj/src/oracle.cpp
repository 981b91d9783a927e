#include "factorforge/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <utility>

#include "factorforge/error.hpp"

namespace factorforge {

DegreeBounds Instance::bounds() const {
  const auto n = static_cast<std::size_t>(host.vertex_count());
  DegreeBounds b;
  b.g = g.value_or(std::vector<int>(n, 0));
  b.f = f ? *f : degree_profile(EdgeSubset::all(host));
  b.f_prime = f_prime;
  return b;
}

namespace {

std::size_t at(Vertex v) { return static_cast<std::size_t>(v); }

std::vector<std::vector<int>> multiplicity_matrix(const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  for (EdgeId e : subset.ids()) {
    ++mult[at(g.edge(e).u)][at(g.edge(e).v)];
    ++mult[at(g.edge(e).v)][at(g.edge(e).u)];
  }
  return mult;
}

class PartitionSearch {
 public:
  PartitionSearch(const EdgeSubset& subset, int m)
      : m_(m),
        n_(subset.host().vertex_count()),
        mult_(multiplicity_matrix(subset)),
        assign_(static_cast<std::size_t>(n_), -1) {}

  std::optional<std::vector<int>> run() {
    if (n_ == 0) return std::nullopt;
    assign_[0] = 0;
    descend(1, 1, 0);
    return best_;
  }

 private:
  void descend(int v, int classes, int cross) {
    const int remaining = n_ - v;
    // Even if every remaining vertex opened its own class, the deficit could
    // not beat the best one found so far.
    if (m_ * (classes + remaining - 1) - cross <= best_deficit_) return;
    if (v == n_) {
      best_deficit_ = m_ * (classes - 1) - cross;
      best_ = assign_;
      return;
    }
    for (int c = 0; c <= classes; ++c) {
      int added = 0;
      for (int w = 0; w < v; ++w) {
        if (assign_[at(w)] != c) added += mult_[at(v)][at(w)];
      }
      assign_[at(v)] = c;
      descend(v + 1, std::max(classes, c + 1), cross + added);
    }
    assign_[at(v)] = -1;
  }

  int m_;
  int n_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> assign_;
  int best_deficit_ = 0;
  std::optional<std::vector<int>> best_;
};

bool union_find_connected(const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[at(x)] != x) x = parent[at(x)] = parent[at(parent[at(x)])];
    return x;
  };
  int groups = g.vertex_count();
  for (EdgeId e : subset.ids()) {
    const int a = find(g.edge(e).u);
    const int b = find(g.edge(e).v);
    if (a != b) {
      parent[at(b)] = a;
      --groups;
    }
  }
  return groups <= 1;
}

// Per-tag bounds and containment requirement, precomputed once per instance.
struct Conclusion {
  TheoremTag tag;
  int m = 1;
  std::vector<int> lower;
  std::vector<int> upper;
  std::optional<std::vector<int>> factor_lower;  // g
  std::optional<std::vector<int>> factor_upper;  // f + f' - m
  EdgeSubset must_contain;
  const char* contain_name = "";
  int trace_budget = 0;
  bool connected_engine = false;
};

EdgeSubset required_subset(const Instance& inst, const std::optional<std::vector<EdgeId>>& ids,
                           const char* name) {
  if (!ids) throw InvalidInput(std::string("instance has no '") + name + "' field");
  return EdgeSubset(inst.host, *ids);
}

Conclusion conclusion_for(const Instance& inst, TheoremTag tag) {
  const MultiGraph& g = inst.host;
  const EdgeSubset factor = required_subset(inst, inst.factor, "factor");
  const EdgeSubset tree = required_subset(inst, inst.tree_factor, "tree_factor");
  const auto d_f = degree_profile(factor);
  const auto d_t = degree_profile(tree);
  const auto n = d_f.size();

  Conclusion c{tag, 1, d_f, std::vector<int>(n), std::nullopt, std::nullopt, EdgeSubset(g)};
  const bool tree_connected = tag == TheoremTag::TreeConnectedBipartite ||
                              tag == TheoremTag::TreeConnectedExtend ||
                              tag == TheoremTag::TreeConnectedFactor;
  if (tree_connected) c.m = inst.m.value_or(1);
  if (c.m < 1) throw InvalidInput("m must be a positive integer");
  for (std::size_t v = 0; v < n; ++v) c.upper[v] = d_t[v] + std::max(0, d_f[v] - c.m);

  EdgeSubset matching(g);
  if (tag == TheoremTag::ConnectedExtend || tag == TheoremTag::MatchingTree) {
    matching = inst.matching ? EdgeSubset(g, *inst.matching)
                             : select_extension_matching(factor).as_subset(g);
  } else if (tag == TheoremTag::ConnectedFactor) {
    matching = select_extension_matching(factor).as_subset(g);
  } else if (tag == TheoremTag::TreeConnectedBipartite) {
    matching = required_subset(inst, inst.matching, "matching");
  } else {
    matching = factor - tree;
  }

  switch (tag) {
    case TheoremTag::ConnectedExtend:
    case TheoremTag::TreeConnectedBipartite:
      c.must_contain = factor - matching;
      c.contain_name = "contains F \\ M";
      break;
    case TheoremTag::MatchingTree: {
      c.must_contain = factor;
      c.contain_name = "contains F";
      const auto d_m = degree_profile(matching);
      for (std::size_t v = 0; v < n; ++v) {
        if (d_m[v] > 0) c.upper[v] = d_t[v] + d_f[v] - 1;
      }
      break;
    }
    case TheoremTag::ConnectedFactor:
    case TheoremTag::TreeConnectedFactor: {
      const DegreeBounds b = inst.bounds();
      if (!b.f_prime) throw InvalidInput("instance has no 'f_prime' field");
      b.validate(g.vertex_count());
      c.factor_lower = b.g;
      c.factor_upper = std::vector<int>(n);
      for (std::size_t v = 0; v < n; ++v) (*c.factor_upper)[v] = b.f[v] + (*b.f_prime)[v] - c.m;
      break;
    }
    case TheoremTag::TreeConnectedExtend:
      break;
  }
  c.connected_engine = !tree_connected;
  c.trace_budget = static_cast<int>((tree | factor).size() + matching.size());
  return c;
}

std::string degree_detail(Vertex v, int degree, int lo, int hi) {
  return "vertex " + std::to_string(v) + ": d_H=" + std::to_string(degree) + " not in [" +
         std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

void check_window(VerificationReport& report, const char* name, const std::vector<int>& d_h,
                  const std::vector<int>& lower, const std::vector<int>& upper) {
  for (std::size_t v = 0; v < d_h.size(); ++v) {
    if (d_h[v] < lower[v] || d_h[v] > upper[v]) {
      report.add(name, false, degree_detail(static_cast<Vertex>(v), d_h[v], lower[v], upper[v]));
      return;
    }
  }
  report.add(name, true);
}

void check_structure(VerificationReport& report, const Conclusion& c, const EdgeSubset& h) {
  if (c.m == 1 && c.connected_engine) {
    report.add("connected", union_find_connected(h));
    return;
  }
  const std::string name = std::to_string(c.m) + "-tree-connected";
  if (h.host().vertex_count() == 0) {
    report.add(name, false, "empty vertex set");
    return;
  }
  const auto packing = pack_spanning_trees(h, c.m);
  if (const auto* trees = std::get_if<TreePacking>(&packing)) {
    report.add(name, validate_packing(*trees, h),
               "packing of " + std::to_string(trees->trees.size()) + " trees");
  } else {
    const auto& cert = std::get<PartitionCertificate>(packing);
    report.add(name, false,
               "partition of " + std::to_string(cert.partition.size()) + " classes crossed by " +
                   std::to_string(cert.cross_edge_count) + " edges");
  }
}

VerificationReport evaluate(const Conclusion& c, const EdgeSubset& h) {
  VerificationReport report;
  const auto d_h = degree_profile(h);
  check_window(report, "degree window d_F <= d_H <= cap", d_h, c.lower, c.upper);
  if (c.factor_lower) {
    check_window(report, "factor window g <= d_H <= f + f' - m", d_h, *c.factor_lower,
                 *c.factor_upper);
  }
  if (*c.contain_name != '\0') report.add(c.contain_name, c.must_contain.subset_of(h));
  check_structure(report, c, h);
  return report;
}

}  // namespace

void VerificationReport::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
  overall = overall && pass;
}

std::optional<PartitionCertificate> enumerate_violating_partition(const EdgeSubset& subset, int m) {
  if (m < 1) throw InvalidInput("m must be a positive integer");
  const int n = subset.host().vertex_count();
  if (n > kPartitionVertexCap) {
    throw CapacityExceeded("partition enumeration is capped at " +
                           std::to_string(kPartitionVertexCap) + " vertices, got " +
                           std::to_string(n));
  }
  const auto assignment = PartitionSearch(subset, m).run();
  if (!assignment) return std::nullopt;
  PartitionCertificate cert;
  for (Vertex v = 0; v < n; ++v) {
    const auto cls = static_cast<std::size_t>((*assignment)[at(v)]);
    if (cls >= cert.partition.size()) cert.partition.resize(cls + 1);
    cert.partition[cls].push_back(v);
  }
  cert.cross_edge_count = count_cross_edges(subset, cert.partition);
  return cert;
}

int brute_force_edge_connectivity(const EdgeSubset& subset) {
  const MultiGraph& g = subset.host();
  const int n = g.vertex_count();
  if (n <= 1) return 0;
  if (n > kCutVertexCap) {
    throw CapacityExceeded("cut enumeration is capped at " + std::to_string(kCutVertexCap) +
                           " vertices");
  }
  const auto ids = subset.ids();
  int best = static_cast<int>(ids.size());
  const std::uint32_t full = (1u << (n - 1)) - 1;
  // Vertex 0 is always on the marked side; bit i-1 marks vertex i.
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    auto side = [mask](Vertex v) { return v == 0 || ((mask >> (v - 1)) & 1u); };
    int cross = 0;
    for (EdgeId e : ids) cross += side(g.edge(e).u) != side(g.edge(e).v) ? 1 : 0;
    best = std::min(best, cross);
  }
  return best;
}

TheoremTag parse_theorem_tag(std::string_view name) {
  for (TheoremTag tag :
       {TheoremTag::ConnectedExtend, TheoremTag::MatchingTree, TheoremTag::ConnectedFactor,
        TheoremTag::TreeConnectedBipartite, TheoremTag::TreeConnectedExtend,
        TheoremTag::TreeConnectedFactor}) {
    if (name == to_string(tag)) return tag;
  }
  throw InvalidInput("unknown theorem tag '" + std::string(name) + "'");
}

const char* to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::ConnectedExtend: return "connected-extend";
    case TheoremTag::MatchingTree: return "matching-tree";
    case TheoremTag::ConnectedFactor: return "connected-factor";
    case TheoremTag::TreeConnectedBipartite: return "tree-connected-bipartite";
    case TheoremTag::TreeConnectedExtend: return "tree-connected-extend";
    case TheoremTag::TreeConnectedFactor: return "tree-connected-factor";
  }
  return "unknown";
}

VerificationReport check_solution(const Instance& instance, const EdgeSubset& h, TheoremTag tag,
                                  const std::vector<ExchangeStep>* trace) {
  if (!(h.host() == instance.host)) throw InvalidInput("solution is over a different host");
  const Conclusion c = conclusion_for(instance, tag);
  VerificationReport report = evaluate(c, h);
  if (trace != nullptr) {
    bool decreasing = true;
    bool chained = true;
    for (std::size_t i = 0; i < trace->size(); ++i) {
      const auto& step = (*trace)[i];
      decreasing = decreasing && step.after < step.before;
      if (c.connected_engine && i > 0) chained = chained && (*trace)[i - 1].after == step.before;
    }
    report.add("trace measure strictly decreases", decreasing && chained);
    report.add("trace length <= |E(G0)| + |M|",
               static_cast<int>(trace->size()) <= c.trace_budget,
               std::to_string(trace->size()) + " steps, budget " + std::to_string(c.trace_budget));
  }
  return report;
}

std::vector<EdgeSubset> brute_force_feasible_set(const Instance& instance, TheoremTag tag,
                                                 int edge_cap) {
  const MultiGraph& g = instance.host;
  if (g.edge_count() > edge_cap) {
    throw CapacityExceeded("feasible-set enumeration is capped at " + std::to_string(edge_cap) +
                           " edges, host has " + std::to_string(g.edge_count()));
  }
  const Conclusion c = conclusion_for(instance, tag);
  std::vector<EdgeSubset> out;
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    EdgeSubset h(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if ((mask >> e) & 1u) h.insert(e);
    }
    if (!c.must_contain.subset_of(h)) continue;
    const auto d_h = degree_profile(h);
    bool in_window = true;
    for (std::size_t v = 0; v < d_h.size() && in_window; ++v) {
      in_window = d_h[v] >= c.lower[v] && d_h[v] <= c.upper[v];
      if (c.factor_lower) {
        in_window = in_window && d_h[v] >= (*c.factor_lower)[v] && d_h[v] <= (*c.factor_upper)[v];
      }
    }
    if (!in_window) continue;
    if (evaluate(c, h).overall) out.push_back(std::move(h));
  }
  return out;
}

InstanceModel parse_instance_model(std::string_view name) {
  for (InstanceModel model :
       {InstanceModel::PlantedTreeFactor, InstanceModel::TwoHamPaths, InstanceModel::RandomMulti}) {
    if (name == to_string(model)) return model;
  }
  throw InvalidInput("unknown instance model '" + std::string(name) + "'");
}

const char* to_string(InstanceModel model) {
  switch (model) {
    case InstanceModel::PlantedTreeFactor: return "planted-tree-factor";
    case InstanceModel::TwoHamPaths: return "two-ham-paths";
    case InstanceModel::RandomMulti: return "random-multi";
  }
  return "unknown";
}

namespace {

class InstanceBuilder {
 public:
  InstanceBuilder(std::uint64_t seed, int n, int multiplicity_cap)
      : rng_(seed), host_(n), cap_(multiplicity_cap) {}

  int below(int k) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(k)); }

  std::vector<Vertex> permutation(int n) {
    std::vector<Vertex> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[at(i)], p[at(below(i + 1))]);
    return p;
  }

  int multiplicity(Vertex u, Vertex v) const {
    auto it = mult_.find(std::minmax(u, v));
    return it == mult_.end() ? 0 : it->second;
  }

  EdgeId add(Vertex u, Vertex v) {
    ++mult_[std::minmax(u, v)];
    return host_.add_edge(u, v);
  }

  // Random spanning tree: each vertex of a random order attaches to an
  // earlier one, preferring pairs still under the multiplicity cap.
  std::vector<EdgeId> random_tree() {
    const int n = host_.vertex_count();
    const auto order = permutation(n);
    std::vector<EdgeId> ids;
    for (int i = 1; i < n; ++i) {
      const int offset = below(i);
      int pick = offset;
      for (int k = 0; k < i; ++k) {
        const int j = (offset + k) % i;
        if (multiplicity(order[at(i)], order[at(j)]) < cap_) {
          pick = j;
          break;
        }
      }
      ids.push_back(add(order[at(i)], order[at(pick)]));
    }
    return ids;
  }

  std::vector<EdgeId> hamiltonian_path(const std::vector<Vertex>& order) {
    std::vector<EdgeId> ids;
    for (std::size_t i = 1; i < order.size(); ++i) ids.push_back(add(order[i - 1], order[i]));
    return ids;
  }

  void add_random_edges(int count) {
    const int n = host_.vertex_count();
    for (int k = 0; k < count; ++k) {
      const Vertex u = below(n);
      Vertex v = below(n - 1);
      if (v >= u) ++v;
      if (multiplicity(u, v) < cap_) add(u, v);
    }
  }

  std::mt19937_64& rng() { return rng_; }
  MultiGraph& host() { return host_; }

 private:
  std::mt19937_64 rng_;
  MultiGraph host_;
  int cap_;
  std::map<std::pair<Vertex, Vertex>, int> mult_;
};

}  // namespace

Instance generate_planted_instance(std::uint64_t seed, int n, InstanceModel model, int m) {
  if (n < 2) throw InvalidInput("instance generation needs n >= 2");
  if (m < 1) throw InvalidInput("m must be a positive integer");
  if (model == InstanceModel::TwoHamPaths) {
    if (n < 4) throw InvalidInput("two edge-disjoint Hamiltonian paths need n >= 4");
    m = 2;
  }
  const int cap = model == InstanceModel::RandomMulti ? std::max(3, m) : std::max(2, m);
  const std::uint64_t mixed = seed * 0x9E3779B97F4A7C15ull ^
                              (static_cast<std::uint64_t>(model) << 56) ^
                              (static_cast<std::uint64_t>(n) << 40) ^
                              (static_cast<std::uint64_t>(m) << 32);
  InstanceBuilder b(mixed, n, cap);

  std::vector<EdgeId> tree;
  if (model == InstanceModel::TwoHamPaths) {
    const auto first = b.permutation(n);
    std::vector<std::pair<Vertex, Vertex>> used;
    for (std::size_t i = 1; i < first.size(); ++i) used.push_back(std::minmax(first[i - 1], first[i]));
    auto second = b.permutation(n);
    for (int attempt = 0; attempt < 5000; ++attempt) {
      bool disjoint = true;
      for (std::size_t i = 1; i < second.size() && disjoint; ++i) {
        disjoint = std::find(used.begin(), used.end(),
                             std::pair<Vertex, Vertex>(std::minmax(second[i - 1], second[i]))) ==
                   used.end();
      }
      if (disjoint) break;
      second = b.permutation(n);
    }
    tree = b.hamiltonian_path(first);
    const auto more = b.hamiltonian_path(second);
    tree.insert(tree.end(), more.begin(), more.end());
  } else {
    for (int t = 0; t < m; ++t) {
      const auto ids = b.random_tree();
      tree.insert(tree.end(), ids.begin(), ids.end());
    }
  }
  const int extra = model == InstanceModel::RandomMulti ? b.below(2 * n + 1) : b.below(n + 1);
  b.add_random_edges(extra);

  Instance inst{b.host()};
  const MultiGraph& g = inst.host;
  const int density = 2 + b.below(3);  // F keeps each edge with probability 1/density
  std::vector<EdgeId> factor;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (b.below(density) == 0) factor.push_back(e);
  }
  std::sort(tree.begin(), tree.end());
  const EdgeSubset f_sub(g, factor);
  const auto d_f = degree_profile(f_sub);
  const auto d_t = degree_profile(EdgeSubset(g, tree));

  std::vector<int> lower(at(n)), upper(at(n)), upper_tree(at(n));
  const int f_floor = model == InstanceModel::TwoHamPaths ? 2 : m;
  for (std::size_t v = 0; v < at(n); ++v) {
    lower[v] = std::max(0, d_f[v] - b.below(2));
    upper[v] = std::max(f_floor, d_f[v] + b.below(2));
    upper_tree[v] = model == InstanceModel::TwoHamPaths ? 4 : d_t[v] + b.below(2);
  }
  inst.m = m;
  inst.g = lower;
  inst.f = upper;
  inst.f_prime = upper_tree;
  inst.factor = factor;
  inst.tree_factor = tree;
  inst.matching = select_extension_matching(f_sub).edges();
  return inst;
}

}  // namespace factorforge
