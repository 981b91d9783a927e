#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "factorforge/cli.hpp"
#include "factorforge/error.hpp"
#include "factorforge/extension.hpp"
#include "factorforge/factor_search.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/instance_io.hpp"
#include "factorforge/oracle.hpp"
#include "factorforge/tree_packing.hpp"

namespace py = pybind11;
using namespace factorforge;

namespace {

using IdList = std::vector<EdgeId>;

EdgeSubset subset(const MultiGraph& g, const IdList& ids) { return EdgeSubset(g, ids); }

py::list trace_list(const std::vector<ExchangeStep>& trace) {
  py::list out;
  for (const auto& s : trace) {
    py::dict step;
    step["kind"] = to_string(s.kind);
    step["removed"] = s.removed ? py::cast(*s.removed) : py::none();
    step["added"] = s.added ? py::cast(*s.added) : py::none();
    step["measure_before"] = py::make_tuple(s.before.primary, s.before.secondary);
    step["measure_after"] = py::make_tuple(s.after.primary, s.after.secondary);
    out.append(std::move(step));
  }
  return out;
}

py::dict result_dict(const ExtensionResult& r) {
  py::dict d;
  d["h"] = r.h.ids();
  d["trace"] = trace_list(r.trace);
  return d;
}

MatchingSelection matching_arg(const EdgeSubset& factor, const std::optional<IdList>& matching) {
  return matching ? designate_matching(factor, *matching) : select_extension_matching(factor);
}

DegreeBounds bounds_arg(const std::vector<int>& g, const std::vector<int>& f,
                        const std::vector<int>& f_prime) {
  return DegreeBounds{g, f, f_prime};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Degree-bounded connected and tree-connected factor construction";

  auto base = py::register_exception<Error>(m, "FactorForgeError");
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base.ptr());
  py::register_exception<CapacityExceeded>(m, "CapacityExceeded", base.ptr());
  py::register_exception<NotFound>(m, "NotFound", base.ptr());
  py::register_exception<InternalInvariant>(m, "InternalInvariant", base.ptr());

  py::class_<MultiGraph>(m, "MultiGraph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             MultiGraph g(n);
             for (const auto& [u, v] : edges) g.add_edge(u, v);
             return g;
           }),
           py::arg("n"), py::arg("edges") = std::vector<std::pair<int, int>>{})
      .def("add_edge", &MultiGraph::add_edge)
      .def_property_readonly("vertex_count", &MultiGraph::vertex_count)
      .def_property_readonly("edge_count", &MultiGraph::edge_count)
      .def_property_readonly("edges", [](const MultiGraph& g) {
        std::vector<std::pair<int, int>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      });

  m.def("degree_profile", [](const MultiGraph& g, const IdList& ids) {
    return degree_profile(subset(g, ids));
  });
  m.def("connected_components", [](const MultiGraph& g, const IdList& ids) {
    return connected_components(subset(g, ids));
  });
  m.def("cut_vertices", [](const MultiGraph& g, const IdList& ids) {
    return cut_vertices(subset(g, ids));
  });

  m.def("pack_spanning_trees", [](const MultiGraph& g, const IdList& ids, int k) {
    const auto result = pack_spanning_trees(subset(g, ids), k);
    py::dict d;
    if (const auto* p = std::get_if<TreePacking>(&result)) {
      d["packed"] = true;
      d["trees"] = p->trees;
    } else {
      const auto& c = std::get<PartitionCertificate>(result);
      d["packed"] = false;
      d["partition"] = c.partition;
      d["cross_edges"] = c.cross_edge_count;
    }
    return d;
  }, py::arg("graph"), py::arg("edges"), py::arg("m"));
  m.def("is_m_tree_connected", [](const MultiGraph& g, const IdList& ids, int k) {
    return is_m_tree_connected(subset(g, ids), k);
  }, py::arg("graph"), py::arg("edges"), py::arg("m"));
  m.def("minimal_tree_connected_subgraph",
        [](const MultiGraph& g, const IdList& ids, int k, Vertex x, Vertex y) {
          const auto piece = minimal_tree_connected_subgraph(subset(g, ids), k, x, y);
          return py::make_tuple(piece.vertices, piece.edges.ids());
        },
        py::arg("graph"), py::arg("edges"), py::arg("m"), py::arg("x"), py::arg("y"));
  m.def("find_exchange_edge",
        [](const MultiGraph& g, const IdList& ids, int k, Vertex pivot, const IdList& forbidden,
           EdgeId new_edge) {
          return find_exchange_edge(subset(g, ids), k, pivot, subset(g, forbidden), new_edge);
        },
        py::arg("graph"), py::arg("edges"), py::arg("m"), py::arg("pivot"), py::arg("forbidden"),
        py::arg("new_edge"));

  m.def("find_gf_factor",
        [](const MultiGraph& g, const std::vector<int>& lower, const std::vector<int>& upper,
           int cap) -> std::optional<IdList> {
          auto found = find_gf_factor(g, DegreeBounds{lower, upper, std::nullopt}, cap);
          if (!found) return std::nullopt;
          return found->ids();
        },
        py::arg("graph"), py::arg("g"), py::arg("f"), py::arg("cap") = kDefaultFactorEdgeCap);
  m.def("select_extension_matching", [](const MultiGraph& g, const IdList& factor) {
    std::vector<std::tuple<EdgeId, Vertex, Vertex>> out;
    for (const auto& p : select_extension_matching(subset(g, factor)).pairs) {
      out.emplace_back(p.edge, p.x, p.y);
    }
    return out;
  });

  m.def("connected_extend",
        [](const MultiGraph& g, const IdList& factor, const IdList& tree,
           const std::optional<IdList>& matching, bool audit) {
          const EdgeSubset f = subset(g, factor);
          return result_dict(connected_extend(f, matching_arg(f, matching), subset(g, tree),
                                              ExtendOptions{audit, false}));
        },
        py::arg("graph"), py::arg("factor"), py::arg("tree"), py::arg("matching") = py::none(),
        py::arg("audit") = false);
  m.def("extend_with_matching_tree",
        [](const MultiGraph& g, const IdList& factor, const IdList& tree,
           const std::optional<IdList>& matching) {
          const EdgeSubset f = subset(g, factor);
          return result_dict(extend_with_matching_tree(f, matching_arg(f, matching), subset(g, tree)));
        },
        py::arg("graph"), py::arg("factor"), py::arg("tree"), py::arg("matching") = py::none());
  m.def("connected_factor_via_tree",
        [](const MultiGraph& g, const IdList& factor, const IdList& tree,
           const std::vector<int>& lower, const std::vector<int>& upper,
           const std::vector<int>& f_prime) {
          return result_dict(connected_factor_via_tree(subset(g, factor), subset(g, tree),
                                                       bounds_arg(lower, upper, f_prime)));
        },
        py::arg("graph"), py::arg("factor"), py::arg("tree"), py::arg("g"), py::arg("f"),
        py::arg("f_prime"));
  m.def("tree_connected_extend_bipartite",
        [](const MultiGraph& g, const IdList& factor, const IdList& tree, const IdList& matching,
           int k) {
          return result_dict(tree_connected_extend_bipartite(subset(g, factor), subset(g, tree),
                                                             subset(g, matching), k));
        },
        py::arg("graph"), py::arg("factor"), py::arg("tree"), py::arg("matching"), py::arg("m"));
  m.def("tree_connected_extend",
        [](const MultiGraph& g, const IdList& factor, const IdList& tree, int k) {
          return result_dict(tree_connected_extend(subset(g, factor), subset(g, tree), k));
        },
        py::arg("graph"), py::arg("factor"), py::arg("tree"), py::arg("m"));
  m.def("tree_connected_factor",
        [](const MultiGraph& g, const IdList& factor, const IdList& tree,
           const std::vector<int>& lower, const std::vector<int>& upper,
           const std::vector<int>& f_prime, int k) {
          return result_dict(tree_connected_factor(subset(g, factor), subset(g, tree),
                                                   bounds_arg(lower, upper, f_prime), k));
        },
        py::arg("graph"), py::arg("factor"), py::arg("tree"), py::arg("g"), py::arg("f"),
        py::arg("f_prime"), py::arg("m"));

  m.def("generate_instance_json",
        [](std::uint64_t seed, int n, const std::string& model, int k) {
          return serialize_instance(generate_planted_instance(seed, n, parse_instance_model(model), k));
        },
        py::arg("seed"), py::arg("n"), py::arg("model") = "planted-tree-factor", py::arg("m") = 1);
  m.def("check_solution_json",
        [](const std::string& instance_text, const IdList& h, const std::string& tag) {
          const Instance inst = parse_instance(instance_text);
          const auto report = check_solution(inst, EdgeSubset(inst.host, h), parse_theorem_tag(tag));
          std::vector<std::tuple<std::string, bool, std::string>> checks;
          for (const auto& c : report.checks) checks.emplace_back(c.name, c.pass, c.detail);
          return py::make_tuple(report.overall, checks);
        },
        py::arg("instance"), py::arg("h"), py::arg("tag"));
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
