#include "factorforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "factorforge/error.hpp"
#include "factorforge/extension.hpp"
#include "factorforge/factor_search.hpp"
#include "factorforge/instance_io.hpp"
#include "factorforge/oracle.hpp"
#include "factorforge/tree_packing.hpp"

namespace factorforge {
namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string instance_path;
  int m = 0;
  std::uint64_t seed = 1;
  std::string model = "planted-tree-factor";
  int n = 8;
  bool trace = false;
  bool oracle = false;
  bool audit = false;
  bool minimal_subgraph = false;
  bool via_tree = false;
  int cap_edges = 0;
  std::string tag;
  std::string result_path;
  std::vector<int> h;
};

struct Outcome {
  int code;
  json doc;
};

std::string read_source(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    buffer << in.rdbuf();
  }
  return buffer.str();
}

int cap_for(const Options& opt, int fallback) {
  return opt.cap_edges > 0 ? opt.cap_edges : edge_cap_from_environment(fallback);
}

int m_for(const Options& opt, const Instance& inst) {
  return opt.m > 0 ? opt.m : inst.m.value_or(1);
}

EdgeSubset need(const Instance& inst, const std::optional<std::vector<EdgeId>>& ids,
                const char* name) {
  if (!ids) throw InvalidInput(std::string("instance has no '") + name + "' field");
  return EdgeSubset(inst.host, *ids);
}

json packing_json(const TreePacking& p) {
  json trees = json::array();
  for (const auto& t : p.trees) trees.push_back(t);
  return trees;
}

json trace_json(const std::vector<ExchangeStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) {
    json step;
    step["kind"] = to_string(s.kind);
    step["removed"] = s.removed ? json(*s.removed) : json(nullptr);
    step["added"] = s.added ? json(*s.added) : json(nullptr);
    step["measure_before"] = {s.before.primary, s.before.secondary};
    step["measure_after"] = {s.after.primary, s.after.secondary};
    out.push_back(std::move(step));
  }
  return out;
}

json report_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return {{"overall", report.overall}, {"checks", std::move(checks)}};
}

// Result document for an extension run, verified independently before it is
// emitted.
Outcome extension_outcome(const Options& opt, const Instance& inst, const ExtensionResult& result,
                          TheoremTag tag, int m, std::ostream& err) {
  const EdgeSubset factor = need(inst, inst.factor, "factor");
  const EdgeSubset tree = need(inst, inst.tree_factor, "tree_factor");
  const VerificationReport report = check_solution(inst, result.h, tag, &result.trace);

  json doc;
  doc["status"] = report.overall ? "ok" : "unverified";
  doc["theorem"] = to_string(tag);
  doc["m"] = m;
  doc["h"] = result.h.ids();
  doc["packing"] = json::array();
  if (inst.host.vertex_count() > 0) {
    const auto packed = pack_spanning_trees(result.h, m);
    if (const auto* p = std::get_if<TreePacking>(&packed)) {
      doc["packing"] = packing_json(*p);
    }
  }
  const auto d_f = degree_profile(factor);
  const auto d_t = degree_profile(tree);
  const auto d_h = degree_profile(result.h);
  json degrees = json::array();
  for (std::size_t v = 0; v < d_h.size(); ++v) {
    json row{{"v", v}, {"dF", d_f[v]}, {"dT", d_t[v]}, {"dH", d_h[v]},
             {"cap", d_t[v] + std::max(0, d_f[v] - m)}};
    if (tag == TheoremTag::TreeConnectedFactor || tag == TheoremTag::ConnectedFactor) {
      const DegreeBounds b = inst.bounds();
      row["g"] = b.g[v];
      row["upper"] = b.f[v] + (*b.f_prime)[v] - m;
    }
    degrees.push_back(std::move(row));
  }
  doc["degrees"] = std::move(degrees);
  doc["trace"] = trace_json(result.trace);
  doc["verification"] = report_json(report);

  bool oracle_ok = true;
  if (opt.oracle) {
    json oracle;
    const int cap = cap_for(opt, kFeasibleSetEdgeCap);
    if (inst.host.edge_count() > cap) {
      oracle["skipped"] = "host has " + std::to_string(inst.host.edge_count()) +
                          " edges, cap is " + std::to_string(cap);
    } else {
      const auto feasible = brute_force_feasible_set(inst, tag, cap);
      const bool member = std::find(feasible.begin(), feasible.end(), result.h) != feasible.end();
      oracle["feasible_count"] = feasible.size();
      oracle["member"] = member;
      oracle_ok = member;
    }
    doc["oracle"] = std::move(oracle);
  }
  if (opt.trace) {
    for (const auto& s : result.trace) {
      err << to_string(s.kind) << " removed=" << (s.removed ? std::to_string(*s.removed) : "-")
          << " added=" << (s.added ? std::to_string(*s.added) : "-") << " measure=("
          << s.before.primary << "," << s.before.secondary << ")->(" << s.after.primary << ","
          << s.after.secondary << ")\n";
    }
  }
  if (!report.overall || !oracle_ok) {
    json failure{{"status", "error"},
                 {"error", "verification"},
                 {"message", "result failed independent verification"},
                 {"verification", doc["verification"]}};
    if (doc.contains("oracle")) failure["oracle"] = doc["oracle"];
    return {kExitPrecondition, std::move(failure)};
  }
  return {kExitSuccess, std::move(doc)};
}

MatchingSelection matching_for(const Instance& inst, const EdgeSubset& factor) {
  if (inst.matching) return designate_matching(factor, *inst.matching);
  return select_extension_matching(factor);
}

Outcome cmd_pack(const Options& opt, const Instance& inst) {
  const int m = m_for(opt, inst);
  const auto result = pack_spanning_trees(EdgeSubset::all(inst.host), m);
  if (const auto* p = std::get_if<TreePacking>(&result)) {
    return {kExitSuccess, {{"status", "packed"}, {"m", m}, {"packing", packing_json(*p)}}};
  }
  const auto& cert = std::get<PartitionCertificate>(result);
  return {kExitInfeasible,
          {{"status", "certificate"},
           {"m", m},
           {"partition", cert.partition},
           {"cross_edges", cert.cross_edge_count},
           {"required", m * (static_cast<int>(cert.partition.size()) - 1)}}};
}

Outcome cmd_check_tc(const Options& opt, const Instance& inst) {
  const int m = m_for(opt, inst);
  const bool yes = is_m_tree_connected(EdgeSubset::all(inst.host), m);
  return {yes ? kExitSuccess : kExitInfeasible,
          {{"status", yes ? "tree-connected" : "not-tree-connected"}, {"m", m}}};
}

Outcome cmd_find_factor(const Options& opt, const Instance& inst) {
  const auto found = find_gf_factor(inst.host, inst.bounds(), cap_for(opt, kDefaultFactorEdgeCap));
  if (!found) return {kExitInfeasible, {{"status", "none"}}};
  return {kExitSuccess, {{"status", "found"}, {"factor", found->ids()}}};
}

Outcome cmd_select_matching(const Instance& inst) {
  const EdgeSubset factor = need(inst, inst.factor, "factor");
  const auto selection = select_extension_matching(factor);
  json pairs = json::array();
  for (const auto& p : selection.pairs) pairs.push_back({{"edge", p.edge}, {"x", p.x}, {"y", p.y}});
  return {kExitSuccess, {{"status", "ok"}, {"matching", std::move(pairs)}}};
}

ExtendOptions extend_options(const Options& opt) {
  return {opt.audit, opt.minimal_subgraph};
}

Outcome cmd_extend_connected(const Options& opt, Instance inst, bool matching_tree,
                             std::ostream& err) {
  const EdgeSubset factor = need(inst, inst.factor, "factor");
  const EdgeSubset tree = need(inst, inst.tree_factor, "tree_factor");
  const auto matching = matching_for(inst, factor);
  inst.matching = matching.edges();
  const auto result = matching_tree ? extend_with_matching_tree(factor, matching, tree, extend_options(opt))
                                    : connected_extend(factor, matching, tree, extend_options(opt));
  return extension_outcome(opt, inst,
                           result, matching_tree ? TheoremTag::MatchingTree : TheoremTag::ConnectedExtend,
                           1, err);
}

Outcome cmd_extend_tree_connected(const Options& opt, Instance inst, std::ostream& err) {
  const int m = m_for(opt, inst);
  inst.m = m;
  const EdgeSubset factor = need(inst, inst.factor, "factor");
  const EdgeSubset tree = need(inst, inst.tree_factor, "tree_factor");
  const auto result = tree_connected_extend(factor, tree, m, extend_options(opt));
  return extension_outcome(opt, inst, result, TheoremTag::TreeConnectedExtend, m, err);
}

Outcome cmd_factor_pipeline(const Options& opt, Instance inst, std::ostream& err) {
  const int m = m_for(opt, inst);
  inst.m = m;
  DegreeBounds bounds = inst.bounds();
  bounds.validate(inst.host.vertex_count());
  if (!inst.factor) {
    const auto found = find_gf_factor(inst.host, bounds, cap_for(opt, kDefaultFactorEdgeCap));
    if (!found) return {kExitInfeasible, {{"status", "none"}, {"message", "no (g,f)-factor exists"}}};
    inst.factor = found->ids();
  }
  if (!inst.tree_factor) {
    const auto packed = pack_spanning_trees(EdgeSubset::all(inst.host), m);
    const auto* p = std::get_if<TreePacking>(&packed);
    if (p == nullptr) {
      throw PreconditionViolation("host graph is not " + std::to_string(m) + "-tree-connected");
    }
    std::vector<EdgeId> ids;
    for (const auto& t : p->trees) ids.insert(ids.end(), t.begin(), t.end());
    std::sort(ids.begin(), ids.end());
    inst.tree_factor = ids;
  }
  const EdgeSubset factor(inst.host, *inst.factor);
  const EdgeSubset tree(inst.host, *inst.tree_factor);
  if (!inst.f_prime) inst.f_prime = degree_profile(tree);
  inst.g = bounds.g;
  inst.f = bounds.f;
  bounds.f_prime = inst.f_prime;

  if (opt.via_tree) {
    if (m != 1) throw InvalidInput("--via-tree applies to m = 1 only");
    const auto result = connected_factor_via_tree(factor, tree, bounds, extend_options(opt));
    return extension_outcome(opt, inst, result, TheoremTag::ConnectedFactor, 1, err);
  }
  const auto result = tree_connected_factor(factor, tree, bounds, m, extend_options(opt));
  return extension_outcome(opt, inst, result, TheoremTag::TreeConnectedFactor, m, err);
}

Outcome cmd_verify(const Options& opt, const Instance& inst) {
  const TheoremTag tag = parse_theorem_tag(opt.tag);
  std::vector<EdgeId> ids = opt.h;
  if (!opt.result_path.empty()) {
    json doc;
    try {
      doc = json::parse(read_source(opt.result_path));
    } catch (const json::exception& e) {
      throw InvalidInput("result document: " + std::string(e.what()));
    }
    if (!doc.contains("h") || !doc["h"].is_array()) throw InvalidInput("result document has no 'h' array");
    ids = doc["h"].get<std::vector<EdgeId>>();
  }
  Instance checked = inst;
  if (tag == TheoremTag::TreeConnectedBipartite || tag == TheoremTag::TreeConnectedExtend ||
      tag == TheoremTag::TreeConnectedFactor) {
    checked.m = m_for(opt, inst);
  }
  const auto report = check_solution(checked, EdgeSubset(inst.host, ids), tag);
  return {report.overall ? kExitSuccess : kExitInfeasible,
          {{"status", report.overall ? "verified" : "rejected"},
           {"theorem", to_string(tag)},
           {"verification", report_json(report)}}};
}

Outcome cmd_gen(const Options& opt) {
  const Instance inst =
      generate_planted_instance(opt.seed, opt.n, parse_instance_model(opt.model), opt.m > 0 ? opt.m : 1);
  return {kExitSuccess, json::parse(serialize_instance(inst))};
}

Outcome error_outcome(int code, const char* kind, const std::string& message) {
  return {code, {{"status", "error"}, {"error", kind}, {"message", message}}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-bounded connected and tree-connected factor construction"};
  app.name("factorforge");
  app.require_subcommand(1);
  Options opt;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", opt.instance_path, "Instance file (JSON or line format), '-' for stdin")
        ->required();
  };
  auto add_m = [&](CLI::App* sub) {
    sub->add_option("--m", opt.m, "Number of edge-disjoint spanning trees")->check(CLI::PositiveNumber);
  };
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_flag("--trace", opt.trace, "Print exchange steps to stderr");
    sub->add_flag("--oracle", opt.oracle, "Cross-check against the brute-force feasible set");
    sub->add_flag("--audit", opt.audit, "Re-check invariants after every exchange step");
    sub->add_flag("--minimal-subgraph", opt.minimal_subgraph,
                  "Choose exchange edges from a minimal tree-connected subgraph");
    sub->add_option("--cap", opt.cap_edges, "Edge cap for exhaustive searches")
        ->check(CLI::PositiveNumber);
  };

  auto* pack = app.add_subcommand("pack", "Pack m edge-disjoint spanning trees or refute");
  add_instance(pack);
  add_m(pack);
  auto* check_tc = app.add_subcommand("check-tc", "Decide m-tree-connectivity of the host");
  add_instance(check_tc);
  add_m(check_tc);
  auto* find_factor = app.add_subcommand("find-factor", "Exhaustive (g,f)-factor search");
  add_instance(find_factor);
  find_factor->add_option("--cap", opt.cap_edges, "Edge cap")->check(CLI::PositiveNumber);
  auto* select = app.add_subcommand("select-matching", "Matching with non-cut endpoints for the factor");
  add_instance(select);
  auto* extend_connected = app.add_subcommand("extend-connected", "Connected extension of F \\ M");
  add_instance(extend_connected);
  add_run_flags(extend_connected);
  auto* extend_matching = app.add_subcommand("extend-matching-tree", "Connected extension containing F");
  add_instance(extend_matching);
  add_run_flags(extend_matching);
  auto* extend_tc = app.add_subcommand("extend-tree-connected", "m-tree-connected extension of F");
  add_instance(extend_tc);
  add_m(extend_tc);
  add_run_flags(extend_tc);
  auto* pipeline = app.add_subcommand("factor-pipeline", "m-tree-connected (g, f+f'-m)-factor end to end");
  add_instance(pipeline);
  add_m(pipeline);
  add_run_flags(pipeline);
  pipeline->add_flag("--via-tree", opt.via_tree, "Use the spanning-tree route (m = 1)");
  auto* verify = app.add_subcommand("verify", "Check a solution against a theorem's conclusion");
  add_instance(verify);
  add_m(verify);
  verify->add_option("--tag", opt.tag, "Theorem tag")->required();
  verify->add_option("--result", opt.result_path, "Result JSON holding an 'h' array");
  verify->add_option("--edges", opt.h, "Solution edge ids")->delimiter(',');
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  gen->add_option("--seed", opt.seed, "Random seed");
  gen->add_option("--model", opt.model, "planted-tree-factor | two-ham-paths | random-multi");
  gen->add_option("--n", opt.n, "Vertex count")->check(CLI::PositiveNumber);
  add_m(gen);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << error_outcome(kExitInvalidInput, "usage", e.what()).doc.dump(2) << "\n";
    return kExitInvalidInput;
  }

  Outcome outcome{kExitSuccess, {}};
  try {
    if (gen->parsed()) {
      outcome = cmd_gen(opt);
    } else {
      const Instance inst = parse_instance(read_source(opt.instance_path));
      if (pack->parsed()) outcome = cmd_pack(opt, inst);
      else if (check_tc->parsed()) outcome = cmd_check_tc(opt, inst);
      else if (find_factor->parsed()) outcome = cmd_find_factor(opt, inst);
      else if (select->parsed()) outcome = cmd_select_matching(inst);
      else if (extend_connected->parsed()) outcome = cmd_extend_connected(opt, inst, false, err);
      else if (extend_matching->parsed()) outcome = cmd_extend_connected(opt, inst, true, err);
      else if (extend_tc->parsed()) outcome = cmd_extend_tree_connected(opt, inst, err);
      else if (pipeline->parsed()) outcome = cmd_factor_pipeline(opt, inst, err);
      else if (verify->parsed()) outcome = cmd_verify(opt, inst);
    }
  } catch (const InvalidInput& e) {
    outcome = error_outcome(kExitInvalidInput, "invalid-input", e.what());
  } catch (const PreconditionViolation& e) {
    outcome = error_outcome(kExitPrecondition, "precondition", e.what());
  } catch (const InternalInvariant& e) {
    outcome = error_outcome(kExitPrecondition, "invariant", e.what());
  } catch (const CapacityExceeded& e) {
    outcome = error_outcome(kExitCapacity, "capacity", e.what());
  } catch (const NotFound& e) {
    outcome = error_outcome(kExitInfeasible, "not-found", e.what());
  }
  if (outcome.code != kExitSuccess && outcome.doc.contains("message")) {
    err << outcome.doc["message"].get<std::string>() << "\n";
  }
  out << outcome.doc.dump(2) << "\n";
  return outcome.code;
}

}  // namespace factorforge
