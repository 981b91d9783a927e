#include "factorforge/instance_io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "factorforge/error.hpp"

namespace factorforge {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFields[] = {"n",      "edges",       "m",       "g",       "f",
                                   "f_prime", "factor", "tree_factor", "matching"};

std::string location(std::string_view text, std::size_t byte) {
  const auto upto = text.substr(0, std::min(byte, text.size()));
  const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
  const auto last_break = upto.rfind('\n');
  const auto column = last_break == std::string_view::npos ? upto.size() + 1 : upto.size() - last_break;
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

int as_count(const json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<long long>() < 0 ||
      value.get<long long>() > 1'000'000) {
    throw InvalidInput("field '" + field + "': expected a non-negative integer");
  }
  return value.get<int>();
}

std::vector<int> as_int_list(const json& value, const std::string& field) {
  if (!value.is_array()) throw InvalidInput("field '" + field + "': expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_count(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> vertex_vector(const json& doc, const char* field, int n) {
  auto out = as_int_list(doc.at(field), field);
  if (static_cast<int>(out.size()) != n) {
    throw InvalidInput("field '" + std::string(field) + "': length " + std::to_string(out.size()) +
                       " does not match n=" + std::to_string(n));
  }
  return out;
}

std::vector<EdgeId> edge_list(const json& doc, const char* field, int edge_count) {
  auto out = as_int_list(doc.at(field), field);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] >= edge_count) {
      throw InvalidInput("field '" + std::string(field) + "[" + std::to_string(i) +
                         "]': edge id " + std::to_string(out[i]) + " out of range (" +
                         std::to_string(edge_count) + " edges)");
    }
  }
  return out;
}

Instance parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON at " + location(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("instance must be a JSON object");
  for (const auto& item : doc.items()) {
    if (std::find(std::begin(kFields), std::end(kFields), item.key()) == std::end(kFields)) {
      throw InvalidInput("unknown field '" + item.key() + "'");
    }
  }
  if (!doc.contains("n")) throw InvalidInput("missing field 'n'");
  if (!doc.contains("edges")) throw InvalidInput("missing field 'edges'");
  const int n = as_count(doc["n"], "n");
  const json& edges = doc["edges"];
  if (!edges.is_array()) throw InvalidInput("field 'edges': expected an array");

  Instance inst{MultiGraph(n)};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) {
      throw InvalidInput("field '" + field + "': expected a [u, v] pair");
    }
    const int u = as_count(edges[i][0], field);
    const int v = as_count(edges[i][1], field);
    if (u == v) throw InvalidInput("field '" + field + "': loop at vertex " + std::to_string(u));
    if (u >= n || v >= n) {
      throw InvalidInput("field '" + field + "': endpoint out of range for n=" + std::to_string(n));
    }
    inst.host.add_edge(u, v);
  }
  const int edge_count = inst.host.edge_count();
  if (doc.contains("m")) {
    inst.m = as_count(doc["m"], "m");
    if (*inst.m < 1) throw InvalidInput("field 'm': must be positive");
  }
  if (doc.contains("g")) inst.g = vertex_vector(doc, "g", n);
  if (doc.contains("f")) inst.f = vertex_vector(doc, "f", n);
  if (doc.contains("f_prime")) inst.f_prime = vertex_vector(doc, "f_prime", n);
  if (doc.contains("factor")) inst.factor = edge_list(doc, "factor", edge_count);
  if (doc.contains("tree_factor")) inst.tree_factor = edge_list(doc, "tree_factor", edge_count);
  if (doc.contains("matching")) inst.matching = edge_list(doc, "matching", edge_count);
  return inst;
}

Instance parse_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<Instance> inst;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::istringstream line(raw.substr(0, hash));
    std::string keyword;
    if (!(line >> keyword)) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (keyword == "graph") {
      long long n = -1;
      if (inst) throw InvalidInput(where + ": duplicate 'graph' line");
      if (!(line >> n) || n < 0) throw InvalidInput(where + ": expected 'graph <n>'");
      inst.emplace(Instance{MultiGraph(static_cast<int>(n))});
    } else if (keyword == "edge") {
      long long u = -1, v = -1;
      if (!inst) throw InvalidInput(where + ": 'edge' before 'graph'");
      if (!(line >> u >> v) || u < 0 || v < 0) throw InvalidInput(where + ": expected 'edge <u> <v>'");
      if (u == v) throw InvalidInput(where + ": loop at vertex " + std::to_string(u));
      if (u >= inst->host.vertex_count() || v >= inst->host.vertex_count()) {
        throw InvalidInput(where + ": endpoint out of range");
      }
      inst->host.add_edge(static_cast<int>(u), static_cast<int>(v));
    } else {
      throw InvalidInput(where + ": unknown keyword '" + keyword + "'");
    }
    std::string trailing;
    if (line >> trailing) throw InvalidInput(where + ": unexpected '" + trailing + "'");
  }
  if (!inst) throw InvalidInput("missing 'graph <n>' line");
  return std::move(*inst);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
    return parse_json(text);
  }
  return parse_lines(text);
}

std::string serialize_instance(const Instance& instance) {
  json doc;
  doc["n"] = instance.host.vertex_count();
  doc["edges"] = json::array();
  for (const Edge& e : instance.host.edges()) doc["edges"].push_back({e.u, e.v});
  if (instance.m) doc["m"] = *instance.m;
  if (instance.g) doc["g"] = *instance.g;
  if (instance.f) doc["f"] = *instance.f;
  if (instance.f_prime) doc["f_prime"] = *instance.f_prime;
  if (instance.factor) doc["factor"] = *instance.factor;
  if (instance.tree_factor) doc["tree_factor"] = *instance.tree_factor;
  if (instance.matching) doc["matching"] = *instance.matching;
  return doc.dump();
}

}  // namespace factorforge
