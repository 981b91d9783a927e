#include <doctest.h>

#include <random>

#include "factorforge/error.hpp"
#include "factorforge/instance_io.hpp"
#include "factorforge/oracle.hpp"

using namespace factorforge;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse json instances") {
  const auto one = parse_instance(R"({"n":2,"edges":[[0,1]]})");
  CHECK(one.host.vertex_count() == 2);
  CHECK(one.host.edge_count() == 1);
  CHECK(one.host.edge(0).u == 0);
  CHECK(one.host.edge(0).v == 1);

  const auto twin = parse_instance(R"({"n":4,"edges":[[0,1],[0,1]]})");
  CHECK(twin.host.edge_count() == 2);
  CHECK(twin.host.edge(1).u == 0);

  const auto full = parse_instance(R"({"n":3,"edges":[[0,1],[1,2]],"m":1,"g":[0,1,0],
      "f":[1,2,1],"f_prime":[1,2,1],"factor":[0],"tree_factor":[0,1],"matching":[0]})");
  REQUIRE(full.m);
  CHECK(*full.m == 1);
  CHECK(*full.g == std::vector<int>{0, 1, 0});
  CHECK(*full.tree_factor == std::vector<EdgeId>{0, 1});
}

TEST_CASE("parse errors carry a location") {
  CHECK(error_of(R"({"n":2,"edges":[[0,0]]})").find("loop") != std::string::npos);
  CHECK(error_of(R"({"n":2,"edges":[[0,0]]})").find("edges[0]") != std::string::npos);
  CHECK(error_of(R"({"n":2,"edges":[[0,2]]})").find("out of range") != std::string::npos);
  CHECK(error_of(R"({"n":2,"edges":[],"g":[1]})").find("'g'") != std::string::npos);
  CHECK(error_of(R"({"n":2,"edges":[],"colour":1})").find("unknown field 'colour'") != std::string::npos);
  CHECK(error_of(R"({"n":2,"edges":[[0,1]],"factor":[3]})").find("factor[0]") != std::string::npos);
  CHECK(error_of("{\"n\":2,\n\"edges\":[[0,1],]}").find("line 2") != std::string::npos);
  CHECK(error_of(R"({"edges":[]})").find("missing field 'n'") != std::string::npos);
  CHECK(error_of(R"({"n":2,"edges":[],"m":0})").find("'m'") != std::string::npos);
  CHECK(error_of(R"([1,2])").find("object") != std::string::npos);
}

TEST_CASE("line format") {
  const auto inst = parse_instance("# a triangle\ngraph 3\nedge 0 1\nedge 1 2 # trailing\n\nedge 2 0\n");
  CHECK(inst.host.vertex_count() == 3);
  CHECK(inst.host.edge_count() == 3);
  CHECK(error_of("graph 3\nedge 1 1\n").find("line 2") != std::string::npos);
  CHECK(error_of("edge 0 1\n").find("before 'graph'") != std::string::npos);
  CHECK(error_of("graph 2\nvertex 0\n").find("unknown keyword") != std::string::npos);
  CHECK(error_of("graph 2\nedge 0 1 7\n").find("unexpected") != std::string::npos);
  CHECK(error_of("").find("missing") != std::string::npos);
}

TEST_CASE("serialize then parse is the identity") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto model = static_cast<InstanceModel>(seed % 3);
    const int m = model == InstanceModel::TwoHamPaths ? 2 : 1 + static_cast<int>(seed % 3);
    const auto inst = generate_planted_instance(seed, 4 + static_cast<int>(seed % 6), model, m);
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text);
    REQUIRE(back == inst);
    REQUIRE(serialize_instance(back) == text);
  }
  Instance bare{MultiGraph(3)};
  CHECK(serialize_instance(bare) == R"({"n":3,"edges":[]})");
  CHECK(parse_instance(serialize_instance(bare)) == bare);
}
