#include <doctest.h>

#include "factorforge/error.hpp"
#include "factorforge/extension.hpp"
#include "factorforge/tree_packing.hpp"
#include "support.hpp"

using namespace factorforge;
using namespace fftest;

namespace {

MatchingSelection matching_of(const EdgeSubset& f, std::vector<EdgeId> edges) {
  return designate_matching(f, edges);
}

void require_measure_descent(const std::vector<ExchangeStep>& trace) {
  for (const auto& s : trace) REQUIRE(s.after < s.before);
}

}  // namespace

TEST_CASE("connected extension of a path with its end matching") {
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto t = EdgeSubset::all(g);
  const auto f = pick(g, {0, 2});
  const auto r = connected_extend(f, matching_of(f, {0, 2}), t, ExtendOptions{true, false});
  CHECK(r.h.ids() == std::vector<EdgeId>{0, 1, 2});
  const auto feasible = feasible_oracle(g, {0, 2}, {0, 1, 2}, {0, 2}, 1);
  REQUIRE(feasible.size() == 1);
  CHECK(feasible[0] == r.h.ids());
  require_measure_descent(r.trace);
}

TEST_CASE("connected extension with an empty factor returns the tree") {
  const auto g = make_graph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 4}});
  const auto t = pick(g, {0, 1, 2, 3});
  const auto r = connected_extend(EdgeSubset(g), MatchingSelection{}, t);
  CHECK(r.h == t);
  CHECK(r.trace.empty());
}

TEST_CASE("connected extension on C4 plus chord with a star tree") {
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  const auto t = pick(g, {0, 4, 3});
  const auto f = pick(g, {0, 1, 2, 3});
  const MatchingSelection m{{{0, 0, 1}}};
  const auto r = connected_extend(f, m, t, ExtendOptions{true, false});
  const auto d = degree_profile(r.h);
  CHECK(d[1] == 2);
  CHECK(d[2] == 2);
  CHECK(d[3] == 2);
  CHECK(d[0] >= 2);
  CHECK(d[0] <= 4);
  CHECK(pick(g, {1, 2, 3}).subset_of(r.h));
  CHECK(contains_set(feasible_oracle(g, {0, 1, 2, 3}, {0, 4, 3}, {0}, 1), r.h.ids()));
  require_measure_descent(r.trace);
}

TEST_CASE("connected extension rejects bad inputs before any step") {
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto f = pick(g, {0, 1});
  CHECK_THROWS_AS(connected_extend(f, select_extension_matching(f), pick(g, {0, 1})),
                  PreconditionViolation);
  CHECK_THROWS_AS(connected_extend(f, MatchingSelection{}, pick(g, {0, 1, 2})), PreconditionViolation);
  // 1 is the middle of the factor path, so it cannot be the designated end.
  CHECK_THROWS_AS(connected_extend(f, MatchingSelection{{{0, 1, 0}}}, pick(g, {0, 1, 2})),
                  PreconditionViolation);
  const MultiGraph lone(1);
  CHECK(connected_extend(EdgeSubset(lone), MatchingSelection{}, EdgeSubset(lone)).h.empty());
}

TEST_CASE("matching tree extension") {
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto t = EdgeSubset::all(g);
  const auto f = pick(g, {0, 2});
  const auto r = extend_with_matching_tree(f, matching_of(f, {0, 2}), t);
  CHECK(r.h == t);
  CHECK(f.subset_of(r.h));

  CHECK(extend_with_matching_tree(EdgeSubset(g), MatchingSelection{}, t).h == t);

  const auto p3 = make_graph(3, {{0, 1}, {1, 2}});
  const auto all = EdgeSubset::all(p3);
  const auto r3 = extend_with_matching_tree(all, matching_of(all, {0}), all);
  CHECK(r3.h == all);
  CHECK(degree_profile(r3.h)[1] == 2);

  const auto c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto fc = pick(c4, {3});
  CHECK_THROWS_AS(extend_with_matching_tree(fc, matching_of(fc, {3}), pick(c4, {0, 1, 2})),
                  PreconditionViolation);
}

TEST_CASE("connected factor through a spanning tree") {
  const auto k4 = complete_graph(4);  // 0:01 1:02 2:03 3:12 4:13 5:23
  const auto cycle = pick(k4, {0, 3, 5, 2});
  const auto path = pick(k4, {0, 3, 5});
  const std::vector<int> two(4, 2);
  const auto r = connected_factor_via_tree(cycle, path, DegreeBounds{two, two, two});
  const auto d = degree_profile(r.h);
  for (int v = 0; v < 4; ++v) {
    CHECK(d[v] >= 2);
    CHECK(d[v] <= 3);
  }
  CHECK(connected_oracle(k4, r.h.ids()));

  const auto tree = make_graph(4, {{0, 1}, {1, 2}, {1, 3}});
  const auto t = EdgeSubset::all(tree);
  const auto dt = degree_profile(t);
  const std::vector<int> one(4, 1);
  const auto rt = connected_factor_via_tree(t, t, DegreeBounds{one, dt, dt});
  CHECK(rt.h == t);

  const std::vector<int> zero(4, 0);
  const std::vector<int> fp(4, max_degree(t));
  CHECK(connected_factor_via_tree(EdgeSubset(tree), t, DegreeBounds{zero, one, fp}).h == t);

  CHECK_THROWS_AS(connected_factor_via_tree(t, t, DegreeBounds{one, dt, std::nullopt}), InvalidInput);
  CHECK_THROWS_AS(connected_factor_via_tree(t, t, DegreeBounds{one, dt, one}), PreconditionViolation);
}

TEST_CASE("vertex classification") {
  const auto g = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  const auto c = classify_vertices(EdgeSubset::all(g), 2);
  CHECK(c.class_a == std::vector<Vertex>{1, 2, 3});
  CHECK(c.class_b == std::vector<Vertex>{0});
}

TEST_CASE("bipartite tree-connected extension") {
  const auto k4 = complete_graph(4);
  const auto all = EdgeSubset::all(k4);
  const auto cycle = pick(k4, {0, 3, 5, 2});
  const auto r = tree_connected_extend_bipartite(cycle, all, EdgeSubset(k4), 2);
  CHECK(r.h == all);

  const auto rf = tree_connected_extend_bipartite(EdgeSubset(k4), all, EdgeSubset(k4), 2);
  CHECK(is_m_tree_connected(rf.h, 2));

  const auto pc = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto path = pick(pc, {0, 1, 2});
  const auto chord = pick(pc, {3});
  try {
    tree_connected_extend_bipartite(chord, path, EdgeSubset(pc), 1);
    FAIL("expected a precondition error");
  } catch (const PreconditionViolation& e) {
    CHECK(std::string(e.what()).find("factor edge 3") != std::string::npos);
  }
  CHECK_THROWS_AS(tree_connected_extend_bipartite(cycle, cycle, EdgeSubset(k4), 2),
                  PreconditionViolation);
}

TEST_CASE("bipartite extension with a real matching") {
  // A star centre 0 with d_F(0) = 3 > m = 1; the factor edges off the tree join 0 to A.
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {0, 3}});
  const auto t = pick(g, {0, 1, 2});
  const auto f = pick(g, {0, 3, 4});
  const auto m = pick(g, {3, 4});
  const auto r = tree_connected_extend_bipartite(f, t, m, 1, ExtendOptions{false, true});
  CHECK(contains_set(feasible_oracle(g, {0, 3, 4}, {0, 1, 2}, {3, 4}, 1), r.h.ids()));
  const auto r2 = tree_connected_extend_bipartite(f, t, m, 1);
  CHECK(contains_set(feasible_oracle(g, {0, 3, 4}, {0, 1, 2}, {3, 4}, 1), r2.h.ids()));
}

TEST_CASE("tree-connected extension with peeling") {
  const auto k4 = complete_graph(4);
  const auto all = EdgeSubset::all(k4);
  CHECK(tree_connected_extend(pick(k4, {0, 3, 5, 2}), all, 2).h == all);

  const auto pc = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto path = pick(pc, {0, 1, 2});
  const auto r = tree_connected_extend(pick(pc, {3}), path, 1);
  CHECK(r.h == path);
  REQUIRE_FALSE(r.trace.empty());
  CHECK(r.trace.front().kind == StepKind::PeelAA);
  CHECK(r.trace.front().removed == 3);
  const auto feasible = feasible_oracle(pc, {3}, {0, 1, 2}, {3}, 1);
  REQUIRE(feasible.size() == 1);
  CHECK(feasible[0] == path.ids());

  CHECK(tree_connected_extend(EdgeSubset(pc), path, 1).h == path);
  CHECK_THROWS_AS(tree_connected_extend(EdgeSubset(pc), path, 2), PreconditionViolation);
}

TEST_CASE("peel-BB edges come back into the result") {
  // Both ends of 0-2 have d_F = 2 > m = 1.
  const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {0, 3}, {1, 3}});
  const auto t = pick(g, {0, 1, 2});
  const auto f = pick(g, {3, 4, 5});
  const auto r = tree_connected_extend(f, t, 1);
  bool saw_bb = false;
  for (const auto& s : r.trace) saw_bb = saw_bb || s.kind == StepKind::PeelBB;
  CHECK(saw_bb);
  CHECK(contains_set(feasible_oracle(g, {3, 4, 5}, {0, 1, 2}, {3, 4, 5}, 1), r.h.ids()));
}

TEST_CASE("tree-connected factor") {
  MultiGraph k4(4);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {1, 3}, {3, 0}, {0, 2}})
    k4.add_edge(u, v);
  const auto all = EdgeSubset::all(k4);
  const auto cycle = pick(k4, {0, 1, 2, 4});
  const std::vector<int> two(4, 2), three(4, 3);
  const auto r = tree_connected_factor(cycle, all, DegreeBounds{two, two, three}, 2);
  CHECK(r.h == all);
  CHECK(is_m_tree_connected(r.h, 2));

  std::vector<int> low = two;
  low[1] = 1;
  std::vector<int> g1 = two;
  g1[1] = 1;
  try {
    tree_connected_factor(cycle, all, DegreeBounds{g1, low, three}, 2);
    FAIL("expected a precondition error");
  } catch (const PreconditionViolation& e) {
    CHECK(std::string(e.what()).find("vertex 1") != std::string::npos);
  }

  const auto p = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto t = EdgeSubset::all(p);
  const std::vector<int> one(4, 1);
  const auto rp = tree_connected_factor(pick(p, {0, 2}), t, DegreeBounds{one, one, two}, 1);
  CHECK(rp.h == t);
}
