#include <doctest.h>

#include "edgeends/ends.hpp"
#include "edgeends/truncation.hpp"

using namespace edgeends;

namespace {

// The double ray dominated by one hub: core {v_inf, v_0} with one edge,
// two single-vertex self-extending arms attached at v_0, every layer of
// both arms adjacent to v_inf.
Presentation figure_one() {
  Presentation p;
  p.core.add_vertex(0);  // v_inf
  p.core.add_vertex(1);  // v_0
  p.core.add_edge(0, 1);
  p.core_names = {"v_inf", "v_0"};
  ArmPattern left{"L", {"u"}, {}, {{0, 0}}};
  ArmPattern right{"R", {"u"}, {}, {{0, 0}}};
  p.arms = {left, right};
  p.attach = {{1, 0, 0}, {1, 1, 0}};
  p.dominating = {{0, 0, 0}, {0, 1, 0}};
  return p;
}

Presentation two_plain_arms() {
  // two undominated single-vertex arms attached to one core vertex
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"c"};
  p.arms = {{"A", {"u"}, {}, {{0, 0}}}, {"B", {"u"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {0, 1, 0}};
  return p;
}

}  // namespace

TEST_CASE("figure-1 validates, has two strands, one class, dominator v_inf") {
  Presentation p = figure_one();
  CHECK(validate(p).empty());
  auto strand_list = all_strands(p);
  CHECK(strand_list.size() == 2);
  auto classes = edge_end_classes(p);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].strands == std::vector<int>{0, 1});
  CHECK(classes[0].dominators == std::vector<int>{0});
  CHECK(edge_dominators(p, classes, 0) == std::set<VertexId>{0});
}

TEST_CASE("figure-1 truncation shape") {
  Presentation p = figure_one();
  Truncation t = truncate(p, 3);
  CHECK(t.graph.vertex_count() == 2 + 2 * 4);
  // v_inf: 8 dominating edges plus the core edge
  CHECK(t.graph.degree(0) == 9);
  // v_0: core edge plus two attach edges
  CHECK(t.graph.degree(1) == 3);

  // truncations nest: every edge of truncate(n) appears in truncate(n+1)
  Truncation t4 = truncate(p, 4);
  for (const auto& [pe, id] : t.edge_of) {
    (void)id;
    CHECK(t4.edge_of.count(pe) == 1);
  }
  CHECK(truncate(p, 0).graph.vertex_count() == 4);
}

TEST_CASE("validation rejects dangling references and dead strands") {
  Presentation p = figure_one();
  p.attach.push_back({1, 5, 0});  // missing arm
  CHECK_FALSE(validate(p).empty());

  Presentation q;
  q.core.add_vertex(0);
  q.core_names = {"c"};
  // inter edges forming no infinite path: u feeds v, nothing continues
  q.arms = {{"A", {"u", "v"}, {}, {{0, 1}}}};
  q.attach = {{0, 0, 0}};
  auto errors = validate(q);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("no infinite forward path") != std::string::npos);
}

TEST_CASE("strand shapes: ladder, parallel rails, single vertex") {
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"c"};
  p.arms = {{"ladder", {"u", "v"}, {{0, 1}}, {{0, 0}, {1, 1}}},
            {"rails", {"u", "v"}, {}, {{0, 0}, {1, 1}}},
            {"one", {"u"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 2, 0}};
  CHECK(strands(p, 0).size() == 1);
  CHECK(strands(p, 1).size() == 2);
  CHECK(strands(p, 2).size() == 1);
  CHECK(all_strands(p).size() == 4);
  // no domination: every strand is its own class
  CHECK(edge_end_classes(p).size() == 4);
}

TEST_CASE("canonical rays") {
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"c"};
  p.arms = {{"one", {"u"}, {}, {{0, 0}}},
            {"alt", {"u", "v"}, {}, {{0, 1}, {1, 0}}},
            {"ladder", {"u", "v"}, {{0, 1}}, {{0, 0}, {1, 1}}}};
  p.attach = {{0, 0, 0}, {0, 1, 0}, {0, 2, 0}};
  auto sl = all_strands(p);

  RaySpec one = canonical_ray(p, sl, 0);
  CHECK(one.period.size() == 1);
  CHECK(one.period[0].vertex == 0);
  CHECK(one.period[0].layer_incr == 1);
  CHECK(one.start_layer == 0);

  RaySpec alt = canonical_ray(p, sl, 1);
  REQUIRE(alt.period.size() == 2);
  CHECK(alt.period[0].vertex == 1);
  CHECK(alt.period[1].vertex == 0);
  CHECK(alt.period_ascent() == 2);

  RaySpec ladder = canonical_ray(p, sl, 2);
  CHECK(ladder.period.size() == 1);
  CHECK(ladder.period_ascent() == 1);
}

TEST_CASE("edge-end classes merge through chained dominators") {
  // v dominates S1 and S2, u dominates S2 and S3: one class of three strands
  Presentation p;
  p.core.add_vertex(0);
  p.core.add_vertex(1);
  p.core_names = {"v", "u"};
  p.arms = {{"S1", {"a"}, {}, {{0, 0}}},
            {"S2", {"a"}, {}, {{0, 0}}},
            {"S3", {"a"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {0, 1, 0}, {1, 2, 0}};
  p.dominating = {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}};
  auto classes = edge_end_classes(p);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].strands == std::vector<int>{0, 1, 2});
  CHECK(classes[0].dominators == std::vector<int>{0, 1});
}

TEST_CASE("basic open sets") {
  Presentation fig = figure_one();
  EndAnalysis a = EndAnalysis::of(fig);

  // F empty: the single class is in its own open set
  auto open0 = basic_open(a, {}, 0);
  CHECK(open0 == std::set<int>{0});

  // F cuts the first dominating edges and the core edge: the class survives
  std::vector<PEdge> f;
  f.push_back(PEdge{PEdgeKind::Core, -1, 0, -1});
  for (int layer = 0; layer <= 2; ++layer) {
    f.push_back(PEdge{PEdgeKind::Dom, -1, 0, layer});
    f.push_back(PEdge{PEdgeKind::Dom, -1, 1, layer});
  }
  auto open1 = basic_open(a, f, 0);
  CHECK(open1 == std::set<int>{0});

  // two undominated arms joined only through the core: removing the attach
  // edges separates the classes
  Presentation two = two_plain_arms();
  EndAnalysis b = EndAnalysis::of(two);
  REQUIRE(b.classes.size() == 2);
  auto joined = basic_open(b, {}, 0);
  CHECK(joined == std::set<int>{0, 1});
  std::vector<PEdge> cut{PEdge{PEdgeKind::Attach, -1, 0, 0}, PEdge{PEdgeKind::Attach, -1, 1, 0}};
  auto split = basic_open(b, cut, 0);
  CHECK(split == std::set<int>{0});
}

TEST_CASE("truncation-flow oracle agrees with symbolic classes") {
  EndAnalysis fig = EndAnalysis::of(figure_one());
  auto r1 = class_flow_oracle(fig, 6, 40);
  CHECK(r1.agree);
  REQUIRE(r1.pairs.size() == 1);
  CHECK(r1.pairs[0].same_class);

  EndAnalysis two = EndAnalysis::of(two_plain_arms());
  auto r2 = class_flow_oracle(two, 6, 40);
  CHECK(r2.agree);
  REQUIRE(r2.pairs.size() == 1);
  CHECK_FALSE(r2.pairs[0].same_class);
  CHECK(r2.pairs[0].value == 1);  // the two arms meet only at c
}

TEST_CASE("non-core vertices never edge-dominate: arm vertex cuts stabilise at <= degree") {
  Presentation p = figure_one();
  EndAnalysis a = EndAnalysis::of(p);
  Truncation t = truncate(p, 30);
  VertexId v = t.vertex_id(p, 0, 1, 0);
  auto band = tail_band(p, t, a.strands[0], 2);
  int flow = max_flow_value(t.graph, {v}, band);
  CHECK(flow <= t.graph.degree(v));
  Truncation t2 = truncate(p, 45);
  auto band2 = tail_band(p, t2, a.strands[0], 2);
  CHECK(max_flow_value(t2.graph, {v}, band2) == flow);
}

TEST_CASE("class structure is invariant under arm and pattern re-indexing") {
  Presentation p;
  p.core.add_vertex(0);
  p.core.add_vertex(1);
  p.core_names = {"c", "d"};
  p.arms = {{"A", {"x", "y"}, {{0, 1}}, {{0, 0}, {1, 1}}}, {"B", {"z"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {1, 1, 0}};
  p.dominating = {{1, 0, 1}};

  // same presentation with arms swapped and the ladder's vertices renamed
  Presentation q;
  q.core.add_vertex(0);
  q.core.add_vertex(1);
  q.core_names = {"c", "d"};
  q.arms = {{"B", {"z"}, {}, {{0, 0}}}, {"A", {"y", "x"}, {{1, 0}}, {{1, 1}, {0, 0}}}};
  q.attach = {{0, 1, 1}, {1, 0, 0}};
  q.dominating = {{1, 1, 0}};

  auto cp = edge_end_classes(p);
  auto cq = edge_end_classes(q);
  REQUIRE(cp.size() == cq.size());
  // canonical signature: multiset of (strand count, dominator list)
  auto signature = [](const std::vector<EdgeEndClass>& cs) {
    std::vector<std::pair<int, std::vector<int>>> sig;
    for (const auto& c : cs) sig.push_back({static_cast<int>(c.strands.size()), c.dominators});
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  CHECK(signature(cp) == signature(cq));
}

TEST_CASE("tail components split by parity in alternating strands") {
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"c"};
  p.arms = {{"alt", {"u", "v"}, {}, {{0, 1}, {1, 0}}}};
  p.attach = {{0, 0, 0}};
  auto sl = all_strands(p);
  REQUIRE(sl.size() == 1);
  TailComps tc = tail_components(p, sl, 0, 3);
  // the region beyond layer 3 falls into two interleaved components
  int infinite = 0;
  for (const auto& c : tc.comps)
    if (c.infinite) ++infinite;
  CHECK(infinite == 2);
}
