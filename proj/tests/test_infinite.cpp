#include <doctest.h>

#include "edgeends/infinite.hpp"
#include "edgeends/verify.hpp"

using namespace edgeends;

namespace {

Presentation figure_one() {
  Presentation p;
  p.core.add_vertex(0);  // v_inf
  p.core.add_vertex(1);  // v_0
  p.core.add_edge(0, 1);
  p.core_names = {"v_inf", "v_0"};
  p.arms = {{"L", {"u"}, {}, {{0, 0}}}, {"R", {"u"}, {}, {{0, 0}}}};
  p.attach = {{1, 0, 0}, {1, 1, 0}};
  p.dominating = {{0, 0, 0}, {0, 1, 0}};
  return p;
}

// two single-vertex arms bridged by one core vertex
Presentation bridge() {
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"c"};
  p.arms = {{"A", {"u"}, {}, {{0, 0}}}, {"B", {"u"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {0, 1, 0}};
  return p;
}

// two ladder arms, each attached to the core by two edges
Presentation wide_bridge() {
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"c"};
  ArmPattern ladder{"", {"u", "v"}, {{0, 1}}, {{0, 0}, {1, 1}}};
  ladder.id = "A";
  p.arms.push_back(ladder);
  ladder.id = "B";
  p.arms.push_back(ladder);
  p.attach = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}};
  return p;
}

// figure-1 without the hub: a plain double ray
Presentation double_ray() {
  Presentation p;
  p.core.add_vertex(0);
  p.core_names = {"v_0"};
  p.arms = {{"L", {"u"}, {}, {{0, 0}}}, {"R", {"u"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {0, 1, 0}};
  return p;
}

VerifyJob menger_job(const MengerEndsResult& r, int n_max) {
  VerifyJob job;
  job.family = r.family;
  VerifyItem item;
  item.certificate = r.certificate;
  for (int c : r.a_classes) item.a_side.push_back(EndTerminal{true, c, -1});
  for (int c : r.b_classes) item.b_side.push_back(EndTerminal{true, c, -1});
  for (std::size_t i = 0; i < r.family.size(); ++i) item.subfamily.push_back(static_cast<int>(i));
  job.items.push_back(std::move(item));
  job.n_max = n_max;
  return job;
}

VerifyJob lc_job(const LcEndsResult& r, int n_max) {
  VerifyJob job;
  job.family = r.family;
  for (std::size_t ti = 0; ti < r.terminals.size(); ++ti) {
    VerifyItem item;
    item.certificate = r.per_terminal[ti];
    item.a_side = {r.terminals[ti]};
    for (std::size_t tj = 0; tj < r.terminals.size(); ++tj)
      if (tj != ti) item.b_side.push_back(r.terminals[tj]);
    for (std::size_t pi = 0; pi < r.family.size(); ++pi)
      if (r.path_terminals[pi].first == static_cast<int>(ti) ||
          r.path_terminals[pi].second == static_cast<int>(ti))
        item.subfamily.push_back(static_cast<int>(pi));
    job.items.push_back(std::move(item));
  }
  job.n_max = n_max;
  return job;
}

}  // namespace

TEST_CASE("strand rays: rail, ladder, and an infeasible third entry") {
  Presentation p = bridge();
  auto sl = all_strands(p);
  auto rail = strand_ray_family(p, sl, 0, 0, {0}, 5);
  REQUIRE(rail.size() == 1);
  CHECK(rail[0].start_layer == 5);
  CHECK(rail[0].period_ascent() >= 1);

  Presentation w = wide_bridge();
  auto wl = all_strands(w);
  auto two = strand_ray_family(w, wl, 0, 0, {0, 0}, 4);
  REQUIRE(two.size() == 2);
  CHECK(!tails_conflict(tail_occupancy(two[0]), tail_occupancy(two[1])));

  try {
    strand_ray_family(w, wl, 0, 0, {0, 0, 1}, 4);
    FAIL("expected capacity-exceeded");
  } catch (const DomainError& e) {
    CHECK(e.code() == "capacity-exceeded");
    CHECK(e.detail().contains("violated_cut"));
  }
}

TEST_CASE("lambda_ends on the bridge: k = 1 with a one-edge certificate") {
  EndAnalysis a = EndAnalysis::of(bridge());
  REQUIRE(a.classes.size() == 2);
  auto r = lambda_ends(a, EndSetSpec{{0}, {}}, EndSetSpec{{1}, {}});
  CHECK_FALSE(r.infinite);
  CHECK(r.k == 1);
  CHECK(r.certificate.edges.size() == 1);
  CHECK(r.stab.confirmed_depth == 2 * r.stab.depth);
}

TEST_CASE("lambda_ends: same selector is an error, merged selectors are infinite") {
  EndAnalysis fig = EndAnalysis::of(figure_one());
  REQUIRE(fig.classes.size() == 1);
  CHECK_THROWS_AS(lambda_ends(fig, EndSetSpec{{0}, {}}, EndSetSpec{{0}, {}}), DomainError);

  // the two strands of the merged class witness infinite connectivity
  auto r = lambda_ends(fig, EndSetSpec{{}, {0}}, EndSetSpec{{}, {1}});
  CHECK(r.infinite);
  CHECK(r.infinite_witness["dominators"][0] == 0);
}

TEST_CASE("menger_ends on the bridge: one double ray through c") {
  EndAnalysis a = EndAnalysis::of(bridge());
  auto r = menger_ends(a, EndSetSpec{{0}, {}}, EndSetSpec{{1}, {}});
  CHECK(r.k == 1);
  REQUIRE(r.family.size() == 1);
  CHECK(r.family[0].path.kind == ExtendedPath::Kind::DoubleRay);
  VerifyJob job = menger_job(r, 4 * r.stab.depth);
  auto rep = verify_family(a, job);
  for (const auto& f : rep.failures) MESSAGE(f.dump());
  CHECK(rep.ok);
}

TEST_CASE("menger_ends on the wide bridge: two edge-disjoint double rays") {
  EndAnalysis a = EndAnalysis::of(wide_bridge());
  REQUIRE(a.classes.size() == 2);
  auto r = menger_ends(a, EndSetSpec{{0}, {}}, EndSetSpec{{1}, {}});
  CHECK(r.k == 2);
  REQUIRE(r.family.size() == 2);
  CHECK(r.family[0].path.kind == ExtendedPath::Kind::DoubleRay);
  CHECK(r.family[1].path.kind == ExtendedPath::Kind::DoubleRay);
  CHECK(paths_edge_disjoint(r.family[0].path, r.family[1].path));
  auto rep = verify_family(a, menger_job(r, 4 * r.stab.depth));
  for (const auto& f : rep.failures) MESSAGE(f.dump());
  CHECK(rep.ok);
}

TEST_CASE("menger_ends k=0 for disconnected ends") {
  Presentation p;
  p.core.add_vertex(0);
  p.core.add_vertex(1);
  p.core_names = {"c", "d"};
  p.arms = {{"A", {"u"}, {}, {{0, 0}}}, {"B", {"u"}, {}, {{0, 0}}}};
  p.attach = {{0, 0, 0}, {1, 1, 0}};  // no core edge joins c and d
  EndAnalysis a = EndAnalysis::of(p);
  auto r = menger_ends(a, EndSetSpec{{0}, {}}, EndSetSpec{{1}, {}});
  CHECK(r.k == 0);
  CHECK(r.family.empty());
  CHECK(r.certificate.edges.empty());
}

TEST_CASE("reduced multigraph shapes") {
  // double ray, both ends terminal: lambda 1 each, no bundles
  EndAnalysis dr = EndAnalysis::of(double_ray());
  REQUIRE(dr.classes.size() == 2);
  ReducedGraph rg = reduced_multigraph(dr, {EndTerminal{true, 0, -1}, EndTerminal{true, 1, -1}});
  CHECK(rg.sealed.bundle_dom.empty());
  CHECK(rg.terminal_vertex.size() == 2);
  CHECK(lambda_terminal(rg.sealed.graph, rg.terminal_vertex[0],
                        {rg.terminal_vertex[0], rg.terminal_vertex[1]}) == 1);

  // figure 1 with T = {v_0, omega}: both lambdas are 3
  EndAnalysis fig = EndAnalysis::of(figure_one());
  ReducedGraph rf = reduced_multigraph(fig, {EndTerminal{false, -1, 1}, EndTerminal{true, 0, -1}});
  CHECK_FALSE(rf.sealed.bundle_dom.empty());
  std::set<VertexId> t(rf.terminal_vertex.begin(), rf.terminal_vertex.end());
  CHECK(lambda_terminal(rf.sealed.graph, rf.terminal_vertex[0], t) == 3);
  CHECK(lambda_terminal(rf.sealed.graph, rf.terminal_vertex[1], t) == 3);

  // discreteness: v_inf itself cannot be a terminal next to the class
  CHECK_THROWS_AS(
      reduced_multigraph(fig, {EndTerminal{false, -1, 0}, EndTerminal{true, 0, -1}}),
      DomainError);
}

TEST_CASE("parity condition on ends") {
  EndAnalysis dr = EndAnalysis::of(double_ray());
  auto ok = check_parity_condition_ends(dr, {EndTerminal{true, 0, -1}, EndTerminal{true, 1, -1}});
  CHECK(ok.ok);

  EndAnalysis fig = EndAnalysis::of(figure_one());
  auto ok2 =
      check_parity_condition_ends(fig, {EndTerminal{false, -1, 1}, EndTerminal{true, 0, -1}});
  CHECK(ok2.ok);

  // an inner core vertex carrying three attach edges violates parity
  Presentation bad;
  bad.core.add_vertex(0);
  bad.core.add_vertex(1);
  bad.core_names = {"c1", "c2"};
  bad.arms = {{"A", {"u"}, {}, {{0, 0}}}};
  bad.attach = {{0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
  EndAnalysis b = EndAnalysis::of(bad);
  auto viol = check_parity_condition_ends(b, {EndTerminal{false, -1, 0}, EndTerminal{true, 0, -1}});
  CHECK_FALSE(viol.ok);
  CHECK(viol.violating.contains("side"));
  // the fast equivalent agrees
  ReducedGraph rb =
      reduced_multigraph(b, {EndTerminal{false, -1, 0}, EndTerminal{true, 0, -1}});
  CHECK_FALSE(parity_ends_fast(rb).ok);
  CHECK_THROWS_AS(
      lovasz_cherkassky_ends(b, {EndTerminal{false, -1, 0}, EndTerminal{true, 0, -1}}),
      DomainError);
}

TEST_CASE("lc-ends on the double ray: one double-ray T-path with unit cuts") {
  EndAnalysis a = EndAnalysis::of(double_ray());
  auto r = lovasz_cherkassky_ends(a, {EndTerminal{true, 0, -1}, EndTerminal{true, 1, -1}});
  REQUIRE(r.family.size() == 1);
  CHECK(r.family[0].path.kind == ExtendedPath::Kind::DoubleRay);
  CHECK(r.lambda == std::vector<int>{1, 1});
  CHECK(r.per_terminal[0].edges.size() == 1);
  CHECK(r.per_terminal[1].edges.size() == 1);
  auto rep = verify_family(a, lc_job(r, 30));
  for (const auto& f : rep.failures) MESSAGE(f.dump());
  CHECK(rep.ok);
}

TEST_CASE("lc-ends on figure 1 with a vertex and the end as terminals") {
  EndAnalysis a = EndAnalysis::of(figure_one());
  std::vector<EndTerminal> terminals{EndTerminal{false, -1, 1}, EndTerminal{true, 0, -1}};
  auto r = lovasz_cherkassky_ends(a, terminals);
  CHECK(r.lambda == std::vector<int>{3, 3});
  REQUIRE(r.family.size() == 3);
  int rays = 0, via_dominator = 0;
  for (const auto& lp : r.family) {
    if (lp.back.via == LiftedPath::EndInfo::Via::Tail ||
        lp.front.via == LiftedPath::EndInfo::Via::Tail)
      ++rays;
    if (lp.back.via == LiftedPath::EndInfo::Via::Dominator ||
        lp.front.via == LiftedPath::EndInfo::Via::Dominator)
      ++via_dominator;
  }
  CHECK(rays == 2);
  CHECK(via_dominator == 1);
  auto rep = verify_family(a, lc_job(r, 30));
  for (const auto& f : rep.failures) MESSAGE(f.dump());
  CHECK(rep.ok);

  // cap independence
  auto r2 = lovasz_cherkassky_ends(a, terminals, 2 * r.cap);
  CHECK(r2.lambda == r.lambda);
  CHECK(r2.family.size() == r.family.size());
}

TEST_CASE("lc-ends degenerates to the finite packing on a core-only presentation") {
  Presentation p;
  for (int i = 0; i < 4; ++i) p.core.add_vertex(i);
  p.core_names = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) p.core.add_edge(i, j);
  EndAnalysis a = EndAnalysis::of(p);
  std::vector<EndTerminal> terminals;
  for (int i = 0; i < 4; ++i) terminals.push_back(EndTerminal{false, -1, i});
  auto r = lovasz_cherkassky_ends(a, terminals);
  CHECK(r.family.size() == 6);
  auto direct = pack_tpaths(p.core, {0, 1, 2, 3});
  CHECK(direct.family.size() == r.family.size());
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.lambda[i] == 3);
}

TEST_CASE("verifier rejects corrupted families and certificates") {
  EndAnalysis a = EndAnalysis::of(wide_bridge());
  auto r = menger_ends(a, EndSetSpec{{0}, {}}, EndSetSpec{{1}, {}});
  REQUIRE(r.family.size() == 2);

  // share an edge between the two paths
  VerifyJob bad = menger_job(r, 12);
  bad.family[1].path.edges[0] = bad.family[0].path.edges[0];
  auto rep1 = verify_family(a, bad);
  CHECK_FALSE(rep1.ok);

  // drop a certificate edge: the remaining set no longer separates
  VerifyJob bad2 = menger_job(r, 12);
  REQUIRE(bad2.items[0].certificate.edges.size() == 2);
  bad2.items[0].certificate.edges.pop_back();
  auto rep2 = verify_family(a, bad2);
  CHECK_FALSE(rep2.ok);
}
