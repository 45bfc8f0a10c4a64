#include <doctest.h>

#include "edgeends/menger.hpp"
#include "helpers.hpp"

using namespace edgeends;
using test_support::brute_max_family;
using test_support::brute_min_cut_size;
using test_support::complete_graph;
using test_support::graph_from;
using test_support::path_graph;
using test_support::separated;
using test_support::star;

namespace {

void check_menger_result(const Multigraph& g, const std::set<VertexId>& a,
                         const std::set<VertexId>& b, const MengerResult& r) {
  CHECK(r.family.size() == r.cut.edges.size());
  CHECK(delta(g, r.cut.side).edges == r.cut.edges);
  for (VertexId v : a) CHECK(r.cut.side.count(v) == 1);
  for (VertexId v : b) CHECK(r.cut.side.count(v) == 0);
  CHECK(verify_lies_on(r.family, r.cut));
  CHECK(separated(g, a, b, r.cut.edges));
  std::set<EdgeId> used;
  for (const Path& p : r.family.paths) {
    CHECK(is_valid_path(g, p));
    CHECK(a.count(p.front()) == 1);
    CHECK(b.count(p.back()) == 1);
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
      CHECK(a.count(p.vertices[i]) == 0);
      CHECK(b.count(p.vertices[i]) == 0);
    }
    for (EdgeId e : p.edges) CHECK(used.insert(e).second);
  }
}

}  // namespace

TEST_CASE("K4 singleton terminals: three paths and a cut of three") {
  Multigraph k4 = complete_graph(4);
  // brute-force oracle: no cut of size <= 2 separates, some size-3 cut does
  CHECK(brute_min_cut_size(k4, {0}, {1}) == 3);
  CHECK(brute_max_family(k4, {0}, {1}) == 3);

  auto r = max_edge_disjoint_paths(k4, {0}, {1});
  CHECK(r.family.size() == 3);
  check_menger_result(k4, {0}, {1}, r);

  Cut c = min_edge_cut(k4, {0}, {1});
  CHECK(c.edges.size() == 3);
}

TEST_CASE("bridge and disconnected instances") {
  Multigraph p3 = path_graph(3);
  auto r = max_edge_disjoint_paths(p3, {0}, {2});
  CHECK(r.family.size() == 1);
  check_menger_result(p3, {0}, {2}, r);

  Multigraph two = graph_from(4, {{0, 1}, {2, 3}});
  auto d = max_edge_disjoint_paths(two, {0}, {2});
  CHECK(d.family.size() == 0);
  CHECK(d.cut.edges.empty());
  Cut c = min_edge_cut(two, {0}, {2});
  CHECK(c.edges.empty());
  CHECK(c.side.count(0) == 1);
  CHECK(c.side.count(2) == 0);
}

TEST_CASE("dumbbell has a bridge cut") {
  // two triangles joined by one edge
  Multigraph g = graph_from(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
  CHECK(brute_min_cut_size(g, {0}, {4}) == 1);
  Cut c = min_edge_cut(g, {0}, {4});
  CHECK(c.edges.size() == 1);
  EdgeId bridge = *c.edges.begin();
  CHECK(((g.ends(bridge).u == 2 && g.ends(bridge).v == 3) ||
         (g.ends(bridge).u == 3 && g.ends(bridge).v == 2)));
}

TEST_CASE("terminal validation") {
  Multigraph k4 = complete_graph(4);
  CHECK_THROWS_AS(max_edge_disjoint_paths(k4, {0}, {0, 1}), DomainError);
  CHECK_THROWS_AS(max_edge_disjoint_paths(k4, {}, {1}), DomainError);
  CHECK_THROWS_AS(min_edge_cut(k4, {0}, {}), DomainError);
}

TEST_CASE("lambda over terminal sets") {
  Multigraph k4 = complete_graph(4);
  std::set<VertexId> all{0, 1, 2, 3};
  for (VertexId t : all) CHECK(lambda_terminal(k4, t, all) == 3);

  Multigraph s4 = star(4);
  std::set<VertexId> leaves{1, 2, 3, 4};
  for (VertexId t : leaves) CHECK(lambda_terminal(s4, t, leaves) == 1);

  Multigraph iso = graph_from(3, {{1, 2}});
  CHECK(lambda_terminal(iso, 0, {0, 1}) == 0);
  CHECK_THROWS_AS(lambda_terminal(k4, 0, {1, 2}), DomainError);
}

TEST_CASE("verify_lies_on rejects non-bijections") {
  Multigraph p4 = path_graph(4);
  PathFamily fam;
  fam.paths.push_back(Path{{0, 1, 2, 3}, {0, 1, 2}});
  CHECK(verify_lies_on(fam, std::set<EdgeId>{0}));
  CHECK_FALSE(verify_lies_on(fam, std::set<EdgeId>{0, 1}));
  PathFamily empty;
  CHECK(verify_lies_on(empty, std::set<EdgeId>{}));
}

TEST_CASE("blow-up cross check agrees on fixed instances") {
  Multigraph k4 = complete_graph(4);
  auto r = blowup_cross_check(k4, {0}, {1});
  CHECK(r.family.size() == 3);
  check_menger_result(k4, {0}, {1}, r);

  Multigraph one = graph_from(2, {{0, 1}});
  auto s = blowup_cross_check(one, {0}, {1});
  CHECK(s.family.size() == 1);
}

TEST_CASE("duality and cross-check on random instances") {
  std::uint64_t state = 99;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int iter = 0; iter < 120; ++iter) {
    int n = 3 + static_cast<int>(next() % 5);
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (next() % 100 < 50) g.add_edge(i, j);
        if (next() % 100 < 12) g.add_edge(i, j);  // occasional parallel edge
      }
    VertexId a = static_cast<VertexId>(next() % n);
    VertexId b = static_cast<VertexId>(next() % n);
    if (a == b) continue;
    auto direct = max_edge_disjoint_paths(g, {a}, {b});
    check_menger_result(g, {a}, {b}, direct);
    Cut mc = min_edge_cut(g, {a}, {b});
    CHECK(mc.edges.size() == direct.family.size());
    auto cross = blowup_cross_check(g, {a}, {b});
    CHECK(cross.family.size() == direct.family.size());
    check_menger_result(g, {a}, {b}, cross);
    if (g.edge_count() <= 12) {
      CHECK(static_cast<int>(direct.family.size()) == brute_min_cut_size(g, {a}, {b}));
      CHECK(static_cast<int>(direct.family.size()) == brute_max_family(g, {a}, {b}));
    }
  }
}

TEST_CASE("multi-vertex terminal sets") {
  // A-B paths must meet A and B only at their endpoints
  Multigraph g = graph_from(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
  std::set<VertexId> a{0, 1}, b{3, 4};
  auto r = max_edge_disjoint_paths(g, a, b);
  check_menger_result(g, a, b, r);
  CHECK(r.family.size() == brute_max_family(g, a, b));
}
