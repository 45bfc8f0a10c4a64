#include <doctest.h>

#include "edgeends/tpath.hpp"
#include "helpers.hpp"

using namespace edgeends;
using test_support::brute_max_tpath_packing;
using test_support::complete_graph;
using test_support::graph_from;
using test_support::path_graph;
using test_support::separated;
using test_support::star;

TEST_CASE("inner-Eulerian checks") {
  Multigraph s4 = star(4);
  CHECK(is_inner_eulerian(s4, {1, 2, 3, 4}));
  Multigraph p3 = path_graph(3);
  CHECK(is_inner_eulerian(p3, {0, 2}));
  Multigraph s3 = star(3);
  CHECK_FALSE(is_inner_eulerian(s3, {1, 2, 3}));
}

TEST_CASE("parity condition by enumeration") {
  Multigraph p3 = path_graph(3);
  auto r = check_parity_condition(p3, {0, 2});
  CHECK(r.ok);

  // triangle with two terminals: X = {a,b} gives |delta| = 2, X = V gives 0
  Multigraph tri = complete_graph(3);
  auto t = check_parity_condition(tri, {0, 1});
  CHECK(t.ok);

  Multigraph s3 = star(3);
  auto s = check_parity_condition(s3, {1, 2, 3});
  CHECK_FALSE(s.ok);
  CHECK(delta(s3, s.violating).edges.size() % 2 == 1);

  // T = V: only X = V remains and delta is empty
  auto v = check_parity_condition(tri, {0, 1, 2});
  CHECK(v.ok);
}

TEST_CASE("parity enumeration refuses oversized instances") {
  Multigraph g;
  for (int i = 0; i < 25; ++i) g.add_vertex(i);
  for (int i = 0; i + 1 < 25; ++i) g.add_edge(i, i + 1);
  CHECK_THROWS_AS(check_parity_condition(g, {0, 24}, 20), DomainError);
  CHECK_NOTHROW(check_parity_condition(g, {0, 24}, 23));
}

TEST_CASE("parity condition is equivalent to inner-Eulerian on finite multigraphs") {
  std::uint64_t state = 4242;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int iter = 0; iter < 80; ++iter) {
    int n = 3 + static_cast<int>(next() % 6);
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (next() % 100 < 45) g.add_edge(i, j);
    std::set<VertexId> terminals;
    while (terminals.size() < 2) terminals.insert(static_cast<VertexId>(next() % n));
    auto r = check_parity_condition(g, terminals);
    CHECK(r.ok == is_inner_eulerian(g, terminals));
    if (!r.ok) CHECK(delta(g, r.violating).edges.size() % 2 == 1);
  }
}

TEST_CASE("split_off basics") {
  Multigraph p3 = path_graph(3);  // 0-1-2 with edges 0,1
  auto r = split_off(p3, 1, 0, 1);
  CHECK_FALSE(r.dropped);
  CHECK(r.graph.edge_count() == 1);
  CHECK(r.graph.degree(1) == 0);
  CHECK(r.lineage.at(r.new_edge).edges == std::vector<EdgeId>{0, 1});
  EdgeEnds e = r.graph.ends(r.new_edge);
  CHECK(((e.u == 0 && e.v == 2) || (e.u == 2 && e.v == 0)));

  // star with four leaves: two splits give a perfect matching on the leaves
  Multigraph s4 = star(4);
  auto a = split_off(s4, 0, 0, 1);
  auto b = split_off(a.graph, 0, 2, 3);
  CHECK(b.graph.edge_count() == 2);
  CHECK(b.graph.degree(0) == 0);

  // splitting the two parallel edges of a degree-2 vertex drops them
  Multigraph gg = graph_from(2, {{0, 1}, {0, 1}});
  auto d = split_off(gg, 1, 0, 1);
  CHECK(d.dropped);
  CHECK(d.graph.edge_count() == 0);
  CHECK(d.graph.degree(1) == 0);

  CHECK_THROWS_AS(split_off(p3, 0, 0, 1), DomainError);  // edge 1 not at vertex 0
  CHECK_THROWS_AS(split_off(p3, 1, 0, 0), DomainError);
}

namespace {

void check_packing(const Multigraph& g, const std::set<VertexId>& terminals,
                   const PackingResult& r) {
  long long sum = 0;
  for (auto& [t, l] : r.lambda) sum += l;
  CHECK(static_cast<long long>(r.family.size()) * 2 == sum);
  std::set<EdgeId> used;
  for (const Path& p : r.family.paths) {
    CHECK(is_valid_path(g, p));
    CHECK(terminals.count(p.front()) == 1);
    CHECK(terminals.count(p.back()) == 1);
    CHECK(p.front() != p.back());
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
      CHECK(terminals.count(p.vertices[i]) == 0);
    for (EdgeId e : p.edges) CHECK(used.insert(e).second);
  }
  for (VertexId t : terminals) {
    const Cut& cut = r.per_terminal_cuts.at(t);
    CHECK(static_cast<int>(cut.edges.size()) == r.lambda.at(t));
    std::set<VertexId> rest = terminals;
    rest.erase(t);
    if (!rest.empty()) CHECK(separated(g, {t}, rest, cut.edges));
    PathFamily sub;
    for (const Path& p : r.family.paths)
      if (p.front() == t || p.back() == t) sub.paths.push_back(p);
    CHECK(verify_lies_on(sub, cut));
  }
}

}  // namespace

TEST_CASE("packing fixed instances") {
  Multigraph k4 = complete_graph(4);
  std::set<VertexId> all{0, 1, 2, 3};
  auto r = pack_tpaths(k4, all);
  CHECK(r.family.size() == 6);
  for (VertexId t : all) CHECK(r.lambda.at(t) == 3);
  check_packing(k4, all, r);
  CHECK(brute_max_tpath_packing(k4, all) == 6);

  Multigraph s4 = star(4);
  std::set<VertexId> leaves{1, 2, 3, 4};
  auto s = pack_tpaths(s4, leaves);
  CHECK(s.family.size() == 2);
  check_packing(s4, leaves, s);

  Multigraph p3 = path_graph(3);
  auto p = pack_tpaths(p3, {0, 2});
  CHECK(p.family.size() == 1);
  check_packing(p3, {0, 2}, p);
}

TEST_CASE("packing rejects parity violations with a witness") {
  Multigraph s3 = star(3);
  try {
    pack_tpaths(s3, {1, 2, 3});
    FAIL("expected parity violation");
  } catch (const DomainError& e) {
    CHECK(e.code() == "parity-violation");
  }
}

TEST_CASE("packing on random inner-Eulerian multigraphs") {
  std::uint64_t state = 777;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  int done = 0;
  for (int iter = 0; iter < 200 && done < 40; ++iter) {
    int n = 4 + static_cast<int>(next() % 7);
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (next() % 100 < 40) g.add_edge(i, j);
        if (next() % 100 < 10) g.add_edge(i, j);
      }
    std::set<VertexId> terminals;
    int want = 2 + static_cast<int>(next() % 3);
    while (static_cast<int>(terminals.size()) < want)
      terminals.insert(static_cast<VertexId>(next() % n));
    // parity repair: double an incident edge along a walk toward a terminal
    for (bool repaired = false; !repaired;) {
      repaired = true;
      for (VertexId v : g.vertices()) {
        if (terminals.count(v) || g.degree(v) % 2 == 0) continue;
        repaired = false;
        // BFS toward the nearest terminal and double the first edge of the walk
        std::map<VertexId, EdgeId> via;
        std::queue<VertexId> q;
        std::set<VertexId> seen{v};
        q.push(v);
        VertexId hit = -1;
        // walk toward the nearest terminal, or the nearest other odd inner
        // vertex when the component has no terminal (one exists by parity)
        while (!q.empty() && hit < 0) {
          VertexId u = q.front();
          q.pop();
          for (EdgeId e : g.incident(u)) {
            VertexId w = g.other_end(e, u);
            if (seen.insert(w).second) {
              via[w] = e;
              if (terminals.count(w)) {
                hit = w;
                break;
              }
              q.push(w);
            }
          }
        }
        if (hit < 0) {
          for (VertexId w : seen)
            if (w != v && !terminals.count(w) && g.degree(w) % 2 == 1) {
              hit = w;
              break;
            }
          REQUIRE(hit >= 0);
        }
        // double the edges along the tree walk v .. hit
        std::vector<EdgeId> walk;
        VertexId cur = hit;
        while (cur != v) {
          EdgeId e = via[cur];
          walk.push_back(e);
          cur = g.other_end(e, cur);
        }
        for (EdgeId e : walk) g.add_edge(g.ends(e).u, g.ends(e).v);
        break;
      }
    }
    if (!is_inner_eulerian(g, terminals)) continue;
    if (g.edge_count() > 30) continue;
    auto r = pack_tpaths(g, terminals);
    check_packing(g, terminals, r);
    if (g.edge_count() <= 16)
      CHECK(static_cast<int>(r.family.size()) == brute_max_tpath_packing(g, terminals));
    ++done;
  }
  CHECK(done >= 25);
}
