#pragma once

#include <map>
#include <set>
#include <vector>

#include "edgeends/multigraph.hpp"

namespace edgeends {

// Line graph of G. Vertices of the line graph are the source EdgeIds; two
// are adjacent iff the source edges share an endpoint. The output is simple
// even when G has parallel edges (parallel edges share both endpoints).
struct LineGraphResult {
  Multigraph graph;
  std::map<VertexId, EdgeId> source_edge;  // line vertex -> source edge
  std::map<EdgeId, VertexId> line_vertex;  // source edge -> line vertex
};

inline LineGraphResult line_graph(const Multigraph& g) {
  LineGraphResult out;
  for (const auto& [id, e] : g.edges()) {
    (void)e;
    out.graph.add_vertex(static_cast<VertexId>(id));
    out.source_edge[static_cast<VertexId>(id)] = id;
    out.line_vertex[id] = static_cast<VertexId>(id);
  }
  std::set<std::pair<EdgeId, EdgeId>> added;
  for (VertexId v : g.vertices()) {
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        auto key = std::minmax(inc[i], inc[j]);
        if (added.insert({key.first, key.second}).second)
          out.graph.add_edge(static_cast<VertexId>(key.first), static_cast<VertexId>(key.second));
      }
  }
  return out;
}

// Clique blow-up: every vertex v becomes a complete graph on d(v) vertices,
// every source edge uv becomes an "old edge" between the cliques, and each
// clique vertex meets exactly one old edge. Vertices of degree 0 vanish.
struct BlowupResult {
  Multigraph graph;
  std::map<EdgeId, EdgeId> old_edge_of;   // source edge -> old edge
  std::map<EdgeId, EdgeId> original_of;   // old edge -> source edge
  std::map<VertexId, VertexId> origin;    // blown vertex -> source vertex
  std::map<VertexId, std::vector<VertexId>> clique;  // source vertex -> its clique
};

inline BlowupResult clique_blowup(const Multigraph& g) {
  BlowupResult out;
  VertexId next = 0;
  // One clique slot per incidence, so the old-edge assignment is a bijection.
  std::map<VertexId, std::map<EdgeId, VertexId>> slot;
  for (VertexId v : g.vertices()) {
    for (EdgeId e : g.incident(v)) {
      out.graph.add_vertex(next);
      out.origin[next] = v;
      out.clique[v].push_back(next);
      slot[v][e] = next;
      ++next;
    }
    const auto& cl = out.clique[v];
    for (std::size_t i = 0; i < cl.size(); ++i)
      for (std::size_t j = i + 1; j < cl.size(); ++j) out.graph.add_edge(cl[i], cl[j]);
  }
  for (const auto& [id, e] : g.edges()) {
    EdgeId old_edge = out.graph.add_edge(slot[e.u][id], slot[e.v][id]);
    out.old_edge_of[id] = old_edge;
    out.original_of[old_edge] = id;
  }
  return out;
}

// Maps the edge sequence of a G-path (at least two edges) to the
// corresponding path in the line graph.
inline Path path_to_line(const Multigraph& g, const LineGraphResult& lg, const Path& p) {
  if (!is_valid_path(g, p)) throw DomainError("not-a-path", "input is not a simple path in G");
  if (p.edges.size() < 2)
    throw DomainError("too-short", "to-line translation needs a path with at least two edges");
  Path out;
  for (EdgeId e : p.edges) out.vertices.push_back(lg.line_vertex.at(e));
  for (std::size_t i = 0; i + 1 < out.vertices.size(); ++i) {
    bool found = false;
    for (EdgeId le : lg.graph.incident(out.vertices[i])) {
      if (lg.graph.other_end(le, out.vertices[i]) == out.vertices[i + 1]) {
        out.edges.push_back(le);
        found = true;
        break;
      }
    }
    require(found, "consecutive path edges must be adjacent in the line graph");
  }
  return out;
}

// Recovers a G-path from a vertex-minimal line-graph path. A line-graph path
// is vertex-minimal when no two non-consecutive entries are adjacent edges of
// G; anything else is rejected, as is any input whose lift is ambiguous
// (consecutive parallel edges) or not simple.
inline Path path_from_line(const Multigraph& g, const LineGraphResult& lg, const Path& line_path) {
  if (!is_valid_path(lg.graph, line_path))
    throw DomainError("not-a-path", "input is not a simple path in the line graph");
  std::vector<EdgeId> seq;
  for (VertexId lv : line_path.vertices) seq.push_back(lg.source_edge.at(lv));
  if (seq.empty()) throw DomainError("empty", "empty line-graph path");

  auto shares = [&](EdgeId a, EdgeId b) {
    EdgeEnds ea = g.ends(a), eb = g.ends(b);
    return ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v;
  };
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 2; j < seq.size(); ++j)
      if (shares(seq[i], seq[j]))
        throw DomainError("not-vertex-minimal", "line-graph path is not vertex-minimal");

  Path out;
  if (seq.size() == 1) {
    EdgeEnds e = g.ends(seq[0]);
    out.vertices = {e.u, e.v};
    out.edges = {seq[0]};
    return out;
  }
  // Shared endpoints of consecutive edges; parallel edges share two and make
  // the lift ambiguous.
  std::vector<VertexId> inner;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    EdgeEnds a = g.ends(seq[i]), b = g.ends(seq[i + 1]);
    std::vector<VertexId> common;
    for (VertexId x : {a.u, a.v})
      if (x == b.u || x == b.v) common.push_back(x);
    if (common.size() != 1)
      throw DomainError("ambiguous-lift", "consecutive parallel edges cannot be lifted");
    inner.push_back(common[0]);
  }
  out.vertices.push_back(g.other_end(seq.front(), inner.front()));
  for (VertexId v : inner) out.vertices.push_back(v);
  out.vertices.push_back(g.other_end(seq.back(), inner.back()));
  out.edges = seq;
  if (!is_valid_path(g, out))
    throw DomainError("not-vertex-minimal", "lift of the line-graph path is not a simple path");
  return out;
}

}  // namespace edgeends
