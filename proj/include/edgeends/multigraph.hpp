#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "edgeends/base.hpp"

namespace edgeends {

struct EdgeEnds {
  VertexId u = 0;
  VertexId v = 0;
};

// Finite multigraph with stable edge identities. Loops are forbidden;
// parallel edges are distinct EdgeIds. Derived graphs (subgraphs,
// contractions, split-off graphs) keep the surviving EdgeIds unchanged so
// that lineage maps can trace edges through every transform.
class Multigraph {
 public:
  Multigraph() = default;

  void add_vertex(VertexId v) { vertices_.insert(v); }

  void add_edge_with_id(EdgeId id, VertexId u, VertexId v) {
    if (u == v) throw DomainError("loop", "loops are forbidden");
    if (!has_vertex(u) || !has_vertex(v))
      throw DomainError("missing-endpoint", "edge endpoint is not a vertex");
    if (edges_.count(id)) throw DomainError("duplicate-edge-id", "edge id already in use");
    edges_[id] = EdgeEnds{u, v};
    incidence_[u].insert(id);
    incidence_[v].insert(id);
    next_edge_id_ = std::max(next_edge_id_, id + 1);
  }

  EdgeId add_edge(VertexId u, VertexId v) {
    EdgeId id = next_edge_id_;
    add_edge_with_id(id, u, v);
    return id;
  }

  void remove_edge(EdgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw DomainError("missing-edge", "unknown edge id");
    incidence_[it->second.u].erase(id);
    incidence_[it->second.v].erase(id);
    edges_.erase(it);
  }

  void remove_vertex(VertexId v) {
    auto inc = incident(v);
    for (EdgeId e : inc) remove_edge(e);
    incidence_.erase(v);
    vertices_.erase(v);
  }

  bool has_vertex(VertexId v) const { return vertices_.count(v) > 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) > 0; }

  EdgeEnds ends(EdgeId e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw DomainError("missing-edge", "unknown edge id");
    return it->second;
  }

  VertexId other_end(EdgeId e, VertexId at) const {
    EdgeEnds p = ends(e);
    if (p.u == at) return p.v;
    if (p.v == at) return p.u;
    throw DomainError("not-incident", "vertex is not an endpoint of the edge");
  }

  bool incident_to(EdgeId e, VertexId v) const {
    EdgeEnds p = ends(e);
    return p.u == v || p.v == v;
  }

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::map<EdgeId, EdgeEnds>& edges() const { return edges_; }

  std::vector<EdgeId> incident(VertexId v) const {
    auto it = incidence_.find(v);
    if (it == incidence_.end()) return {};
    return std::vector<EdgeId>(it->second.begin(), it->second.end());
  }

  int degree(VertexId v) const {
    auto it = incidence_.find(v);
    return it == incidence_.end() ? 0 : static_cast<int>(it->second.size());
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  EdgeId next_edge_id() const { return next_edge_id_; }

 private:
  std::set<VertexId> vertices_;
  std::map<EdgeId, EdgeEnds> edges_;
  std::map<VertexId, std::set<EdgeId>> incidence_;
  EdgeId next_edge_id_ = 0;
};

// An edge cut together with the vertex side witnessing it: edges = delta(side).
struct Cut {
  std::set<VertexId> side;
  std::set<EdgeId> edges;
};

// delta(G, X): the edges with exactly one endpoint in X. Parallel edges count
// with multiplicity since each carries its own id.
inline Cut delta(const Multigraph& g, const std::set<VertexId>& x) {
  for (VertexId v : x)
    if (!g.has_vertex(v)) throw DomainError("not-a-subset", "cut side must be a subset of V(G)");
  Cut cut;
  cut.side = x;
  for (const auto& [id, e] : g.edges()) {
    bool inu = x.count(e.u) > 0, inv = x.count(e.v) > 0;
    if (inu != inv) cut.edges.insert(id);
  }
  return cut;
}

// Lineage of one derived edge: the oriented walk of source edges it stands
// for. `from`/`to` are source-graph endpoints; `edges` is ordered from
// `from` to `to`.
struct LineageEntry {
  VertexId from = 0;
  VertexId to = 0;
  std::vector<EdgeId> edges;
};

// Total map from every edge of a derived graph back to the source graph.
using EdgeLineage = std::map<EdgeId, LineageEntry>;

struct ContractResult {
  Multigraph graph;
  EdgeLineage lineage;                     // surviving edge -> its source edge
  std::map<VertexId, VertexId> vertex_map;  // source vertex -> contracted vertex
};

// Contract each partition class to a single vertex (named by the class
// minimum). Edges inside a class vanish; everything else survives with its
// id. Would-be loops are dropped.
inline ContractResult contract(const Multigraph& g, const std::vector<std::set<VertexId>>& parts) {
  std::map<VertexId, VertexId> rep;
  for (const auto& part : parts) {
    if (part.empty()) throw DomainError("empty-class", "partition classes must be nonempty");
    VertexId name = *part.begin();
    for (VertexId v : part) {
      if (!g.has_vertex(v)) throw DomainError("not-a-subset", "partition references unknown vertex");
      if (rep.count(v)) throw DomainError("overlap", "partition classes overlap");
      rep[v] = name;
    }
  }
  ContractResult out;
  for (VertexId v : g.vertices()) {
    VertexId w = rep.count(v) ? rep[v] : v;
    out.vertex_map[v] = w;
    out.graph.add_vertex(w);
  }
  for (const auto& [id, e] : g.edges()) {
    VertexId u = out.vertex_map[e.u], v = out.vertex_map[e.v];
    if (u == v) continue;
    out.graph.add_edge_with_id(id, u, v);
    out.lineage[id] = LineageEntry{e.u, e.v, {id}};
  }
  return out;
}

// A simple path as an alternating vertex/edge sequence.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool trivial() const { return edges.empty(); }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
};

inline bool is_walk_in(const Multigraph& g, const Path& p) {
  if (p.vertices.empty()) return false;
  if (p.edges.size() + 1 != p.vertices.size()) return false;
  for (VertexId v : p.vertices)
    if (!g.has_vertex(v)) return false;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (!g.has_edge(p.edges[i])) return false;
    EdgeEnds e = g.ends(p.edges[i]);
    VertexId a = p.vertices[i], b = p.vertices[i + 1];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) return false;
  }
  return true;
}

inline bool is_valid_path(const Multigraph& g, const Path& p) {
  if (!is_walk_in(g, p)) return false;
  std::set<VertexId> seen(p.vertices.begin(), p.vertices.end());
  if (seen.size() != p.vertices.size()) return false;
  std::set<EdgeId> es(p.edges.begin(), p.edges.end());
  return es.size() == p.edges.size();
}

// Shortcut a walk to a simple path between the same endpoints, using only
// edges of the walk: whenever a vertex repeats, the cycle between the two
// occurrences is excised.
inline Path shortcut_walk(const Path& walk) {
  Path out;
  std::map<VertexId, int> pos;
  for (std::size_t i = 0; i < walk.vertices.size(); ++i) {
    VertexId v = walk.vertices[i];
    auto it = pos.find(v);
    if (it != pos.end()) {
      int keep = it->second;
      while (static_cast<int>(out.vertices.size()) > keep + 1) {
        pos.erase(out.vertices.back());
        out.vertices.pop_back();
        out.edges.pop_back();
      }
    } else {
      out.vertices.push_back(v);
      pos[v] = static_cast<int>(out.vertices.size()) - 1;
      if (i > 0) out.edges.push_back(walk.edges[i - 1]);
    }
  }
  return out;
}

}  // namespace edgeends
