#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "edgeends/flow.hpp"
#include "edgeends/multigraph.hpp"
#include "edgeends/transforms.hpp"

namespace edgeends {

struct PathFamily {
  std::vector<Path> paths;
  std::size_t size() const { return paths.size(); }
};

// Maximum edge-disjoint A-B path family together with a cut lying on it:
// |family| = |cut.edges|, every cut edge lies on exactly one path and every
// path carries exactly one cut edge.
struct MengerResult {
  PathFamily family;
  Cut cut;
  std::map<int, EdgeId> lies_on;  // path index -> its cut edge
};

inline bool verify_lies_on(const PathFamily& family, const std::set<EdgeId>& cut_edges) {
  if (family.size() != cut_edges.size()) return false;
  std::set<EdgeId> seen;
  for (const Path& p : family.paths) {
    int hits = 0;
    for (EdgeId e : p.edges)
      if (cut_edges.count(e)) {
        ++hits;
        if (!seen.insert(e).second) return false;
      }
    if (hits != 1) return false;
  }
  return seen == cut_edges;
}

inline bool verify_lies_on(const PathFamily& family, const Cut& cut) {
  return verify_lies_on(family, cut.edges);
}

namespace detail {

inline void check_terminals(const Multigraph& g, const std::set<VertexId>& a,
                            const std::set<VertexId>& b) {
  if (a.empty() || b.empty()) throw DomainError("empty-terminals", "terminal sets must be nonempty");
  for (VertexId v : a)
    if (b.count(v))
      throw DomainError("terminals-overlap", "terminal sets must be disjoint",
                        Json{{"vertex", v}});
  for (VertexId v : a)
    if (!g.has_vertex(v)) throw DomainError("unknown-vertex", "terminal not in graph");
  for (VertexId v : b)
    if (!g.has_vertex(v)) throw DomainError("unknown-vertex", "terminal not in graph");
}

// Unit-capacity undirected flow model shared by the edge-Menger operations.
struct EdgeFlowModel {
  FlowNet net;
  std::map<VertexId, int> node;
  std::map<EdgeId, int> arc_of_edge;  // forward arc of the edge's pair
  int s = -1, t = -1;

  EdgeFlowModel(const Multigraph& g, const std::set<VertexId>& a, const std::set<VertexId>& b) {
    for (VertexId v : g.vertices()) node[v] = net.add_node();
    s = net.add_node();
    t = net.add_node();
    for (const auto& [id, e] : g.edges()) arc_of_edge[id] = net.add_arc(node[e.u], node[e.v], 1, 1);
    long long big = static_cast<long long>(g.edge_count()) + 1;
    for (VertexId v : a) net.add_arc(s, node[v], big);
    for (VertexId v : b) net.add_arc(node[v], t, big);
  }

  // Net orientation of an edge after max_flow: +1 = u->v, -1 = v->u, 0 unused.
  int orientation(EdgeId e) const {
    long long f = 1 - net.residual(arc_of_edge.at(e));
    return static_cast<int>(f);
  }
};

// Splits a flow into edge-disjoint simple walks from A to B, dropping flow
// cycles, then trims each walk to its last-A .. first-B segment so that the
// result meets A and B only at its endpoints.
inline std::vector<Path> decompose_paths(const Multigraph& g, const EdgeFlowModel& model,
                                         const std::set<VertexId>& a, const std::set<VertexId>& b,
                                         long long value) {
  // out_pool[v]: unused flow edges oriented out of v, ascending EdgeId.
  std::map<VertexId, std::vector<std::pair<EdgeId, VertexId>>> out_pool;
  for (const auto& [id, e] : g.edges()) {
    int o = model.orientation(id);
    if (o == 1) out_pool[e.u].push_back({id, e.v});
    else if (o == -1) out_pool[e.v].push_back({id, e.u});
  }
  std::map<VertexId, long long> source_units, sink_units;
  for (VertexId v : a) {
    int nv = model.node.at(v);
    for (int arc : model.net.arcs_from(model.s))
      if (model.net.head(arc) == nv) {
        long long big = g.edge_count() + 1;
        source_units[v] += model.net.net_flow(arc, big);
      }
  }
  for (VertexId v : b) {
    int nv = model.node.at(v);
    for (int arc : model.net.arcs_from(nv))
      if (model.net.head(arc) == model.t) {
        long long big = g.edge_count() + 1;
        sink_units[v] += model.net.net_flow(arc, big);
      }
  }

  std::vector<Path> out;
  for (VertexId start : a) {
    while (source_units[start] > 0) {
      --source_units[start];
      Path walk;
      walk.vertices.push_back(start);
      std::map<VertexId, int> pos{{start, 0}};
      VertexId cur = start;
      while (true) {
        if (b.count(cur) && sink_units[cur] > 0) {
          --sink_units[cur];
          break;
        }
        auto& pool = out_pool[cur];
        require(!pool.empty(), "flow conservation violated during path decomposition");
        auto [eid, nxt] = pool.front();
        pool.erase(pool.begin());
        auto it = pos.find(nxt);
        if (it != pos.end()) {
          // Excise the flow cycle; its edges are discarded.
          int keep = it->second;
          while (static_cast<int>(walk.vertices.size()) > keep + 1) {
            pos.erase(walk.vertices.back());
            walk.vertices.pop_back();
            walk.edges.pop_back();
          }
        } else {
          walk.vertices.push_back(nxt);
          walk.edges.push_back(eid);
          pos[nxt] = static_cast<int>(walk.vertices.size()) - 1;
        }
        cur = nxt;
      }
      // Trim to the last A vertex before the first B vertex.
      int first_b = -1;
      for (std::size_t i = 0; i < walk.vertices.size(); ++i)
        if (b.count(walk.vertices[i])) {
          first_b = static_cast<int>(i);
          break;
        }
      require(first_b >= 0, "walk must reach B");
      int last_a = -1;
      for (int i = 0; i <= first_b; ++i)
        if (a.count(walk.vertices[i])) last_a = i;
      require(last_a >= 0, "walk must leave from A");
      Path p;
      p.vertices.assign(walk.vertices.begin() + last_a, walk.vertices.begin() + first_b + 1);
      p.edges.assign(walk.edges.begin() + last_a, walk.edges.begin() + first_b);
      out.push_back(std::move(p));
    }
  }
  require(static_cast<long long>(out.size()) == value, "path count must equal the flow value");
  return out;
}

inline std::set<VertexId> residual_side(const Multigraph& g, const EdgeFlowModel& model) {
  auto reach = model.net.residual_reachable(model.s);
  std::set<VertexId> x;
  for (const auto& [v, n] : model.node)
    if (reach[n]) x.insert(v);
  return x;
}

inline bool connects(const Multigraph& g, const std::set<VertexId>& a, const std::set<VertexId>& b,
                     const std::set<EdgeId>& removed) {
  std::set<VertexId> seen;
  std::queue<VertexId> q;
  for (VertexId v : a)
    if (g.has_vertex(v) && seen.insert(v).second) q.push(v);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    if (b.count(u)) return true;
    for (EdgeId e : g.incident(u)) {
      if (removed.count(e)) continue;
      VertexId w = g.other_end(e, u);
      if (seen.insert(w).second) q.push(w);
    }
  }
  return false;
}

}  // namespace detail

// Plain max-flow value between vertex sets; `limit` allows early exit when
// only "at least K" matters.
inline int max_flow_value(const Multigraph& g, const std::set<VertexId>& a,
                          const std::set<VertexId>& b,
                          long long limit = std::numeric_limits<long long>::max()) {
  detail::check_terminals(g, a, b);
  detail::EdgeFlowModel model(g, a, b);
  return static_cast<int>(model.net.max_flow(model.s, model.t, limit));
}

inline MengerResult max_edge_disjoint_paths(const Multigraph& g, const std::set<VertexId>& a,
                                            const std::set<VertexId>& b) {
  detail::check_terminals(g, a, b);
  detail::EdgeFlowModel model(g, a, b);
  long long value = model.net.max_flow(model.s, model.t);
  MengerResult out;
  out.family.paths = detail::decompose_paths(g, model, a, b, value);
  out.cut.side = detail::residual_side(g, model);
  out.cut = delta(g, out.cut.side);
  require(static_cast<long long>(out.cut.edges.size()) == value,
          "cut size must equal the flow value");
  for (std::size_t i = 0; i < out.family.paths.size(); ++i) {
    EdgeId hit = -1;
    int count = 0;
    for (EdgeId e : out.family.paths[i].edges)
      if (out.cut.edges.count(e)) {
        hit = e;
        ++count;
      }
    require(count == 1, "every path must carry exactly one cut edge");
    out.lies_on[static_cast<int>(i)] = hit;
  }
  require(verify_lies_on(out.family, out.cut), "cut must lie on the family");
  return out;
}

// Minimum A-B edge cut as delta(X), X source-side-minimal. Minimality is
// re-verified edge by edge: dropping any cut edge reconnects A to B.
inline Cut min_edge_cut(const Multigraph& g, const std::set<VertexId>& a,
                        const std::set<VertexId>& b) {
  detail::check_terminals(g, a, b);
  detail::EdgeFlowModel model(g, a, b);
  long long value = model.net.max_flow(model.s, model.t);
  Cut cut = delta(g, detail::residual_side(g, model));
  require(static_cast<long long>(cut.edges.size()) == value, "min cut size must equal max flow");
  require(!detail::connects(g, a, b, cut.edges), "cut must separate A from B");
  for (EdgeId e : cut.edges) {
    std::set<EdgeId> removed = cut.edges;
    removed.erase(e);
    require(detail::connects(g, a, b, removed), "cut must be minimal");
  }
  return cut;
}

// lambda(t, T \ {t}): minimum size of a cut separating t from the other
// terminals.
inline int lambda_terminal(const Multigraph& g, VertexId t, const std::set<VertexId>& terminals) {
  if (!terminals.count(t)) throw DomainError("not-a-terminal", "t must belong to T");
  if (terminals.size() < 2) throw DomainError("too-few-terminals", "|T| must be at least 2");
  std::set<VertexId> rest = terminals;
  rest.erase(t);
  return max_flow_value(g, {t}, rest);
}

// Independent route for the same quantities: clique blow-up, vertex-disjoint
// Menger on the blown-up graph (by vertex splitting), clique-visit
// normalisation, and contraction back.
inline MengerResult blowup_cross_check(const Multigraph& g, const std::set<VertexId>& a,
                                       const std::set<VertexId>& b) {
  detail::check_terminals(g, a, b);
  BlowupResult blow = clique_blowup(g);

  detail::FlowNet net;
  std::map<VertexId, int> node_in, node_out;
  for (VertexId w : blow.graph.vertices()) {
    node_in[w] = net.add_node();
    node_out[w] = net.add_node();
  }
  int s = net.add_node(), t = net.add_node();
  // Vertex capacities carry the whole cut structure: split arcs get capacity
  // one, every other arc is effectively infinite, so the residual boundary
  // crosses split arcs only.
  long long big = static_cast<long long>(blow.graph.vertex_count()) + 1;
  std::map<VertexId, int> split_arc;
  for (VertexId w : blow.graph.vertices()) split_arc[w] = net.add_arc(node_in[w], node_out[w], 1);
  // arc index -> (from,to) in blown vertices, for path walking.
  std::map<int, std::pair<VertexId, VertexId>> arc_edge;
  std::map<int, EdgeId> arc_blown_edge;
  for (const auto& [id, e] : blow.graph.edges()) {
    int f = net.add_arc(node_out[e.u], node_in[e.v], big);
    arc_edge[f] = {e.u, e.v};
    arc_blown_edge[f] = id;
    int r = net.add_arc(node_out[e.v], node_in[e.u], big);
    arc_edge[r] = {e.v, e.u};
    arc_blown_edge[r] = id;
  }
  std::set<VertexId> blown_a, blown_b;
  for (VertexId v : a)
    for (VertexId w : blow.clique[v]) blown_a.insert(w);
  for (VertexId v : b)
    for (VertexId w : blow.clique[v]) blown_b.insert(w);
  for (VertexId w : blown_a) net.add_arc(s, node_in[w], big);
  for (VertexId w : blown_b) net.add_arc(node_out[w], t, big);

  long long value = net.max_flow(s, t);

  // Walk out the vertex-disjoint paths (split capacities make them simple).
  std::map<int, long long> used;  // arc -> consumed units
  auto arc_flow = [&](int arc) { return big - net.residual(arc) - used[arc]; };
  auto ends_here = [&](VertexId w) {
    if (!blown_b.count(w)) return false;
    for (int arc : net.arcs_from(node_out[w]))
      if (net.head(arc) == t && big - net.residual(arc) > 0) return true;
    return false;
  };
  std::vector<std::vector<VertexId>> blown_paths;
  std::vector<std::vector<EdgeId>> blown_path_edges;
  for (VertexId start : blown_a) {
    // One unit at most leaves each source vertex.
    bool active = false;
    for (int arc : net.arcs_from(s))
      if (net.head(arc) == node_in[start] && big - net.residual(arc) > 0) active = true;
    if (!active) continue;
    std::vector<VertexId> pv{start};
    std::vector<EdgeId> pe;
    VertexId cur = start;
    while (!ends_here(cur)) {
      bool advanced = false;
      for (int arc : net.arcs_from(node_out[cur])) {
        if (!arc_edge.count(arc)) continue;
        if (arc_flow(arc) > 0) {
          used[arc] += 1;
          pe.push_back(arc_blown_edge[arc]);
          cur = arc_edge[arc].second;
          pv.push_back(cur);
          advanced = true;
          break;
        }
      }
      require(advanced, "blow-up flow walk must advance");
    }
    blown_paths.push_back(std::move(pv));
    blown_path_edges.push_back(std::move(pe));
  }
  require(static_cast<long long>(blown_paths.size()) == value,
          "blow-up path count must equal the flow value");

  // Normalise so each path meets each clique in at most two (consecutive)
  // vertices, shortcutting through intra-clique edges.
  for (std::size_t k = 0; k < blown_paths.size(); ++k) {
    auto& pv = blown_paths[k];
    auto& pe = blown_path_edges[k];
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<VertexId, int> first_pos;
      for (int i = 0; i < static_cast<int>(pv.size()); ++i) {
        VertexId origin = blow.origin[pv[i]];
        auto it = first_pos.find(origin);
        if (it != first_pos.end() && i > it->second + 1) {
          EdgeId shortcut = -1;
          for (EdgeId e : blow.graph.incident(pv[it->second]))
            if (blow.graph.other_end(e, pv[it->second]) == pv[i]) {
              shortcut = e;
              break;
            }
          require(shortcut >= 0, "clique shortcut edge must exist");
          pv.erase(pv.begin() + it->second + 1, pv.begin() + i);
          pe.erase(pe.begin() + it->second, pe.begin() + i);
          pe.insert(pe.begin() + it->second, shortcut);
          changed = true;
          break;
        }
        if (it == first_pos.end()) first_pos[origin] = i;
      }
    }
  }

  // Contract the cliques back to their original vertices.
  MengerResult out;
  for (std::size_t k = 0; k < blown_paths.size(); ++k) {
    Path p;
    const auto& pv = blown_paths[k];
    const auto& pe = blown_path_edges[k];
    p.vertices.push_back(blow.origin[pv[0]]);
    for (std::size_t i = 0; i < pe.size(); ++i) {
      VertexId next_origin = blow.origin[pv[i + 1]];
      if (next_origin == p.vertices.back()) continue;  // intra-clique step
      auto it = blow.original_of.find(pe[i]);
      require(it != blow.original_of.end(), "inter-clique step must be an old edge");
      p.edges.push_back(it->second);
      p.vertices.push_back(next_origin);
    }
    // Trim to the last A vertex before the first B vertex.
    int first_b = -1;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      if (b.count(p.vertices[i])) {
        first_b = static_cast<int>(i);
        break;
      }
    require(first_b >= 0, "contracted path must reach B");
    int last_a = -1;
    for (int i = 0; i <= first_b; ++i)
      if (a.count(p.vertices[i])) last_a = i;
    require(last_a >= 0, "contracted path must start in A");
    Path q;
    q.vertices.assign(p.vertices.begin() + last_a, p.vertices.begin() + first_b + 1);
    q.edges.assign(p.edges.begin() + last_a, p.edges.begin() + first_b);
    require(is_valid_path(g, q), "contracted path must be a simple path in G");
    out.family.paths.push_back(std::move(q));
  }

  // Separator: saturated split arcs on the residual boundary, mapped through
  // the old-edge bijection.
  auto reach = net.residual_reachable(s);
  std::set<EdgeId> f;
  std::map<VertexId, EdgeId> old_at;  // blown vertex -> original edge of its old edge
  for (const auto& [old_edge, orig] : blow.original_of) {
    EdgeEnds e = blow.graph.ends(old_edge);
    old_at[e.u] = orig;
    old_at[e.v] = orig;
  }
  int separator_size = 0;
  for (VertexId w : blow.graph.vertices()) {
    if (reach[node_in[w]] && !reach[node_out[w]]) {
      ++separator_size;
      auto it = old_at.find(w);
      require(it != old_at.end(), "separator vertex must carry an old edge");
      f.insert(it->second);
    }
  }
  require(separator_size == static_cast<int>(value), "separator size must equal the flow value");
  require(static_cast<int>(f.size()) == separator_size, "old-edge map must be injective on the separator");

  // Recover the witnessing bipartition: components of G minus F that meet A.
  std::set<VertexId> x;
  for (VertexId v : a) {
    if (x.count(v)) continue;
    std::queue<VertexId> q;
    q.push(v);
    x.insert(v);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (EdgeId e : g.incident(u)) {
        if (f.count(e)) continue;
        VertexId w = g.other_end(e, u);
        if (x.insert(w).second) q.push(w);
      }
    }
  }
  out.cut = delta(g, x);
  require(out.cut.edges == f, "separator must equal delta of the recovered side");
  for (std::size_t i = 0; i < out.family.paths.size(); ++i) {
    EdgeId hit = -1;
    int count = 0;
    for (EdgeId e : out.family.paths[i].edges)
      if (f.count(e)) {
        hit = e;
        ++count;
      }
    require(count == 1, "every contracted path must carry exactly one separator edge");
    out.lies_on[static_cast<int>(i)] = hit;
  }
  return out;
}

}  // namespace edgeends
