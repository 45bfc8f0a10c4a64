#pragma once

#include <map>
#include <set>
#include <vector>

#include "edgeends/menger.hpp"
#include "edgeends/multigraph.hpp"

namespace edgeends {

inline bool is_inner_eulerian(const Multigraph& g, const std::set<VertexId>& terminals) {
  for (VertexId v : g.vertices())
    if (!terminals.count(v) && g.degree(v) % 2 != 0) return false;
  return true;
}

struct ParityCheck {
  bool ok = true;
  std::set<VertexId> violating;  // an X with T subset of X and |delta(X)| odd
};

// Exhaustive parity check: every X with T within X has even |delta(X)|.
// Refuses (rather than samples) when the enumeration would exceed `bound`
// free vertices.
inline ParityCheck check_parity_condition(const Multigraph& g, const std::set<VertexId>& terminals,
                                          int bound = 20) {
  if (terminals.size() < 2) throw DomainError("too-few-terminals", "|T| must be at least 2");
  for (VertexId t : terminals)
    if (!g.has_vertex(t)) throw DomainError("unknown-vertex", "terminal not in graph");
  std::vector<VertexId> free;
  for (VertexId v : g.vertices())
    if (!terminals.count(v)) free.push_back(v);
  if (static_cast<int>(free.size()) > bound)
    throw DomainError("enumeration-bound",
                      "parity enumeration exceeds the configured bound",
                      Json{{"free_vertices", free.size()}, {"bound", bound}});
  std::size_t n = free.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<VertexId> x(terminals.begin(), terminals.end());
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) x.insert(free[i]);
    if (delta(g, x).edges.size() % 2 != 0) return {false, x};
  }
  return {true, {}};
}

struct SplitResult {
  Multigraph graph;
  EdgeLineage lineage;  // the new edge, when one was created
  EdgeId new_edge = -1;
  bool dropped = false;  // u == w: the pair became a loop and vanished
};

// Splitting-off: replace e = uv, f = vw by the single edge uw.
inline SplitResult split_off(const Multigraph& g, VertexId v, EdgeId e, EdgeId f) {
  if (e == f) throw DomainError("same-edge", "split requires two distinct edges");
  if (!g.has_edge(e) || !g.has_edge(f)) throw DomainError("missing-edge", "unknown edge id");
  if (!g.incident_to(e, v) || !g.incident_to(f, v))
    throw DomainError("not-incident", "both edges must be incident to the split vertex");
  VertexId u = g.other_end(e, v), w = g.other_end(f, v);
  SplitResult out;
  out.graph = g;
  out.graph.remove_edge(e);
  out.graph.remove_edge(f);
  if (u == w) {
    out.dropped = true;
    return out;
  }
  out.new_edge = out.graph.next_edge_id();
  out.graph.add_edge_with_id(out.new_edge, u, w);
  out.lineage[out.new_edge] = LineageEntry{u, w, {e, f}};
  return out;
}

struct PackingResult {
  PathFamily family;
  std::map<VertexId, Cut> per_terminal_cuts;
  std::map<VertexId, int> lambda;  // lambda(t, T \ {t}) on the input graph
};

namespace detail {

// Oriented expansion of an edge of the working graph into original edges.
struct TWalk {
  VertexId from, to;
  std::vector<EdgeId> edges;
};

inline TWalk oriented(const std::map<EdgeId, TWalk>& expansion, const Multigraph& original,
                      EdgeId e, VertexId from) {
  auto it = expansion.find(e);
  TWalk w;
  if (it == expansion.end()) {
    EdgeEnds p = original.ends(e);
    w = TWalk{p.u, p.v, {e}};
  } else {
    w = it->second;
  }
  if (w.from != from) {
    require(w.to == from, "lineage walk endpoints out of sync");
    std::reverse(w.edges.begin(), w.edges.end());
    std::swap(w.from, w.to);
  }
  return w;
}

}  // namespace detail

// Finite Lovász-Cherkassky packing. Repeated splitting-off at inner vertices,
// lexicographic over (v, e, f); a split is admissible iff it preserves
// lambda(s, T \ {s}) for every terminal s, re-verified by flow after each
// candidate. Surviving terminal-terminal edges unfold through lineage into
// the T-path family.
inline PackingResult pack_tpaths(const Multigraph& g, const std::set<VertexId>& terminals) {
  if (terminals.size() < 2) throw DomainError("too-few-terminals", "|T| must be at least 2");
  for (VertexId t : terminals)
    if (!g.has_vertex(t)) throw DomainError("unknown-vertex", "terminal not in graph");
  for (VertexId v : g.vertices()) {
    if (!terminals.count(v) && g.degree(v) % 2 != 0) {
      // X = V minus {v} contains T and has odd |delta(X)| = deg(v).
      std::set<VertexId> x = g.vertices();
      x.erase(v);
      throw DomainError("parity-violation", "parity condition fails",
                        Json{{"odd_vertex", v}});
    }
  }

  PackingResult out;
  for (VertexId t : terminals) out.lambda[t] = lambda_terminal(g, t, terminals);

  Multigraph work = g;
  std::map<EdgeId, detail::TWalk> expansion;  // derived edge -> original walk

  auto lambdas_preserved = [&](const Multigraph& cand) {
    for (VertexId t : terminals) {
      std::set<VertexId> rest = terminals;
      rest.erase(t);
      if (max_flow_value(cand, {t}, rest, out.lambda[t]) < out.lambda[t]) return false;
    }
    return true;
  };

  while (true) {
    bool any_inner = false;
    bool committed = false;
    for (VertexId v : work.vertices()) {
      if (terminals.count(v) || work.degree(v) == 0) continue;
      any_inner = true;
      auto inc = work.incident(v);
      for (std::size_t i = 0; i < inc.size() && !committed; ++i) {
        for (std::size_t j = i + 1; j < inc.size() && !committed; ++j) {
          SplitResult trial = split_off(work, v, inc[i], inc[j]);
          if (!lambdas_preserved(trial.graph)) continue;
          if (!trial.dropped) {
            // orient the first leg from u to v, the second from v to w
            VertexId u = trial.graph.ends(trial.new_edge).u;
            VertexId w = trial.graph.ends(trial.new_edge).v;
            detail::TWalk a = detail::oriented(expansion, g, inc[i], u);
            require(a.to == v, "first leg must end at the split vertex");
            detail::TWalk bw = detail::oriented(expansion, g, inc[j], v);
            require(bw.to == w, "second leg must end opposite the split vertex");
            detail::TWalk merged{u, w, a.edges};
            merged.edges.insert(merged.edges.end(), bw.edges.begin(), bw.edges.end());
            expansion[trial.new_edge] = merged;
          }
          expansion.erase(inc[i]);
          expansion.erase(inc[j]);
          work = std::move(trial.graph);
          committed = true;
        }
      }
      if (committed) break;
    }
    if (!any_inner) break;
    if (!committed)
      throw InternalError("no admissible split found although the parity condition holds");
  }

  // Unfold the surviving terminal-terminal edges.
  for (const auto& [id, e] : work.edges()) {
    require(terminals.count(e.u) && terminals.count(e.v),
            "after complete splitting every edge joins two terminals");
    detail::TWalk walk = detail::oriented(expansion, g, id, e.u);
    Path wp;
    wp.vertices.push_back(walk.from);
    VertexId cur = walk.from;
    for (EdgeId oe : walk.edges) {
      cur = g.other_end(oe, cur);
      wp.vertices.push_back(cur);
      wp.edges.push_back(oe);
    }
    require(cur == walk.to, "lineage walk must reach its recorded endpoint");
    Path simple = shortcut_walk(wp);
    require(is_valid_path(g, simple), "unfolded walk must shortcut to a simple path");
    require(simple.vertices.size() >= 2, "T-paths have two distinct endpoints");
    for (std::size_t i = 1; i + 1 < simple.vertices.size(); ++i)
      require(!terminals.count(simple.vertices[i]), "T-path interiors avoid T");
    out.family.paths.push_back(std::move(simple));
  }

  // Per-terminal cuts on the input graph; the counting argument makes any
  // minimum cut for t lie on the sub-family P_t.
  long long lambda_sum = 0;
  for (VertexId t : terminals) {
    lambda_sum += out.lambda[t];
    std::set<VertexId> rest = terminals;
    rest.erase(t);
    Cut cut;
    if (out.lambda[t] == 0) {
      // t's side: everything unreachable from the other terminals.
      std::set<VertexId> side;
      for (VertexId v : g.vertices()) {
        if (!detail::connects(g, {v}, rest, {})) side.insert(v);
      }
      cut = delta(g, side);
      require(cut.edges.empty(), "zero lambda must give an empty cut");
    } else {
      cut = min_edge_cut(g, {t}, rest);
    }
    PathFamily sub;
    for (const Path& p : out.family.paths)
      if (p.front() == t || p.back() == t) sub.paths.push_back(p);
    require(static_cast<int>(sub.size()) == out.lambda[t],
            "terminal degree in the packing must equal lambda");
    require(verify_lies_on(sub, cut), "per-terminal cut must lie on its sub-family");
    out.per_terminal_cuts[t] = std::move(cut);
  }
  require(lambda_sum % 2 == 0, "lambda sum must be even under the parity condition");
  require(static_cast<long long>(out.family.size()) * 2 == lambda_sum,
          "packing size must equal half the lambda sum");
  return out;
}

}  // namespace edgeends
