#pragma once

// Test-side helpers and independent brute-force oracles. The oracles stay
// deliberately dumb (subset enumeration, exhaustive packing search) so they
// share no code path with the flow-based implementations they check.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "edgeends/multigraph.hpp"

namespace test_support {

using edgeends::EdgeId;
using edgeends::Multigraph;
using edgeends::Path;
using edgeends::VertexId;

inline Multigraph graph_from(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  Multigraph g;
  for (int i = 0; i < vertex_count; ++i) g.add_vertex(i);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Multigraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return graph_from(n, edges);
}

inline Multigraph star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return graph_from(leaves + 1, edges);
}

inline Multigraph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return graph_from(n, edges);
}

inline bool separated(const Multigraph& g, const std::set<VertexId>& a,
                      const std::set<VertexId>& b, const std::set<EdgeId>& removed) {
  std::set<VertexId> seen;
  std::vector<VertexId> stack(a.begin(), a.end());
  seen.insert(a.begin(), a.end());
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    if (b.count(u)) return false;
    for (EdgeId e : g.incident(u)) {
      if (removed.count(e)) continue;
      VertexId w = g.other_end(e, u);
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return true;
}

// Brute-force minimum A-B edge cut by subset enumeration in increasing size.
inline int brute_min_cut_size(const Multigraph& g, const std::set<VertexId>& a,
                              const std::set<VertexId>& b) {
  std::vector<EdgeId> all;
  for (const auto& [id, e] : g.edges()) {
    (void)e;
    all.push_back(id);
  }
  int m = static_cast<int>(all.size());
  for (int k = 0; k <= m; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      std::set<EdgeId> removed;
      for (int i : comb) removed.insert(all[i]);
      if (separated(g, a, b, removed)) return k;
      int i = k - 1;
      while (i >= 0 && comb[i] == m - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (k == 0 && separated(g, a, b, {})) return 0;
  }
  return m;
}

// All simple A-B paths whose interior avoids A and B.
inline void all_ab_paths(const Multigraph& g, const std::set<VertexId>& a,
                         const std::set<VertexId>& b, std::vector<Path>& out) {
  Path cur;
  std::set<VertexId> used;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (b.count(v)) {
      out.push_back(cur);
      return;
    }
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.other_end(e, v);
      if (used.count(w)) continue;
      if (a.count(w)) continue;
      used.insert(w);
      cur.vertices.push_back(w);
      cur.edges.push_back(e);
      self(self, w);
      cur.vertices.pop_back();
      cur.edges.pop_back();
      used.erase(w);
    }
  };
  for (VertexId s : a) {
    cur.vertices = {s};
    cur.edges = {};
    used = {s};
    dfs(dfs, s);
  }
}

// Exhaustive maximum edge-disjoint packing of a path list.
inline int max_disjoint_packing(const std::vector<Path>& paths, std::size_t idx = 0,
                                std::set<EdgeId> used = {}) {
  int best = 0;
  for (std::size_t i = idx; i < paths.size(); ++i) {
    bool free = true;
    for (EdgeId e : paths[i].edges)
      if (used.count(e)) {
        free = false;
        break;
      }
    if (!free) continue;
    auto next = used;
    for (EdgeId e : paths[i].edges) next.insert(e);
    best = std::max(best, 1 + max_disjoint_packing(paths, i + 1, std::move(next)));
  }
  return best;
}

inline int brute_max_family(const Multigraph& g, const std::set<VertexId>& a,
                            const std::set<VertexId>& b) {
  std::vector<Path> paths;
  all_ab_paths(g, a, b, paths);
  return max_disjoint_packing(paths);
}

// All simple T-paths: endpoints two distinct terminals, interior outside T.
inline std::vector<Path> all_tpaths(const Multigraph& g, const std::set<VertexId>& terminals) {
  std::vector<Path> out;
  Path cur;
  std::set<VertexId> used;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.other_end(e, v);
      if (terminals.count(w)) {
        // record each path once: by endpoint order
        if (w != cur.vertices.front() && cur.vertices.front() < w) {
          Path p = cur;
          p.vertices.push_back(w);
          p.edges.push_back(e);
          out.push_back(p);
        }
        if (w == cur.vertices.front()) continue;
        continue;
      }
      if (used.count(w)) continue;
      used.insert(w);
      cur.vertices.push_back(w);
      cur.edges.push_back(e);
      self(self, w);
      cur.vertices.pop_back();
      cur.edges.pop_back();
      used.erase(w);
    }
  };
  for (VertexId t : terminals) {
    cur.vertices = {t};
    cur.edges = {};
    used = {t};
    dfs(dfs, t);
  }
  // Remove duplicates produced by parallel edges traversed in either
  // direction: identity is the edge sequence as a set plus endpoints.
  std::set<std::vector<EdgeId>> seen;
  std::vector<Path> dedup;
  for (auto& p : out) {
    std::vector<EdgeId> key = p.edges;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) dedup.push_back(std::move(p));
  }
  return dedup;
}

inline int brute_max_tpath_packing(const Multigraph& g, const std::set<VertexId>& terminals) {
  return max_disjoint_packing(all_tpaths(g, terminals));
}

}  // namespace test_support
