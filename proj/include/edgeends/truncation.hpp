#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "edgeends/presentation.hpp"

namespace edgeends {

// Presentation coordinates of a concrete edge of the presented infinite
// graph. `index` points into the defining list (core edge id, attach entry,
// intra/inter pattern edge, dominating entry); `layer` pins the instance for
// the periodic kinds.
enum class PEdgeKind { Core, Attach, Intra, Inter, Dom };

struct PEdge {
  PEdgeKind kind = PEdgeKind::Core;
  int arm = -1;    // Intra/Inter only
  int index = -1;
  int layer = -1;  // Intra: its layer; Inter: lower layer; Dom: target layer
  auto operator<=>(const PEdge&) const = default;
};

struct VCoord {
  bool is_core = true;
  int core = -1;
  int arm = -1;
  int layer = -1;
  int pat = -1;
  auto operator<=>(const VCoord&) const = default;
};

// Finite truncation of the presented graph: core, layers 0..n of every arm,
// attach edges, intra/inter edges up to layer n, dominating edges into
// layers 0..n. Vertex and edge ids are stable across n, so truncations nest.
struct Truncation {
  Multigraph graph;
  int layers = -1;
  std::map<VertexId, VCoord> coord_of;
  std::map<EdgeId, PEdge> pedge_of;
  std::map<PEdge, EdgeId> edge_of;

  VertexId vertex_id(const Presentation& p, int arm, int layer, int pat) const {
    int core_count = static_cast<int>(p.core_names.size());
    int total = p.total_pattern_size();
    int offset = 0;
    for (int a = 0; a < arm; ++a) offset += static_cast<int>(p.arms[a].vertices.size());
    return core_count + layer * total + offset + pat;
  }
};

inline Truncation truncate(const Presentation& p, int n) {
  if (n < 0) throw DomainError("bad-layer-count", "layer count must be nonnegative");
  Truncation t;
  t.layers = n;
  for (VertexId v : p.core.vertices()) {
    t.graph.add_vertex(v);
    t.coord_of[v] = VCoord{true, v, -1, -1, -1};
  }
  for (int a = 0; a < static_cast<int>(p.arms.size()); ++a)
    for (int layer = 0; layer <= n; ++layer)
      for (int pat = 0; pat < static_cast<int>(p.arms[a].vertices.size()); ++pat) {
        VertexId v = t.vertex_id(p, a, layer, pat);
        t.graph.add_vertex(v);
        t.coord_of[v] = VCoord{false, -1, a, layer, pat};
      }
  auto put = [&](EdgeId id, const PEdge& pe) {
    t.pedge_of[id] = pe;
    t.edge_of[pe] = id;
  };
  for (const auto& [id, e] : p.core.edges()) {
    t.graph.add_edge_with_id(id, e.u, e.v);
    put(id, PEdge{PEdgeKind::Core, -1, id, -1});
  }
  for (std::size_t i = 0; i < p.attach.size(); ++i) {
    const ArmLink& l = p.attach[i];
    EdgeId id = t.graph.add_edge(l.core, t.vertex_id(p, l.arm, 0, l.pat));
    put(id, PEdge{PEdgeKind::Attach, -1, static_cast<int>(i), 0});
  }
  for (int layer = 0; layer <= n; ++layer) {
    for (int a = 0; a < static_cast<int>(p.arms.size()); ++a) {
      const ArmPattern& arm = p.arms[a];
      for (std::size_t i = 0; i < arm.intra.size(); ++i) {
        auto [u, v] = arm.intra[i];
        EdgeId id = t.graph.add_edge(t.vertex_id(p, a, layer, u), t.vertex_id(p, a, layer, v));
        put(id, PEdge{PEdgeKind::Intra, a, static_cast<int>(i), layer});
      }
      if (layer < n)
        for (std::size_t i = 0; i < arm.inter.size(); ++i) {
          auto [u, v] = arm.inter[i];
          EdgeId id =
              t.graph.add_edge(t.vertex_id(p, a, layer, u), t.vertex_id(p, a, layer + 1, v));
          put(id, PEdge{PEdgeKind::Inter, a, static_cast<int>(i), layer});
        }
    }
    for (std::size_t i = 0; i < p.dominating.size(); ++i) {
      const ArmLink& l = p.dominating[i];
      EdgeId id = t.graph.add_edge(l.core, t.vertex_id(p, l.arm, layer, l.pat));
      put(id, PEdge{PEdgeKind::Dom, -1, static_cast<int>(i), layer});
    }
  }
  return t;
}

// Strand vertices in the top `width` layers of a truncation; the flow
// oracle's stand-in for "a tail segment of the strand".
inline std::set<VertexId> tail_band(const Presentation& p, const Truncation& t, const Strand& s,
                                    int width) {
  std::set<VertexId> out;
  for (int layer = std::max(0, t.layers - width + 1); layer <= t.layers; ++layer)
    for (int pat : s.pat_vertices) out.insert(t.vertex_id(p, s.arm, layer, pat));
  return out;
}

// Components of one strand's region beyond a boundary layer, computed on a
// stabilised finite window. `infinite` comps continue forever; finite ones
// are boundary pockets. Stubs are the inter-edge instances crossing the
// boundary, keyed by inter index.
struct TailComps {
  int strand = -1;
  int boundary = -1;
  int window = -1;
  int stable_band = -1;  // top layers of the window carrying the periodic part
  struct Comp {
    std::set<std::pair<int, int>> members;  // (pat, layer), boundary < layer <= boundary+window
    bool infinite = false;
    std::vector<int> stubs;  // inter indices whose upper endpoint lies here

    bool contains(int pat, int layer) const { return members.count({pat, layer}) > 0; }
  };
  std::vector<Comp> comps;

  int comp_of(int pat, int layer) const {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i].contains(pat, layer)) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline std::vector<TailComps::Comp> window_comps(const Presentation& p, const Strand& s,
                                                 int boundary, int window) {
  const ArmPattern& arm = p.arms[s.arm];
  std::map<std::pair<int, int>, int> node;
  std::vector<std::pair<int, int>> order;
  for (int layer = boundary + 1; layer <= boundary + window; ++layer)
    for (int pat : s.pat_vertices) {
      node[{pat, layer}] = static_cast<int>(order.size());
      order.push_back({pat, layer});
    }
  UnionFind uf(static_cast<int>(order.size()));
  for (int layer = boundary + 1; layer <= boundary + window; ++layer) {
    for (auto [u, v] : arm.intra)
      if (s.contains(u)) uf.merge(node[{u, layer}], node[{v, layer}]);
    if (layer < boundary + window)
      for (auto [u, v] : arm.inter)
        if (s.contains(u)) uf.merge(node[{u, layer}], node[{v, layer + 1}]);
  }
  std::map<int, TailComps::Comp> grouped;
  for (std::size_t i = 0; i < order.size(); ++i)
    grouped[uf.find(static_cast<int>(i))].members.insert(order[i]);
  std::vector<TailComps::Comp> out;
  for (auto& [root, comp] : grouped) {
    (void)root;
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const TailComps::Comp& a, const TailComps::Comp& b) {
    return *a.members.begin() < *b.members.begin();
  });
  return out;
}

}  // namespace detail

inline TailComps tail_components(const Presentation& p, const std::vector<Strand>& strand_list,
                                 int strand_id, int boundary) {
  const Strand& s = strand_list[strand_id];
  int b = static_cast<int>(s.pat_vertices.size());
  int window = 6 * b + 6;
  auto comps = detail::window_comps(p, s, boundary, window);
  auto comps2 = detail::window_comps(p, s, boundary, window + 2 * b + 2);

  // Stability trap: both windows must agree near the boundary.
  auto signature = [&](const std::vector<TailComps::Comp>& cs) {
    std::vector<std::set<std::pair<int, int>>> sig;
    for (const auto& c : cs) {
      std::set<std::pair<int, int>> low;
      for (auto [pat, layer] : c.members)
        if (layer <= boundary + 1 + b) low.insert({pat, layer});
      if (!low.empty()) sig.push_back(std::move(low));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  require(signature(comps) == signature(comps2),
          "tail component structure must stabilise within the window");

  TailComps out;
  out.strand = strand_id;
  out.boundary = boundary;
  out.window = window;
  out.stable_band = 2 * b + 2;
  out.comps = std::move(comps);
  for (auto& comp : out.comps) {
    comp.infinite = false;
    for (auto [pat, layer] : comp.members)
      if (layer > boundary + window - out.stable_band) comp.infinite = true;
  }
  const ArmPattern& arm = p.arms[s.arm];
  for (std::size_t i = 0; i < arm.inter.size(); ++i) {
    auto [u, v] = arm.inter[i];
    if (!s.contains(u)) continue;
    int c = out.comp_of(v, boundary + 1);
    require(c >= 0, "stub upper endpoint must lie in a tail component");
    out.comps[c].stubs.push_back(static_cast<int>(i));
  }
  return out;
}

// Whether a dominating column into pattern vertex `pat` meets the component
// infinitely often (it does iff the component is infinite and contains the
// column in its stable band).
inline bool column_hits_infinitely(const TailComps& tc, int comp, int pat) {
  const auto& c = tc.comps[comp];
  if (!c.infinite) return false;
  for (auto [q, layer] : c.members)
    if (q == pat && layer > tc.boundary + tc.window - tc.stable_band) return true;
  return false;
}

// Concrete layers (beyond the boundary, within the window) at which a column
// meets a finite pocket component.
inline std::vector<int> column_pocket_layers(const TailComps& tc, int comp, int pat) {
  std::vector<int> out;
  const auto& c = tc.comps[comp];
  if (c.infinite) return out;
  for (auto [q, layer] : c.members)
    if (q == pat) out.push_back(layer);
  return out;
}

}  // namespace edgeends
