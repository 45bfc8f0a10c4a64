#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "edgeends/extended.hpp"
#include "edgeends/flow.hpp"

namespace edgeends {

namespace detail {

// Flow window over one strand: nodes are (pattern vertex, relative layer)
// for layers 0..height. Intra edges exist at layers 0..height-1 and inter
// edges cross every boundary; the crossings into the top layer are directed
// upward so any path visits the top exactly once, at its end.
struct StrandWindow {
  const Presentation* p = nullptr;
  const Strand* strand = nullptr;
  int height = 0;
  FlowNet net;
  std::map<std::pair<int, int>, int> node;  // (pat, rel layer) -> node
  int source = -1, sink = -1;
  struct ArcInfo {
    bool intra;
    int edge_index;
    int lower_layer;  // relative
    int from_pat, to_pat;
    int from_layer, to_layer;
  };
  std::map<int, ArcInfo> arcs;  // forward arc index -> info
  std::map<int, long long> caps;

  // `floor` is the absolute layer of relative layer 0; `blocked` instances
  // (absolute layers) are left out of the window.
  StrandWindow(const Presentation& pres, const Strand& s, int h, int floor = 0,
               const std::set<PEdge>* blocked = nullptr)
      : p(&pres), strand(&s), height(h) {
    for (int layer = 0; layer <= h; ++layer)
      for (int pat : s.pat_vertices) node[{pat, layer}] = net.add_node();
    source = net.add_node();
    sink = net.add_node();
    const ArmPattern& arm = pres.arms[s.arm];
    auto is_blocked = [&](bool intra, int index, int rel_layer) {
      if (!blocked) return false;
      return blocked->count(PEdge{intra ? PEdgeKind::Intra : PEdgeKind::Inter, s.arm, index,
                                  floor + rel_layer}) > 0;
    };
    for (int layer = 0; layer < h; ++layer) {
      for (std::size_t i = 0; i < arm.intra.size(); ++i) {
        auto [u, v] = arm.intra[i];
        if (!s.contains(u)) continue;
        if (is_blocked(true, static_cast<int>(i), layer)) continue;
        int a = net.add_arc(node[{u, layer}], node[{v, layer}], 1, 1);
        arcs[a] = {true, static_cast<int>(i), layer, u, v, layer, layer};
        caps[a] = 1;
      }
      for (std::size_t i = 0; i < arm.inter.size(); ++i) {
        auto [u, v] = arm.inter[i];
        if (!s.contains(u)) continue;
        if (is_blocked(false, static_cast<int>(i), layer)) continue;
        bool top = (layer + 1 == h);
        int a = net.add_arc(node[{u, layer}], node[{v, layer + 1}], 1, top ? 0 : 1);
        arcs[a] = {false, static_cast<int>(i), layer, u, v, layer, layer + 1};
        caps[a] = 1;
      }
    }
  }

  void add_sources(const std::map<int, int>& mult) {
    for (auto [pat, m] : mult)
      if (m > 0) net.add_arc(source, node.at({pat, 0}), m);
  }
  void add_sinks(const std::map<int, int>& mult) {
    for (auto [pat, m] : mult)
      if (m > 0) net.add_arc(node.at({pat, height}), sink, m);
  }
  void add_sinks_anywhere_top(long long m) {
    for (int pat : strand->pat_vertices) net.add_arc(node.at({pat, height}), sink, m);
  }

  // Paths as step sequences after max_flow; flow cycles are discarded.
  struct Step {
    RayStep ray;     // schedule step (vertex, incr, kind, edge index)
    int from_layer;  // relative layer before the step
  };
  struct WindowPath {
    int start_pat;
    std::vector<Step> steps;
    int end_pat() const { return steps.empty() ? start_pat : steps.back().ray.vertex; }
    int end_layer() const {
      int l = 0;
      for (const Step& s : steps) l += s.ray.layer_incr;
      return l;
    }
  };

  std::vector<WindowPath> decompose(long long value) {
    // net orientation of each undirected window edge
    std::map<std::pair<int, int>, std::vector<std::pair<int, const ArcInfo*>>> out_pool;
    for (const auto& [a, info] : arcs) {
      long long f = caps[a] - net.residual(a);
      if (f > 0)
        out_pool[{info.from_pat, info.from_layer}].push_back({a, &info});
      else if (f < 0)
        out_pool[{info.to_pat, info.to_layer}].push_back({a, &info});
    }
    std::map<std::pair<int, int>, long long> src_units, snk_units;
    for (int arc : net.arcs_from(source)) {
      // paired reverse arc holds the pushed amount
      long long pushed = net.residual(arc ^ 1);
      if (pushed > 0) {
        for (const auto& [key, n] : node)
          if (n == net.head(arc)) src_units[key] += pushed;
      }
    }
    for (const auto& [key, n] : node) {
      for (int arc : net.arcs_from(n)) {
        if (net.head(arc) == sink) {
          long long pushed = net.residual(arc ^ 1);
          if (pushed > 0) snk_units[key] += pushed;
        }
      }
    }
    std::vector<WindowPath> out;
    for (auto& [key, units] : src_units) {
      while (units > 0) {
        --units;
        WindowPath wp;
        wp.start_pat = key.first;
        std::pair<int, int> cur = key;
        std::vector<std::pair<int, int>> visited{cur};
        while (true) {
          if (snk_units[cur] > 0 && cur.second == height) {
            --snk_units[cur];
            break;
          }
          auto& pool = out_pool[cur];
          require(!pool.empty(), "window flow conservation violated");
          auto [a, info] = pool.front();
          pool.erase(pool.begin());
          bool forward = (cur.first == info->from_pat && cur.second == info->from_layer);
          std::pair<int, int> nxt = forward ? std::pair<int, int>{info->to_pat, info->to_layer}
                                            : std::pair<int, int>{info->from_pat, info->from_layer};
          RayStep rs;
          rs.vertex = nxt.first;
          rs.layer_incr = nxt.second - cur.second;
          rs.intra = info->intra;
          rs.edge_index = info->edge_index;
          // excise flow cycles
          auto it = std::find(visited.begin(), visited.end(), nxt);
          if (it != visited.end()) {
            int keep = static_cast<int>(it - visited.begin());
            visited.resize(keep + 1);
            wp.steps.resize(keep);
          } else {
            visited.push_back(nxt);
            wp.steps.push_back({rs, cur.second});
          }
          cur = nxt;
        }
        out.push_back(std::move(wp));
      }
    }
    require(static_cast<long long>(out.size()) == value, "window path count must match the flow");
    return out;
  }
};

}  // namespace detail

}  // namespace edgeends
