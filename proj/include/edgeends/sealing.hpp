#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "edgeends/truncation.hpp"
#include "edgeends/window.hpp"

namespace edgeends {

namespace detail {

// Periodic ray capacity of one infinite tail component, measured from its
// boundary stubs by a tall-window flow whose value must agree at twice the
// height; the window's minimum cut, pulled to absolute coordinates, is the
// staircase realising that capacity.
struct CompRayCapacity {
  int capacity = 0;
  std::vector<PEdge> staircase;
  std::set<int> carrying_stubs;  // inter indices the capacity flow entered through
};

inline CompRayCapacity comp_ray_capacity(const Presentation& p, const Strand& s,
                                         const TailComps::Comp& comp, int boundary) {
  std::map<int, int> mult;
  for (int idx : comp.stubs) ++mult[p.arms[s.arm].inter[idx].second];
  int m = static_cast<int>(comp.stubs.size());
  int b = static_cast<int>(s.pat_vertices.size());
  int h1 = (b + 1) * (m + 2) + 2;
  auto run = [&](int h) {
    auto win = std::make_unique<StrandWindow>(p, s, h);
    win->add_sources(mult);
    win->add_sinks_anywhere_top(m + b + 2);
    long long v = win->net.max_flow(win->source, win->sink);
    return std::pair<long long, std::unique_ptr<StrandWindow>>(v, std::move(win));
  };
  auto [v1, w1] = run(h1);
  auto [v2, w2] = run(2 * h1);
  require(v1 == v2, "tail component capacity must stabilise across window heights");
  CompRayCapacity out;
  out.capacity = static_cast<int>(v2);
  // The stubs the capacity flow actually used form a canonical carrying set:
  // every sub-multiset of it extends to edge-disjoint rays.
  for (int arc : w2->net.arcs_from(w2->source)) {
    long long pushed = w2->net.residual(arc ^ 1);
    if (pushed <= 0) continue;
    int head = w2->net.head(arc);
    for (const auto& [key, node] : w2->node) {
      if (node != head) continue;
      for (int idx : comp.stubs) {
        if (pushed == 0) break;
        if (p.arms[s.arm].inter[idx].second == key.first &&
            !out.carrying_stubs.count(idx)) {
          out.carrying_stubs.insert(idx);
          --pushed;
        }
      }
    }
  }
  require(static_cast<int>(out.carrying_stubs.size()) == out.capacity,
          "the capacity flow must enter through capacity-many stubs");
  auto reach = w2->net.residual_reachable(w2->source);
  // crossing source arcs stand for the stubs of their entry vertex
  for (int arc : w2->net.arcs_from(w2->source)) {
    int head = w2->net.head(arc);
    if (reach[head]) continue;
    for (const auto& [key, node] : w2->node)
      if (node == head) {
        for (int idx : comp.stubs)
          if (p.arms[s.arm].inter[idx].second == key.first)
            out.staircase.push_back(PEdge{PEdgeKind::Inter, s.arm, idx, boundary});
      }
  }
  for (const auto& [arc, info] : w2->arcs) {
    int head = w2->net.head(arc);
    int tail = w2->net.head(arc ^ 1);
    if (reach[tail] == reach[head]) continue;
    out.staircase.push_back(PEdge{info.intra ? PEdgeKind::Intra : PEdgeKind::Inter, s.arm,
                                  info.edge_index, boundary + 1 + info.lower_layer});
  }
  std::sort(out.staircase.begin(), out.staircase.end());
  require(static_cast<int>(out.staircase.size()) == out.capacity,
          "staircase size must match the component capacity");
  return out;
}

}  // namespace detail

// A truncation with its tails closed off:
//   - every infinite tail component of a terminal class's strand is wired to
//     that class's terminal vertex v_omega through its boundary stubs;
//   - every other infinite component, and every finite boundary pocket, gets
//     its own auxiliary vertex;
//   - dominating columns continue past the boundary as bundles: parallel
//     copies, numerous enough that no minimum cut ever severs one.
// Stub and pocket edges stay concrete (they carry presentation coordinates);
// bundle copies are symbolic.
struct SealedGraph {
  Truncation trunc;
  Multigraph graph;
  int bundle_copies = 0;
  std::map<int, VertexId> class_terminal;              // class id -> v_omega
  std::map<std::pair<int, int>, VertexId> comp_aux;    // (strand, comp) -> aux
  std::map<int, TailComps> tails;                      // strand -> tail comps
  std::map<EdgeId, PEdge> extra_pedge;                 // stubs + pocket column hits
  std::map<PEdge, EdgeId> extra_edge_of;
  std::map<EdgeId, int> bundle_dom;                    // bundle copy -> dominating index
  std::map<VertexId, int> terminal_class_of;           // v_omega -> class id
  std::map<VertexId, std::pair<int, int>> collector_of;  // collector -> (strand, comp)
  std::map<VertexId, std::pair<int, int>> transit_aux_of;  // overflow stubs -> (strand, comp)
  std::map<EdgeId, std::pair<int, int>> collector_edge;  // capacity copy -> (strand, comp)
  std::map<std::pair<int, int>, int> comp_capacity;      // (strand, comp) -> periodic capacity

  std::optional<EdgeId> find_edge(const PEdge& pe) const {
    auto it = trunc.edge_of.find(pe);
    if (it != trunc.edge_of.end()) return it->second;
    auto jt = extra_edge_of.find(pe);
    if (jt != extra_edge_of.end()) return jt->second;
    return std::nullopt;
  }

  // Where a tail component was sealed to.
  VertexId seal_target(int strand, int comp) const {
    auto it = comp_aux.find({strand, comp});
    require(it != comp_aux.end(), "tail component has no seal target");
    return it->second;
  }
};

struct SealOptions {
  std::set<int> terminal_classes;  // wire these classes' infinite comps to v_omega
  int bundle_copies = -1;          // default: finite edge count + 2
};

inline SealedGraph seal_truncation(const Presentation& p, const std::vector<Strand>& strand_list,
                                   const std::vector<EdgeEndClass>& classes, int n,
                                   const SealOptions& opt = {}) {
  SealedGraph out;
  out.trunc = truncate(p, n);
  out.graph = out.trunc.graph;

  std::vector<int> class_of_strand(strand_list.size(), -1);
  for (const EdgeEndClass& c : classes)
    for (int s : c.strands) class_of_strand[s] = c.id;

  VertexId next = 0;
  for (VertexId v : out.graph.vertices()) next = std::max(next, v + 1);

  for (int c : opt.terminal_classes) {
    require(c >= 0 && c < static_cast<int>(classes.size()), "unknown terminal class");
    out.class_terminal[c] = next;
    out.terminal_class_of[next] = c;
    out.graph.add_vertex(next);
    ++next;
  }

  for (int s = 0; s < static_cast<int>(strand_list.size()); ++s) {
    TailComps tc = tail_components(p, strand_list, s, n);
    bool terminal = opt.terminal_classes.count(class_of_strand[s]) > 0;
    for (int ci = 0; ci < static_cast<int>(tc.comps.size()); ++ci) {
      if (terminal && tc.comps[ci].infinite) {
        out.comp_aux[{s, ci}] = out.class_terminal[class_of_strand[s]];
      } else {
        out.comp_aux[{s, ci}] = next;
        out.graph.add_vertex(next);
        ++next;
      }
    }
    out.tails[s] = std::move(tc);
  }

  // Boundary stubs: the inter-edge instances crossing (n, n+1). A terminal
  // class's infinite component whose stubs outnumber its periodic ray
  // capacity is wired through a collector: the stubs meet the collector and
  // exactly `capacity` edges continue to the class terminal, standing for
  // the component's deep staircase cut.
  for (int s = 0; s < static_cast<int>(strand_list.size()); ++s) {
    const Strand& st = strand_list[s];
    const TailComps& tc = out.tails[s];
    bool terminal = opt.terminal_classes.count(class_of_strand[s]) > 0;
    for (int ci = 0; ci < static_cast<int>(tc.comps.size()); ++ci) {
      const auto& comp = tc.comps[ci];
      std::optional<detail::CompRayCapacity> cc;
      VertexId overflow_aux = -1;
      if (terminal && comp.infinite) {
        cc = detail::comp_ray_capacity(p, st, comp, n);
        out.comp_capacity[{s, ci}] = cc->capacity;
        if (cc->capacity < static_cast<int>(comp.stubs.size())) {
          VertexId k = next;
          out.graph.add_vertex(k);
          out.collector_of[k] = {s, ci};
          ++next;
          out.comp_aux[{s, ci}] = k;
          for (int j = 0; j < cc->capacity; ++j) {
            EdgeId id = out.graph.add_edge(k, out.class_terminal[class_of_strand[s]]);
            out.collector_edge[id] = {s, ci};
            out.extra_pedge[id] = cc->staircase[j];
            out.extra_edge_of.emplace(cc->staircase[j], id);
          }
        } else {
          cc.reset();  // every stub carries a ray; wire directly
        }
      }
      for (int inter_idx : comp.stubs) {
        auto [u, v] = p.arms[st.arm].inter[inter_idx];
        (void)v;
        VertexId low = out.trunc.vertex_id(p, st.arm, n, u);
        VertexId target = out.comp_aux[{s, ci}];
        if (cc && !cc->carrying_stubs.count(inter_idx)) {
          // redundant capacity: this stub may carry boundary transits but
          // never a ray into the terminal
          if (overflow_aux < 0) {
            overflow_aux = next;
            out.graph.add_vertex(overflow_aux);
            out.transit_aux_of[overflow_aux] = {s, ci};
            ++next;
          }
          target = overflow_aux;
        }
        EdgeId id = out.graph.add_edge(low, target);
        PEdge pe{PEdgeKind::Inter, st.arm, inter_idx, n};
        out.extra_pedge[id] = pe;
        out.extra_edge_of.emplace(pe, id);
      }
    }
  }

  // Dominating columns past the boundary: bundles into infinite components,
  // concrete edges into pockets. A dominator of a terminal class is glued to
  // the class terminal itself: its paths never consume ray capacity, so the
  // bundle bypasses any collector.
  int copies = opt.bundle_copies > 0 ? opt.bundle_copies : out.graph.edge_count() + 2;
  out.bundle_copies = copies;
  for (std::size_t i = 0; i < p.dominating.size(); ++i) {
    const ArmLink& d = p.dominating[i];
    int s = strand_of(strand_list, d.arm, d.pat);
    const TailComps& tc = out.tails.at(s);
    bool terminal = opt.terminal_classes.count(class_of_strand[s]) > 0;
    for (int ci = 0; ci < static_cast<int>(tc.comps.size()); ++ci) {
      if (column_hits_infinitely(tc, ci, d.pat)) {
        VertexId target = (terminal && tc.comps[ci].infinite)
                              ? out.class_terminal.at(class_of_strand[s])
                              : out.seal_target(s, ci);
        for (int k = 0; k < copies; ++k) {
          EdgeId id = out.graph.add_edge(d.core, target);
          out.bundle_dom[id] = static_cast<int>(i);
        }
      } else {
        for (int layer : column_pocket_layers(tc, ci, d.pat)) {
          EdgeId id = out.graph.add_edge(d.core, out.seal_target(s, ci));
          PEdge pe{PEdgeKind::Dom, -1, static_cast<int>(i), layer};
          out.extra_pedge[id] = pe;
          out.extra_edge_of[pe] = id;
        }
      }
    }
  }
  return out;
}

}  // namespace edgeends
