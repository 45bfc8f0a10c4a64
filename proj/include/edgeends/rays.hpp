#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "edgeends/sealing.hpp"
#include "edgeends/window.hpp"

namespace edgeends {



// Edge-disjoint rays from prescribed entry positions into a strand's tail.
// Entries sit at (pattern vertex, floor). Realised as a finite routing stage
// into a periodic interface plus a braided one-layer-per-block periodic
// continuation; infeasibility reports the violated period cut.
inline std::vector<TailSpec> strand_ray_family(const Presentation& p,
                                               const std::vector<Strand>& strand_list,
                                               int strand_id, int class_id,
                                               const std::vector<int>& entry_pats, int floor,
                                               const std::set<PEdge>* blocked = nullptr) {
  std::vector<TailSpec> out;
  if (entry_pats.empty()) return out;
  const Strand& s = strand_list[strand_id];
  int b = static_cast<int>(s.pat_vertices.size());
  int m = static_cast<int>(entry_pats.size());
  std::map<int, int> entry_mult;
  for (int v : entry_pats) {
    require(s.contains(v), "entry must lie in the strand");
    ++entry_mult[v];
  }

  // Enumerate candidate interface multisets Q in lexicographic order.
  std::vector<std::map<int, int>> candidates;
  std::map<int, int> cur;
  auto enumerate = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx == s.pat_vertices.size()) {
      if (left == 0) candidates.push_back(cur);
      return;
    }
    for (int take = left; take >= 0; --take) {
      if (take > 0) cur[s.pat_vertices[idx]] = take;
      self(self, idx + 1, left - take);
      cur.erase(s.pat_vertices[idx]);
    }
  };
  enumerate(enumerate, 0, m);

  int hprime_max = b + 1;
  // The periodic blocks must clear every blocked instance, so the finite
  // routing stage is forced at least that high.
  int min_h = 0;
  if (blocked)
    for (const PEdge& e : *blocked)
      if ((e.kind == PEdgeKind::Intra || e.kind == PEdgeKind::Inter) && e.arm == s.arm)
        min_h = std::max(min_h, e.layer + 2 - floor);
  int h_max = (b + 2) * (m + 2) + 2 * b + 2 + min_h;

  for (const auto& q : candidates) {
    for (int hp = 1; hp <= hprime_max; ++hp) {
      detail::StrandWindow block(p, s, hp);
      block.add_sources(q);
      block.add_sinks(q);
      if (block.net.max_flow(block.source, block.sink) != m) continue;
      auto block_paths = block.decompose(m);

      // Stage A: route the entries to the interface.
      std::optional<std::vector<detail::StrandWindow::WindowPath>> stage;
      if (min_h == 0 && entry_mult == q) {
        stage = std::vector<detail::StrandWindow::WindowPath>{};
        for (int v : entry_pats) stage->push_back(detail::StrandWindow::WindowPath{v, {}});
      }
      for (int h = std::max(1, min_h); h <= h_max && !stage; ++h) {
        detail::StrandWindow win(p, s, h, floor, blocked);
        win.add_sources(entry_mult);
        win.add_sinks(q);
        if (win.net.max_flow(win.source, win.sink) == m) stage = win.decompose(m);
      }
      if (!stage) continue;

      // Braid: slot instances of Q, sigma maps a block path's top arrival to
      // the equal bottom slot of the next block.
      std::vector<int> slot_pat;
      for (auto [pat, mult] : q)
        for (int i = 0; i < mult; ++i) slot_pat.push_back(pat);
      auto assign_slots = [&](const std::vector<detail::StrandWindow::WindowPath>& paths,
                              bool by_start) {
        std::vector<int> assign(paths.size(), -1);
        std::vector<bool> taken(slot_pat.size(), false);
        for (std::size_t i = 0; i < paths.size(); ++i) {
          int pat = by_start ? paths[i].start_pat : paths[i].end_pat();
          for (std::size_t j = 0; j < slot_pat.size(); ++j)
            if (!taken[j] && slot_pat[j] == pat) {
              taken[j] = true;
              assign[i] = static_cast<int>(j);
              break;
            }
        }
        for (int a : assign) require(a >= 0, "interface slots must absorb every path");
        return assign;
      };
      std::vector<int> block_start_slot = assign_slots(block_paths, true);
      std::vector<int> block_end_slot = assign_slots(block_paths, false);
      // path leaving slot j
      std::vector<int> path_of_slot(slot_pat.size(), -1);
      for (std::size_t i = 0; i < block_paths.size(); ++i) path_of_slot[block_start_slot[i]] = i;
      // sigma: slot -> slot reached after one block
      std::vector<int> sigma(slot_pat.size(), -1);
      for (std::size_t j = 0; j < slot_pat.size(); ++j) sigma[j] = block_end_slot[path_of_slot[j]];

      std::vector<int> arrival_slot = assign_slots(*stage, false);

      // Build one tail per stage path, then hand them back in entry order:
      // each tail starts at its stage path's start vertex, which matches the
      // requested entries as a multiset.
      std::vector<TailSpec> built;
      for (int i = 0; i < m; ++i) {
        const auto& entry_path = (*stage)[i];
        TailSpec tail;
        tail.arm = s.arm;
        tail.strand = strand_id;
        tail.class_id = class_id;
        tail.start_vertex = entry_path.start_pat;
        tail.start_layer = floor;
        for (const auto& st : entry_path.steps) tail.preperiod.push_back(st.ray);
        int slot = arrival_slot[i];
        int j = slot;
        do {
          for (const auto& st : block_paths[path_of_slot[j]].steps)
            tail.period.push_back(st.ray);
          j = sigma[j];
        } while (j != slot);
        require(tail.period_ascent() >= 1, "braided period must ascend");
        built.push_back(std::move(tail));
      }
      out.resize(m);
      std::vector<bool> claimed(m, false);
      for (TailSpec& tail : built) {
        bool placed = false;
        for (int i = 0; i < m && !placed; ++i) {
          if (claimed[i] || entry_pats[i] != tail.start_vertex) continue;
          claimed[i] = true;
          out[i] = std::move(tail);
          placed = true;
        }
        require(placed, "every ray must serve one requested entry");
      }
      // pairwise disjointness is guaranteed by construction; trap any slip
      for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
          require(!tails_conflict(tail_occupancy(out[i]), tail_occupancy(out[j])),
                  "strand rays must be pairwise edge-disjoint");
      return out;
    }
  }

  // Infeasible: report the period cut that caps the strand.
  detail::StrandWindow win(p, s, h_max, floor, blocked);
  win.add_sources(entry_mult);
  win.add_sinks_anywhere_top(m);
  long long reach = win.net.max_flow(win.source, win.sink);
  Json cut = Json::array();
  auto reachable = win.net.residual_reachable(win.source);
  for (const auto& [a, info] : win.arcs) {
    int head = win.net.head(a);
    int tail_node = win.net.head(a ^ 1);
    bool crosses = reachable[tail_node] != reachable[head];
    if (crosses)
      cut.push_back(Json{{"kind", info.intra ? "intra" : "inter"},
                         {"arm", p.arms[s.arm].id},
                         {"index", info.edge_index},
                         {"layer", floor + info.lower_layer}});
  }
  throw DomainError("capacity-exceeded",
                    "strand cannot carry the requested number of edge-disjoint rays",
                    Json{{"strand", strand_id},
                         {"requested", m},
                         {"period_capacity", reach},
                         {"violated_cut", cut}});
}

// Routes tail excursions: concrete detours through a sealed component,
// entering and leaving by boundary stubs or dominating-column instances.
struct ExcursionEndpoint {
  bool via_stub = false;
  int pat = -1;          // stub: upper endpoint; column: the column's vertex
  int dom_index = -1;    // column endpoints only
  int fixed_layer = -1;  // stub: floor; pocket column hit: recorded layer; -1 free
};

struct RoutedExcursion {
  std::vector<std::pair<int, int>> positions;  // (pat, layer) from a to b
  std::vector<PEdge> edges;                    // strand edges along the detour
  int a_layer = -1, b_layer = -1;              // layers chosen for the endpoints
};

class TailRouter {
 public:
  TailRouter(const Presentation& p, const std::vector<Strand>& strand_list, int strand_id,
             int floor)
      : p_(&p), strand_(&strand_list[strand_id]), floor_(floor) {}

  // Marks a dominating-column instance as consumed (pocket hits recorded by
  // the seal must not be reused by excursions).
  void reserve_column(int dom_index, int layer) { used_columns_.insert({dom_index, layer}); }

  const std::set<PEdge>& used_edges() const { return used_edges_; }

  RoutedExcursion route(const ExcursionEndpoint& a, const ExcursionEndpoint& b) {
    int bsize = static_cast<int>(strand_->pat_vertices.size());
    for (int w : {6 * bsize + 6, 12 * bsize + 12, 24 * bsize + 24}) {
      auto r = try_route(a, b, w);
      if (r) return *r;
    }
    throw InternalError("tail excursion routing failed within the window bounds");
  }

 private:
  std::optional<RoutedExcursion> try_route(const ExcursionEndpoint& a, const ExcursionEndpoint& b,
                                           int window) {
    const ArmPattern& arm = p_->arms[strand_->arm];
    auto edge_instance = [&](bool intra, int idx, int lower) {
      return PEdge{intra ? PEdgeKind::Intra : PEdgeKind::Inter, strand_->arm, idx, lower};
    };
    auto targets = [&](const ExcursionEndpoint& e) {
      std::set<std::pair<int, int>> out;
      if (e.fixed_layer >= 0) {
        out.insert({e.pat, e.fixed_layer});
      } else {
        for (int layer = floor_; layer <= floor_ + window; ++layer)
          if (!used_columns_.count({e.dom_index, layer})) out.insert({e.pat, layer});
      }
      return out;
    };
    auto starts = targets(a);
    auto goals = targets(b);
    // BFS over (pat, layer) positions avoiding used edge instances.
    std::map<std::pair<int, int>, std::pair<std::pair<int, int>, PEdge>> via;
    std::vector<std::pair<int, int>> queue(starts.begin(), starts.end());
    std::set<std::pair<int, int>> seen(starts.begin(), starts.end());
    std::optional<std::pair<int, int>> found;
    for (auto& g : goals)
      if (seen.count(g)) found = g;
    for (std::size_t qi = 0; qi < queue.size() && !found; ++qi) {
      auto [pat, layer] = queue[qi];
      auto push = [&](int npat, int nlayer, const PEdge& pe) {
        if (nlayer < floor_ || nlayer > floor_ + window) return;
        if (used_edges_.count(pe)) return;
        if (!seen.insert({npat, nlayer}).second) return;
        via[{npat, nlayer}] = {{pat, layer}, pe};
        queue.push_back({npat, nlayer});
        if (!found && goals.count({npat, nlayer})) found = {npat, nlayer};
      };
      for (std::size_t i = 0; i < arm.intra.size() && !found; ++i) {
        auto [u, v] = arm.intra[i];
        if (u == pat) push(v, layer, edge_instance(true, i, layer));
        else if (v == pat) push(u, layer, edge_instance(true, i, layer));
      }
      for (std::size_t i = 0; i < arm.inter.size() && !found; ++i) {
        auto [u, v] = arm.inter[i];
        if (u == pat) push(v, layer + 1, edge_instance(false, i, layer));
        if (v == pat) push(u, layer - 1, edge_instance(false, i, layer - 1));
      }
    }
    if (!found) return std::nullopt;
    RoutedExcursion out;
    std::vector<std::pair<int, int>> rev{*found};
    std::vector<PEdge> redges;
    auto cur = *found;
    while (!starts.count(cur)) {
      auto [prev, pe] = via.at(cur);
      redges.push_back(pe);
      rev.push_back(prev);
      cur = prev;
    }
    std::reverse(rev.begin(), rev.end());
    std::reverse(redges.begin(), redges.end());
    out.positions = std::move(rev);
    out.edges = std::move(redges);
    out.a_layer = out.positions.front().second;
    out.b_layer = out.positions.back().second;
    for (const PEdge& pe : out.edges) used_edges_.insert(pe);
    if (a.fixed_layer < 0) used_columns_.insert({a.dom_index, out.a_layer});
    if (b.fixed_layer < 0) used_columns_.insert({b.dom_index, out.b_layer});
    return out;
  }

  const Presentation* p_;
  const Strand* strand_;
  int floor_;
  std::set<PEdge> used_edges_;
  std::set<std::pair<int, int>> used_columns_;
};

}  // namespace edgeends
