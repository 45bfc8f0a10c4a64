#pragma once

#include <cstdint>
#include <optional>

#include "edgeends/ends.hpp"
#include "edgeends/extended.hpp"
#include "edgeends/tpath.hpp"

namespace edgeends {

// Deterministic stream (splitmix64). Draws avoid std::uniform_int_distribution
// so identical seeds give identical bytes on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::uint64_t state_;
};

inline Multigraph random_multigraph(Rng& rng, int max_v, int max_e) {
  int n = rng.between(3, max_v);
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n && g.edge_count() < max_e; ++i)
    for (int j = i + 1; j < n && g.edge_count() < max_e; ++j) {
      if (rng.chance(45)) g.add_edge(i, j);
      if (rng.chance(12) && g.edge_count() < max_e) g.add_edge(i, j);
    }
  return g;
}

inline std::set<VertexId> random_terminals(Rng& rng, const Multigraph& g, int count) {
  std::set<VertexId> out;
  std::vector<VertexId> pool(g.vertices().begin(), g.vertices().end());
  while (static_cast<int>(out.size()) < count && out.size() < pool.size())
    out.insert(pool[rng.below(static_cast<int>(pool.size()))]);
  return out;
}

// Parity repair: while some inner vertex has odd degree, double the edges of
// a walk from it to the nearest terminal (or nearest other odd inner vertex
// in terminal-free components), which flips only the two endpoints.
inline void repair_inner_eulerian(Multigraph& g, const std::set<VertexId>& terminals) {
  while (true) {
    VertexId odd = -1;
    for (VertexId v : g.vertices())
      if (!terminals.count(v) && g.degree(v) % 2 != 0) {
        odd = v;
        break;
      }
    if (odd < 0) return;
    std::map<VertexId, EdgeId> via;
    std::vector<VertexId> queue{odd};
    std::set<VertexId> seen{odd};
    VertexId hit = -1;
    for (std::size_t qi = 0; qi < queue.size() && hit < 0; ++qi) {
      for (EdgeId e : g.incident(queue[qi])) {
        VertexId w = g.other_end(e, queue[qi]);
        if (!seen.insert(w).second) continue;
        via[w] = e;
        if (terminals.count(w)) {
          hit = w;
          break;
        }
        queue.push_back(w);
      }
    }
    if (hit < 0)
      for (VertexId w : seen)
        if (w != odd && g.degree(w) % 2 != 0) {
          hit = w;
          break;
        }
    require(hit >= 0, "parity repair needs a partner vertex");
    for (VertexId cur = hit; cur != odd;) {
      EdgeId e = via.at(cur);
      g.add_edge(g.ends(e).u, g.ends(e).v);
      cur = g.other_end(e, cur);
    }
  }
}

// Random presentation within desk-scale bounds. Every strand receives a
// self-extending inter edge so validation always passes.
inline Presentation random_presentation(Rng& rng, int max_core = 4, int max_arms = 3,
                                        int max_pattern = 3) {
  Presentation p;
  int core_n = rng.between(1, max_core);
  for (int i = 0; i < core_n; ++i) {
    p.core.add_vertex(i);
    p.core_names.push_back("c" + std::to_string(i));
  }
  for (int i = 0; i < core_n; ++i)
    for (int j = i + 1; j < core_n; ++j)
      if (rng.chance(40)) p.core.add_edge(i, j);

  int arms = rng.between(1, max_arms);
  for (int a = 0; a < arms; ++a) {
    ArmPattern arm;
    arm.id = std::string(1, static_cast<char>('A' + a));
    int pat_n = rng.between(1, max_pattern);
    for (int v = 0; v < pat_n; ++v) arm.vertices.push_back("p" + std::to_string(v));
    for (int u = 0; u < pat_n; ++u)
      for (int v = u + 1; v < pat_n; ++v)
        if (rng.chance(30)) arm.intra.push_back({u, v});
    for (int u = 0; u < pat_n; ++u)
      for (int v = 0; v < pat_n; ++v)
        if (rng.chance(18)) arm.inter.push_back({u, v});
    // guarantee an infinite continuation in every strand
    detail::UnionFind uf(pat_n);
    for (auto [u, v] : arm.intra) uf.merge(u, v);
    for (auto [u, v] : arm.inter) uf.merge(u, v);
    std::set<int> covered;
    for (int v = 0; v < pat_n; ++v) {
      if (covered.count(uf.find(v))) continue;
      covered.insert(uf.find(v));
      arm.inter.push_back({v, v});
    }
    p.arms.push_back(std::move(arm));
    int attaches = rng.between(1, 2);
    for (int k = 0; k < attaches; ++k)
      p.attach.push_back(
          {rng.below(core_n), a, rng.below(static_cast<int>(p.arms[a].vertices.size()))});
  }
  for (int c = 0; c < core_n; ++c)
    for (int a = 0; a < arms; ++a)
      for (int v = 0; v < static_cast<int>(p.arms[a].vertices.size()); ++v)
        if (rng.chance(10)) p.dominating.push_back({c, a, v});
  require(validate(p).empty(), "generated presentations must validate");
  return p;
}

// A presentation plus terminals ready for the Lovász-Cherkassky pipeline:
// all classes terminal, optionally some non-dominating core vertices, with
// attach and dominating entries repaired so the parity condition holds.
struct LcInstance {
  Presentation presentation;
  std::vector<EndTerminal> terminals;
};

inline std::optional<LcInstance> random_lc_instance(Rng& rng, int max_core = 4, int max_arms = 3,
                                                    int max_pattern = 3) {
  Presentation p = random_presentation(rng, max_core, max_arms, max_pattern);
  int core_n = static_cast<int>(p.core_names.size());

  // Core vertices we may add repair entries to, keeping candidates for
  // vertex terminals untouched by dominating columns.
  std::set<VertexId> terminal_cores;
  if (core_n >= 2 && rng.chance(70)) terminal_cores.insert(rng.below(core_n));
  auto repair_core = [&]() {
    for (int c = 0; c < core_n; ++c)
      if (!terminal_cores.count(c)) return c;
    return -1;
  };
  for (VertexId c : terminal_cores)
    for (auto it = p.dominating.begin(); it != p.dominating.end();)
      it = (it->core == c) ? p.dominating.erase(it) : std::next(it);

  // Arm-vertex parity: first align attach counts with incoming inter counts
  // at layer 0, then even out the interior degree with dominating columns.
  for (int a = 0; a < static_cast<int>(p.arms.size()); ++a) {
    const ArmPattern& arm = p.arms[a];
    for (int v = 0; v < static_cast<int>(arm.vertices.size()); ++v) {
      int in = 0;
      for (auto [x, y] : arm.inter)
        if (y == v) ++in;
      int attach = 0;
      for (const ArmLink& l : p.attach)
        if (l.arm == a && l.pat == v) ++attach;
      if ((attach % 2) != (in % 2)) {
        int c = repair_core();
        if (c < 0) return std::nullopt;
        p.attach.push_back({c, a, v});
      }
    }
    for (int v = 0; v < static_cast<int>(arm.vertices.size()); ++v) {
      int deg = 0;
      for (auto [x, y] : arm.intra) deg += (x == v) + (y == v);
      for (auto [x, y] : arm.inter) deg += (x == v) + (y == v);
      for (const ArmLink& l : p.dominating)
        if (l.arm == a && l.pat == v) ++deg;
      if (deg % 2 != 0) {
        int c = repair_core();
        if (c < 0) return std::nullopt;
        p.dominating.push_back({c, a, v});
      }
    }
  }
  // Inner core vertices: even finite degree, or any dominating column (the
  // doubled column changes no other parity).
  for (int c = 0; c < core_n; ++c) {
    if (terminal_cores.count(c)) continue;
    bool has_dom = false;
    for (const ArmLink& l : p.dominating)
      if (l.core == c) has_dom = true;
    if (has_dom) continue;
    int deg = p.core.degree(c);
    for (const ArmLink& l : p.attach)
      if (l.core == c) ++deg;
    if (deg % 2 != 0) {
      p.dominating.push_back({c, 0, p.arms[0].inter.front().first});
      p.dominating.push_back({c, 0, p.arms[0].inter.front().first});
    }
  }

  EndAnalysis analysis = EndAnalysis::of(p);
  LcInstance out;
  out.presentation = analysis.presentation;
  for (const EdgeEndClass& c : analysis.classes)
    out.terminals.push_back(EndTerminal{true, c.id, -1});
  for (VertexId c : terminal_cores) out.terminals.push_back(EndTerminal{false, -1, c});
  if (out.terminals.size() < 2) return std::nullopt;

  ReducedGraph rg = reduced_multigraph(analysis, out.terminals);
  if (!parity_ends_fast(rg).ok) return std::nullopt;
  return out;
}

}  // namespace edgeends
