#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edgeends/multigraph.hpp"

namespace edgeends {

// One periodic arm: the pattern is realised identically at every layer
// n >= 0. `intra` edges join two vertices of the same layer, `inter` edges
// join (u, layer n) to (v, layer n+1).
struct ArmPattern {
  std::string id;
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> intra;
  std::vector<std::pair<int, int>> inter;

  int vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    return -1;
  }
};

// (core vertex, arm, pattern vertex): attach lives at layer 0 only,
// dominating entries give the core vertex an edge into every layer.
struct ArmLink {
  int core = -1;
  int arm = -1;
  int pat = -1;
};

// Finite description of an infinite graph: finite core, periodic arms,
// core-to-arm attach edges at layer 0, and dominating edge columns.
struct Presentation {
  Multigraph core;
  std::vector<std::string> core_names;  // index = core VertexId
  std::vector<ArmPattern> arms;
  std::vector<ArmLink> attach;
  std::vector<ArmLink> dominating;

  int core_index(const std::string& name) const {
    for (std::size_t i = 0; i < core_names.size(); ++i)
      if (core_names[i] == name) return static_cast<int>(i);
    return -1;
  }
  int arm_index(const std::string& id) const {
    for (std::size_t i = 0; i < arms.size(); ++i)
      if (arms[i].id == id) return static_cast<int>(i);
    return -1;
  }
  int max_pattern_size() const {
    int m = 0;
    for (const auto& a : arms) m = std::max(m, static_cast<int>(a.vertices.size()));
    return m;
  }
  int total_pattern_size() const {
    int m = 0;
    for (const auto& a : arms) m += static_cast<int>(a.vertices.size());
    return m;
  }
};

// A strand: one connected component of an arm's layer-collapsed pattern
// graph. Each valid strand bundles a family of mutually edge-equivalent ray
// directions.
struct Strand {
  int arm = -1;
  std::vector<int> pat_vertices;  // sorted

  bool contains(int pat) const {
    return std::binary_search(pat_vertices.begin(), pat_vertices.end(), pat);
  }
};

// An edge-end of the presented graph: strands merged through shared
// edge-dominating core vertices.
struct EdgeEndClass {
  int id = -1;
  std::vector<int> strands;     // sorted strand indices
  std::vector<int> dominators;  // sorted core vertex ids
};

// One step of an eventually-periodic ray schedule: move to `vertex` at
// layer + `layer_incr` along the named pattern edge.
struct RayStep {
  int vertex = -1;
  int layer_incr = 0;     // 0 intra, +1 inter up, -1 inter down
  bool intra = false;
  int edge_index = -1;    // index into the arm's intra/inter list
};

struct RaySpec {
  int arm = -1;
  int strand = -1;
  int start_vertex = -1;
  int start_layer = 0;
  std::vector<RayStep> preperiod;
  std::vector<RayStep> period;  // net layer ascent >= 1

  int period_ascent() const {
    int k = 0;
    for (const RayStep& s : period) k += s.layer_incr;
    return k;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

// Directed move graph of one arm: intra edges both ways at weight 0, inter
// edges +1 forward and -1 backward. A strand admits rays iff it contains a
// cycle of positive total weight.
struct ArmMoves {
  struct Arc {
    int to;
    int weight;
    bool intra;
    int edge_index;
  };
  std::vector<std::vector<Arc>> arcs;

  explicit ArmMoves(const ArmPattern& a) : arcs(a.vertices.size()) {
    for (std::size_t i = 0; i < a.intra.size(); ++i) {
      auto [u, v] = a.intra[i];
      arcs[u].push_back({v, 0, true, static_cast<int>(i)});
      arcs[v].push_back({u, 0, true, static_cast<int>(i)});
    }
    for (std::size_t i = 0; i < a.inter.size(); ++i) {
      auto [u, v] = a.inter[i];
      arcs[u].push_back({v, 1, false, static_cast<int>(i)});
      arcs[v].push_back({u, -1, false, static_cast<int>(i)});
    }
  }
};

// Simple positive-weight cycles through `start`, restricted to the strand.
// Returns the lexicographically smallest one: shortest first, then by the
// (vertex, kind, edge) step sequence.
inline std::optional<std::vector<RayStep>> best_positive_cycle(const ArmMoves& moves,
                                                               const Strand& strand, int start) {
  std::optional<std::vector<RayStep>> best;
  std::vector<RayStep> cur;
  std::vector<bool> visited(moves.arcs.size(), false);

  auto step_key = [](const RayStep& s) {
    return std::tuple<int, int, int>(s.vertex, s.intra ? 1 : 0, s.edge_index);
  };
  auto better = [&](const std::vector<RayStep>& cand) {
    if (!best) return true;
    if (cand.size() != best->size()) return cand.size() < best->size();
    for (std::size_t i = 0; i < cand.size(); ++i) {
      auto a = step_key(cand[i]), b = step_key((*best)[i]);
      if (a != b) return a < b;
    }
    return false;
  };

  auto dfs = [&](auto&& self, int v, int weight) -> void {
    for (const auto& arc : moves.arcs[v]) {
      if (!strand.contains(arc.to)) continue;
      RayStep step{arc.to, arc.weight, arc.intra, arc.edge_index};
      if (arc.to == start) {
        if (weight + arc.weight >= 1) {
          cur.push_back(step);
          if (better(cur)) best = cur;
          cur.pop_back();
        }
        continue;
      }
      if (visited[arc.to]) continue;
      visited[arc.to] = true;
      cur.push_back(step);
      self(self, arc.to, weight + arc.weight);
      cur.pop_back();
      visited[arc.to] = false;
    }
  };
  visited[start] = true;
  dfs(dfs, start, 0);
  return best;
}

}  // namespace detail

// Connected components of the arm's pattern graph under intra and
// layer-collapsed inter adjacency.
inline std::vector<Strand> strands(const Presentation& p, int arm) {
  if (arm < 0 || arm >= static_cast<int>(p.arms.size()))
    throw DomainError("unknown-arm", "arm index out of range");
  const ArmPattern& a = p.arms[arm];
  detail::UnionFind uf(static_cast<int>(a.vertices.size()));
  for (auto [u, v] : a.intra) uf.merge(u, v);
  for (auto [u, v] : a.inter) uf.merge(u, v);
  std::map<int, Strand> comps;
  for (int v = 0; v < static_cast<int>(a.vertices.size()); ++v) {
    Strand& s = comps[uf.find(v)];
    s.arm = arm;
    s.pat_vertices.push_back(v);
  }
  std::vector<Strand> out;
  for (auto& [root, s] : comps) {
    (void)root;
    std::sort(s.pat_vertices.begin(), s.pat_vertices.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const Strand& x, const Strand& y) { return x.pat_vertices[0] < y.pat_vertices[0]; });
  return out;
}

// All strands of all arms in deterministic order; the position in this list
// is the StrandId used everywhere else.
inline std::vector<Strand> all_strands(const Presentation& p) {
  std::vector<Strand> out;
  for (int a = 0; a < static_cast<int>(p.arms.size()); ++a) {
    auto s = strands(p, a);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

inline int strand_of(const std::vector<Strand>& strand_list, int arm, int pat) {
  for (std::size_t i = 0; i < strand_list.size(); ++i)
    if (strand_list[i].arm == arm && strand_list[i].contains(pat)) return static_cast<int>(i);
  return -1;
}

inline bool strand_has_ray(const Presentation& p, const Strand& s) {
  detail::ArmMoves moves(p.arms[s.arm]);
  for (int v : s.pat_vertices)
    if (detail::best_positive_cycle(moves, s, v)) return true;
  return false;
}

// Structural validation: referential integrity plus ray-existence for every
// strand. Returns the list of problems; empty means the presentation is
// well-formed.
inline std::vector<std::string> validate(const Presentation& p) {
  std::vector<std::string> errors;
  if (p.core_names.size() != p.core.vertices().size())
    errors.push_back("core name table does not match the core vertex set");
  for (int a = 0; a < static_cast<int>(p.arms.size()); ++a) {
    const ArmPattern& arm = p.arms[a];
    if (arm.vertices.empty()) errors.push_back("arm '" + arm.id + "' has no pattern vertices");
    int n = static_cast<int>(arm.vertices.size());
    for (auto [u, v] : arm.intra) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        errors.push_back("arm '" + arm.id + "' has an intra edge with a dangling endpoint");
      else if (u == v)
        errors.push_back("arm '" + arm.id + "' has an intra loop");
    }
    for (auto [u, v] : arm.inter)
      if (u < 0 || u >= n || v < 0 || v >= n)
        errors.push_back("arm '" + arm.id + "' has an inter edge with a dangling endpoint");
  }
  auto check_link = [&](const ArmLink& l, const char* what) {
    if (l.core < 0 || !p.core.has_vertex(l.core)) {
      errors.push_back(std::string(what) + " references a missing core vertex");
      return;
    }
    if (l.arm < 0 || l.arm >= static_cast<int>(p.arms.size())) {
      errors.push_back(std::string(what) + " references a missing arm");
      return;
    }
    if (l.pat < 0 || l.pat >= static_cast<int>(p.arms[l.arm].vertices.size()))
      errors.push_back(std::string(what) + " references a missing pattern vertex");
  };
  for (const ArmLink& l : p.attach) check_link(l, "attach entry");
  for (const ArmLink& l : p.dominating) check_link(l, "dominating entry");
  if (!errors.empty()) return errors;

  for (int a = 0; a < static_cast<int>(p.arms.size()); ++a)
    for (const Strand& s : strands(p, a))
      if (!strand_has_ray(p, s))
        errors.push_back("arm '" + p.arms[a].id +
                         "' has a strand with no infinite forward path (pattern vertex '" +
                         p.arms[a].vertices[s.pat_vertices[0]] + "')");
  return errors;
}

inline void validate_or_throw(const Presentation& p) {
  auto errors = validate(p);
  if (!errors.empty()) {
    Json detail = Json::array();
    for (const auto& e : errors) detail.push_back(e);
    throw DomainError("invalid-presentation", errors.front(), Json{{"errors", detail}});
  }
}

// Edge-end classes: connected components of the bipartite strand/dominator
// incidence. Undominated strands form singleton classes.
inline std::vector<EdgeEndClass> edge_end_classes(const Presentation& p) {
  auto strand_list = all_strands(p);
  int ns = static_cast<int>(strand_list.size());
  std::map<int, int> core_node;  // core vertex -> union-find node
  int nodes = ns;
  for (const ArmLink& d : p.dominating)
    if (!core_node.count(d.core)) core_node[d.core] = nodes++;
  detail::UnionFind uf(nodes);
  for (const ArmLink& d : p.dominating) {
    int s = strand_of(strand_list, d.arm, d.pat);
    require(s >= 0, "dominating entry must land in a strand");
    uf.merge(s, core_node[d.core]);
  }
  std::map<int, EdgeEndClass> comps;
  for (int s = 0; s < ns; ++s) comps[uf.find(s)].strands.push_back(s);
  for (const auto& [core, node] : core_node) {
    auto it = comps.find(uf.find(node));
    if (it != comps.end()) it->second.dominators.push_back(core);
  }
  std::vector<EdgeEndClass> out;
  for (auto& [root, c] : comps) {
    (void)root;
    std::sort(c.strands.begin(), c.strands.end());
    std::sort(c.dominators.begin(), c.dominators.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const EdgeEndClass& a, const EdgeEndClass& b) { return a.strands[0] < b.strands[0]; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

inline std::set<VertexId> edge_dominators(const Presentation& p,
                                          const std::vector<EdgeEndClass>& classes, int class_id) {
  if (class_id < 0 || class_id >= static_cast<int>(classes.size()))
    throw DomainError("unknown-class", "edge-end class index out of range");
  (void)p;
  return std::set<VertexId>(classes[class_id].dominators.begin(),
                            classes[class_id].dominators.end());
}

// Deterministic eventually-periodic ray inside a strand: the best simple
// positive cycle through the lowest-id vertex lying on one, preceded by a
// shortest move-path from the strand's lowest vertex when that lift stays
// simple.
inline RaySpec canonical_ray(const Presentation& p, const std::vector<Strand>& strand_list,
                             int strand_id) {
  if (strand_id < 0 || strand_id >= static_cast<int>(strand_list.size()))
    throw DomainError("unknown-strand", "strand index out of range");
  const Strand& s = strand_list[strand_id];
  detail::ArmMoves moves(p.arms[s.arm]);

  int cycle_start = -1;
  std::optional<std::vector<RayStep>> cycle;
  for (int v : s.pat_vertices) {
    cycle = detail::best_positive_cycle(moves, s, v);
    if (cycle) {
      cycle_start = v;
      break;
    }
  }
  require(cycle.has_value(), "canonical_ray requires a validated strand");

  RaySpec ray;
  ray.arm = s.arm;
  ray.strand = strand_id;
  ray.period = *cycle;

  // Shortest move-path (BFS over moves, deterministic order) from the
  // strand's lowest vertex to the cycle start.
  int want_start = s.pat_vertices[0];
  std::vector<RayStep> pre;
  if (want_start != cycle_start) {
    std::map<int, std::pair<int, RayStep>> via;  // vertex -> (prev, step)
    std::vector<int> queue{want_start};
    std::set<int> seen{want_start};
    for (std::size_t qi = 0; qi < queue.size() && !via.count(cycle_start); ++qi) {
      int v = queue[qi];
      for (const auto& arc : moves.arcs[v]) {
        if (!s.contains(arc.to) || seen.count(arc.to)) continue;
        seen.insert(arc.to);
        via[arc.to] = {v, RayStep{arc.to, arc.weight, arc.intra, arc.edge_index}};
        queue.push_back(arc.to);
      }
    }
    require(via.count(cycle_start), "strand must be move-connected");
    for (int v = cycle_start; v != want_start;) {
      pre.push_back(via[v].second);
      v = via[v].first;
    }
    std::reverse(pre.begin(), pre.end());
  }

  auto assemble = [&](const std::vector<RayStep>& preperiod, int start_vertex) {
    RaySpec r = ray;
    r.preperiod = preperiod;
    r.start_vertex = start_vertex;
    // Start layer clears every descent in the preperiod plus two periods.
    int layer = 0, low = 0;
    for (const RayStep& st : preperiod) {
      layer += st.layer_incr;
      low = std::min(low, layer);
    }
    for (int rep = 0; rep < 2; ++rep)
      for (const RayStep& st : r.period) {
        layer += st.layer_incr;
        low = std::min(low, layer);
      }
    r.start_layer = std::max(0, -low);
    return r;
  };

  // The lift must be a simple path; verify over enough copies and fall back
  // to a bare period when the preperiod collides with it.
  auto lift_simple = [&](const RaySpec& r) {
    std::set<std::pair<int, int>> seen;
    int v = r.start_vertex, layer = r.start_layer;
    seen.insert({v, layer});
    auto walk = [&](const std::vector<RayStep>& steps) {
      for (const RayStep& st : steps) {
        v = st.vertex;
        layer += st.layer_incr;
        if (layer < 0) return false;
        if (!seen.insert({v, layer}).second) return false;
      }
      return true;
    };
    if (!walk(r.preperiod)) return false;
    int span = static_cast<int>(r.preperiod.size() + r.period.size()) + 2;
    int copies = span / std::max(1, r.period_ascent()) + 3;
    for (int i = 0; i < copies; ++i)
      if (!walk(r.period)) return false;
    return true;
  };

  RaySpec with_pre = assemble(pre, want_start);
  if (lift_simple(with_pre)) return with_pre;
  RaySpec bare = assemble({}, cycle_start);
  require(lift_simple(bare), "a simple positive cycle lifts to a ray");
  return bare;
}

}  // namespace edgeends
