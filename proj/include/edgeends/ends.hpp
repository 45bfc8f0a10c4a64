#pragma once

#include <map>
#include <set>
#include <vector>

#include "edgeends/menger.hpp"
#include "edgeends/sealing.hpp"

namespace edgeends {

// Everything the end-space operations need, computed once per presentation.
struct EndAnalysis {
  Presentation presentation;
  std::vector<Strand> strands;
  std::vector<EdgeEndClass> classes;
  std::vector<int> class_of_strand;

  static EndAnalysis of(const Presentation& p) {
    validate_or_throw(p);
    EndAnalysis a;
    a.presentation = p;
    a.strands = all_strands(p);
    a.classes = edge_end_classes(p);
    a.class_of_strand.assign(a.strands.size(), -1);
    for (const EdgeEndClass& c : a.classes)
      for (int s : c.strands) a.class_of_strand[s] = c.id;
    return a;
  }
};

namespace detail {

// The tail component of a canonical ray past `boundary`: the component of
// the first ray position deep enough that every later position stays above
// the boundary (later dips are bounded by the period length).
inline int ray_tail_comp(const RaySpec& ray, const TailComps& tc) {
  int boundary = tc.boundary;
  int deep = boundary + 1 + static_cast<int>(ray.period.size()) + 1;
  int v = ray.start_vertex, layer = ray.start_layer;
  auto probe = [&]() -> int {
    if (layer < deep) return -1;
    int c = tc.comp_of(v, layer);
    require(c >= 0, "deep ray position must lie in a tail component");
    return c;
  };
  int c = probe();
  if (c >= 0) return c;
  for (const RayStep& st : ray.preperiod) {
    v = st.vertex;
    layer += st.layer_incr;
    c = probe();
    if (c >= 0) return c;
  }
  int guard = deep + static_cast<int>(ray.period.size()) + 4;
  for (int i = 0; i < guard; ++i) {
    for (const RayStep& st : ray.period) {
      v = st.vertex;
      layer += st.layer_incr;
      c = probe();
      if (c >= 0) return c;
    }
  }
  throw InternalError("canonical ray never crosses the seal boundary");
}

inline bool sealed_connected(const SealedGraph& sg, VertexId a, VertexId b,
                             const std::set<EdgeId>& removed) {
  return detail::connects(sg.graph, {a}, {b}, removed);
}

}  // namespace detail

// Membership test for the basic open set around class `omega` determined by
// the finite concrete edge set F: which classes' canonical rays keep a tail
// in omega's component of G minus F. Decided on sealed truncations at two
// depths, which must agree.
inline std::set<int> basic_open(const EndAnalysis& a, const std::vector<PEdge>& f, int omega) {
  if (omega < 0 || omega >= static_cast<int>(a.classes.size()))
    throw DomainError("unknown-class", "edge-end class index out of range");
  int max_layer = 0;
  for (const PEdge& pe : f) max_layer = std::max(max_layer, pe.layer);
  int b = std::max(1, a.presentation.max_pattern_size());

  auto evaluate = [&](int n) {
    SealedGraph sg = seal_truncation(a.presentation, a.strands, a.classes, n, SealOptions{});
    std::set<EdgeId> removed;
    for (const PEdge& pe : f) {
      auto id = sg.find_edge(pe);
      if (!id) throw DomainError("unknown-edge", "F references an edge outside the presented graph");
      removed.insert(*id);
    }
    // Representative: the aux of the canonical ray's tail component.
    std::vector<VertexId> rep(a.classes.size());
    for (const EdgeEndClass& c : a.classes) {
      int s = c.strands[0];
      RaySpec ray = canonical_ray(a.presentation, a.strands, s);
      int comp = detail::ray_tail_comp(ray, sg.tails.at(s));
      rep[c.id] = sg.seal_target(s, comp);
    }
    std::set<int> open;
    for (const EdgeEndClass& c : a.classes)
      if (detail::sealed_connected(sg, rep[omega], rep[c.id], removed)) open.insert(c.id);
    return open;
  };

  auto first = evaluate(max_layer + 2 * b + 2);
  auto second = evaluate(max_layer + 4 * b + 4);
  require(first == second, "basic open membership must stabilise across depths");
  return first;
}

// Truncation-flow oracle for the symbolic class structure: strand pairs of
// one class are more than K edge-connected at depth n_deep; strand pairs of
// different classes have a stabilising finite connectivity.
struct ClassOracleOutcome {
  bool agree = true;
  struct Pair {
    int strand_a, strand_b;
    bool same_class;
    bool ok;
    int value;  // flow reached (same-class: at n_deep; cross: stabilised)
  };
  std::vector<Pair> pairs;
};

inline ClassOracleOutcome class_flow_oracle(const EndAnalysis& a, int k_threshold = 10,
                                            int n_deep = 60) {
  ClassOracleOutcome out;
  const Presentation& p = a.presentation;
  int window = static_cast<int>(p.core_names.size()) + p.total_pattern_size() + 1;

  std::map<int, Truncation> cache;
  auto trunc_at = [&](int n) -> const Truncation& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, truncate(p, n)).first;
    return it->second;
  };

  for (int i = 0; i < static_cast<int>(a.strands.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(a.strands.size()); ++j) {
      ClassOracleOutcome::Pair pr;
      pr.strand_a = i;
      pr.strand_b = j;
      pr.same_class = a.class_of_strand[i] == a.class_of_strand[j];
      // the tail segment is the strand's upper half of the truncation, so it
      // deepens as n grows
      auto half_band = [&](const Truncation& t, const Strand& s) {
        return tail_band(p, t, s, t.layers / 2 + 1);
      };
      if (pr.same_class) {
        const Truncation& t = trunc_at(n_deep);
        pr.value = max_flow_value(t.graph, half_band(t, a.strands[i]),
                                  half_band(t, a.strands[j]), k_threshold + 1);
        pr.ok = pr.value > k_threshold;
      } else {
        int run = 0, last = -1, n = 2;
        pr.ok = false;
        pr.value = -1;
        for (; n <= n_deep; ++n) {
          const Truncation& t = trunc_at(n);
          int v = max_flow_value(t.graph, half_band(t, a.strands[i]),
                                 half_band(t, a.strands[j]));
          if (v == last) {
            if (++run >= window) {
              pr.ok = true;
              pr.value = v;
              break;
            }
          } else {
            last = v;
            run = 1;
          }
        }
      }
      if (!pr.ok) out.agree = false;
      out.pairs.push_back(pr);
    }
  }
  return out;
}

}  // namespace edgeends
