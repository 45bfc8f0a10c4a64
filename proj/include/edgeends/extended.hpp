#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "edgeends/truncation.hpp"

namespace edgeends {

// A symbolic ray tail: from (start_vertex, start_layer) of a strand, follow
// `preperiod` once and then `period` forever (net ascent >= 1). The schedule
// pins concrete pattern-edge instances, so edge-disjointness against other
// tails and against finite edge sets is decidable.
struct TailSpec {
  int arm = -1;
  int strand = -1;
  int class_id = -1;
  int start_vertex = -1;
  int start_layer = -1;
  std::vector<RayStep> preperiod;
  std::vector<RayStep> period;

  int period_ascent() const {
    int k = 0;
    for (const RayStep& s : period) k += s.layer_incr;
    return k;
  }
};

// One edge instance of a tail: the concrete instances it uses once (the
// preperiod and first period traversal) plus, for each period step, the
// arithmetic family {layer + m*ascent : m >= 1}.
struct TailOccupancy {
  std::vector<PEdge> transient;
  struct Periodic {
    PEdge first;  // instance of the second traversal
    int stride;   // period ascent
  };
  std::vector<Periodic> recurring;
};

namespace detail {

inline PEdge step_instance(int arm, int layer_before, const RayStep& st) {
  if (st.intra) return PEdge{PEdgeKind::Intra, arm, st.edge_index, layer_before};
  int lower = st.layer_incr > 0 ? layer_before : layer_before - 1;
  return PEdge{PEdgeKind::Inter, arm, st.edge_index, lower};
}

}  // namespace detail

inline TailOccupancy tail_occupancy(const TailSpec& t) {
  TailOccupancy out;
  int layer = t.start_layer;
  for (const RayStep& st : t.preperiod) {
    out.transient.push_back(detail::step_instance(t.arm, layer, st));
    layer += st.layer_incr;
  }
  int stride = t.period_ascent();
  require(stride >= 1, "tail period must ascend");
  for (const RayStep& st : t.period) {
    out.transient.push_back(detail::step_instance(t.arm, layer, st));
    layer += st.layer_incr;
  }
  int base = layer - stride;
  for (const RayStep& st : t.period) {
    out.recurring.push_back({detail::step_instance(t.arm, base + stride, st), stride});
    base += st.layer_incr;
  }
  return out;
}

inline bool tail_uses(const TailOccupancy& occ, const PEdge& e) {
  for (const PEdge& pe : occ.transient)
    if (pe == e) return true;
  for (const auto& rec : occ.recurring) {
    const PEdge& f = rec.first;
    if (e.kind != f.kind || e.arm != f.arm || e.index != f.index) continue;
    if (e.layer >= f.layer && (e.layer - f.layer) % rec.stride == 0) return true;
  }
  return false;
}

inline bool tails_conflict(const TailOccupancy& a, const TailOccupancy& b) {
  for (const PEdge& pe : a.transient)
    if (tail_uses(b, pe)) return true;
  for (const PEdge& pe : b.transient)
    if (tail_uses(a, pe)) return true;
  for (const auto& ra : a.recurring)
    for (const auto& rb : b.recurring) {
      const PEdge &ea = ra.first, &eb = rb.first;
      if (ea.kind != eb.kind || ea.arm != eb.arm || ea.index != eb.index) continue;
      int g = std::gcd(ra.stride, rb.stride);
      if ((ea.layer - eb.layer) % g == 0) return true;
    }
  return false;
}

// A connecting path of the presented graph: finite, one-way infinite, or a
// double ray; symbolic tails hang off the ends of the concrete prefix.
struct ExtendedPath {
  enum class Kind { Finite, Ray, DoubleRay };
  Kind kind = Kind::Finite;
  std::vector<VCoord> vertices;  // concrete prefix (nonempty)
  std::vector<PEdge> edges;      // concrete prefix edges
  std::optional<TailSpec> tail_front;  // continues before vertices.front()
  std::optional<TailSpec> tail_back;   // continues after vertices.back()

  bool uses_edge(const PEdge& e) const {
    for (const PEdge& pe : edges)
      if (pe == e) return true;
    if (tail_front && tail_uses(tail_occupancy(*tail_front), e)) return true;
    if (tail_back && tail_uses(tail_occupancy(*tail_back), e)) return true;
    return false;
  }
};

inline bool paths_edge_disjoint(const ExtendedPath& a, const ExtendedPath& b) {
  std::vector<TailOccupancy> ta, tb;
  if (a.tail_front) ta.push_back(tail_occupancy(*a.tail_front));
  if (a.tail_back) ta.push_back(tail_occupancy(*a.tail_back));
  if (b.tail_front) tb.push_back(tail_occupancy(*b.tail_front));
  if (b.tail_back) tb.push_back(tail_occupancy(*b.tail_back));
  for (const PEdge& e : a.edges) {
    for (const PEdge& f : b.edges)
      if (e == f) return false;
    for (const auto& occ : tb)
      if (tail_uses(occ, e)) return false;
  }
  for (const PEdge& f : b.edges)
    for (const auto& occ : ta)
      if (tail_uses(occ, f)) return false;
  for (const auto& oa : ta)
    for (const auto& ob : tb)
      if (tails_conflict(oa, ob)) return false;
  return true;
}

inline bool self_consistent(const ExtendedPath& p) {
  if (p.vertices.empty()) return false;
  if (p.edges.size() + 1 != p.vertices.size()) return false;
  std::set<PEdge> seen(p.edges.begin(), p.edges.end());
  if (seen.size() != p.edges.size()) return false;
  std::set<VCoord> vs(p.vertices.begin(), p.vertices.end());
  if (vs.size() != p.vertices.size()) return false;
  std::vector<TailOccupancy> occs;
  if (p.tail_front) occs.push_back(tail_occupancy(*p.tail_front));
  if (p.tail_back) occs.push_back(tail_occupancy(*p.tail_back));
  for (const PEdge& e : p.edges)
    for (const auto& occ : occs)
      if (tail_uses(occ, e)) return false;
  if (occs.size() == 2 && tails_conflict(occs[0], occs[1])) return false;
  bool has_front = p.tail_front.has_value(), has_back = p.tail_back.has_value();
  switch (p.kind) {
    case ExtendedPath::Kind::Finite: return !has_front && !has_back;
    case ExtendedPath::Kind::Ray: return has_front != has_back;
    case ExtendedPath::Kind::DoubleRay: return has_front && has_back;
  }
  return false;
}

// Terminal of the infinite Lovász-Cherkassky instance: a core vertex or an
// edge-end class.
struct EndTerminal {
  bool is_class = false;
  int class_id = -1;
  VertexId core = -1;
  auto operator<=>(const EndTerminal&) const = default;
};

// Certificate that a finite concrete edge set separates two end sets: the
// edges, the (symbolically described) witnessing side, and per-end evidence
// that the set stays clear of every relevant tail.
struct SeparatorCertificate {
  std::vector<PEdge> edges;
  int depth = -1;                        // truncation depth used to extract X
  std::vector<VCoord> side_vertices;     // X within the truncation
  std::vector<int> side_classes;         // classes whose tails lie inside X
  struct EndEvidence {
    int class_id = -1;
    std::vector<PEdge> collar;  // finite F with no certificate edge past it
  };
  std::vector<EndEvidence> evidence;
};

}  // namespace edgeends
