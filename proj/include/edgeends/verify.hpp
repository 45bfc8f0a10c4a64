#pragma once

#include <map>
#include <set>
#include <vector>

#include "edgeends/infinite.hpp"

namespace edgeends {

// Endpoints of a concrete presentation edge.
inline std::pair<VCoord, VCoord> pedge_endpoints(const Presentation& p, const PEdge& e) {
  switch (e.kind) {
    case PEdgeKind::Core: {
      EdgeEnds ee = p.core.ends(e.index);
      return {VCoord{true, ee.u, -1, -1, -1}, VCoord{true, ee.v, -1, -1, -1}};
    }
    case PEdgeKind::Attach: {
      const ArmLink& l = p.attach.at(e.index);
      return {VCoord{true, l.core, -1, -1, -1}, VCoord{false, -1, l.arm, 0, l.pat}};
    }
    case PEdgeKind::Intra: {
      auto [u, v] = p.arms.at(e.arm).intra.at(e.index);
      return {VCoord{false, -1, e.arm, e.layer, u}, VCoord{false, -1, e.arm, e.layer, v}};
    }
    case PEdgeKind::Inter: {
      auto [u, v] = p.arms.at(e.arm).inter.at(e.index);
      return {VCoord{false, -1, e.arm, e.layer, u}, VCoord{false, -1, e.arm, e.layer + 1, v}};
    }
    case PEdgeKind::Dom: {
      const ArmLink& l = p.dominating.at(e.index);
      return {VCoord{true, l.core, -1, -1, -1}, VCoord{false, -1, l.arm, e.layer, l.pat}};
    }
  }
  throw InternalError("unreachable edge kind");
}

inline bool pedge_valid(const Presentation& p, const PEdge& e) {
  switch (e.kind) {
    case PEdgeKind::Core: return p.core.has_edge(e.index);
    case PEdgeKind::Attach:
      return e.index >= 0 && e.index < static_cast<int>(p.attach.size());
    case PEdgeKind::Intra:
      return e.arm >= 0 && e.arm < static_cast<int>(p.arms.size()) && e.index >= 0 &&
             e.index < static_cast<int>(p.arms[e.arm].intra.size()) && e.layer >= 0;
    case PEdgeKind::Inter:
      return e.arm >= 0 && e.arm < static_cast<int>(p.arms.size()) && e.index >= 0 &&
             e.index < static_cast<int>(p.arms[e.arm].inter.size()) && e.layer >= 0;
    case PEdgeKind::Dom:
      return e.index >= 0 && e.index < static_cast<int>(p.dominating.size()) && e.layer >= 0;
  }
  return false;
}

// One certificate to check against (a sub-family of) the path family.
struct VerifyItem {
  SeparatorCertificate certificate;
  std::vector<EndTerminal> a_side, b_side;
  std::vector<int> subfamily;  // indices into the family the cut must lie on
};

struct VerifyJob {
  std::vector<LiftedPath> family;
  std::vector<VerifyItem> items;
  int n_max = 40;
};

struct VerifyReport {
  bool ok = true;
  std::vector<Json> failures;

  void fail(const std::string& what, Json detail = Json::object()) {
    ok = false;
    detail["what"] = what;
    failures.push_back(std::move(detail));
  }
};

namespace detail {

inline bool tail_schedule_valid(const Presentation& p, const TailSpec& t) {
  if (t.arm < 0 || t.arm >= static_cast<int>(p.arms.size())) return false;
  const ArmPattern& arm = p.arms[t.arm];
  if (t.start_vertex < 0 || t.start_vertex >= static_cast<int>(arm.vertices.size())) return false;
  if (t.start_layer < 0) return false;
  if (t.period.empty() || t.period_ascent() < 1) return false;
  int v = t.start_vertex;
  long long layer = t.start_layer;
  auto walk = [&](const std::vector<RayStep>& steps) {
    for (const RayStep& st : steps) {
      if (st.intra) {
        if (st.layer_incr != 0) return false;
        if (st.edge_index < 0 || st.edge_index >= static_cast<int>(arm.intra.size())) return false;
        auto [x, y] = arm.intra[st.edge_index];
        if (!((x == v && y == st.vertex) || (y == v && x == st.vertex))) return false;
      } else {
        if (st.edge_index < 0 || st.edge_index >= static_cast<int>(arm.inter.size())) return false;
        auto [x, y] = arm.inter[st.edge_index];
        if (st.layer_incr == 1) {
          if (!(x == v && y == st.vertex)) return false;
        } else if (st.layer_incr == -1) {
          if (!(y == v && x == st.vertex)) return false;
        } else {
          return false;
        }
      }
      v = st.vertex;
      layer += st.layer_incr;
      if (layer < 0) return false;
    }
    return true;
  };
  return walk(t.preperiod) && walk(t.period);
}

inline bool prefix_valid(const Presentation& p, const ExtendedPath& path) {
  if (path.vertices.empty() || path.edges.size() + 1 != path.vertices.size()) return false;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    if (!pedge_valid(p, path.edges[i])) return false;
    auto [x, y] = pedge_endpoints(p, path.edges[i]);
    const VCoord &a = path.vertices[i], &b = path.vertices[i + 1];
    if (!((x == a && y == b) || (x == b && y == a))) return false;
  }
  return true;
}

inline bool tail_attached(const TailSpec& t, const VCoord& junction) {
  return !junction.is_core && junction.arm == t.arm && junction.pat == t.start_vertex &&
         junction.layer == t.start_layer;
}

}  // namespace detail

// Independent checker: symbolic edge-disjointness, tail classes, lies-on
// bijections, and certificate separation re-established on every truncation
// depth up to n_max (tails sealed past the boundary).
inline VerifyReport verify_family(const EndAnalysis& a, const VerifyJob& job) {
  VerifyReport rep;
  const Presentation& p = a.presentation;

  for (std::size_t i = 0; i < job.family.size(); ++i) {
    const LiftedPath& lp = job.family[i];
    if (!detail::prefix_valid(p, lp.path)) {
      rep.fail("invalid-prefix", Json{{"path", i}});
      continue;
    }
    if (!self_consistent(lp.path)) rep.fail("path-not-self-consistent", Json{{"path", i}});
    for (const auto* t : {&lp.path.tail_front, &lp.path.tail_back}) {
      if (!t->has_value()) continue;
      const TailSpec& tail = **t;
      if (!detail::tail_schedule_valid(p, tail)) {
        rep.fail("invalid-tail-schedule", Json{{"path", i}});
        continue;
      }
      int strand = strand_of(a.strands, tail.arm, tail.start_vertex);
      if (strand != tail.strand || a.class_of_strand[strand] != tail.class_id)
        rep.fail("tail-class-mismatch", Json{{"path", i}});
      const VCoord& junction =
          (t == &lp.path.tail_front) ? lp.path.vertices.front() : lp.path.vertices.back();
      if (!detail::tail_attached(tail, junction))
        rep.fail("tail-detached", Json{{"path", i}});
    }
    // Declared end infos must be coherent with the path's shape.
    auto check_end = [&](const LiftedPath::EndInfo& info, bool has_tail) {
      switch (info.via) {
        case LiftedPath::EndInfo::Via::Tail:
          if (!has_tail) rep.fail("declared-tail-missing", Json{{"path", i}});
          break;
        case LiftedPath::EndInfo::Via::Dominator: {
          if (has_tail) rep.fail("dominator-end-with-tail", Json{{"path", i}});
          if (info.class_id < 0 || info.class_id >= static_cast<int>(a.classes.size())) {
            rep.fail("unknown-end-class", Json{{"path", i}});
            break;
          }
          const auto& doms = a.classes[info.class_id].dominators;
          if (std::find(doms.begin(), doms.end(), info.vertex) == doms.end())
            rep.fail("not-a-dominator", Json{{"path", i}, {"vertex", info.vertex}});
          break;
        }
        case LiftedPath::EndInfo::Via::CoreVertex:
          if (has_tail) rep.fail("vertex-end-with-tail", Json{{"path", i}});
          break;
      }
    };
    check_end(lp.front, lp.path.tail_front.has_value());
    check_end(lp.back, lp.path.tail_back.has_value());
  }

  for (std::size_t i = 0; i < job.family.size(); ++i)
    for (std::size_t j = i + 1; j < job.family.size(); ++j)
      if (!paths_edge_disjoint(job.family[i].path, job.family[j].path))
        rep.fail("family-not-edge-disjoint", Json{{"path_a", i}, {"path_b", j}});

  for (std::size_t it = 0; it < job.items.size(); ++it) {
    const VerifyItem& item = job.items[it];
    for (const PEdge& e : item.certificate.edges)
      if (!pedge_valid(p, e)) rep.fail("invalid-certificate-edge", Json{{"item", it}});

    // lies-on: one certificate edge per sub-family path, none elsewhere.
    std::set<int> sub(item.subfamily.begin(), item.subfamily.end());
    std::set<std::size_t> used;
    for (std::size_t pi = 0; pi < job.family.size(); ++pi) {
      int hits = 0;
      for (std::size_t ci = 0; ci < item.certificate.edges.size(); ++ci)
        if (job.family[pi].path.uses_edge(item.certificate.edges[ci])) {
          ++hits;
          if (!used.insert(ci).second)
            rep.fail("certificate-edge-reused", Json{{"item", it}, {"path", pi}});
        }
      int want = sub.count(static_cast<int>(pi)) ? 1 : 0;
      if (hits != want)
        rep.fail("lies-on-violated",
                 Json{{"item", it}, {"path", pi}, {"hits", hits}, {"expected", want}});
    }
    if (used.size() != item.certificate.edges.size())
      rep.fail("certificate-not-exhausted", Json{{"item", it}});

    // Per-end evidence: certificate edges never reach past the collar into a
    // tail of the named class.
    for (const auto& ev : item.certificate.evidence) {
      int collar_layer = 0;
      for (const PEdge& c : ev.collar) collar_layer = std::max(collar_layer, c.layer);
      for (int s : a.classes[ev.class_id].strands) {
        int arm = a.strands[s].arm;
        for (const PEdge& e : item.certificate.edges) {
          bool in_strand =
              (e.kind == PEdgeKind::Intra || e.kind == PEdgeKind::Inter) && e.arm == arm &&
              a.strands[s].contains(pedge_endpoints(p, e).first.pat);
          bool in_column = e.kind == PEdgeKind::Dom && p.dominating[e.index].arm == arm &&
                           a.strands[s].contains(p.dominating[e.index].pat);
          if ((in_strand || in_column) && e.layer > collar_layer)
            rep.fail("certificate-reaches-tail", Json{{"item", it}, {"class", ev.class_id}});
        }
      }
    }

    // Separation at every depth: the a-side and b-side regions fall into
    // different components of the sealed truncation minus the certificate.
    int n_min = 2;
    for (const PEdge& e : item.certificate.edges) n_min = std::max(n_min, e.layer + 2);
    if (n_min > job.n_max)
      rep.fail("nmax-below-certificate", Json{{"item", it}, {"n_min", n_min}});
    for (int n = n_min; n <= job.n_max; ++n) {
      SealedGraph sg = seal_truncation(p, a.strands, a.classes, n, SealOptions{});
      std::set<EdgeId> removed;
      bool missing = false;
      for (const PEdge& e : item.certificate.edges) {
        auto id = sg.find_edge(e);
        if (!id) {
          missing = true;
          break;
        }
        removed.insert(*id);
      }
      if (missing) {
        rep.fail("certificate-edge-outside-truncation", Json{{"item", it}, {"n", n}});
        break;
      }
      auto reps = [&](const std::vector<EndTerminal>& side) {
        std::set<VertexId> out;
        for (const EndTerminal& t : side) {
          if (!t.is_class) {
            out.insert(t.core);
            continue;
          }
          for (int s : a.classes[t.class_id].strands) {
            const TailComps& tc = sg.tails.at(s);
            for (int ci = 0; ci < static_cast<int>(tc.comps.size()); ++ci)
              if (tc.comps[ci].infinite) out.insert(sg.seal_target(s, ci));
          }
        }
        return out;
      };
      std::set<VertexId> at = reps(item.a_side), bt = reps(item.b_side);
      bool crossed = false;
      for (VertexId x : at)
        if (!crossed && detail::connects(sg.graph, {x}, bt, removed)) crossed = true;
      if (crossed) {
        rep.fail("certificate-does-not-separate", Json{{"item", it}, {"n", n}});
        break;
      }
    }
  }
  return rep;
}

}  // namespace edgeends
