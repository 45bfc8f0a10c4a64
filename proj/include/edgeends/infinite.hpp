#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "edgeends/ends.hpp"
#include "edgeends/rays.hpp"
#include "edgeends/tpath.hpp"

namespace edgeends {

// End-set selector: classes, or individual strands standing for the rays
// they carry. Two selectors naming different strands of one merged class
// witness infinite connectivity rather than an input error.
struct EndSetSpec {
  std::set<int> classes;
  std::set<int> strands;
};

struct StabilizationInfo {
  int depth = -1;           // last depth of the agreeing window
  int window = -1;          // required run of equal values
  int confirmed_depth = -1; // independent confirmation depth (2x)
  int value = -1;
};

struct LambdaEndsResult {
  bool infinite = false;
  Json infinite_witness;
  int k = -1;
  SeparatorCertificate certificate;
  StabilizationInfo stab;
  std::set<int> a_classes, b_classes;
};

namespace detail {

inline std::set<int> resolve_classes(const EndAnalysis& a, const EndSetSpec& spec) {
  std::set<int> out;
  for (int c : spec.classes) {
    if (c < 0 || c >= static_cast<int>(a.classes.size()))
      throw DomainError("unknown-class", "edge-end class index out of range");
    out.insert(c);
  }
  for (int s : spec.strands) {
    if (s < 0 || s >= static_cast<int>(a.strands.size()))
      throw DomainError("unknown-strand", "strand index out of range");
    out.insert(a.class_of_strand[s]);
  }
  return out;
}

inline SeparatorCertificate make_certificate(const EndAnalysis& a, const SealedGraph& sg,
                                             const Cut& cut, const std::set<int>& end_classes) {
  SeparatorCertificate cert;
  cert.depth = sg.trunc.layers;
  for (EdgeId e : cut.edges) {
    auto it = sg.trunc.pedge_of.find(e);
    if (it != sg.trunc.pedge_of.end()) {
      cert.edges.push_back(it->second);
      continue;
    }
    auto jt = sg.extra_pedge.find(e);
    require(jt != sg.extra_pedge.end(), "minimum cuts never sever bundles");
    cert.edges.push_back(jt->second);
  }
  std::sort(cert.edges.begin(), cert.edges.end());
  for (VertexId v : cut.side) {
    auto it = sg.trunc.coord_of.find(v);
    if (it != sg.trunc.coord_of.end()) cert.side_vertices.push_back(it->second);
    auto jt = sg.terminal_class_of.find(v);
    if (jt != sg.terminal_class_of.end()) cert.side_classes.push_back(jt->second);
  }
  std::sort(cert.side_classes.begin(), cert.side_classes.end());
  // Per-end evidence: a cross-section collar one layer above every
  // certificate edge keeps the tails clear of the certificate.
  int top = 0;
  for (const PEdge& pe : cert.edges) top = std::max(top, pe.layer + 1);
  for (int c : end_classes) {
    SeparatorCertificate::EndEvidence ev;
    ev.class_id = c;
    for (int s : a.classes[c].strands) {
      const ArmPattern& arm = a.presentation.arms[a.strands[s].arm];
      for (std::size_t i = 0; i < arm.inter.size(); ++i)
        if (a.strands[s].contains(arm.inter[i].first))
          ev.collar.push_back(PEdge{PEdgeKind::Inter, a.strands[s].arm, static_cast<int>(i), top});
    }
    cert.evidence.push_back(std::move(ev));
  }
  return cert;
}

}  // namespace detail

// Minimum size of an A-B edge-separator between sets of edge-ends, by
// stabilised minimum cuts in sealed quotient truncations, confirmed
// independently at twice the stabilisation depth.
inline LambdaEndsResult lambda_ends(const EndAnalysis& a, const EndSetSpec& aspec,
                                    const EndSetSpec& bspec, int sweep_max = 80) {
  for (int c : aspec.classes)
    if (bspec.classes.count(c))
      throw DomainError("ends-not-separated", "A and B name the same edge-end class",
                        Json{{"class", c}});
  for (int s : aspec.strands)
    if (bspec.strands.count(s))
      throw DomainError("ends-not-separated", "A and B name the same strand", Json{{"strand", s}});

  LambdaEndsResult out;
  out.a_classes = detail::resolve_classes(a, aspec);
  out.b_classes = detail::resolve_classes(a, bspec);
  if (out.a_classes.empty() || out.b_classes.empty())
    throw DomainError("empty-terminals", "end sets must be nonempty");

  for (int c : out.a_classes) {
    if (!out.b_classes.count(c)) continue;
    // Distinct selectors merged into one class: infinitely edge-connected.
    out.infinite = true;
    out.infinite_witness = Json{{"class", c},
                                {"dominators", a.classes[c].dominators},
                                {"strands", a.classes[c].strands}};
    return out;
  }

  std::set<int> terminal_classes = out.a_classes;
  terminal_classes.insert(out.b_classes.begin(), out.b_classes.end());
  SealOptions opt;
  opt.terminal_classes = terminal_classes;

  int window = static_cast<int>(a.presentation.core_names.size()) + a.presentation.total_pattern_size() + 1;
  int last = -1, run = 0, depth = -1, value = -1;
  std::vector<int> recent;
  for (int n = 1; n <= sweep_max; ++n) {
    SealedGraph sg = seal_truncation(a.presentation, a.strands, a.classes, n, opt);
    std::set<VertexId> at, bt;
    for (int c : out.a_classes) at.insert(sg.class_terminal.at(c));
    for (int c : out.b_classes) bt.insert(sg.class_terminal.at(c));
    int v = max_flow_value(sg.graph, at, bt);
    recent.push_back(v);
    if (v == last) {
      if (++run >= window) {
        depth = n;
        value = v;
        break;
      }
    } else {
      last = v;
      run = 1;
    }
  }
  if (depth < 0) {
    int lo = *std::min_element(recent.end() - std::min<std::size_t>(recent.size(), window),
                               recent.end());
    int hi = *std::max_element(recent.end() - std::min<std::size_t>(recent.size(), window),
                               recent.end());
    throw DomainError("stabilization-exceeded",
                      "minimum cut did not stabilise within the sweep",
                      Json{{"lo", lo}, {"hi", hi}, {"sweep_max", sweep_max}});
  }

  // Independent confirmation at twice the stabilisation depth.
  int confirm = 2 * depth;
  SealedGraph deep = seal_truncation(a.presentation, a.strands, a.classes, confirm, opt);
  {
    std::set<VertexId> at, bt;
    for (int c : out.a_classes) at.insert(deep.class_terminal.at(c));
    for (int c : out.b_classes) bt.insert(deep.class_terminal.at(c));
    int v = max_flow_value(deep.graph, at, bt);
    require(v == value, "stabilised cut value must agree with the deep confirmation");
  }

  SealedGraph sg = seal_truncation(a.presentation, a.strands, a.classes, depth, opt);
  std::set<VertexId> at, bt;
  for (int c : out.a_classes) at.insert(sg.class_terminal.at(c));
  for (int c : out.b_classes) bt.insert(sg.class_terminal.at(c));
  std::set<int> both = terminal_classes;
  if (value == 0) {
    Cut cut = min_edge_cut(sg.graph, at, bt);
    out.certificate = detail::make_certificate(a, sg, cut, both);
  } else {
    MengerResult mr = max_edge_disjoint_paths(sg.graph, at, bt);
    require(static_cast<int>(mr.family.size()) == value, "family size must equal the cut value");
    out.certificate = detail::make_certificate(a, sg, mr.cut, both);
  }
  out.k = value;
  out.stab = StabilizationInfo{depth, window, confirm, value};
  return out;
}

// ---------------------------------------------------------------------------
// Lifting sealed paths to connecting paths of the presented graph.

struct LiftedPath {
  ExtendedPath path;
  // How each end of the path meets its terminal: a tail into the class, a
  // finite end at an edge-dominating vertex, or a plain core vertex.
  struct EndInfo {
    enum class Via { CoreVertex, Tail, Dominator };
    Via via = Via::CoreVertex;
    int class_id = -1;
    VertexId vertex = -1;  // core vertex (CoreVertex/Dominator)
  };
  EndInfo front, back;
};

namespace detail {

class FamilyLifter {
 public:
  FamilyLifter(const EndAnalysis& a, const SealedGraph& sg) : a_(&a), sg_(&sg) {
    for (const auto& [v, c] : sg.terminal_class_of) term_class_[v] = c;
    for (const auto& [key, v] : sg.comp_aux)
      if (!term_class_.count(v) && !sg.collector_of.count(v)) aux_comp_[v] = key;
    for (const auto& [v, key] : sg.transit_aux_of) aux_comp_[v] = key;
    // Pocket column hits recorded by the seal are reserved instances.
    for (const auto& [e, pe] : sg.extra_pedge)
      if (pe.kind == PEdgeKind::Dom && !sg.collector_edge.count(e))
        reserved_columns_.insert({pe.index, pe.layer});
  }

  std::vector<LiftedPath> lift(const std::vector<Path>& sealed_paths) {
    std::vector<Proto> protos;
    for (const Path& sp : sealed_paths) protos.push_back(scan(sp));

    // One ray family per strand, entries in encounter order; routed tail
    // excursions block their instances first.
    std::set<PEdge> blocked;
    for (const auto& [strand, router] : routers_) {
      (void)strand;
      blocked.insert(router.used_edges().begin(), router.used_edges().end());
    }
    std::map<int, std::vector<TailSpec>> rays;
    for (auto& [strand, pats] : ray_entries_) {
      int cls = a_->class_of_strand[strand];
      rays[strand] = strand_ray_family(a_->presentation, a_->strands, strand, cls, pats,
                                       sg_->trunc.layers + 1, blocked.empty() ? nullptr : &blocked);
    }

    std::vector<LiftedPath> out;
    for (Proto& pr : protos) {
      LiftedPath lp;
      lp.front = pr.front_info;
      lp.back = pr.back_info;
      shortcut_coords(pr.verts, pr.edges);
      lp.path.vertices = std::move(pr.verts);
      lp.path.edges = std::move(pr.edges);
      if (pr.front_ray) {
        auto [strand, idx] = *pr.front_ray;
        lp.path.tail_front = rays.at(strand)[idx];
      }
      if (pr.back_ray) {
        auto [strand, idx] = *pr.back_ray;
        lp.path.tail_back = rays.at(strand)[idx];
      }
      int tails = (lp.path.tail_front ? 1 : 0) + (lp.path.tail_back ? 1 : 0);
      lp.path.kind = tails == 0 ? ExtendedPath::Kind::Finite
                                : (tails == 1 ? ExtendedPath::Kind::Ray
                                              : ExtendedPath::Kind::DoubleRay);
      require(self_consistent(lp.path), "lifted path must be self-consistent");
      out.push_back(std::move(lp));
    }
    return out;
  }

 private:
  struct Proto {
    std::vector<VCoord> verts;
    std::vector<PEdge> edges;
    std::optional<std::pair<int, int>> front_ray, back_ray;  // (strand, ray index)
    LiftedPath::EndInfo front_info, back_info;
  };

  enum class EdgeClass { Plain, Stub, PocketColumn, Bundle, Collector };

  EdgeClass classify(EdgeId e, PEdge* pe, int* dom_index) const {
    auto it = sg_->trunc.pedge_of.find(e);
    if (it != sg_->trunc.pedge_of.end()) {
      *pe = it->second;
      return EdgeClass::Plain;
    }
    if (sg_->collector_edge.count(e)) return EdgeClass::Collector;
    auto jt = sg_->extra_pedge.find(e);
    if (jt != sg_->extra_pedge.end()) {
      *pe = jt->second;
      return jt->second.kind == PEdgeKind::Inter ? EdgeClass::Stub : EdgeClass::PocketColumn;
    }
    auto bt = sg_->bundle_dom.find(e);
    require(bt != sg_->bundle_dom.end(), "sealed edge must be concrete or a bundle");
    *dom_index = bt->second;
    return EdgeClass::Bundle;
  }

  // Registers a ray entry and returns (strand, index within the strand's
  // entry list).
  std::pair<int, int> add_ray_entry(const PEdge& stub) {
    auto [u, v] = a_->presentation.arms[stub.arm].inter[stub.index];
    (void)u;
    int strand = strand_of(a_->strands, stub.arm, v);
    auto& list = ray_entries_[strand];
    list.push_back(v);
    return {strand, static_cast<int>(list.size()) - 1};
  }

  TailRouter& router_for(int strand) {
    auto it = routers_.find(strand);
    if (it == routers_.end()) {
      it = routers_
               .emplace(strand, TailRouter(a_->presentation, a_->strands, strand,
                                           sg_->trunc.layers + 1))
               .first;
      for (auto [dom, layer] : reserved_columns_)
        it->second.reserve_column(dom, layer);
    }
    return it->second;
  }

  VCoord coord(VertexId v) const { return sg_->trunc.coord_of.at(v); }

  Proto scan(const Path& sp) {
    Proto pr;
    const auto& verts = sp.vertices;
    const auto& edges = sp.edges;
    std::size_t i = 0;  // next edge to consume

    // Front endpoint.
    if (term_class_.count(verts.front())) {
      int cls = term_class_.at(verts.front());
      PEdge pe;
      int dom = -1;
      EdgeClass ec = classify(edges[0], &pe, &dom);
      if (ec == EdgeClass::Collector) {
        // v_omega -- collector -- K -- stub -- truncation
        require(edges.size() >= 2, "collector edges continue through a stub");
        EdgeClass inner = classify(edges[1], &pe, &dom);
        require(inner == EdgeClass::Stub, "collector vertices join stubs to the terminal");
        ec = EdgeClass::Stub;
        i = 1;  // the stub consumes the next slot below
      }
      if (ec == EdgeClass::Stub) {
        auto [strand, idx] = add_ray_entry(pe);
        pr.front_ray = {strand, idx};
        pr.front_info.via = LiftedPath::EndInfo::Via::Tail;
        pr.front_info.class_id = cls;
        auto [u, v] = a_->presentation.arms[pe.arm].inter[pe.index];
        (void)u;
        pr.verts.push_back(VCoord{false, -1, pe.arm, sg_->trunc.layers + 1, v});
        pr.edges.push_back(pe);
        pr.verts.push_back(coord(verts[i + 1]));
      } else {
        require(ec == EdgeClass::Bundle, "terminal edges are stubs, collectors or bundles");
        pr.front_info.via = LiftedPath::EndInfo::Via::Dominator;
        pr.front_info.class_id = cls;
        pr.front_info.vertex = verts[1];
        pr.verts.push_back(coord(verts[1]));
      }
      i += 1;
    } else {
      pr.front_info.via = LiftedPath::EndInfo::Via::CoreVertex;
      pr.front_info.vertex = verts.front();
      pr.verts.push_back(coord(verts.front()));
    }

    while (i < edges.size()) {
      VertexId head = verts[i + 1];
      if (term_class_.count(head)) {
        // Back endpoint.
        int cls = term_class_.at(head);
        PEdge pe;
        int dom = -1;
        EdgeClass ec = classify(edges[i], &pe, &dom);
        require(i + 1 == edges.size(), "class terminals only appear at path ends");
        if (ec == EdgeClass::Stub) {
          auto [strand, idx] = add_ray_entry(pe);
          pr.back_ray = {strand, idx};
          pr.back_info.via = LiftedPath::EndInfo::Via::Tail;
          pr.back_info.class_id = cls;
          auto [u, v] = a_->presentation.arms[pe.arm].inter[pe.index];
          (void)u;
          pr.edges.push_back(pe);
          pr.verts.push_back(VCoord{false, -1, pe.arm, sg_->trunc.layers + 1, v});
        } else {
          require(ec == EdgeClass::Bundle, "terminal edges are stubs or bundles");
          pr.back_info.via = LiftedPath::EndInfo::Via::Dominator;
          pr.back_info.class_id = cls;
          pr.back_info.vertex = verts[i];
        }
        ++i;
        continue;
      }
      if (sg_->collector_of.count(head)) {
        // stub -- K -- collector -- v_omega ends the path; stub -- K -- stub
        // is a boundary transit.
        require(i + 1 < edges.size(), "collector vertices are interior to sealed paths");
        auto [strand, comp] = sg_->collector_of.at(head);
        (void)comp;
        PEdge pe_in, pe_out;
        int dom_in = -1, dom_out = -1;
        EdgeClass in = classify(edges[i], &pe_in, &dom_in);
        EdgeClass outc = classify(edges[i + 1], &pe_out, &dom_out);
        require(in == EdgeClass::Stub, "paths enter collectors through stubs");
        if (outc == EdgeClass::Collector) {
          int cls = term_class_.at(verts[i + 2]);
          require(i + 2 == edges.size(), "class terminals only appear at path ends");
          auto [strand2, idx] = add_ray_entry(pe_in);
          pr.back_ray = {strand2, idx};
          pr.back_info.via = LiftedPath::EndInfo::Via::Tail;
          pr.back_info.class_id = cls;
          auto [u, v] = a_->presentation.arms[pe_in.arm].inter[pe_in.index];
          (void)u;
          pr.edges.push_back(pe_in);
          pr.verts.push_back(VCoord{false, -1, pe_in.arm, sg_->trunc.layers + 1, v});
          i += 2;
          continue;
        }
        require(outc == EdgeClass::Stub, "collector transits run stub to stub");
        ExcursionEndpoint ea = endpoint_of(in, pe_in, dom_in);
        ExcursionEndpoint eb = endpoint_of(outc, pe_out, dom_out);
        RoutedExcursion rx = router_for(strand).route(ea, eb);
        splice(pr, strand, in, pe_in, dom_in, outc, pe_out, dom_out, rx, verts[i + 2]);
        i += 2;
        continue;
      }
      if (aux_comp_.count(head)) {
        // Excursion through a sealed tail region: consume two edges.
        require(i + 1 < edges.size(), "auxiliary vertices are interior");
        auto [strand, comp] = aux_comp_.at(head);
        (void)comp;
        PEdge pe_in, pe_out;
        int dom_in = -1, dom_out = -1;
        EdgeClass in = classify(edges[i], &pe_in, &dom_in);
        EdgeClass outc = classify(edges[i + 1], &pe_out, &dom_out);
        ExcursionEndpoint ea = endpoint_of(in, pe_in, dom_in);
        ExcursionEndpoint eb = endpoint_of(outc, pe_out, dom_out);
        RoutedExcursion rx = router_for(strand).route(ea, eb);
        splice(pr, strand, in, pe_in, dom_in, outc, pe_out, dom_out, rx, verts[i + 2]);
        i += 2;
        continue;
      }
      // Plain step.
      PEdge pe;
      int dom = -1;
      EdgeClass ec = classify(edges[i], &pe, &dom);
      require(ec == EdgeClass::Plain, "bundles and stubs always meet a terminal or aux");
      pr.edges.push_back(pe);
      pr.verts.push_back(coord(head));
      ++i;
    }

    if (pr.back_info.via == LiftedPath::EndInfo::Via::CoreVertex) {
      pr.back_info.vertex = verts.back();
    }
    return pr;
  }

  ExcursionEndpoint endpoint_of(EdgeClass ec, const PEdge& pe, int dom_index) const {
    ExcursionEndpoint ep;
    if (ec == EdgeClass::Stub) {
      ep.via_stub = true;
      ep.pat = a_->presentation.arms[pe.arm].inter[pe.index].second;
      ep.fixed_layer = sg_->trunc.layers + 1;
    } else if (ec == EdgeClass::PocketColumn) {
      ep.pat = a_->presentation.dominating[pe.index].pat;
      ep.dom_index = pe.index;
      ep.fixed_layer = pe.layer;
    } else {
      require(ec == EdgeClass::Bundle, "aux edges are stubs, pockets or bundles");
      ep.pat = a_->presentation.dominating[dom_index].pat;
      ep.dom_index = dom_index;
      ep.fixed_layer = -1;
    }
    return ep;
  }

  void splice(Proto& pr, int strand, EdgeClass in, const PEdge& pe_in, int dom_in, EdgeClass outc,
              const PEdge& pe_out, int dom_out, const RoutedExcursion& rx, VertexId after) {
    int arm = a_->strands[strand].arm;
    auto pos_coord = [&](std::pair<int, int> pos) {
      return VCoord{false, -1, arm, pos.second, pos.first};
    };
    // connector into the region
    if (in == EdgeClass::Stub) {
      pr.edges.push_back(pe_in);
    } else if (in == EdgeClass::PocketColumn) {
      pr.edges.push_back(pe_in);
    } else {
      pr.edges.push_back(PEdge{PEdgeKind::Dom, -1, dom_in, rx.a_layer});
    }
    pr.verts.push_back(pos_coord(rx.positions.front()));
    for (std::size_t k = 0; k < rx.edges.size(); ++k) {
      pr.edges.push_back(rx.edges[k]);
      pr.verts.push_back(pos_coord(rx.positions[k + 1]));
    }
    // connector back out
    if (outc == EdgeClass::Stub) {
      pr.edges.push_back(pe_out);
    } else if (outc == EdgeClass::PocketColumn) {
      pr.edges.push_back(pe_out);
    } else {
      pr.edges.push_back(PEdge{PEdgeKind::Dom, -1, dom_out, rx.b_layer});
    }
    pr.verts.push_back(coord(after));
  }

  static void shortcut_coords(std::vector<VCoord>& verts, std::vector<PEdge>& edges) {
    std::vector<VCoord> vs;
    std::vector<PEdge> es;
    std::map<VCoord, int> pos;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      auto it = pos.find(verts[i]);
      if (it != pos.end()) {
        int keep = it->second;
        while (static_cast<int>(vs.size()) > keep + 1) {
          pos.erase(vs.back());
          vs.pop_back();
          es.pop_back();
        }
      } else {
        vs.push_back(verts[i]);
        pos[verts[i]] = static_cast<int>(vs.size()) - 1;
        if (i > 0) es.push_back(edges[i - 1]);
      }
    }
    verts = std::move(vs);
    edges = std::move(es);
  }

  const EndAnalysis* a_;
  const SealedGraph* sg_;
  std::map<VertexId, int> term_class_;
  std::map<VertexId, std::pair<int, int>> aux_comp_;
  std::map<int, std::vector<int>> ray_entries_;  // strand -> entry pattern vertices
  std::map<int, TailRouter> routers_;
  std::set<std::pair<int, int>> reserved_columns_;
};

}  // namespace detail

struct MengerEndsResult {
  int k = -1;
  std::vector<LiftedPath> family;
  SeparatorCertificate certificate;
  StabilizationInfo stab;
  std::set<int> a_classes, b_classes;
};

// Maximum edge-disjoint A-B path family between edge-end sets, together with
// a certificate cut lying on it: paths are solved in the sealed quotient at
// the stabilisation depth and stubs entering a class terminal are extended
// into rays.
inline MengerEndsResult menger_ends(const EndAnalysis& a, const EndSetSpec& aspec,
                                    const EndSetSpec& bspec, int sweep_max = 80) {
  LambdaEndsResult lam = lambda_ends(a, aspec, bspec, sweep_max);
  if (lam.infinite)
    throw DomainError("infinite-connectivity", "the end sets are infinitely edge-connected",
                      lam.infinite_witness);
  MengerEndsResult out;
  out.k = lam.k;
  out.certificate = lam.certificate;
  out.stab = lam.stab;
  out.a_classes = lam.a_classes;
  out.b_classes = lam.b_classes;

  std::set<int> terminal_classes = lam.a_classes;
  terminal_classes.insert(lam.b_classes.begin(), lam.b_classes.end());
  SealOptions opt;
  opt.terminal_classes = terminal_classes;
  SealedGraph sg = seal_truncation(a.presentation, a.strands, a.classes, lam.stab.depth, opt);
  std::set<VertexId> at, bt;
  for (int c : lam.a_classes) at.insert(sg.class_terminal.at(c));
  for (int c : lam.b_classes) bt.insert(sg.class_terminal.at(c));
  if (out.k == 0) return out;

  MengerResult mr = max_edge_disjoint_paths(sg.graph, at, bt);
  require(static_cast<int>(mr.family.size()) == out.k,
          "sealed family size must equal the stabilised cut value");

  detail::FamilyLifter lifter(a, sg);
  out.family = lifter.lift(mr.family.paths);

  // The certificate lies on the lifted family: exactly one certificate edge
  // per path, every certificate edge used once.
  std::set<std::size_t> used;
  for (const LiftedPath& lp : out.family) {
    int hits = 0;
    for (std::size_t ci = 0; ci < out.certificate.edges.size(); ++ci)
      if (lp.path.uses_edge(out.certificate.edges[ci])) {
        ++hits;
        require(used.insert(ci).second, "certificate edge reused across paths");
      }
    require(hits == 1, "every lifted path carries exactly one certificate edge");
  }
  require(used.size() == out.certificate.edges.size(), "certificate must lie on the family");
  for (std::size_t i = 0; i < out.family.size(); ++i)
    for (std::size_t j = i + 1; j < out.family.size(); ++j)
      require(paths_edge_disjoint(out.family[i].path, out.family[j].path),
              "lifted family must be edge-disjoint");
  return out;
}

// ---------------------------------------------------------------------------
// Lovász-Cherkassky with edge-ends.

struct ReducedGraph {
  SealedGraph sealed;            // pre-contraction sealed truncation
  Multigraph graph;              // contracted: one vertex per terminal class region
  std::vector<EndTerminal> terminals;
  std::vector<VertexId> terminal_vertex;     // in `graph`, parallel to `terminals`
  std::map<int, std::set<VertexId>> region;  // class id -> contracted sealed vertices
  std::map<int, VertexId> region_vertex;     // class id -> merged vertex in `graph`
  std::set<int> terminal_classes;
  int cap = -1;
  int depth = -1;

  bool is_bundle(EdgeId e) const { return sealed.bundle_dom.count(e) > 0; }
};

namespace detail {

// Source-side-minimal cut side around each terminal class's sealed vertex,
// against every other terminal. Minimal sides around distinct terminals are
// pairwise disjoint.
inline std::map<int, std::set<VertexId>> terminal_regions(const SealedGraph& sg,
                                                          const std::set<int>& term_classes,
                                                          const std::set<VertexId>& term_cores) {
  std::map<int, std::set<VertexId>> regions;
  for (int c : term_classes) {
    std::set<VertexId> others(term_cores.begin(), term_cores.end());
    for (int c2 : term_classes)
      if (c2 != c) others.insert(sg.class_terminal.at(c2));
    std::set<VertexId> side;
    if (others.empty()) {
      side.insert(sg.class_terminal.at(c));
    } else {
      side = min_edge_cut(sg.graph, {sg.class_terminal.at(c)}, others).side;
    }
    regions[c] = std::move(side);
  }
  std::set<VertexId> seen;
  for (const auto& [c, side] : regions) {
    (void)c;
    for (VertexId v : side)
      require(seen.insert(v).second, "minimal terminal regions must be pairwise disjoint");
  }
  return regions;
}

}  // namespace detail

// Reduced multigraph for the Lovász-Cherkassky pipeline. Each terminal
// class's region behind a minimum cut (its sealed terminal's source-minimal
// side) is contracted to one vertex, so the cut incident to v_omega is
// minimum, mirroring the shrinking of the contracted subgraphs in the
// underlying construction. Dominating columns appear as bundles of capped
// even multiplicity, adjusted by one copy where an inner endpoint needs even
// degree. Non-terminal tails stay sealed behind auxiliary vertices.
inline ReducedGraph reduced_multigraph(const EndAnalysis& a,
                                       const std::vector<EndTerminal>& terminals,
                                       int cap_override = -1) {
  if (terminals.size() < 2) throw DomainError("too-few-terminals", "|T| must be at least 2");
  std::set<int> term_classes;
  std::set<VertexId> term_cores;
  for (const EndTerminal& t : terminals) {
    if (t.is_class) {
      if (t.class_id < 0 || t.class_id >= static_cast<int>(a.classes.size()))
        throw DomainError("unknown-class", "terminal class out of range");
      if (!term_classes.insert(t.class_id).second)
        throw DomainError("duplicate-terminal", "terminal classes must be pairwise distinct");
    } else {
      if (!a.presentation.core.has_vertex(t.core))
        throw DomainError("unknown-vertex", "terminal core vertex does not exist");
      if (!term_cores.insert(t.core).second)
        throw DomainError("duplicate-terminal", "terminal core vertices must be distinct");
    }
  }
  // T must be discrete in the end topology: a terminal core vertex that
  // edge-dominates a terminal class cannot be split off it by finitely many
  // edges.
  for (VertexId v : term_cores)
    for (int c : term_classes)
      for (int d : a.classes[c].dominators)
        if (d == v)
          throw DomainError("terminals-not-discrete",
                            "a terminal vertex edge-dominates a terminal class",
                            Json{{"vertex", v}, {"class", c}});

  ReducedGraph out;
  out.terminals = terminals;
  out.terminal_classes = term_classes;
  out.depth = a.presentation.max_pattern_size() * static_cast<int>(a.presentation.arms.size()) + 2;

  // Probe pass with uncuttable bundles to measure the contracted graph's
  // finite edge multiplicity.
  SealOptions probe;
  probe.terminal_classes = term_classes;
  SealedGraph probed = seal_truncation(a.presentation, a.strands, a.classes, out.depth, probe);
  {
    auto regions = detail::terminal_regions(probed, term_classes, term_cores);
    std::vector<std::set<VertexId>> parts;
    for (auto& [c, side] : regions) {
      (void)c;
      parts.push_back(side);
    }
    ContractResult cr = contract(probed.graph, parts);
    int finite = 0;
    for (const auto& [e, ends] : cr.graph.edges()) {
      (void)ends;
      if (!probed.bundle_dom.count(e)) ++finite;
    }
    out.cap = cap_override > 0 ? cap_override : 2 * (1 + finite);
  }
  require(out.cap % 2 == 0, "the bundle cap must be even");

  SealOptions opt;
  opt.terminal_classes = term_classes;
  opt.bundle_copies = out.cap;
  out.sealed = seal_truncation(a.presentation, a.strands, a.classes, out.depth, opt);
  out.region = detail::terminal_regions(out.sealed, term_classes, term_cores);
  {
    std::vector<std::set<VertexId>> parts;
    for (auto& [c, side] : out.region) {
      (void)c;
      parts.push_back(side);
    }
    ContractResult cr = contract(out.sealed.graph, parts);
    out.graph = std::move(cr.graph);
    for (int c : term_classes)
      out.region_vertex[c] = cr.vertex_map.at(out.sealed.class_terminal.at(c));
  }

  // Parity correction on the contracted graph: bundle groups may take one
  // extra copy so every inner endpoint keeps even degree. Extra copies are
  // materialised in both graphs under one id so lifting stays total.
  std::set<VertexId> terminal_vertices = term_cores;
  for (int c : term_classes) terminal_vertices.insert(out.region_vertex.at(c));

  using GroupKey = std::pair<VertexId, VertexId>;
  std::map<GroupKey, EdgeId> group_sample;  // contracted endpoints -> surviving bundle edge
  for (const auto& [e, dom] : out.sealed.bundle_dom) {
    (void)dom;
    if (!out.graph.has_edge(e)) continue;  // absorbed into a region
    EdgeEnds ee = out.graph.ends(e);
    auto key = std::minmax(ee.u, ee.v);
    group_sample.emplace(GroupKey{key.first, key.second}, e);
  }
  std::map<VertexId, std::vector<std::pair<VertexId, GroupKey>>> adj;
  for (const auto& [key, sample] : group_sample) {
    (void)sample;
    adj[key.first].push_back({key.second, key});
    adj[key.second].push_back({key.first, key});
  }
  auto bump = [&](const GroupKey& key) {
    EdgeId sample = group_sample.at(key);
    EdgeId id = std::max(out.graph.next_edge_id(), out.sealed.graph.next_edge_id());
    EdgeEnds sealed_ends = out.sealed.graph.ends(sample);
    out.sealed.graph.add_edge_with_id(id, sealed_ends.u, sealed_ends.v);
    EdgeEnds reduced_ends = out.graph.ends(sample);
    out.graph.add_edge_with_id(id, reduced_ends.u, reduced_ends.v);
    out.sealed.bundle_dom[id] = out.sealed.bundle_dom.at(sample);
  };
  std::set<VertexId> visited;
  for (const auto& [start, nbrs] : adj) {
    (void)nbrs;
    if (visited.count(start)) continue;
    std::vector<VertexId> comp{start};
    visited.insert(start);
    for (std::size_t qi = 0; qi < comp.size(); ++qi)
      for (const auto& [w, key] : adj[comp[qi]]) {
        (void)key;
        if (visited.insert(w).second) comp.push_back(w);
      }
    VertexId root = comp.front();
    for (VertexId v : comp)
      if (terminal_vertices.count(v)) root = v;
    std::map<VertexId, std::pair<VertexId, GroupKey>> parent;
    std::vector<VertexId> order;
    std::set<VertexId> seen{root};
    std::vector<VertexId> stack{root};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (const auto& [w, key] : adj[v])
        if (seen.insert(w).second) {
          parent[w] = {v, key};
          stack.push_back(w);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      VertexId v = *it;
      if (v == root || terminal_vertices.count(v)) continue;
      if (out.graph.degree(v) % 2 == 0) continue;
      bump(parent.at(v).second);
    }
    // A terminal-free component with odd total finite degree cannot balance;
    // the parity check reports it as a genuine violation downstream.
  }

  for (const EndTerminal& t : terminals)
    out.terminal_vertex.push_back(t.is_class ? out.region_vertex.at(t.class_id) : t.core);
  return out;
}

struct ParityEndsCheck {
  bool ok = true;
  Json violating;
};

// Exhaustive parity condition on the reduced graph: every X containing the
// terminals has |delta(X)| even, where any crossing bundle counts as
// infinite. Refuses past the enumeration bound.
inline ParityEndsCheck check_parity_condition_ends(const EndAnalysis& a,
                                                   const std::vector<EndTerminal>& terminals,
                                                   int bound = 20) {
  ReducedGraph rg = reduced_multigraph(a, terminals);
  std::set<VertexId> tset(rg.terminal_vertex.begin(), rg.terminal_vertex.end());
  std::vector<VertexId> free;
  for (VertexId v : rg.graph.vertices())
    if (!tset.count(v)) free.push_back(v);
  if (static_cast<int>(free.size()) > bound)
    throw DomainError("enumeration-bound", "parity enumeration exceeds the configured bound",
                      Json{{"free_vertices", free.size()}, {"bound", bound}});
  std::size_t n = free.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<VertexId> x(tset.begin(), tset.end());
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) x.insert(free[i]);
    Cut cut = delta(rg.graph, x);
    bool crosses_bundle = false;
    int finite = 0;
    for (EdgeId e : cut.edges) {
      if (rg.is_bundle(e)) crosses_bundle = true;
      else ++finite;
    }
    if (crosses_bundle) continue;  // |delta(X)| infinite
    if (finite % 2 != 0) {
      Json side = Json::array();
      for (VertexId v : x) side.push_back(v);
      return {false, Json{{"side", side}, {"finite_cut", finite}}};
    }
  }
  return {true, Json()};
}

// Polynomial check of the same predicate: every inner bundle-free vertex has
// even finite degree, and every terminal-free component of the bundle graph
// has even total finite degree.
inline ParityEndsCheck parity_ends_fast(const ReducedGraph& rg) {
  std::set<VertexId> tset(rg.terminal_vertex.begin(), rg.terminal_vertex.end());
  std::map<VertexId, int> finite_deg;
  std::map<VertexId, std::set<VertexId>> bundle_adj;
  for (VertexId v : rg.graph.vertices()) finite_deg[v] = 0;
  for (const auto& [e, ends] : rg.graph.edges()) {
    if (rg.is_bundle(e)) {
      bundle_adj[ends.u].insert(ends.v);
      bundle_adj[ends.v].insert(ends.u);
    } else {
      ++finite_deg[ends.u];
      ++finite_deg[ends.v];
    }
  }
  for (VertexId v : rg.graph.vertices()) {
    if (tset.count(v) || bundle_adj.count(v)) continue;
    if (finite_deg[v] % 2 != 0)
      return {false, Json{{"side", Json::array({v})}, {"odd_vertex", v}}};
  }
  std::set<VertexId> visited;
  for (const auto& [start, nbrs] : bundle_adj) {
    (void)nbrs;
    if (visited.count(start)) continue;
    std::vector<VertexId> comp{start};
    visited.insert(start);
    bool has_terminal = false;
    int total = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (tset.count(comp[i])) has_terminal = true;
      total += finite_deg[comp[i]];
      for (VertexId w : bundle_adj[comp[i]])
        if (visited.insert(w).second) comp.push_back(w);
    }
    if (!has_terminal && total % 2 != 0) {
      Json side = Json::array();
      for (VertexId v : comp) side.push_back(v);
      return {false, Json{{"side", side}, {"finite_cut", total}}};
    }
  }
  return {true, Json()};
}

struct LcEndsResult {
  std::vector<EndTerminal> terminals;
  std::vector<LiftedPath> family;
  std::vector<std::pair<int, int>> path_terminals;  // per path: terminal indices (front, back)
  std::vector<int> lambda;                          // per terminal, on the reduced graph
  std::vector<SeparatorCertificate> per_terminal;   // per terminal
  int cap = -1;
  int depth = -1;
};

// The full Theorem-1 pipeline: reduced graph, finite packing, lifting, and
// per-terminal certified cuts.
inline LcEndsResult lovasz_cherkassky_ends(const EndAnalysis& a,
                                           const std::vector<EndTerminal>& terminals,
                                           int cap_override = -1) {
  ReducedGraph rg = reduced_multigraph(a, terminals, cap_override);
  ParityEndsCheck parity = parity_ends_fast(rg);
  if (!parity.ok)
    throw DomainError("parity-violation", "the parity condition fails on the reduced graph",
                      parity.violating);

  std::set<VertexId> tset(rg.terminal_vertex.begin(), rg.terminal_vertex.end());
  require(static_cast<int>(tset.size()) == static_cast<int>(terminals.size()),
          "terminal vertices must be distinct");
  require(is_inner_eulerian(rg.graph, tset),
          "parity-corrected reduced graph must be inner-Eulerian");

  LcEndsResult out;
  out.terminals = terminals;
  out.cap = rg.cap;
  out.depth = rg.depth;

  // Finite lambdas must stay clearly below the cap, otherwise the instance
  // is not finitely separable and the cap would leak into the answer.
  std::map<VertexId, int> term_index;
  for (std::size_t i = 0; i < rg.terminal_vertex.size(); ++i)
    term_index[rg.terminal_vertex[i]] = static_cast<int>(i);
  for (VertexId t : tset) {
    int l = lambda_terminal(rg.graph, t, tset);
    if (l >= rg.cap)
      throw DomainError("infinite-lambda",
                        "a terminal is not finitely separable from the rest",
                        Json{{"terminal_index", term_index.at(t)}, {"lambda", l}});
  }
  PackingResult pack = pack_tpaths(rg.graph, tset);

  // Un-contract: every packed path entering a region continues inside it to
  // the sealed class terminal along region-internal edge-disjoint
  // extensions, one per boundary edge.
  std::map<std::pair<EdgeId, int>, Path> extension;  // (boundary edge, class) -> w .. v_omega
  for (const auto& [cls, side] : rg.region) {
    VertexId v_omega = rg.sealed.class_terminal.at(cls);
    // boundary edges used by the packing, with their region-side endpoints
    std::vector<std::pair<EdgeId, VertexId>> entries;
    for (const Path& sp : pack.family.paths) {
      if (sp.edges.empty()) continue;
      std::set<EdgeId> ends{sp.edges.front(), sp.edges.back()};
      for (EdgeId e : ends) {
        EdgeEnds se = rg.sealed.graph.ends(e);
        bool u_in = side.count(se.u) > 0, v_in = side.count(se.v) > 0;
        if (u_in == v_in) continue;
        entries.push_back({e, u_in ? se.u : se.v});
      }
    }
    if (entries.empty()) continue;
    std::sort(entries.begin(), entries.end());
    // Region-induced subgraph plus a super-source with one edge per entry.
    // Bundle copies are stretched into chains so the shortest-path search
    // extends entries along concrete strand routes whenever those can carry
    // them, using a dominating column only when it must.
    Multigraph region_graph;
    for (VertexId v : side) region_graph.add_vertex(v);
    VertexId fresh = -1;
    auto next_fresh = [&]() {
      while (region_graph.has_vertex(fresh)) --fresh;
      region_graph.add_vertex(fresh);
      return fresh;
    };
    int chain_len = static_cast<int>(side.size()) + 2;
    std::map<EdgeId, EdgeId> chain_of;  // chain edge -> bundle edge it models
    // concrete edges keep their ids; chains take fresh ids afterwards
    for (const auto& [e, ends] : rg.sealed.graph.edges())
      if (side.count(ends.u) && side.count(ends.v) && !rg.is_bundle(e))
        region_graph.add_edge_with_id(e, ends.u, ends.v);
    for (const auto& [e, ends] : rg.sealed.graph.edges()) {
      if (!side.count(ends.u) || !side.count(ends.v) || !rg.is_bundle(e)) continue;
      VertexId prev = ends.u;
      for (int k = 0; k < chain_len; ++k) {
        VertexId mid = next_fresh();
        chain_of[region_graph.add_edge(prev, mid)] = e;
        prev = mid;
      }
      chain_of[region_graph.add_edge(prev, ends.v)] = e;
    }
    VertexId super = next_fresh();
    for (const auto& [e, w] : entries) {
      (void)e;
      region_graph.add_edge(super, w);
    }
    MengerResult mr = max_edge_disjoint_paths(region_graph, {super}, {v_omega});
    require(mr.family.size() == entries.size(),
            "every boundary entry must extend to the class terminal");
    // collapse stretched bundle chains back to single bundle edges
    for (Path& path : mr.family.paths) {
      Path packed;
      packed.vertices.push_back(path.vertices.front());
      std::size_t i = 0;
      while (i < path.edges.size()) {
        auto it = chain_of.find(path.edges[i]);
        if (it == chain_of.end()) {
          packed.edges.push_back(path.edges[i]);
          packed.vertices.push_back(path.vertices[i + 1]);
          ++i;
          continue;
        }
        EdgeId bundle = it->second;
        while (i < path.edges.size() && chain_of.count(path.edges[i]) &&
               chain_of.at(path.edges[i]) == bundle)
          ++i;
        packed.edges.push_back(bundle);
        packed.vertices.push_back(path.vertices[i]);
      }
      path = std::move(packed);
    }
    // match extensions to entries by their first vertex, in order
    std::vector<bool> taken(mr.family.paths.size(), false);
    for (const auto& [e, w] : entries) {
      bool found = false;
      for (std::size_t k = 0; k < mr.family.paths.size() && !found; ++k) {
        if (taken[k] || mr.family.paths[k].vertices[1] != w) continue;
        taken[k] = true;
        Path ext;
        ext.vertices.assign(mr.family.paths[k].vertices.begin() + 1,
                            mr.family.paths[k].vertices.end());
        ext.edges.assign(mr.family.paths[k].edges.begin() + 1, mr.family.paths[k].edges.end());
        extension[{e, cls}] = std::move(ext);
        found = true;
      }
      require(found, "region extension must start at the entry endpoint");
    }
  }

  std::map<VertexId, int> region_class;  // merged vertex -> class id
  for (const auto& [cls, v] : rg.region_vertex) region_class[v] = cls;
  std::vector<Path> sealed_paths;
  for (const Path& sp : pack.family.paths) {
    bool front_region = region_class.count(sp.front()) > 0;
    bool back_region = region_class.count(sp.back()) > 0;
    Path sealed;
    if (front_region) {
      const Path& ext = extension.at({sp.edges.front(), region_class.at(sp.front())});
      sealed.vertices.assign(ext.vertices.rbegin(), ext.vertices.rend());
      sealed.edges.assign(ext.edges.rbegin(), ext.edges.rend());
    } else {
      sealed.vertices.push_back(sp.front());
    }
    for (std::size_t i = 0; i < sp.edges.size(); ++i) {
      sealed.edges.push_back(sp.edges[i]);
      bool last = (i + 1 == sp.edges.size());
      if (last && back_region) {
        const Path& ext = extension.at({sp.edges.back(), region_class.at(sp.back())});
        sealed.vertices.insert(sealed.vertices.end(), ext.vertices.begin(), ext.vertices.end());
        sealed.edges.insert(sealed.edges.end(), ext.edges.begin(), ext.edges.end());
      } else {
        sealed.vertices.push_back(sp.vertices[i + 1]);
      }
    }
    require(is_valid_path(rg.sealed.graph, sealed), "un-contracted path must be a sealed path");
    sealed_paths.push_back(std::move(sealed));
  }

  detail::FamilyLifter lifter(a, rg.sealed);
  out.family = lifter.lift(sealed_paths);
  for (std::size_t i = 0; i < out.family.size(); ++i) {
    const Path& sp = pack.family.paths[i];
    out.path_terminals.push_back({term_index.at(sp.front()), term_index.at(sp.back())});
  }

  out.lambda.resize(terminals.size());
  out.per_terminal.resize(terminals.size());
  for (std::size_t ti = 0; ti < terminals.size(); ++ti) {
    VertexId t = rg.terminal_vertex[ti];
    out.lambda[ti] = pack.lambda.at(t);
    Cut cut = pack.per_terminal_cuts.at(t);
    // expand merged class vertices back into their sealed regions so the
    // certificate's side description is in sealed terms
    std::set<VertexId> expanded;
    for (VertexId v : cut.side) {
      auto it = region_class.find(v);
      if (it == region_class.end()) expanded.insert(v);
      else expanded.insert(rg.region.at(it->second).begin(), rg.region.at(it->second).end());
    }
    cut.side = std::move(expanded);
    std::set<int> classes_in_scope;
    for (const EndTerminal& tt : terminals)
      if (tt.is_class) classes_in_scope.insert(tt.class_id);
    out.per_terminal[ti] = detail::make_certificate(a, rg.sealed, cut, classes_in_scope);
    // The cut lies on the lifted sub-family of paths ending at the terminal.
    std::set<std::size_t> used;
    for (std::size_t pi = 0; pi < out.family.size(); ++pi) {
      bool mine = out.path_terminals[pi].first == static_cast<int>(ti) ||
                  out.path_terminals[pi].second == static_cast<int>(ti);
      int hits = 0;
      for (std::size_t ci = 0; ci < out.per_terminal[ti].edges.size(); ++ci)
        if (out.family[pi].path.uses_edge(out.per_terminal[ti].edges[ci])) {
          ++hits;
          require(used.insert(ci).second, "per-terminal cut edge reused");
        }
      require(hits == (mine ? 1 : 0), "per-terminal cut must lie on its sub-family");
    }
    require(used.size() == out.per_terminal[ti].edges.size(),
            "per-terminal cut must be exhausted by its sub-family");
  }

  for (std::size_t i = 0; i < out.family.size(); ++i)
    for (std::size_t j = i + 1; j < out.family.size(); ++j)
      require(paths_edge_disjoint(out.family[i].path, out.family[j].path),
              "lifted family must be edge-disjoint");
  long long sum = 0;
  for (int l : out.lambda) sum += l;
  require(static_cast<long long>(out.family.size()) * 2 == sum,
          "family size must equal half the lambda sum");
  return out;
}

}  // namespace edgeends
