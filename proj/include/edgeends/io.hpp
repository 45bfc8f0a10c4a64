#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "edgeends/infinite.hpp"
#include "edgeends/tpath.hpp"
#include "edgeends/verify.hpp"

namespace edgeends {

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("io", "cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("parse", std::string("malformed JSON in ") + path + ": " + e.what(),
                     Json{{"byte", e.byte}});
  }
}

// A finite multigraph with user-facing vertex names:
// {"vertices": ["a", ...], "edges": [[id, "a", "b"], ...]}.
struct NamedGraph {
  Multigraph graph;
  std::vector<std::string> names;

  VertexId index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<VertexId>(i);
    throw ParseError("unknown-vertex", "unknown vertex name: " + name);
  }
  const std::string& name_of(VertexId v) const { return names.at(v); }
};

inline NamedGraph parse_named_graph(const Json& j) {
  NamedGraph g;
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph-format", "graph objects need 'vertices' and 'edges'");
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("graph-format", "vertex names must be strings");
    g.names.push_back(v.get<std::string>());
    g.graph.add_vertex(static_cast<VertexId>(g.names.size()) - 1);
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3)
      throw ParseError("graph-format", "edges must be [id, u, v] triples");
    try {
      g.graph.add_edge_with_id(e[0].get<EdgeId>(), g.index_of(e[1].get<std::string>()),
                               g.index_of(e[2].get<std::string>()));
    } catch (const DomainError& err) {
      throw ParseError("graph-format", std::string("bad edge: ") + err.what());
    }
  }
  return g;
}

inline Json named_graph_json(const NamedGraph& g) {
  Json j;
  Json vs = Json::array();
  for (const auto& n : g.names) vs.push_back(n);
  Json es = Json::array();
  for (const auto& [id, e] : g.graph.edges())
    es.push_back(Json::array({id, g.name_of(e.u), g.name_of(e.v)}));
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  return j;
}

inline std::string named_graph_dot(const NamedGraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (const auto& n : g.names) out << "  \"" << n << "\";\n";
  for (const auto& [id, e] : g.graph.edges())
    out << "  \"" << g.name_of(e.u) << "\" -- \"" << g.name_of(e.v) << "\" [label=\"" << id
        << "\"];\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Presentations:
// {"core": {...}, "arms": [{"id","vertices","intra","inter"}],
//  "attach": [[coreName, armId, patName]], "dominating": [[...]]}.

inline Presentation parse_presentation(const Json& j) {
  if (!j.is_object() || !j.contains("core") || !j.contains("arms"))
    throw ParseError("presentation-format", "presentations need 'core' and 'arms'");
  Presentation p;
  NamedGraph core = parse_named_graph(j["core"]);
  p.core = std::move(core.graph);
  p.core_names = std::move(core.names);
  for (const auto& aj : j["arms"]) {
    ArmPattern arm;
    arm.id = aj.at("id").get<std::string>();
    for (const auto& v : aj.at("vertices")) arm.vertices.push_back(v.get<std::string>());
    auto pat_index = [&](const Json& name) {
      int idx = arm.vertex_index(name.get<std::string>());
      if (idx < 0)
        throw ParseError("presentation-format",
                         "unknown pattern vertex '" + name.get<std::string>() + "' in arm " + arm.id);
      return idx;
    };
    if (aj.contains("intra"))
      for (const auto& e : aj["intra"]) arm.intra.push_back({pat_index(e[0]), pat_index(e[1])});
    if (aj.contains("inter"))
      for (const auto& e : aj["inter"]) arm.inter.push_back({pat_index(e[0]), pat_index(e[1])});
    p.arms.push_back(std::move(arm));
  }
  auto parse_link = [&](const Json& lj) {
    ArmLink l;
    std::string core_name = lj[0].get<std::string>();
    std::string arm_id = lj[1].get<std::string>();
    std::string pat_name = lj[2].get<std::string>();
    l.core = p.core_index(core_name);
    if (l.core < 0) throw ParseError("presentation-format", "unknown core vertex: " + core_name);
    l.arm = p.arm_index(arm_id);
    if (l.arm < 0) throw ParseError("presentation-format", "unknown arm: " + arm_id);
    l.pat = p.arms[l.arm].vertex_index(pat_name);
    if (l.pat < 0)
      throw ParseError("presentation-format", "unknown pattern vertex: " + pat_name);
    return l;
  };
  if (j.contains("attach"))
    for (const auto& lj : j["attach"]) p.attach.push_back(parse_link(lj));
  if (j.contains("dominating"))
    for (const auto& lj : j["dominating"]) p.dominating.push_back(parse_link(lj));
  return p;
}

inline Json presentation_json(const Presentation& p) {
  Json j;
  NamedGraph core;
  core.graph = p.core;
  core.names = p.core_names;
  j["core"] = named_graph_json(core);
  Json arms = Json::array();
  for (const ArmPattern& a : p.arms) {
    Json aj;
    aj["id"] = a.id;
    aj["vertices"] = a.vertices;
    Json intra = Json::array(), inter = Json::array();
    for (auto [u, v] : a.intra) intra.push_back(Json::array({a.vertices[u], a.vertices[v]}));
    for (auto [u, v] : a.inter) inter.push_back(Json::array({a.vertices[u], a.vertices[v]}));
    aj["intra"] = std::move(intra);
    aj["inter"] = std::move(inter);
    arms.push_back(std::move(aj));
  }
  j["arms"] = std::move(arms);
  auto links = [&](const std::vector<ArmLink>& ls) {
    Json out = Json::array();
    for (const ArmLink& l : ls)
      out.push_back(Json::array(
          {p.core_names[l.core], p.arms[l.arm].id, p.arms[l.arm].vertices[l.pat]}));
    return out;
  };
  j["attach"] = links(p.attach);
  j["dominating"] = links(p.dominating);
  return j;
}

// ---------------------------------------------------------------------------
// Coordinates, paths, certificates.

inline Json pedge_json(const Presentation& p, const PEdge& e) {
  switch (e.kind) {
    case PEdgeKind::Core: return Json{{"kind", "core"}, {"edge", e.index}};
    case PEdgeKind::Attach: return Json{{"kind", "attach"}, {"index", e.index}};
    case PEdgeKind::Intra:
      return Json{{"kind", "intra"}, {"arm", p.arms[e.arm].id}, {"index", e.index},
                  {"layer", e.layer}};
    case PEdgeKind::Inter:
      return Json{{"kind", "inter"}, {"arm", p.arms[e.arm].id}, {"index", e.index},
                  {"layer", e.layer}};
    case PEdgeKind::Dom: return Json{{"kind", "dom"}, {"index", e.index}, {"layer", e.layer}};
  }
  throw InternalError("unreachable edge kind");
}

inline PEdge parse_pedge(const Presentation& p, const Json& j) {
  PEdge e;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "core") {
    e.kind = PEdgeKind::Core;
    e.index = j.at("edge").get<int>();
  } else if (kind == "attach") {
    e.kind = PEdgeKind::Attach;
    e.index = j.at("index").get<int>();
    e.layer = 0;
  } else if (kind == "intra" || kind == "inter") {
    e.kind = kind == "intra" ? PEdgeKind::Intra : PEdgeKind::Inter;
    e.arm = p.arm_index(j.at("arm").get<std::string>());
    if (e.arm < 0) throw ParseError("unknown-arm", "unknown arm in edge coordinate");
    e.index = j.at("index").get<int>();
    e.layer = j.at("layer").get<int>();
  } else if (kind == "dom") {
    e.kind = PEdgeKind::Dom;
    e.index = j.at("index").get<int>();
    e.layer = j.at("layer").get<int>();
  } else {
    throw ParseError("edge-format", "unknown edge kind: " + kind);
  }
  if (!pedge_valid(p, e)) throw ParseError("edge-format", "edge coordinate out of range");
  return e;
}

inline Json vcoord_json(const Presentation& p, const VCoord& v) {
  if (v.is_core) return Json{{"core", p.core_names.at(v.core)}};
  return Json{{"arm", p.arms.at(v.arm).id}, {"layer", v.layer},
              {"vertex", p.arms.at(v.arm).vertices.at(v.pat)}};
}

inline VCoord parse_vcoord(const Presentation& p, const Json& j) {
  VCoord v;
  if (j.contains("core")) {
    v.is_core = true;
    v.core = p.core_index(j["core"].get<std::string>());
    if (v.core < 0) throw ParseError("unknown-vertex", "unknown core vertex in coordinate");
    return v;
  }
  v.is_core = false;
  v.arm = p.arm_index(j.at("arm").get<std::string>());
  if (v.arm < 0) throw ParseError("unknown-arm", "unknown arm in coordinate");
  v.layer = j.at("layer").get<int>();
  v.pat = p.arms[v.arm].vertex_index(j.at("vertex").get<std::string>());
  if (v.pat < 0) throw ParseError("unknown-vertex", "unknown pattern vertex in coordinate");
  return v;
}

inline Json raystep_json(const Presentation& p, int arm, const RayStep& s) {
  return Json{{"to", p.arms[arm].vertices.at(s.vertex)},
              {"incr", s.layer_incr},
              {"via", s.intra ? "intra" : "inter"},
              {"index", s.edge_index}};
}

inline RayStep parse_raystep(const Presentation& p, int arm, const Json& j) {
  RayStep s;
  s.vertex = p.arms.at(arm).vertex_index(j.at("to").get<std::string>());
  if (s.vertex < 0) throw ParseError("unknown-vertex", "unknown vertex in ray step");
  s.layer_incr = j.at("incr").get<int>();
  s.intra = j.at("via").get<std::string>() == "intra";
  s.edge_index = j.at("index").get<int>();
  return s;
}

inline Json tail_json(const Presentation& p, const TailSpec& t) {
  Json j;
  j["arm"] = p.arms.at(t.arm).id;
  j["strand"] = t.strand;
  j["class"] = t.class_id;
  j["start"] = Json{{"vertex", p.arms[t.arm].vertices.at(t.start_vertex)},
                    {"layer", t.start_layer}};
  Json pre = Json::array(), per = Json::array();
  for (const RayStep& s : t.preperiod) pre.push_back(raystep_json(p, t.arm, s));
  for (const RayStep& s : t.period) per.push_back(raystep_json(p, t.arm, s));
  j["preperiod"] = std::move(pre);
  j["period"] = std::move(per);
  return j;
}

inline TailSpec parse_tail(const Presentation& p, const Json& j) {
  TailSpec t;
  t.arm = p.arm_index(j.at("arm").get<std::string>());
  if (t.arm < 0) throw ParseError("unknown-arm", "unknown arm in tail");
  t.strand = j.at("strand").get<int>();
  t.class_id = j.at("class").get<int>();
  t.start_vertex = p.arms[t.arm].vertex_index(j.at("start").at("vertex").get<std::string>());
  t.start_layer = j.at("start").at("layer").get<int>();
  for (const auto& sj : j.at("preperiod")) t.preperiod.push_back(parse_raystep(p, t.arm, sj));
  for (const auto& sj : j.at("period")) t.period.push_back(parse_raystep(p, t.arm, sj));
  return t;
}

inline Json endinfo_json(const Presentation& p, const LiftedPath::EndInfo& info) {
  switch (info.via) {
    case LiftedPath::EndInfo::Via::CoreVertex:
      return Json{{"via", "vertex"}, {"vertex", p.core_names.at(info.vertex)}};
    case LiftedPath::EndInfo::Via::Tail:
      return Json{{"via", "tail"}, {"class", info.class_id}};
    case LiftedPath::EndInfo::Via::Dominator:
      return Json{{"via", "dominator"}, {"class", info.class_id},
                  {"vertex", p.core_names.at(info.vertex)}};
  }
  throw InternalError("unreachable end info");
}

inline LiftedPath::EndInfo parse_endinfo(const Presentation& p, const Json& j) {
  LiftedPath::EndInfo info;
  std::string via = j.at("via").get<std::string>();
  if (via == "vertex") {
    info.via = LiftedPath::EndInfo::Via::CoreVertex;
    info.vertex = p.core_index(j.at("vertex").get<std::string>());
  } else if (via == "tail") {
    info.via = LiftedPath::EndInfo::Via::Tail;
    info.class_id = j.at("class").get<int>();
  } else if (via == "dominator") {
    info.via = LiftedPath::EndInfo::Via::Dominator;
    info.class_id = j.at("class").get<int>();
    info.vertex = p.core_index(j.at("vertex").get<std::string>());
  } else {
    throw ParseError("path-format", "unknown end info: " + via);
  }
  return info;
}

inline Json lifted_path_json(const Presentation& p, const LiftedPath& lp) {
  Json j;
  switch (lp.path.kind) {
    case ExtendedPath::Kind::Finite: j["kind"] = "finite"; break;
    case ExtendedPath::Kind::Ray: j["kind"] = "ray"; break;
    case ExtendedPath::Kind::DoubleRay: j["kind"] = "double-ray"; break;
  }
  Json vs = Json::array(), es = Json::array();
  for (const VCoord& v : lp.path.vertices) vs.push_back(vcoord_json(p, v));
  for (const PEdge& e : lp.path.edges) es.push_back(pedge_json(p, e));
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  if (lp.path.tail_front) j["tail_front"] = tail_json(p, *lp.path.tail_front);
  if (lp.path.tail_back) j["tail_back"] = tail_json(p, *lp.path.tail_back);
  j["front"] = endinfo_json(p, lp.front);
  j["back"] = endinfo_json(p, lp.back);
  return j;
}

inline LiftedPath parse_lifted_path(const Presentation& p, const Json& j) {
  LiftedPath lp;
  std::string kind = j.at("kind").get<std::string>();
  lp.path.kind = kind == "finite" ? ExtendedPath::Kind::Finite
                                  : (kind == "ray" ? ExtendedPath::Kind::Ray
                                                   : ExtendedPath::Kind::DoubleRay);
  for (const auto& vj : j.at("vertices")) lp.path.vertices.push_back(parse_vcoord(p, vj));
  for (const auto& ej : j.at("edges")) lp.path.edges.push_back(parse_pedge(p, ej));
  if (j.contains("tail_front")) lp.path.tail_front = parse_tail(p, j["tail_front"]);
  if (j.contains("tail_back")) lp.path.tail_back = parse_tail(p, j["tail_back"]);
  lp.front = parse_endinfo(p, j.at("front"));
  lp.back = parse_endinfo(p, j.at("back"));
  return lp;
}

inline Json certificate_json(const Presentation& p, const SeparatorCertificate& c) {
  Json j;
  Json edges = Json::array();
  for (const PEdge& e : c.edges) edges.push_back(pedge_json(p, e));
  j["edges"] = std::move(edges);
  j["depth"] = c.depth;
  j["side_classes"] = c.side_classes;
  Json side = Json::array();
  for (const VCoord& v : c.side_vertices) side.push_back(vcoord_json(p, v));
  j["side_vertices"] = std::move(side);
  Json ev = Json::array();
  for (const auto& e : c.evidence) {
    Json collar = Json::array();
    for (const PEdge& ce : e.collar) collar.push_back(pedge_json(p, ce));
    ev.push_back(Json{{"class", e.class_id}, {"collar", std::move(collar)}});
  }
  j["evidence"] = std::move(ev);
  return j;
}

inline SeparatorCertificate parse_certificate(const Presentation& p, const Json& j) {
  SeparatorCertificate c;
  for (const auto& ej : j.at("edges")) c.edges.push_back(parse_pedge(p, ej));
  c.depth = j.value("depth", -1);
  if (j.contains("side_classes"))
    for (const auto& cid : j["side_classes"]) c.side_classes.push_back(cid.get<int>());
  if (j.contains("side_vertices"))
    for (const auto& vj : j["side_vertices"]) c.side_vertices.push_back(parse_vcoord(p, vj));
  if (j.contains("evidence"))
    for (const auto& ej : j["evidence"]) {
      SeparatorCertificate::EndEvidence ev;
      ev.class_id = ej.at("class").get<int>();
      for (const auto& ce : ej.at("collar")) ev.collar.push_back(parse_pedge(p, ce));
      c.evidence.push_back(std::move(ev));
    }
  return c;
}

inline Json terminal_json(const Presentation& p, const EndTerminal& t) {
  if (t.is_class) return Json{{"kind", "class"}, {"id", t.class_id}};
  return Json{{"kind", "vertex"}, {"name", p.core_names.at(t.core)}};
}

inline EndTerminal parse_terminal(const Presentation& p, const Json& j) {
  EndTerminal t;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "class") {
    t.is_class = true;
    t.class_id = j.at("id").get<int>();
  } else if (kind == "vertex") {
    t.is_class = false;
    t.core = p.core_index(j.at("name").get<std::string>());
    if (t.core < 0) throw ParseError("unknown-vertex", "unknown terminal vertex");
  } else {
    throw ParseError("terminal-format", "unknown terminal kind: " + kind);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Result documents.

inline Json menger_ends_json(const Presentation& p, const MengerEndsResult& r) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "menger-ends";
  j["a_classes"] = r.a_classes;
  j["b_classes"] = r.b_classes;
  j["k"] = r.k;
  j["stabilization"] = Json{{"depth", r.stab.depth},
                            {"window", r.stab.window},
                            {"confirmed_depth", r.stab.confirmed_depth},
                            {"value", r.stab.value}};
  Json fam = Json::array();
  for (const LiftedPath& lp : r.family) fam.push_back(lifted_path_json(p, lp));
  j["family"] = std::move(fam);
  j["certificate"] = certificate_json(p, r.certificate);
  return j;
}

inline Json lc_ends_json(const Presentation& p, const LcEndsResult& r) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "lc-ends";
  Json ts = Json::array();
  for (const EndTerminal& t : r.terminals) ts.push_back(terminal_json(p, t));
  j["terminals"] = std::move(ts);
  j["cap"] = r.cap;
  j["depth"] = r.depth;
  j["lambda"] = r.lambda;
  Json fam = Json::array();
  for (const LiftedPath& lp : r.family) fam.push_back(lifted_path_json(p, lp));
  j["family"] = std::move(fam);
  Json pt = Json::array();
  for (const auto& [f, b] : r.path_terminals) pt.push_back(Json::array({f, b}));
  j["path_terminals"] = std::move(pt);
  Json certs = Json::array();
  for (const auto& c : r.per_terminal) certs.push_back(certificate_json(p, c));
  j["per_terminal"] = std::move(certs);
  return j;
}

// Rebuilds the verification job from a stored menger-ends or lc-ends report.
inline VerifyJob parse_verify_job(const Presentation& p, const Json& j, int n_max) {
  VerifyJob job;
  job.n_max = n_max;
  std::string command = j.at("command").get<std::string>();
  for (const auto& pj : j.at("family")) job.family.push_back(parse_lifted_path(p, pj));
  if (command == "menger-ends") {
    VerifyItem item;
    item.certificate = parse_certificate(p, j.at("certificate"));
    for (const auto& c : j.at("a_classes")) item.a_side.push_back(EndTerminal{true, c.get<int>(), -1});
    for (const auto& c : j.at("b_classes")) item.b_side.push_back(EndTerminal{true, c.get<int>(), -1});
    for (std::size_t i = 0; i < job.family.size(); ++i)
      item.subfamily.push_back(static_cast<int>(i));
    job.items.push_back(std::move(item));
  } else if (command == "lc-ends") {
    std::vector<EndTerminal> terminals;
    for (const auto& tj : j.at("terminals")) terminals.push_back(parse_terminal(p, tj));
    std::vector<std::pair<int, int>> path_terms;
    for (const auto& pt : j.at("path_terminals"))
      path_terms.push_back({pt[0].get<int>(), pt[1].get<int>()});
    const Json& certs = j.at("per_terminal");
    for (std::size_t ti = 0; ti < terminals.size(); ++ti) {
      VerifyItem item;
      item.certificate = parse_certificate(p, certs.at(ti));
      item.a_side = {terminals[ti]};
      for (std::size_t tj = 0; tj < terminals.size(); ++tj)
        if (tj != ti) item.b_side.push_back(terminals[tj]);
      for (std::size_t pi = 0; pi < path_terms.size(); ++pi)
        if (path_terms[pi].first == static_cast<int>(ti) ||
            path_terms[pi].second == static_cast<int>(ti))
          item.subfamily.push_back(static_cast<int>(pi));
      job.items.push_back(std::move(item));
    }
  } else {
    throw ParseError("result-format", "cannot verify reports of command: " + command);
  }
  return job;
}

// ---------------------------------------------------------------------------
// Reports for the finite commands.

inline Json path_json(const NamedGraph& g, const Path& path) {
  Json vs = Json::array(), es = Json::array();
  for (VertexId v : path.vertices) vs.push_back(g.name_of(v));
  for (EdgeId e : path.edges) es.push_back(e);
  return Json{{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

inline Json menger_result_json(const NamedGraph& g, const MengerResult& r) {
  Json j;
  j["k"] = r.family.size();
  Json fam = Json::array();
  for (const Path& path : r.family.paths) fam.push_back(path_json(g, path));
  j["family"] = std::move(fam);
  Json side = Json::array();
  for (VertexId v : r.cut.side) side.push_back(g.name_of(v));
  Json edges = Json::array();
  for (EdgeId e : r.cut.edges) edges.push_back(e);
  j["cut"] = Json{{"side", std::move(side)}, {"edges", std::move(edges)}};
  Json lies = Json::object();
  for (const auto& [pi, e] : r.lies_on) lies[std::to_string(pi)] = e;
  j["lies_on"] = std::move(lies);
  return j;
}

inline Json packing_result_json(const NamedGraph& g, const PackingResult& r) {
  Json j;
  j["size"] = r.family.size();
  Json fam = Json::array();
  for (const Path& path : r.family.paths) fam.push_back(path_json(g, path));
  j["family"] = std::move(fam);
  Json lambdas = Json::object(), cuts = Json::object();
  for (const auto& [t, l] : r.lambda) lambdas[g.name_of(t)] = l;
  for (const auto& [t, cut] : r.per_terminal_cuts) {
    Json edges = Json::array();
    for (EdgeId e : cut.edges) edges.push_back(e);
    cuts[g.name_of(t)] = std::move(edges);
  }
  j["lambda"] = std::move(lambdas);
  j["per_terminal_cuts"] = std::move(cuts);
  return j;
}

// ---------------------------------------------------------------------------
// DOT export for truncations and reduced graphs.

inline std::string vcoord_label(const Presentation& p, const VCoord& v) {
  if (v.is_core) return p.core_names.at(v.core);
  return p.arms.at(v.arm).id + "[" + std::to_string(v.layer) + "]" +
         p.arms.at(v.arm).vertices.at(v.pat);
}

inline std::string truncation_dot(const Presentation& p, const Truncation& t) {
  std::ostringstream out;
  out << "graph truncation {\n";
  for (const auto& [v, coord] : t.coord_of)
    out << "  " << v << " [label=\"" << vcoord_label(p, coord) << "\"];\n";
  for (const auto& [id, e] : t.graph.edges()) {
    out << "  " << e.u << " -- " << e.v;
    const PEdge& pe = t.pedge_of.at(id);
    if (pe.kind == PEdgeKind::Dom) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string reduced_dot(const Presentation& p, const ReducedGraph& rg) {
  std::ostringstream out;
  out << "graph reduced {\n";
  std::map<VertexId, int> region_class;
  for (const auto& [cls, v] : rg.region_vertex) region_class[v] = cls;
  for (VertexId v : rg.graph.vertices()) {
    out << "  " << v;
    auto it = region_class.find(v);
    if (it != region_class.end())
      out << " [label=\"w" << it->second << "\", shape=doublecircle]";
    else if (rg.sealed.trunc.coord_of.count(v))
      out << " [label=\"" << vcoord_label(p, rg.sealed.trunc.coord_of.at(v)) << "\"]";
    else
      out << " [label=\"aux" << v << "\", shape=box]";
    out << ";\n";
  }
  // bundles collapse to one styled edge per group
  std::set<std::pair<VertexId, VertexId>> bundles_drawn;
  for (const auto& [id, e] : rg.graph.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (rg.is_bundle(id)) {
      if (bundles_drawn.insert({key.first, key.second}).second)
        out << "  " << e.u << " -- " << e.v << " [style=bold, color=red, label=\"inf\"];\n";
      continue;
    }
    out << "  " << e.u << " -- " << e.v << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace edgeends
