#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgeends/suite.hpp"

namespace edgeends::cli {

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// End selectors: "w<k>" names a class, "<armId>" an arm's only strand,
// "<armId>.<k>" the k-th strand of that arm.
inline void parse_end_selector(const EndAnalysis& a, const std::string& sel, EndSetSpec* spec) {
  if (sel.size() >= 2 && sel[0] == 'w' && std::isdigit(static_cast<unsigned char>(sel[1]))) {
    int id = std::stoi(sel.substr(1));
    if (id < 0 || id >= static_cast<int>(a.classes.size()))
      throw DomainError("unknown-class", "no such edge-end class: " + sel);
    spec->classes.insert(id);
    return;
  }
  std::string arm_id = sel;
  int strand_pos = 0;
  auto dot = sel.find('.');
  if (dot != std::string::npos) {
    arm_id = sel.substr(0, dot);
    strand_pos = std::stoi(sel.substr(dot + 1));
  }
  int arm = a.presentation.arm_index(arm_id);
  if (arm < 0) throw DomainError("unknown-arm", "no such arm: " + arm_id);
  int seen = 0;
  for (std::size_t s = 0; s < a.strands.size(); ++s) {
    if (a.strands[s].arm != arm) continue;
    if (seen == strand_pos) {
      spec->strands.insert(static_cast<int>(s));
      return;
    }
    ++seen;
  }
  throw DomainError("unknown-strand", "arm " + arm_id + " has no strand #" +
                                          std::to_string(strand_pos));
}

inline EndTerminal parse_terminal_selector(const EndAnalysis& a, const std::string& sel) {
  int core = a.presentation.core_index(sel);
  if (core >= 0) return EndTerminal{false, -1, core};
  EndSetSpec spec;
  parse_end_selector(a, sel, &spec);
  std::set<int> classes = edgeends::detail::resolve_classes(a, spec);
  require(classes.size() == 1, "terminal selector resolves to one class");
  return EndTerminal{true, *classes.begin(), -1};
}

inline Json analyze_json(const EndAnalysis& a) {
  const Presentation& p = a.presentation;
  Json j;
  j["schema"] = kSchema;
  j["command"] = "analyze";
  Json strands = Json::array();
  for (std::size_t s = 0; s < a.strands.size(); ++s) {
    Json sj;
    sj["id"] = s;
    sj["arm"] = p.arms[a.strands[s].arm].id;
    Json verts = Json::array();
    for (int v : a.strands[s].pat_vertices) verts.push_back(p.arms[a.strands[s].arm].vertices[v]);
    sj["vertices"] = std::move(verts);
    sj["class"] = a.class_of_strand[s];
    RaySpec ray = canonical_ray(p, a.strands, static_cast<int>(s));
    Json period = Json::array();
    for (const RayStep& st : ray.period) period.push_back(raystep_json(p, ray.arm, st));
    sj["canonical_ray"] = Json{{"start",
                                Json{{"vertex", p.arms[ray.arm].vertices[ray.start_vertex]},
                                     {"layer", ray.start_layer}}},
                               {"period", std::move(period)}};
    strands.push_back(std::move(sj));
  }
  j["strands"] = std::move(strands);
  Json classes = Json::array();
  for (const EdgeEndClass& c : a.classes) {
    Json cj;
    cj["id"] = std::string("w") + std::to_string(c.id);
    cj["strands"] = c.strands;
    Json doms = Json::array();
    for (int d : c.dominators) doms.push_back(p.core_names[d]);
    cj["dominators"] = std::move(doms);
    classes.push_back(std::move(cj));
  }
  j["classes"] = std::move(classes);
  return j;
}

inline std::string analyze_text(const EndAnalysis& a) {
  const Presentation& p = a.presentation;
  std::ostringstream out;
  out << a.strands.size() << " strand(s), " << a.classes.size() << " edge-end class(es)\n";
  for (std::size_t s = 0; s < a.strands.size(); ++s) {
    out << "  strand " << s << ": arm " << p.arms[a.strands[s].arm].id << " {";
    bool first = true;
    for (int v : a.strands[s].pat_vertices) {
      if (!first) out << ",";
      out << p.arms[a.strands[s].arm].vertices[v];
      first = false;
    }
    out << "} -> class w" << a.class_of_strand[s] << "\n";
  }
  for (const EdgeEndClass& c : a.classes) {
    out << "  class w" << c.id << ": strands [";
    for (std::size_t i = 0; i < c.strands.size(); ++i)
      out << (i ? "," : "") << c.strands[i];
    out << "], dominators {";
    for (std::size_t i = 0; i < c.dominators.size(); ++i)
      out << (i ? "," : "") << p.core_names[c.dominators[i]];
    out << "}\n";
  }
  return out.str();
}

}  // namespace detail

// Entry point shared by the binary and the tests. Exit codes: 0 success,
// 1 domain errors (structured JSON), 2 I/O, parse, or usage errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"edge-end structure of finitely-presented infinite graphs"};
  app.require_subcommand(1);

  std::string file, graph_file, result_file;
  std::string a_list, b_list, terminals_list;
  std::string format = "json";
  int layers = 3;
  int n_max = 40;
  int bound = 20;
  int sweep = 80;
  int cap = -1;
  std::uint64_t seed = 1;
  int instances = 25;
  int max_v = 8;
  bool cross_check = false;

  auto* analyze = app.add_subcommand("analyze", "strands, edge-end classes, dominators");
  analyze->add_option("file", file)->required();
  analyze->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* trunc = app.add_subcommand("truncate", "finite truncation of a presentation");
  trunc->add_option("file", file)->required();
  trunc->add_option("-n,--layers", layers)->required();
  trunc->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));

  auto* menger = app.add_subcommand("menger", "edge-disjoint Menger on a finite multigraph");
  menger->add_option("--graph", graph_file)->required();
  menger->add_option("--a", a_list)->required();
  menger->add_option("--b", b_list)->required();
  menger->add_flag("--cross-check", cross_check);

  auto* pack = app.add_subcommand("pack", "T-path packing on a finite multigraph");
  pack->add_option("--graph", graph_file)->required();
  pack->add_option("--terminals", terminals_list)->required();

  auto* mends = app.add_subcommand("menger-ends", "Menger duality between edge-end sets");
  mends->add_option("file", file)->required();
  mends->add_option("--a", a_list)->required();
  mends->add_option("--b", b_list)->required();
  mends->add_option("--sweep", sweep);

  auto* lc = app.add_subcommand("lc-ends", "Lovász-Cherkassky with edge-ends");
  lc->add_option("file", file)->required();
  lc->add_option("--terminals", terminals_list)->required();
  lc->add_option("--cap", cap);

  auto* verify = app.add_subcommand("verify", "re-check a stored result against truncations");
  verify->add_option("file", file)->required();
  verify->add_option("result", result_file)->required();
  verify->add_option("--nmax", n_max);

  auto* oracle = app.add_subcommand("oracle", "randomized invariant suites");
  std::string suite_name;
  oracle->add_option("suite", suite_name)
      ->required()
      ->check(CLI::IsMember(
          {"menger-duality", "packing-count", "ends-equivalence", "ends-duality", "lc-ends"}));
  oracle->add_option("--seed", seed);
  oracle->add_option("--instances", instances);
  oracle->add_option("--max-v", max_v);
  oracle->add_option("--bound", bound);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      out << app.help();
      return 0;
    }
    Json j;
    j["schema"] = kSchema;
    j["error"] = Json{{"code", "usage"}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return 2;
  }

  auto emit = [&](const Json& j) { out << j.dump(2) << "\n"; };

  try {
    if (*analyze) {
      EndAnalysis a = EndAnalysis::of(parse_presentation(load_json_file(file)));
      if (format == "text") out << detail::analyze_text(a);
      else emit(detail::analyze_json(a));
      return 0;
    }
    if (*trunc) {
      Presentation p = parse_presentation(load_json_file(file));
      validate_or_throw(p);
      Truncation t = truncate(p, layers);
      if (format == "dot") {
        out << truncation_dot(p, t);
      } else {
        Json j;
        j["schema"] = kSchema;
        j["command"] = "truncate";
        j["layers"] = layers;
        NamedGraph named;
        named.graph = t.graph;
        named.names.resize(t.graph.vertex_count());
        for (const auto& [v, coord] : t.coord_of) named.names[v] = vcoord_label(p, coord);
        j["graph"] = named_graph_json(named);
        emit(j);
      }
      return 0;
    }
    if (*menger) {
      NamedGraph g = parse_named_graph(load_json_file(graph_file));
      std::set<VertexId> a, b;
      for (const auto& name : detail::split_list(a_list)) a.insert(g.index_of(name));
      for (const auto& name : detail::split_list(b_list)) b.insert(g.index_of(name));
      MengerResult r = max_edge_disjoint_paths(g.graph, a, b);
      Json j;
      j["schema"] = kSchema;
      j["command"] = "menger";
      j["result"] = menger_result_json(g, r);
      if (cross_check) {
        MengerResult c = blowup_cross_check(g.graph, a, b);
        j["cross_check"] = Json{{"k", c.family.size()},
                                {"agrees", c.family.size() == r.family.size()}};
      }
      emit(j);
      return 0;
    }
    if (*pack) {
      NamedGraph g = parse_named_graph(load_json_file(graph_file));
      std::set<VertexId> terminals;
      for (const auto& name : detail::split_list(terminals_list))
        terminals.insert(g.index_of(name));
      PackingResult r = pack_tpaths(g.graph, terminals);
      Json j;
      j["schema"] = kSchema;
      j["command"] = "pack";
      j["result"] = packing_result_json(g, r);
      emit(j);
      return 0;
    }
    if (*mends) {
      EndAnalysis a = EndAnalysis::of(parse_presentation(load_json_file(file)));
      EndSetSpec aspec, bspec;
      for (const auto& sel : detail::split_list(a_list)) detail::parse_end_selector(a, sel, &aspec);
      for (const auto& sel : detail::split_list(b_list)) detail::parse_end_selector(a, sel, &bspec);
      LambdaEndsResult lam = lambda_ends(a, aspec, bspec, sweep);
      if (lam.infinite) {
        Json j;
        j["schema"] = kSchema;
        j["command"] = "menger-ends";
        j["infinite"] = true;
        j["witness"] = lam.infinite_witness;
        emit(j);
        return 0;
      }
      MengerEndsResult r = menger_ends(a, aspec, bspec, sweep);
      emit(menger_ends_json(a.presentation, r));
      return 0;
    }
    if (*lc) {
      EndAnalysis a = EndAnalysis::of(parse_presentation(load_json_file(file)));
      std::vector<EndTerminal> terminals;
      for (const auto& sel : detail::split_list(terminals_list))
        terminals.push_back(detail::parse_terminal_selector(a, sel));
      LcEndsResult r = lovasz_cherkassky_ends(a, terminals, cap);
      emit(lc_ends_json(a.presentation, r));
      return 0;
    }
    if (*verify) {
      Presentation p = parse_presentation(load_json_file(file));
      EndAnalysis a = EndAnalysis::of(p);
      Json doc = load_json_file(result_file);
      VerifyJob job = parse_verify_job(p, doc, n_max);
      VerifyReport rep = verify_family(a, job);
      Json j;
      j["schema"] = kSchema;
      j["command"] = "verify";
      j["n_max"] = n_max;
      j["ok"] = rep.ok;
      j["failures"] = rep.failures;
      emit(j);
      return rep.ok ? 0 : 1;
    }
    if (*oracle) {
      SuiteReport rep;
      if (suite_name == "menger-duality")
        rep = menger_duality_suite(seed, std::min(max_v, 5), instances, max_v);
      else if (suite_name == "packing-count")
        rep = packing_suite(seed, instances);
      else if (suite_name == "ends-equivalence")
        rep = ends_equivalence_suite(seed, instances, 6, 40);
      else if (suite_name == "ends-duality")
        rep = ends_duality_suite(seed, instances);
      else
        rep = lc_ends_suite(seed, instances);
      emit(rep.to_json());
      return rep.pass ? 0 : 1;
    }
  } catch (const ParseError& e) {
    Json j;
    j["schema"] = kSchema;
    j["error"] = Json{{"code", e.code()}, {"message", e.what()}, {"detail", e.detail()}};
    err << j.dump(2) << "\n";
    return 2;
  } catch (const DomainError& e) {
    Json j;
    j["schema"] = kSchema;
    j["error"] = Json{{"code", e.code()}, {"message", e.what()}, {"detail", e.detail()}};
    err << j.dump(2) << "\n";
    return 1;
  } catch (const InternalError& e) {
    Json j;
    j["schema"] = kSchema;
    j["error"] = Json{{"code", "internal-error"}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return 1;
  }
  return 2;
}

}  // namespace edgeends::cli
