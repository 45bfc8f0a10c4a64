#pragma once

#include <functional>
#include <string>

#include "edgeends/io.hpp"
#include "edgeends/random.hpp"
#include "edgeends/verify.hpp"

namespace edgeends {

// Outcome of one oracle suite run; counterexamples carry the serialized
// instance so failures are reproducible verbatim.
struct SuiteReport {
  std::string suite;
  bool pass = true;
  bool vacuous = false;
  int checked = 0;
  Json counterexample;

  Json to_json() const {
    Json j;
    j["schema"] = kSchema;
    j["suite"] = suite;
    j["pass"] = pass;
    j["checked"] = checked;
    if (vacuous) j["warning"] = "no instances were generated; the pass is vacuous";
    if (!pass) j["counterexample"] = counterexample;
    return j;
  }
};

namespace detail {

inline bool separates_sets(const Multigraph& g, const std::set<VertexId>& a,
                           const std::set<VertexId>& b, const std::set<EdgeId>& removed) {
  return !connects(g, a, b, removed);
}

inline Json graph_counterexample(const Multigraph& g, const Json& extra) {
  NamedGraph named;
  named.graph = g;
  for (VertexId v : g.vertices()) named.names.push_back("v" + std::to_string(v));
  Json j = extra;
  j["graph"] = named_graph_json(named);
  return j;
}

}  // namespace detail

// All connected simple graphs on `n` labelled vertices, streamed to `fn`
// until it returns false.
inline bool for_each_connected_graph(int n, const std::function<bool(const Multigraph&)>& fn) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask & (std::uint64_t{1} << s)) g.add_edge(slots[s].first, slots[s].second);
    // connectivity check
    std::set<VertexId> seen{0};
    std::vector<VertexId> stack{0};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other_end(e, v);
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    if (static_cast<int>(seen.size()) != n) continue;
    if (!fn(g)) return false;
  }
  return true;
}

// Menger duality: |family| = |cut|, the cut is delta(X) lying on the family,
// the cut separates, and the blow-up route agrees. Exhaustive over connected
// simple graphs up to `exhaustive_v`, then random multigraphs.
inline SuiteReport menger_duality_suite(std::uint64_t seed, int exhaustive_v, int random_instances,
                                        int max_v = 8) {
  SuiteReport rep;
  rep.suite = "menger-duality";
  auto check_instance = [&](const Multigraph& g, VertexId a, VertexId b) {
    MengerResult direct = max_edge_disjoint_paths(g, {a}, {b});
    Cut mc = min_edge_cut(g, {a}, {b});
    MengerResult cross = blowup_cross_check(g, {a}, {b});
    bool ok = direct.family.size() == direct.cut.edges.size() &&
              mc.edges.size() == direct.family.size() &&
              delta(g, direct.cut.side).edges == direct.cut.edges &&
              verify_lies_on(direct.family, direct.cut) &&
              detail::separates_sets(g, {a}, {b}, direct.cut.edges) &&
              cross.family.size() == direct.family.size();
    if (!ok)
      rep.counterexample = detail::graph_counterexample(
          g, Json{{"a", a},
                  {"b", b},
                  {"direct", direct.family.size()},
                  {"min_cut", mc.edges.size()},
                  {"cross", cross.family.size()}});
    ++rep.checked;
    return ok;
  };
  for (int n = 2; n <= exhaustive_v && rep.pass; ++n) {
    rep.pass = for_each_connected_graph(n, [&](const Multigraph& g) {
      for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
          if (!check_instance(g, a, b)) return false;
      return true;
    });
  }
  Rng rng(seed);
  for (int i = 0; i < random_instances && rep.pass; ++i) {
    Multigraph g = random_multigraph(rng, max_v, 3 * max_v);
    int n = g.vertex_count();
    VertexId a = rng.below(n), b = rng.below(n);
    if (a == b) continue;
    rep.pass = check_instance(g, a, b);
  }
  rep.vacuous = rep.checked == 0;
  return rep;
}

// Lovász-Cherkassky packing count: size = half the lambda sum, per-terminal
// cuts separate and lie on their sub-families.
inline SuiteReport packing_suite(std::uint64_t seed, int instances, int max_v = 12,
                                 int max_e = 30) {
  SuiteReport rep;
  rep.suite = "packing-count";
  Rng rng(seed);
  for (int i = 0; i < instances && rep.pass; ++i) {
    Multigraph g = random_multigraph(rng, max_v, max_e - 4);
    std::set<VertexId> terminals = random_terminals(rng, g, rng.between(2, 4));
    if (terminals.size() < 2) continue;
    repair_inner_eulerian(g, terminals);
    if (g.edge_count() > max_e) continue;
    if (!is_inner_eulerian(g, terminals)) continue;
    PackingResult r = pack_tpaths(g, terminals);
    long long sum = 0;
    for (auto& [t, l] : r.lambda) sum += l;
    bool ok = static_cast<long long>(r.family.size()) * 2 == sum;
    std::set<EdgeId> used;
    for (const Path& path : r.family.paths) {
      if (!is_valid_path(g, path)) ok = false;
      if (!terminals.count(path.front()) || !terminals.count(path.back())) ok = false;
      for (std::size_t k = 1; k + 1 < path.vertices.size(); ++k)
        if (terminals.count(path.vertices[k])) ok = false;
      for (EdgeId e : path.edges)
        if (!used.insert(e).second) ok = false;
    }
    for (VertexId t : terminals) {
      std::set<VertexId> rest = terminals;
      rest.erase(t);
      const Cut& cut = r.per_terminal_cuts.at(t);
      if (!detail::separates_sets(g, {t}, rest, cut.edges)) ok = false;
      PathFamily sub;
      for (const Path& path : r.family.paths)
        if (path.front() == t || path.back() == t) sub.paths.push_back(path);
      if (!verify_lies_on(sub, cut)) ok = false;
    }
    if (!ok) {
      Json tj = Json::array();
      for (VertexId t : terminals) tj.push_back(t);
      rep.counterexample = detail::graph_counterexample(g, Json{{"terminals", tj}});
      rep.pass = false;
    }
    ++rep.checked;
  }
  rep.vacuous = rep.checked == 0;
  return rep;
}

// Symbolic edge-end classes against the truncation-flow oracle.
inline SuiteReport ends_equivalence_suite(std::uint64_t seed, int instances, int k_threshold = 10,
                                          int n_deep = 60) {
  SuiteReport rep;
  rep.suite = "ends-equivalence";
  Rng rng(seed);
  for (int i = 0; i < instances && rep.pass; ++i) {
    Presentation p = random_presentation(rng);
    EndAnalysis a = EndAnalysis::of(p);
    auto oracle = class_flow_oracle(a, k_threshold, n_deep);
    if (!oracle.agree) {
      Json pairs = Json::array();
      for (const auto& pr : oracle.pairs)
        if (!pr.ok)
          pairs.push_back(Json{{"strand_a", pr.strand_a},
                               {"strand_b", pr.strand_b},
                               {"same_class", pr.same_class},
                               {"value", pr.value}});
      rep.counterexample = Json{{"presentation", presentation_json(p)}, {"pairs", pairs}};
      rep.pass = false;
    }
    ++rep.checked;
  }
  rep.vacuous = rep.checked == 0;
  return rep;
}

// Edge-end Menger duality on random presentations: for every ordered pair of
// distinct classes, |family| = lambda = |certificate| and the verifier passes
// at four times the stabilisation depth.
inline SuiteReport ends_duality_suite(std::uint64_t seed, int instances, int verify_factor = 4) {
  SuiteReport rep;
  rep.suite = "ends-duality";
  Rng rng(seed);
  for (int i = 0; i < instances && rep.pass; ++i) {
    Presentation p = random_presentation(rng);
    EndAnalysis a = EndAnalysis::of(p);
    if (a.classes.size() < 2) continue;
    for (std::size_t x = 0; x < a.classes.size() && rep.pass; ++x) {
      for (std::size_t y = x + 1; y < a.classes.size() && rep.pass; ++y) {
        MengerEndsResult r = menger_ends(a, EndSetSpec{{static_cast<int>(x)}, {}},
                                         EndSetSpec{{static_cast<int>(y)}, {}});
        bool ok = static_cast<int>(r.family.size()) == r.k &&
                  static_cast<int>(r.certificate.edges.size()) == r.k &&
                  r.stab.value == r.k;
        if (ok) {
          VerifyJob job;
          job.family = r.family;
          job.n_max = verify_factor * r.stab.depth;
          VerifyItem item;
          item.certificate = r.certificate;
          for (int c : r.a_classes) item.a_side.push_back(EndTerminal{true, c, -1});
          for (int c : r.b_classes) item.b_side.push_back(EndTerminal{true, c, -1});
          for (std::size_t k = 0; k < r.family.size(); ++k)
            item.subfamily.push_back(static_cast<int>(k));
          job.items.push_back(std::move(item));
          ok = verify_family(a, job).ok;
        }
        if (!ok) {
          rep.counterexample = Json{{"presentation", presentation_json(p)},
                                    {"a", x},
                                    {"b", y},
                                    {"k", r.k},
                                    {"family", r.family.size()},
                                    {"certificate", r.certificate.edges.size()}};
          rep.pass = false;
        }
        ++rep.checked;
      }
    }
  }
  rep.vacuous = rep.checked == 0;
  return rep;
}

// Lovász-Cherkassky with edge-ends on generated instances: edge-disjoint
// family, certified per-terminal cuts, and cap independence.
inline SuiteReport lc_ends_suite(std::uint64_t seed, int instances, int n_max = 30) {
  SuiteReport rep;
  rep.suite = "lc-ends";
  Rng rng(seed);
  int attempts = 0;
  while (rep.checked < instances && attempts < 20 * instances && rep.pass) {
    ++attempts;
    auto inst = random_lc_instance(rng);
    if (!inst) continue;
    EndAnalysis a = EndAnalysis::of(inst->presentation);
    LcEndsResult r = lovasz_cherkassky_ends(a, inst->terminals);
    long long sum = 0;
    for (int l : r.lambda) sum += l;
    bool ok = static_cast<long long>(r.family.size()) * 2 == sum;
    if (ok) {
      VerifyJob job;
      job.family = r.family;
      job.n_max = n_max;
      for (std::size_t ti = 0; ti < r.terminals.size(); ++ti) {
        VerifyItem item;
        item.certificate = r.per_terminal[ti];
        item.a_side = {r.terminals[ti]};
        for (std::size_t tj = 0; tj < r.terminals.size(); ++tj)
          if (tj != ti) item.b_side.push_back(r.terminals[tj]);
        for (std::size_t pi = 0; pi < r.family.size(); ++pi)
          if (r.path_terminals[pi].first == static_cast<int>(ti) ||
              r.path_terminals[pi].second == static_cast<int>(ti))
            item.subfamily.push_back(static_cast<int>(pi));
        job.items.push_back(std::move(item));
      }
      ok = verify_family(a, job).ok;
    }
    if (ok) {
      // cap independence: doubling the bundle cap changes no reported size
      LcEndsResult doubled = lovasz_cherkassky_ends(a, inst->terminals, 2 * r.cap);
      ok = doubled.lambda == r.lambda && doubled.family.size() == r.family.size();
    }
    if (!ok) {
      Json ts = Json::array();
      for (const EndTerminal& t : inst->terminals)
        ts.push_back(terminal_json(inst->presentation, t));
      rep.counterexample =
          Json{{"presentation", presentation_json(inst->presentation)}, {"terminals", ts}};
      rep.pass = false;
    }
    ++rep.checked;
  }
  rep.vacuous = rep.checked == 0;
  return rep;
}

}  // namespace edgeends
