#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "locwheel/certificate.hpp"
#include "locwheel/decomposer.hpp"
#include "locwheel/oracle.hpp"

namespace locwheel {

struct Violation {
  std::string invariant;
  std::string location;
  std::string detail;
};

struct VerdictReport {
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
  void add(std::string invariant, std::string location, std::string detail = {}) {
    violations.push_back({std::move(invariant), std::move(location), std::move(detail)});
  }
  void merge(const VerdictReport& other, const std::string& prefix = {}) {
    for (auto v : other.violations) {
      if (!prefix.empty()) v.location = prefix + (v.location.empty() ? "" : " " + v.location);
      violations.push_back(std::move(v));
    }
  }
  std::string str() const {
    std::ostringstream out;
    for (const auto& v : violations) {
      out << v.invariant << " @ " << v.location;
      if (!v.detail.empty()) out << ": " << v.detail;
      out << '\n';
    }
    return out.str();
  }
};

namespace detail {

/// Wheel shape without reference to a host: rim cycle, centre off it, at least
/// three internally disjoint spokes ending at distinct rim vertices.
inline std::string wheel_shape_error(const WheelSubdivision& w) {
  const auto& rim = w.rim.vertices;
  if (rim.size() < 3) return "rim has fewer than three vertices";
  std::set<VertexId> used(rim.begin(), rim.end());
  if (used.size() != rim.size()) return "rim repeats a vertex";
  if (used.count(w.center)) return "centre lies on the rim";
  used.insert(w.center);
  if (w.spokes.size() < 3) return "fewer than three spokes";
  std::set<VertexId> ends;
  for (const auto& s : w.spokes) {
    if (s.vertices.size() < 2 || s.front() != w.center) return "spoke does not start at the centre";
    if (!w.rim.contains(s.back())) return "spoke does not end on the rim";
    if (!ends.insert(s.back()).second) return "two spokes share a rim end";
    for (std::size_t i = 1; i + 1 < s.vertices.size(); ++i) {
      if (!used.insert(s.vertices[i]).second) return "spokes are not internally disjoint";
    }
  }
  return {};
}

inline std::string edge_name(VertexId a, VertexId b) {
  return std::to_string(a) + "-" + std::to_string(b);
}

}  // namespace detail

inline VerdictReport verify_wheel(const WeightedGraph& g, Radius r, const WheelSubdivision& w) {
  VerdictReport rep;
  if (auto err = detail::wheel_shape_error(w); !err.empty()) {
    rep.add("structure", "wheel", err);
    return rep;
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t i = 0; i < w.rim.size(); ++i) pairs.push_back({w.rim.at(i), w.rim.at(i + 1)});
  for (const auto& s : w.spokes) {
    for (std::size_t i = 1; i < s.vertices.size(); ++i) pairs.push_back({s.vertices[i - 1], s.vertices[i]});
  }
  for (auto [a, b] : pairs) {
    if (!g.contains(a) || !g.contains(b) || !g.adjacent(a, b)) {
      rep.add("embedding", "edge " + detail::edge_name(a, b), "not an edge of the graph");
    }
  }
  if (!rep.pass()) return rep;
  WeightedGraph h = wheel_graph(g, w);
  std::map<VertexId, VertexId> identity;
  for (VertexId v : h.vertices()) identity[v] = v;
  if (!embeds_as_subgraph(g, h, identity)) rep.add("embedding", "wheel", "not a subgraph");
  auto lens = piece_lengths(g, w);
  for (std::size_t i = 0; i < lens.size(); ++i) {
    if (!r.admits(lens[i])) {
      rep.add("piece-length", "piece " + std::to_string(i),
              "length " + std::to_string(lens[i]) + " exceeds r=" + r.str());
    }
  }
  auto diam = diameter(h);
  if (!diam || !r.admits(*diam)) {
    rep.add("diameter", "wheel", diam ? "diameter " + std::to_string(*diam) : "disconnected");
  }
  return rep;
}

/// Replays the cut history from g and checks every claim of the decomposition.
inline VerdictReport verify_decomposition(const WeightedGraph& g, Radius r,
                                          const GraphDecomposition& d) {
  VerdictReport rep;
  CutHistory h;
  h.graph = g;
  for (VertexId v : g.vertices()) h.origin[v] = v;
  for (std::size_t k = 0; k < d.cuts.size(); ++k) {
    const CutOp& op = d.cuts[k];
    const std::string where = "cut " + std::to_string(k);
    const bool pair = op.kind == CutOp::Kind::kPair;
    if (!h.graph.contains(op.x) || (pair && !h.graph.contains(op.y))) {
      rep.add("replay", where, "cut vertex is not in the current graph");
      return rep;
    }
    DistanceTable dist(h.graph);
    bool local = pair ? is_local_2separator(h.graph, dist, op.x, op.y, r)
                      : is_local_cutvertex(h.graph, dist, op.x, r);
    if (!local) rep.add("locality", where, "separator is not r-local at cut time");
    for (const auto& grp : op.groups) {
      if (!grp.link_length) continue;
      const Path& p = grp.link_path;
      if (p.vertices.size() < 2 || p.front() != op.x ||
          p.back() != op.y || !is_path_of(h.graph, p) || path_length(h.graph, p) != *grp.link_length) {
        rep.add("link", where, "link edge is not realized by its path");
      }
    }
    WeightedGraph after;
    try {
      after = apply_cut(h.graph, op);
    } catch (const InputError& e) {
      rep.add("replay", where, e.what());
      return rep;
    }
    if (!slices_are_far(after, op, r)) rep.add("farness", where, "two slices of a vertex are within r");
    for (const auto& grp : op.groups) {
      for (auto s : {grp.x_slice, grp.y_slice}) {
        if (s && h.origin.count(*s)) {
          rep.add("replay", where, "slice id reused");
          return rep;
        }
      }
    }
    h.record(op, std::move(after));
  }

  auto actual = torsos_of(h.graph);
  if (actual.size() != d.torsos.size()) {
    rep.add("replay", "torsos",
            "replay gives " + std::to_string(actual.size()) + " torsos, certificate lists " +
                std::to_string(d.torsos.size()));
    return rep;
  }
  std::map<std::tuple<VertexId, VertexId, Length>, int> coverage;
  for (const auto& e : g.edges()) coverage[{e.u, e.v, e.length}] = 0;
  std::vector<std::set<VertexId>> origins;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const auto& claimed = d.torsos[i];
    const std::string where = "torso " + std::to_string(i);
    if (!std::ranges::equal(claimed.graph.vertices(), actual[i].graph.vertices()) ||
        !std::ranges::equal(claimed.graph.edges(), actual[i].graph.edges())) {
      rep.add("replay", where, "torso differs from the replayed one");
      continue;
    }
    if (claimed.kind == TorsoKind::kThreeConnected) rep.add("torso-kind", where, "neither cycle nor edge");
    if (classify_torso(claimed.graph) != claimed.kind) {
      rep.add("torso-kind", where, std::string("claimed ") + torso_kind_name(claimed.kind) +
                                       " but is " + torso_kind_name(classify_torso(claimed.graph)));
    }
    std::set<std::pair<VertexId, VertexId>> links;
    std::set<VertexId> from;
    for (VertexId v : claimed.graph.vertices()) from.insert(h.origin.at(v));
    origins.push_back(std::move(from));
    for (const auto& e : claimed.graph.edges()) {
      if (h.is_link(e.u, e.v)) {
        links.insert(CutHistory::key(e.u, e.v));
        continue;
      }
      VertexId a = h.origin.at(e.u);
      VertexId b = h.origin.at(e.v);
      auto it = coverage.find({std::min(a, b), std::max(a, b), e.length});
      if (it == coverage.end()) {
        rep.add("coverage", where, "edge " + detail::edge_name(e.u, e.v) + " has no input edge");
      } else {
        ++it->second;
      }
    }
    if (links != claimed.links) rep.add("links", where, "link tags differ from the replay");
  }
  for (const auto& [e, count] : coverage) {
    if (count != 1) {
      rep.add("coverage", "edge " + detail::edge_name(std::get<0>(e), std::get<1>(e)),
              "covered " + std::to_string(count) + " times");
    }
  }
  if (origins.size() == d.torsos.size()) {
    std::vector<DecompositionEdge> expected;
    for (std::size_t i = 0; i < origins.size(); ++i) {
      for (std::size_t j = i + 1; j < origins.size(); ++j) {
        DecompositionEdge e{i, j, {}};
        std::set_intersection(origins[i].begin(), origins[i].end(), origins[j].begin(),
                              origins[j].end(), std::back_inserter(e.adhesion));
        if (!e.adhesion.empty()) expected.push_back(std::move(e));
      }
    }
    if (expected != d.edges) rep.add("adhesion", "decomposition graph", "edges differ from the replay");
    for (const auto& e : expected) {
      if (e.adhesion.size() > 2) {
        rep.add("adhesion", "torsos " + std::to_string(e.a) + "," + std::to_string(e.b),
                "adhesion " + std::to_string(e.adhesion.size()));
      }
    }
  }
  return rep;
}

/// Checks a certificate against the graph it claims to describe.
inline VerdictReport verify_certificate(const WeightedGraph& g, Radius r, const Certificate& c) {
  VerdictReport rep;
  if (c.r != r) rep.add("radius", "certificate", "issued for r=" + c.r.str());
  if (c.graph_sha != graph_sha(g)) rep.add("graph-hash", "certificate", "hash does not match the graph");
  if (const auto* w = std::get_if<WheelSubdivision>(&c.payload)) {
    rep.merge(verify_wheel(g, r, *w));
  } else {
    rep.merge(verify_decomposition(g, r, std::get<GraphDecomposition>(c.payload)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suites.

struct SuiteRow {
  std::string graph_id;
  int n = 0;
  int m = 0;
  std::string r;
  std::string branch;  // wheel, decomposition, or error
  bool verified = false;
  bool oracle_agrees = false;
  long long millis = 0;
};

struct SuiteResult {
  VerdictReport report;
  std::vector<SuiteRow> rows;
};

/// decide, verify and compare with the oracle on one instance.
inline SuiteResult check_instance(const WeightedGraph& g, Radius r, const std::string& id) {
  SuiteResult out;
  SuiteRow row{id, g.order(), g.size(), r.str(), "error", false, false, 0};
  const std::string where = id + " r=" + r.str();
  auto t0 = std::chrono::steady_clock::now();
  try {
    Certificate c = decide_certificate(g, r);
    row.branch = c.is_wheel() ? "wheel" : "decomposition";
    VerdictReport v = verify_certificate(g, r, c);
    row.verified = v.pass();
    out.report.merge(v, where);
    bool oracle = oracle_has_bounded_wheel(g, r);
    row.oracle_agrees = oracle == c.is_wheel();
    if (!row.oracle_agrees) {
      out.report.add("oracle", where, std::string("oracle says ") + (oracle ? "wheel" : "no wheel"));
    }
  } catch (const std::exception& e) {
    out.report.add("decide", where, e.what());
  }
  row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  out.rows.push_back(std::move(row));
  return out;
}

/// Runs jobs on `threads` workers; results come back in job order.
inline SuiteResult run_jobs(std::size_t count, const std::function<SuiteResult(std::size_t)>& job,
                            unsigned threads) {
  std::vector<SuiteResult> parts(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) parts[i] = job(i);
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  SuiteResult out;
  for (auto& p : parts) {
    out.report.merge(p.report);
    out.rows.insert(out.rows.end(), p.rows.begin(), p.rows.end());
  }
  return out;
}

/// Every connected unit-length graph with at most max_n vertices, at every radius.
inline SuiteResult dichotomy_suite(int max_n, const std::vector<Radius>& radii, unsigned threads = 1) {
  if (max_n > 8) throw InputError("exhaustive suite supports at most 8 vertices");
  struct Job {
    std::string id;
    const WeightedGraph* g;
    Radius r;
  };
  std::vector<WeightedGraph> graphs;
  std::vector<std::string> ids;
  for (int n = 1; n <= max_n; ++n) {
    auto batch = connected_graphs(n);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ids.push_back("n" + std::to_string(n) + "-" + std::to_string(i));
      graphs.push_back(std::move(batch[i]));
    }
  }
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (Radius r : radii) jobs.push_back({ids[i], &graphs[i], r});
  }
  return run_jobs(
      jobs.size(), [&](std::size_t i) { return check_instance(*jobs[i].g, jobs[i].r, jobs[i].id); },
      threads);
}

/// Random connected graphs with lengths in 1..max_len, each checked at every radius.
inline SuiteResult weighted_suite(int count, int max_n, Length max_len, const std::vector<Radius>& radii,
                                  std::uint64_t seed, unsigned threads = 1) {
  std::mt19937_64 rng(seed);
  std::vector<WeightedGraph> graphs;
  for (int i = 0; i < count; ++i) {
    int n = std::uniform_int_distribution<int>(4, max_n)(rng);
    int p = std::uniform_int_distribution<int>(20, 80)(rng);
    graphs.push_back(random_connected_graph(n, p, max_len, rng()));
  }
  const std::size_t k = radii.size();
  return run_jobs(
      graphs.size() * k,
      [&](std::size_t i) { return check_instance(graphs[i / k], radii[i % k], "w" + std::to_string(i / k)); },
      threads);
}

inline void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
  out << "graph_id,n,m,r,branch,verified,oracle_agrees,millis\n";
  for (const auto& row : rows) {
    out << row.graph_id << ',' << row.n << ',' << row.m << ',' << row.r << ',' << row.branch << ','
        << (row.verified ? "true" : "false") << ',' << (row.oracle_agrees ? "true" : "false") << ','
        << row.millis << '\n';
  }
}

/// Worker count from LOCWHEEL_THREADS, else the hardware concurrency.
inline unsigned suite_threads() {
  if (const char* env = std::getenv("LOCWHEEL_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InputError("LOCWHEEL_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace locwheel
