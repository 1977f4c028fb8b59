#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "locwheel/graph.hpp"
#include "locwheel/local_connectivity.hpp"
#include "locwheel/wheel.hpp"
#include "locwheel/wheel_finder.hpp"

namespace locwheel {

enum class TorsoKind { kCycle, kEdge, kThreeConnected };

inline const char* torso_kind_name(TorsoKind k) {
  switch (k) {
    case TorsoKind::kCycle: return "cycle";
    case TorsoKind::kEdge: return "edge";
    default: return "three_connected";
  }
}

inline TorsoKind classify_torso(const WeightedGraph& t) {
  if (t.order() == 2 && t.size() == 1) return TorsoKind::kEdge;
  if (t.order() >= 3 && t.size() == t.order() && is_connected(t)) {
    bool two_regular = true;
    for (int i = 0; i < t.order(); ++i) two_regular = two_regular && t.arcs(i).size() == 2;
    if (two_regular) return TorsoKind::kCycle;
  }
  return TorsoKind::kThreeConnected;
}

struct Torso {
  TorsoKind kind;
  WeightedGraph graph;
};

/// State of repeated local cutting. Vertex ids are never reused, so an id names
/// the same vertex throughout the history.
struct CutHistory {
  WeightedGraph graph;                                  // current graph
  std::vector<CutOp> cuts;
  std::map<VertexId, VertexId> origin;                  // any id -> vertex of the input
  struct Link {
    VertexId from;  // slice at which `path` starts
    Path path;      // realization in the graph before the cut
  };
  std::map<std::pair<VertexId, VertexId>, Link> links;
  VertexId next_id = 0;

  static std::pair<VertexId, VertexId> key(VertexId a, VertexId b) {
    return {std::min(a, b), std::max(a, b)};
  }

  /// Records a cut that has already been applied to produce `after`.
  void record(const CutOp& op, WeightedGraph after) {
    // Link edges whose ends are being sliced keep their meaning under the new ids.
    const bool pair = op.kind == CutOp::Kind::kPair;
    std::map<VertexId, VertexId> x_to;
    std::map<VertexId, VertexId> y_to;
    std::optional<std::pair<VertexId, VertexId>> xy;
    for (const auto& grp : op.groups) {
      for (VertexId u : grp.x_neighbours) x_to[u] = *grp.x_slice;
      for (VertexId u : grp.y_neighbours) y_to[u] = *grp.y_slice;
      if (grp.carries_xy) xy = {*grp.x_slice, *grp.y_slice};
    }
    for (const auto& e : graph.edges()) {
      if (!is_link(e.u, e.v)) continue;
      VertexId a = e.u;
      VertexId b = e.v;
      if (pair && key(a, b) == key(op.x, op.y)) {
        VertexId na = a == op.x ? xy->first : xy->second;
        VertexId nb = a == op.x ? xy->second : xy->first;
        links[key(na, nb)] = {na, Path{{a, b}}};
        continue;
      }
      auto moved = [&](VertexId end, VertexId far) {
        if (end == op.x) return x_to.at(far);
        if (pair && end == op.y) return y_to.at(far);
        return end;
      };
      VertexId na = moved(a, b);
      VertexId nb = moved(b, a);
      if (na != a || nb != b) links[key(na, nb)] = {na, Path{{a, b}}};
    }
    for (const auto& grp : op.groups) {
      if (grp.x_slice) {
        origin[*grp.x_slice] = origin.at(op.x);
        next_id = std::max(next_id, *grp.x_slice + 1);
      }
      if (grp.y_slice) {
        origin[*grp.y_slice] = origin.at(op.y);
        next_id = std::max(next_id, *grp.y_slice + 1);
      }
      if (grp.link_length) links[key(*grp.x_slice, *grp.y_slice)] = {*grp.x_slice, grp.link_path};
    }
    cuts.push_back(op);
    graph = std::move(after);
  }

  bool is_link(VertexId a, VertexId b) const { return links.count(key(a, b)) > 0; }

  /// Expands an edge of some intermediate graph into a path of input vertices.
  std::vector<VertexId> lift_edge(VertexId a, VertexId b) const {
    auto it = links.find(key(a, b));
    if (it == links.end()) return {origin.at(a), origin.at(b)};
    Path p = it->second.from == a ? it->second.path : it->second.path.reversed();
    std::vector<VertexId> out{origin.at(p.front())};
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
      auto part = lift_edge(p.vertices[i - 1], p.vertices[i]);
      out.insert(out.end(), part.begin() + 1, part.end());
    }
    return out;
  }

  std::vector<VertexId> lift_path(const std::vector<VertexId>& walk) const {
    std::vector<VertexId> out{origin.at(walk.front())};
    for (std::size_t i = 1; i < walk.size(); ++i) {
      auto part = lift_edge(walk[i - 1], walk[i]);
      out.insert(out.end(), part.begin() + 1, part.end());
    }
    return out;
  }
};

enum class CutPolicy { kVerticesOnly, kVerticesAndPairs };

/// Least vertex (by id) that is an r-local cutvertex, if any.
inline std::optional<VertexId> least_local_cutvertex(const WeightedGraph& g,
                                                     const DistanceTable& dist, Radius r) {
  for (VertexId v : g.vertices()) {
    if (g.degree(v) >= 2 && is_local_cutvertex(g, dist, v, r)) return v;
  }
  return std::nullopt;
}

/// Least pair (lexicographic) that is an r-local 2-separator worth cutting:
/// cycle components are left whole.
inline std::optional<std::pair<VertexId, VertexId>> least_local_2separator(
    const WeightedGraph& g, const DistanceTable& dist, Radius r) {
  std::vector<int> label;
  component_labels(g, label);
  std::vector<char> on_cycle(g.order(), 0);
  {
    std::map<int, bool> cyc;
    for (int i = 0; i < g.order(); ++i) cyc.emplace(label[i], true);
    std::map<int, int> count;
    for (int i = 0; i < g.order(); ++i) {
      ++count[label[i]];
      if (g.arcs(i).size() != 2) cyc[label[i]] = false;
    }
    for (int i = 0; i < g.order(); ++i) on_cycle[i] = cyc[label[i]] && count[label[i]] >= 3;
  }
  for (int i = 0; i < g.order(); ++i) {
    if (on_cycle[i] || g.arcs(i).size() < 2) continue;
    for (int j = i + 1; j < g.order(); ++j) {
      if (label[j] != label[i] || g.arcs(j).size() < 2) continue;
      if (is_local_2separator(g, dist, g.id(i), g.id(j), r)) return std::pair{g.id(i), g.id(j)};
    }
  }
  return std::nullopt;
}

/// Cuts at local cutvertices (and, by policy, local 2-separators) until none is
/// left. Always takes the least available separator, cutvertices first.
inline CutHistory run_cuts(const WeightedGraph& g, Radius r, CutPolicy policy) {
  CutHistory h;
  h.graph = g;
  for (VertexId v : g.vertices()) h.origin[v] = v;
  h.next_id = g.max_id() + 1;
  const std::size_t cap = 64 * static_cast<std::size_t>(g.order() + g.size()) + 64;
  while (true) {
    if (h.cuts.size() > cap) throw LogicError("cutting did not terminate");
    DistanceTable dist(h.graph);
    if (auto v = least_local_cutvertex(h.graph, dist, r)) {
      auto res = cut_at_vertex(h.graph, dist, *v, r, h.next_id);
      h.record(res.op, std::move(res.graph));
      continue;
    }
    if (policy == CutPolicy::kVerticesOnly) break;
    if (auto p = least_local_2separator(h.graph, dist, r)) {
      auto res = cut_at_pair(h.graph, dist, p->first, p->second, r, h.next_id);
      h.record(res.op, std::move(res.graph));
      continue;
    }
    break;
  }
  return h;
}

/// Re-applies a recorded cut sequence to g without re-checking it.
inline CutHistory replay_cuts(const WeightedGraph& g, const std::vector<CutOp>& cuts) {
  CutHistory h;
  h.graph = g;
  for (VertexId v : g.vertices()) h.origin[v] = v;
  h.next_id = g.max_id() + 1;
  for (const auto& op : cuts) h.record(op, apply_cut(h.graph, op));
  return h;
}

/// Components of the final graph that carry at least one edge, ordered by least id.
inline std::vector<Torso> torsos_of(const WeightedGraph& g) {
  std::vector<Torso> out;
  for (auto& comp : components(g)) {
    if (comp.size() == 0) continue;
    TorsoKind k = classify_torso(comp);
    out.push_back({k, std::move(comp)});
  }
  return out;
}

struct BlockCutResult {
  CutHistory history;
  std::vector<Torso> blocks;
};

/// Cuts only at r-local cutvertices; the pieces are the r-local blocks.
inline BlockCutResult block_cut_decompose(const WeightedGraph& g, Radius r) {
  BlockCutResult out;
  out.history = run_cuts(g, r, CutPolicy::kVerticesOnly);
  out.blocks = torsos_of(out.history.graph);
  return out;
}

struct TwoSeparatorResult {
  CutHistory history;
  std::vector<Torso> torsos;
  std::optional<WeightedGraph> three_connected;  // first torso that is neither cycle nor edge
};

/// Cuts a block at r-local 2-separators (and any cutvertex that appears) until none is left.
inline TwoSeparatorResult two_sep_decompose(const WeightedGraph& block, Radius r) {
  TwoSeparatorResult out;
  out.history = run_cuts(block, r, CutPolicy::kVerticesAndPairs);
  out.torsos = torsos_of(out.history.graph);
  for (const auto& t : out.torsos) {
    if (t.kind == TorsoKind::kThreeConnected) {
      out.three_connected = t.graph;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificates.

/// Edge of the decomposition graph: two torsos sharing slices of input vertices.
struct DecompositionEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<VertexId> adhesion;  // input vertices with a slice in both torsos

  friend bool operator==(const DecompositionEdge&, const DecompositionEdge&) = default;
};

struct DecompositionTorso {
  TorsoKind kind = TorsoKind::kEdge;
  WeightedGraph graph;
  std::set<std::pair<VertexId, VertexId>> links;  // edges standing in for a path elsewhere
};

struct GraphDecomposition {
  std::vector<CutOp> cuts;
  std::vector<DecompositionTorso> torsos;
  std::vector<DecompositionEdge> edges;
};

struct Certificate {
  Radius r;
  std::string graph_sha;
  std::variant<WheelSubdivision, GraphDecomposition> payload;

  bool is_wheel() const { return std::holds_alternative<WheelSubdivision>(payload); }
};

/// Torsos, links and the decomposition graph of a finished cut history.
inline GraphDecomposition assemble_decomposition(const CutHistory& h) {
  GraphDecomposition d;
  d.cuts = h.cuts;
  std::vector<std::set<VertexId>> origins;
  for (auto& t : torsos_of(h.graph)) {
    DecompositionTorso dt{t.kind, std::move(t.graph), {}};
    std::set<VertexId> from;
    for (VertexId v : dt.graph.vertices()) from.insert(h.origin.at(v));
    for (const auto& e : dt.graph.edges()) {
      if (h.is_link(e.u, e.v)) dt.links.insert(CutHistory::key(e.u, e.v));
    }
    origins.push_back(std::move(from));
    d.torsos.push_back(std::move(dt));
  }
  for (std::size_t i = 0; i < origins.size(); ++i) {
    for (std::size_t j = i + 1; j < origins.size(); ++j) {
      DecompositionEdge e{i, j, {}};
      std::set_intersection(origins[i].begin(), origins[i].end(), origins[j].begin(),
                            origins[j].end(), std::back_inserter(e.adhesion));
      if (!e.adhesion.empty()) d.edges.push_back(std::move(e));
    }
  }
  return d;
}

/// Carries a wheel of the cut graph back to the input graph.
inline WheelSubdivision lift_wheel(const WeightedGraph& g, const CutHistory& h,
                                   const WheelSubdivision& w) {
  WheelSubdivision out;
  out.center = h.origin.at(w.center);
  auto walk = w.rim.vertices;
  walk.push_back(walk.front());
  auto rim = h.lift_path(walk);
  rim.pop_back();
  out.rim.vertices = std::move(rim);
  for (const auto& s : w.spokes) out.spokes.push_back(Path{h.lift_path(s.vertices)});
  if (!is_wheel_subdivision_of(g, out)) throw LogicError("lifted wheel is not a subgraph of the input");
  return normalized(std::move(out));
}

/// Either an r-bounded wheel subdivision in g or a decomposition whose torsos are
/// all cycles or single edges. `graph_sha` is left empty.
inline Certificate decide(const WeightedGraph& g, Radius r) {
  CutHistory h = run_cuts(g, r, CutPolicy::kVerticesAndPairs);
  for (const auto& t : torsos_of(h.graph)) {
    if (t.kind != TorsoKind::kThreeConnected) continue;
    WheelSubdivision local = find_wheel(t.graph, r);
    WheelSubdivision lifted = lift_wheel(g, h, local);
    if (!is_r_local_wheel(g, lifted, r)) throw LogicError("lifted wheel lost locality");
    return {r, {}, make_bounded(g, lifted, r)};
  }
  return {r, {}, assemble_decomposition(h)};
}

}  // namespace locwheel
