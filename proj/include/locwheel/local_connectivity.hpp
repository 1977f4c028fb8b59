#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "locwheel/cycle_space.hpp"
#include "locwheel/graph.hpp"

namespace locwheel {

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Partition of the edges at v (edge indices of g) into local sides. Two edges
/// share a group when their far ends are joined inside the ball around v minus v.
/// An edge at v that does not lie in the ball forms a group of its own.
inline std::vector<std::vector<int>> local_edge_groups(const WeightedGraph& g,
                                                       const std::vector<Length>& dist_v, int vi,
                                                       Radius r) {
  auto m = ball_membership(g, dist_v, HalfRadius::half_of(r));
  detail::UnionFind uf(g.order());
  for (int e = 0; e < g.size(); ++e) {
    if (!m.edge[e]) continue;
    int a = g.index(g.edge(e).u);
    int b = g.index(g.edge(e).v);
    if (a == vi || b == vi) continue;
    uf.unite(a, b);
  }
  std::vector<std::pair<int, std::vector<int>>> keyed;  // key: root index or -(1+edge)
  for (const auto& arc : g.arcs(vi)) {
    int key = m.edge[arc.edge] ? uf.find(arc.to) : -1 - arc.edge;
    auto it = std::find_if(keyed.begin(), keyed.end(), [&](const auto& p) { return p.first == key; });
    if (it == keyed.end()) {
      keyed.push_back({key, {arc.edge}});
    } else {
      it->second.push_back(arc.edge);
    }
  }
  // arcs are sorted by neighbour, so groups come out ordered by least neighbour.
  std::vector<std::vector<int>> out;
  for (auto& [key, edges] : keyed) out.push_back(std::move(edges));
  return out;
}

inline bool is_local_cutvertex(const WeightedGraph& g, const DistanceTable& dist, VertexId v,
                               Radius r) {
  int vi = g.index(v);
  std::vector<Length> row(g.order());
  for (int i = 0; i < g.order(); ++i) row[i] = dist.at(vi, i);
  return local_edge_groups(g, row, vi, r).size() >= 2;
}

inline bool is_local_cutvertex(const WeightedGraph& g, VertexId v, Radius r) {
  return is_local_cutvertex(g, DistanceTable(g), v, r);
}

struct ExplorerComponent {
  std::vector<VertexId> vertices;  // sorted
  std::vector<int> x_edges;        // explorer edges from x into the component
  std::vector<int> y_edges;

  bool touches_x() const { return !x_edges.empty(); }
  bool touches_y() const { return !y_edges.empty(); }
  bool touches_both() const { return touches_x() && touches_y(); }
};

/// Union of the balls of radius r/2 around x and y, split at {x, y}.
struct ExplorerNeighbourhood {
  VertexId x = 0;
  VertexId y = 0;
  std::vector<char> vertex;  // membership by index of the host graph
  std::vector<char> edge;
  std::vector<ExplorerComponent> components;  // ordered by least vertex
  std::vector<int> dangling_x;                // edges at x outside the explorer
  std::vector<int> dangling_y;
  std::optional<int> xy_edge;

  std::size_t components_touching_both() const {
    std::size_t c = 0;
    for (const auto& k : components) c += k.touches_both();
    return c;
  }

  WeightedGraph subgraph(const WeightedGraph& g) const {
    std::vector<int> edges;
    for (int e = 0; e < g.size(); ++e) {
      if (edge[e]) edges.push_back(e);
    }
    std::vector<Edge> list;
    for (int e : edges) list.push_back(g.edge(e));
    std::vector<VertexId> verts;
    for (int i = 0; i < g.order(); ++i) {
      if (vertex[i]) verts.push_back(g.id(i));
    }
    return WeightedGraph(std::move(list), std::move(verts));
  }
};

inline ExplorerNeighbourhood explorer_neighbourhood(const WeightedGraph& g,
                                                    const DistanceTable& dist, VertexId x,
                                                    VertexId y, Radius r) {
  if (x == y) throw InputError("explorer needs two distinct vertices");
  ExplorerNeighbourhood ex;
  ex.x = x;
  ex.y = y;
  const int xi = g.index(x);
  const int yi = g.index(y);
  const int n = g.order();
  std::vector<Length> dx(n), dy(n);
  for (int i = 0; i < n; ++i) {
    dx[i] = dist.at(xi, i);
    dy[i] = dist.at(yi, i);
  }
  auto rho = HalfRadius::half_of(r);
  auto bx = ball_membership(g, dx, rho);
  auto by = ball_membership(g, dy, rho);
  ex.vertex.assign(n, 0);
  ex.edge.assign(g.size(), 0);
  for (int i = 0; i < n; ++i) ex.vertex[i] = bx.vertex[i] || by.vertex[i];
  for (int e = 0; e < g.size(); ++e) ex.edge[e] = bx.edge[e] || by.edge[e];
  ex.xy_edge = g.edge_index(x, y);

  detail::UnionFind uf(n);
  for (int e = 0; e < g.size(); ++e) {
    if (!ex.edge[e]) continue;
    int a = g.index(g.edge(e).u);
    int b = g.index(g.edge(e).v);
    if (a == xi || a == yi || b == xi || b == yi) continue;
    uf.unite(a, b);
  }
  std::map<int, std::size_t> slot;  // root -> component position
  for (int i = 0; i < n; ++i) {
    if (!ex.vertex[i] || i == xi || i == yi) continue;
    int root = uf.find(i);
    auto [it, fresh] = slot.emplace(root, ex.components.size());
    if (fresh) ex.components.emplace_back();
    ex.components[it->second].vertices.push_back(g.id(i));
  }
  auto attach = [&](int vi, bool is_x) {
    for (const auto& arc : g.arcs(vi)) {
      if (arc.to == xi || arc.to == yi) continue;
      if (!ex.edge[arc.edge]) {
        (is_x ? ex.dangling_x : ex.dangling_y).push_back(arc.edge);
        continue;
      }
      auto& comp = ex.components[slot.at(uf.find(arc.to))];
      (is_x ? comp.x_edges : comp.y_edges).push_back(arc.edge);
    }
  };
  attach(xi, true);
  attach(yi, false);
  return ex;
}

inline ExplorerNeighbourhood explorer_neighbourhood(const WeightedGraph& g, VertexId x,
                                                    VertexId y, Radius r) {
  return explorer_neighbourhood(g, DistanceTable(g), x, y, r);
}

/// {x, y} is an r-local 2-separator when at least two components of the punctured
/// explorer neighbourhood each contain a neighbour of x and a neighbour of y.
inline bool is_local_2separator(const WeightedGraph& g, const DistanceTable& dist, VertexId x,
                                VertexId y, Radius r) {
  auto ex = explorer_neighbourhood(g, dist, x, y, r);
#ifdef LOCWHEEL_MUTATE_SEPARATOR
  return ex.components.size() >= 2;
#else
  return ex.components_touching_both() >= 2;
#endif
}

inline bool is_local_2separator(const WeightedGraph& g, VertexId x, VertexId y, Radius r) {
  return is_local_2separator(g, DistanceTable(g), x, y, r);
}

namespace detail {

inline bool has_cycle_within(const WeightedGraph& g, Radius r) {
  return !enumerate_cycles(g, r, 1).empty();
}

}  // namespace detail

/// Connected, no r-local cutvertex, and a cycle of length at most r. Never true for r < 3.
inline bool is_r_locally_2_connected(const WeightedGraph& g, Radius r) {
  if (g.empty() || !is_connected(g)) return false;
  if (!r.is_infinite() && r.value() < 3) return false;
  DistanceTable dist(g);
  for (VertexId v : g.vertices()) {
    if (is_local_cutvertex(g, dist, v, r)) return false;
  }
  return detail::has_cycle_within(g, r);
}

/// Locally 2-connected, at least four vertices, and no r-local 2-separator.
inline bool is_r_locally_3_connected(const WeightedGraph& g, Radius r) {
  if (!is_r_locally_2_connected(g, r) || g.order() < 4) return false;
  DistanceTable dist(g);
  auto verts = g.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (is_local_2separator(g, dist, verts[i], verts[j], r)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cutting operations.

/// One side of a cut: the slice(s) that replace the cut vertices on that side.
struct SliceGroup {
  std::optional<VertexId> x_slice;
  std::optional<VertexId> y_slice;
  std::vector<VertexId> x_neighbours;  // edges x-u that move to x_slice
  std::vector<VertexId> y_neighbours;
  std::vector<VertexId> component;     // explorer component behind this side (pair cuts)
  bool carries_xy = false;             // this side is the edge xy itself
  std::optional<Length> link_length;   // edge x_slice-y_slice standing in for the rest
  Path link_path;                      // realizes link_length in the graph before the cut

  friend bool operator==(const SliceGroup&, const SliceGroup&) = default;
};

struct CutOp {
  enum class Kind { kVertex, kPair };
  Kind kind = Kind::kVertex;
  VertexId x = 0;
  VertexId y = -1;
  std::vector<SliceGroup> groups;

  friend bool operator==(const CutOp&, const CutOp&) = default;
};

/// Rebuilds the graph after `op`: x (and y) are replaced by their slices.
inline WeightedGraph apply_cut(const WeightedGraph& g, const CutOp& op) {
  const bool pair = op.kind == CutOp::Kind::kPair;
  std::map<VertexId, VertexId> x_target;
  std::map<VertexId, VertexId> y_target;
  std::vector<Edge> edges;
  std::vector<VertexId> extra;
  bool xy_placed = false;
  for (const auto& grp : op.groups) {
    for (auto s : {grp.x_slice, grp.y_slice}) {
      if (s) {
        if (g.contains(*s)) throw InputError("slice id already in use");
        extra.push_back(*s);
      }
    }
    for (VertexId u : grp.x_neighbours) {
      if (!grp.x_slice || !x_target.emplace(u, *grp.x_slice).second) {
        throw InputError("edge at cut vertex assigned twice");
      }
    }
    for (VertexId u : grp.y_neighbours) {
      if (!grp.y_slice || !y_target.emplace(u, *grp.y_slice).second) {
        throw InputError("edge at cut vertex assigned twice");
      }
    }
    if (grp.carries_xy) {
      if (!pair || xy_placed || !grp.x_slice || !grp.y_slice) throw InputError("bad xy side");
      edges.push_back({*grp.x_slice, *grp.y_slice, g.edge_length(op.x, op.y)});
      xy_placed = true;
    }
    if (grp.link_length) {
      if (!pair || !grp.x_slice || !grp.y_slice || *grp.link_length <= 0) {
        throw InputError("bad link edge");
      }
      edges.push_back({*grp.x_slice, *grp.y_slice, *grp.link_length});
    }
  }
  for (const auto& e : g.edges()) {
    bool at_x = e.u == op.x || e.v == op.x;
    bool at_y = pair && (e.u == op.y || e.v == op.y);
    if (at_x && at_y) {
      if (!xy_placed) throw InputError("edge xy not assigned");
      continue;
    }
    if (at_x) {
      VertexId u = e.other(op.x);
      auto it = x_target.find(u);
      if (it == x_target.end()) throw InputError("edge at cut vertex not assigned");
      edges.push_back({it->second, u, e.length});
      x_target.erase(it);
    } else if (at_y) {
      VertexId u = e.other(op.y);
      auto it = y_target.find(u);
      if (it == y_target.end()) throw InputError("edge at cut vertex not assigned");
      edges.push_back({it->second, u, e.length});
      y_target.erase(it);
    } else {
      edges.push_back(e);
    }
  }
  if (!x_target.empty() || !y_target.empty()) throw InputError("slice claims a missing edge");
  std::vector<VertexId> keep;
  for (VertexId v : g.vertices()) {
    if (v != op.x && !(pair && v == op.y)) keep.push_back(v);
  }
  keep.insert(keep.end(), extra.begin(), extra.end());
  return WeightedGraph(std::move(edges), std::move(keep));
}

struct CutResult {
  WeightedGraph graph;
  CutOp op;
};

/// Splits v into one slice per local side. Slice ids start at next_id.
inline CutResult cut_at_vertex(const WeightedGraph& g, const DistanceTable& dist, VertexId v,
                               Radius r, VertexId next_id) {
  int vi = g.index(v);
  std::vector<Length> row(g.order());
  for (int i = 0; i < g.order(); ++i) row[i] = dist.at(vi, i);
  auto groups = local_edge_groups(g, row, vi, r);
  if (groups.size() < 2) throw LogicError("not a local cutvertex");
  CutOp op;
  op.kind = CutOp::Kind::kVertex;
  op.x = v;
  for (const auto& grp : groups) {
    SliceGroup s;
    s.x_slice = next_id++;
    for (int e : grp) s.x_neighbours.push_back(g.edge(e).other(v));
    op.groups.push_back(std::move(s));
  }
  return {apply_cut(g, op), std::move(op)};
}

inline CutResult cut_at_vertex(const WeightedGraph& g, VertexId v, Radius r) {
  return cut_at_vertex(g, DistanceTable(g), v, r, g.max_id() + 1);
}

/// True when the component of g containing v is a cycle.
inline bool lies_on_cycle_component(const WeightedGraph& g, VertexId v) {
  std::vector<int> label;
  component_labels(g, label);
  int c = label[g.index(v)];
  int verts = 0;
  for (int i = 0; i < g.order(); ++i) {
    if (label[i] != c) continue;
    ++verts;
    if (g.arcs(i).size() != 2) return false;
  }
  return verts >= 3;
}

/// Splits x and y into one slice pair per side of the explorer neighbourhood.
/// Each side touching both gets a link edge x_K-y_K whose length is the shortest
/// x-y connection avoiding that side.
inline CutResult cut_at_pair(const WeightedGraph& g, const DistanceTable& dist, VertexId x,
                             VertexId y, Radius r, VertexId next_id) {
  auto ex = explorer_neighbourhood(g, dist, x, y, r);
  if (ex.components_touching_both() < 2) throw LogicError("not a local 2-separator");
  CutOp op;
  op.kind = CutOp::Kind::kPair;
  op.x = x;
  op.y = y;
  std::vector<char> blocked(g.order(), 0);
  for (const auto& comp : ex.components) {
    if (!comp.touches_x() && !comp.touches_y()) continue;
    SliceGroup s;
    s.component = comp.vertices;
    if (comp.touches_x()) {
      s.x_slice = next_id++;
      for (int e : comp.x_edges) s.x_neighbours.push_back(g.edge(e).other(x));
    }
    if (comp.touches_y()) {
      s.y_slice = next_id++;
      for (int e : comp.y_edges) s.y_neighbours.push_back(g.edge(e).other(y));
    }
    if (comp.touches_both()) {
      std::fill(blocked.begin(), blocked.end(), 0);
      for (VertexId v : comp.vertices) blocked[g.index(v)] = 1;
      if (auto p = shortest_path(g, x, y, &blocked)) {
        s.link_length = path_length(g, *p);
        s.link_path = std::move(*p);
      }
    }
    op.groups.push_back(std::move(s));
  }
  for (int e : ex.dangling_x) {
    SliceGroup s;
    s.x_slice = next_id++;
    s.x_neighbours.push_back(g.edge(e).other(x));
    op.groups.push_back(std::move(s));
  }
  for (int e : ex.dangling_y) {
    SliceGroup s;
    s.y_slice = next_id++;
    s.y_neighbours.push_back(g.edge(e).other(y));
    op.groups.push_back(std::move(s));
  }
  if (ex.xy_edge) {
    SliceGroup s;
    s.x_slice = next_id++;
    s.y_slice = next_id++;
    s.carries_xy = true;
    op.groups.push_back(std::move(s));
  }
  return {apply_cut(g, op), std::move(op)};
}

inline CutResult cut_at_pair(const WeightedGraph& g, VertexId x, VertexId y, Radius r) {
  return cut_at_pair(g, DistanceTable(g), x, y, r, g.max_id() + 1);
}

/// Slices of the same cut vertex must end up more than r apart.
inline bool slices_are_far(const WeightedGraph& after, const CutOp& op, Radius r) {
  for (int side = 0; side < 2; ++side) {
    std::vector<VertexId> slices;
    for (const auto& grp : op.groups) {
      auto s = side == 0 ? grp.x_slice : grp.y_slice;
      if (s) slices.push_back(*s);
    }
    for (std::size_t i = 0; i < slices.size(); ++i) {
      auto d = dijkstra(after, after.index(slices[i]));
      for (std::size_t j = i + 1; j < slices.size(); ++j) {
        if (r.admits(d[after.index(slices[j])])) return false;
      }
    }
  }
  return true;
}

}  // namespace locwheel
