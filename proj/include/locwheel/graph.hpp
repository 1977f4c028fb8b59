#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locwheel {

using VertexId = std::int32_t;
using Length = std::int64_t;

inline constexpr Length kUnreachable = std::numeric_limits<Length>::max() / 4;

/// Malformed input: bad text, unknown vertex, loop, duplicate edge, bad length.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated, or an internal invariant broke.
class LogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Length length = 1;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Locality parameter: a non-negative integer or infinity.
class Radius {
 public:
  constexpr Radius() = default;
  constexpr explicit Radius(Length value) : value_(value) {
    if (value < 0) throw InputError("radius must be non-negative");
  }
  static constexpr Radius infinite() { return Radius(); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr Length value() const {
    if (is_infinite()) throw LogicError("infinite radius has no value");
    return value_;
  }
  /// True when a finite length is at most r.
  constexpr bool admits(Length len) const {
    return len < kUnreachable && (is_infinite() || len <= value_);
  }
  /// True when 2 * d <= r, i.e. d lies within half the radius.
  constexpr bool admits_half(Length d) const {
    return d < kUnreachable && (is_infinite() || 2 * d <= value_);
  }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

  static Radius parse(std::string_view text) {
    if (text == "inf" || text == "Infinity" || text == "infinity") return infinite();
    if (text.empty()) throw InputError("empty radius");
    Length v = 0;
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw InputError("bad radius: " + std::string(text));
      v = v * 10 + (ch - '0');
      if (v > 1'000'000'000) throw InputError("radius too large");
    }
    return Radius(v);
  }

  friend constexpr bool operator==(Radius, Radius) = default;
  friend constexpr auto operator<=>(Radius a, Radius b) { return a.value_ <=> b.value_; }

 private:
  static constexpr Length kInfinite = std::numeric_limits<Length>::max();
  Length value_ = kInfinite;
};

/// Undirected simple graph with positive integer edge lengths.
/// Vertices carry arbitrary ids; algorithms work on dense indices internally.
class WeightedGraph {
 public:
  struct Arc {
    int to;
    int edge;
  };

  WeightedGraph() = default;

  explicit WeightedGraph(std::vector<Edge> edges, std::vector<VertexId> extra_vertices = {}) {
    for (auto& e : edges) {
      if (e.u == e.v) throw InputError("loop at vertex " + std::to_string(e.u));
      if (e.length <= 0) throw InputError("non-positive edge length");
      if (e.u > e.v) std::swap(e.u, e.v);
      ids_.push_back(e.u);
      ids_.push_back(e.v);
    }
    ids_.insert(ids_.end(), extra_vertices.begin(), extra_vertices.end());
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
        throw InputError("duplicate edge " + std::to_string(edges[i].u) + "-" +
                         std::to_string(edges[i].v));
      }
    }
    edges_ = std::move(edges);
    arcs_.assign(ids_.size(), {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      int a = index(edges_[i].u);
      int b = index(edges_[i].v);
      arcs_[a].push_back({b, i});
      arcs_[b].push_back({a, i});
    }
    for (auto& list : arcs_) {
      std::sort(list.begin(), list.end(), [](Arc x, Arc y) { return x.to < y.to; });
    }
  }

  int order() const { return static_cast<int>(ids_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return ids_.empty(); }

  std::span<const VertexId> vertices() const { return ids_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int i) const { return edges_.at(i); }

  bool contains(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

  std::optional<int> find(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return std::nullopt;
    return static_cast<int>(it - ids_.begin());
  }

  int index(VertexId v) const {
    auto i = find(v);
    if (!i) throw InputError("unknown vertex " + std::to_string(v));
    return *i;
  }

  VertexId id(int i) const { return ids_[i]; }

  std::span<const Arc> arcs(int i) const { return arcs_[i]; }

  int degree(VertexId v) const { return static_cast<int>(arcs_[index(v)].size()); }

  std::vector<VertexId> neighbours(VertexId v) const {
    std::vector<VertexId> out;
    for (const Arc& a : arcs_[index(v)]) out.push_back(ids_[a.to]);
    return out;
  }

  std::optional<int> edge_index(VertexId a, VertexId b) const {
    auto ia = find(a);
    auto ib = find(b);
    if (!ia || !ib) return std::nullopt;
    const auto& list = arcs_[*ia];
    auto it = std::lower_bound(list.begin(), list.end(), *ib,
                               [](Arc x, int target) { return x.to < target; });
    if (it == list.end() || it->to != *ib) return std::nullopt;
    return it->edge;
  }

  bool adjacent(VertexId a, VertexId b) const { return edge_index(a, b).has_value(); }

  Length edge_length(VertexId a, VertexId b) const {
    auto e = edge_index(a, b);
    if (!e) throw InputError("no edge " + std::to_string(a) + "-" + std::to_string(b));
    return edges_[*e].length;
  }

  VertexId max_id() const { return ids_.empty() ? -1 : ids_.back(); }

  Length max_edge_length() const {
    Length best = 0;
    for (const auto& e : edges_) best = std::max(best, e.length);
    return best;
  }

  /// Subgraph formed by the given edge indices and their endpoints.
  WeightedGraph edge_subgraph(const std::vector<int>& edge_indices) const {
    std::vector<Edge> out;
    out.reserve(edge_indices.size());
    for (int i : edge_indices) out.push_back(edges_.at(i));
    return WeightedGraph(std::move(out));
  }

  /// Induced subgraph on the vertices for which keep(index) holds.
  WeightedGraph induced(const std::function<bool(int)>& keep) const {
    std::vector<Edge> out;
    std::vector<VertexId> isolated;
    for (int i = 0; i < order(); ++i) {
      if (keep(i)) isolated.push_back(ids_[i]);
    }
    for (const auto& e : edges_) {
      if (keep(index(e.u)) && keep(index(e.v))) out.push_back(e);
    }
    return WeightedGraph(std::move(out), std::move(isolated));
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> arcs_;
};

// ---------------------------------------------------------------------------
// Text format: "n m" then m lines "u v [len]"; ids are 0..n-1.

inline WeightedGraph parse_graph_text(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos || out[pos] == '#') continue;
      return true;
    }
    return false;
  };
  auto read_fields = [](const std::string& text) {
    std::istringstream ss(text);
    std::vector<long long> fields;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw InputError("bad token '" + tok + "'");
        fields.push_back(v);
      } catch (const std::logic_error&) {
        throw InputError("bad token '" + tok + "'");
      }
    }
    return fields;
  };

  if (!next_line(line)) throw InputError("missing header line");
  auto header = read_fields(line);
  if (header.size() != 2 || header[0] < 0 || header[1] < 0) {
    throw InputError("header must be 'n m'");
  }
  const long long n = header[0];
  const long long m = header[1];
  if (n > 1'000'000) throw InputError("too many vertices");
  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) throw InputError("expected " + std::to_string(m) + " edge lines");
    auto f = read_fields(line);
    if (f.size() != 2 && f.size() != 3) throw InputError("edge line needs 'u v [len]'");
    if (f[0] < 0 || f[0] >= n || f[1] < 0 || f[1] >= n) {
      throw InputError("vertex id out of range on edge line " + std::to_string(i + 1));
    }
    Length len = f.size() == 3 ? f[2] : 1;
    edges.push_back({static_cast<VertexId>(f[0]), static_cast<VertexId>(f[1]), len});
  }
  if (next_line(line)) throw InputError("trailing content after edge list");
  std::vector<VertexId> all(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) all[i] = static_cast<VertexId>(i);
  return WeightedGraph(std::move(edges), std::move(all));
}

inline WeightedGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_text(in);
}

inline void write_graph_text(std::ostream& out, const WeightedGraph& g) {
  for (int i = 0; i < g.order(); ++i) {
    if (g.id(i) != i) throw InputError("text format needs vertex ids 0..n-1");
  }
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.length != 1) out << ' ' << e.length;
    out << '\n';
  }
}

inline std::string graph_text(const WeightedGraph& g) {
  std::ostringstream out;
  write_graph_text(out, g);
  return out.str();
}

// ---------------------------------------------------------------------------
// Paths and cycles as vertex sequences. A cycle does not repeat its first vertex.

struct Path {
  std::vector<VertexId> vertices;

  std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  Path reversed() const { return Path{{vertices.rbegin(), vertices.rend()}}; }
  bool contains(VertexId v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

struct Cycle {
  std::vector<VertexId> vertices;

  std::size_t size() const { return vertices.size(); }
  bool contains(VertexId v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }
  std::optional<std::size_t> position(VertexId v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }
  VertexId at(std::size_t i) const { return vertices[i % vertices.size()]; }
  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

/// Rotate so the least vertex is first and orient so the second is below the last.
inline Cycle canonical(Cycle c) {
  auto& v = c.vertices;
  if (v.size() < 2) return c;
  std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
  if (v.size() > 2 && v[1] > v.back()) std::reverse(v.begin() + 1, v.end());
  return c;
}

/// Rotate so that `start` is first, keeping orientation.
inline Cycle rotated_to(Cycle c, VertexId start) {
  auto pos = c.position(start);
  if (!pos) throw LogicError("rotation vertex not on cycle");
  std::rotate(c.vertices.begin(), c.vertices.begin() + *pos, c.vertices.end());
  return c;
}

inline Cycle reversed(Cycle c) {
  if (c.vertices.size() > 1) std::reverse(c.vertices.begin() + 1, c.vertices.end());
  return c;
}

inline Length path_length(const WeightedGraph& g, const Path& p) {
  Length total = 0;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    total += g.edge_length(p.vertices[i - 1], p.vertices[i]);
  }
  return total;
}

inline Length cycle_length(const WeightedGraph& g, const Cycle& c) {
  Length total = 0;
  const auto& v = c.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) total += g.edge_length(v[i], v[(i + 1) % v.size()]);
  return total;
}

inline bool is_path_of(const WeightedGraph& g, const Path& p) {
  if (p.vertices.empty()) return false;
  auto sorted = p.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (VertexId v : p.vertices) {
    if (!g.contains(v)) return false;
  }
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    if (!g.adjacent(p.vertices[i - 1], p.vertices[i])) return false;
  }
  return true;
}

inline bool is_cycle_of(const WeightedGraph& g, const Cycle& c) {
  if (c.vertices.size() < 3) return false;
  if (!is_path_of(g, Path{c.vertices})) return false;
  return g.adjacent(c.vertices.front(), c.vertices.back());
}

/// Edge indices of a cycle in g.
inline std::vector<int> cycle_edge_indices(const WeightedGraph& g, const Cycle& c) {
  std::vector<int> out;
  const auto& v = c.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto e = g.edge_index(v[i], v[(i + 1) % v.size()]);
    if (!e) throw InputError("cycle uses a missing edge");
    out.push_back(*e);
  }
  return out;
}

inline std::vector<int> path_edge_indices(const WeightedGraph& g, const Path& p) {
  std::vector<int> out;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    auto e = g.edge_index(p.vertices[i - 1], p.vertices[i]);
    if (!e) throw InputError("path uses a missing edge");
    out.push_back(*e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shortest paths.

/// Single-source distances by vertex index; unreachable entries hold kUnreachable.
/// `blocked` (by index) vertices are neither entered nor left.
inline std::vector<Length> dijkstra(const WeightedGraph& g, int source,
                                    const std::vector<char>* blocked = nullptr,
                                    std::vector<int>* parent = nullptr) {
  std::vector<Length> dist(g.order(), kUnreachable);
  if (parent) parent->assign(g.order(), -1);
  using Item = std::pair<Length, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (const auto& arc : g.arcs(u)) {
      if (blocked && (*blocked)[arc.to]) continue;
      Length nd = d + g.edge(arc.edge).length;
      // Ties go to the smaller predecessor index so paths are deterministic.
      if (nd < dist[arc.to] || (nd == dist[arc.to] && parent && u < (*parent)[arc.to])) {
        bool improved = nd < dist[arc.to];
        dist[arc.to] = nd;
        if (parent) (*parent)[arc.to] = u;
        if (improved) heap.push({nd, arc.to});
      }
    }
  }
  return dist;
}

/// All-pairs distance table indexed by vertex index.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(const WeightedGraph& g) : n_(g.order()), d_(std::size_t(n_) * n_) {
    for (int s = 0; s < n_; ++s) {
      auto row = dijkstra(g, s);
      std::copy(row.begin(), row.end(), d_.begin() + std::size_t(s) * n_);
    }
  }
  Length at(int a, int b) const { return d_[std::size_t(a) * n_ + b]; }
  int order() const { return n_; }

 private:
  int n_ = 0;
  std::vector<Length> d_;
};

inline std::optional<Length> distance(const WeightedGraph& g, VertexId a, VertexId b) {
  auto d = dijkstra(g, g.index(a))[g.index(b)];
  if (d >= kUnreachable) return std::nullopt;
  return d;
}

/// A shortest a-b path avoiding `blocked` vertex indices, or nullopt.
inline std::optional<Path> shortest_path(const WeightedGraph& g, VertexId a, VertexId b,
                                         const std::vector<char>* blocked = nullptr) {
  std::vector<int> parent;
  int ia = g.index(a);
  int ib = g.index(b);
  auto dist = dijkstra(g, ia, blocked, &parent);
  if (dist[ib] >= kUnreachable) return std::nullopt;
  Path p;
  for (int cur = ib; cur != -1; cur = parent[cur]) {
    p.vertices.push_back(g.id(cur));
    if (cur == ia) break;
  }
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

/// Component label per vertex index; returns the number of components.
inline int component_labels(const WeightedGraph& g, std::vector<int>& label) {
  label.assign(g.order(), -1);
  int count = 0;
  for (int s = 0; s < g.order(); ++s) {
    if (label[s] != -1) continue;
    std::vector<int> stack{s};
    label[s] = count;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& arc : g.arcs(u)) {
        if (label[arc.to] == -1) {
          label[arc.to] = count;
          stack.push_back(arc.to);
        }
      }
    }
    ++count;
  }
  return count;
}

/// Connected components as induced subgraphs, ordered by least vertex id.
inline std::vector<WeightedGraph> components(const WeightedGraph& g) {
  std::vector<int> label;
  int count = component_labels(g, label);
  std::vector<std::vector<Edge>> edges(count);
  std::vector<std::vector<VertexId>> verts(count);
  for (int i = 0; i < g.order(); ++i) verts[label[i]].push_back(g.id(i));
  for (const auto& e : g.edges()) edges[label[g.index(e.u)]].push_back(e);
  std::vector<WeightedGraph> out;
  for (int c = 0; c < count; ++c) out.emplace_back(std::move(edges[c]), std::move(verts[c]));
  return out;
}

inline bool is_connected(const WeightedGraph& g) {
  std::vector<int> label;
  return component_labels(g, label) <= 1;
}

/// Largest finite distance; nullopt when g is disconnected. Throws on the empty graph.
inline std::optional<Length> diameter(const WeightedGraph& g) {
  if (g.empty()) throw InputError("diameter of the empty graph");
  Length best = 0;
  for (int s = 0; s < g.order(); ++s) {
    for (Length d : dijkstra(g, s)) {
      if (d >= kUnreachable) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

/// Ball radius expressed as twice its value so half-integers stay exact.
class HalfRadius {
 public:
  static HalfRadius half_of(Radius r) { return HalfRadius(r); }
  static HalfRadius doubled(Length twice) { return HalfRadius(Radius(twice)); }
  /// Vertex at distance d lies in the ball.
  bool admits_vertex(Length d) const { return diameter_.admits_half(d); }
  /// Edge ab of length len lies in the ball when da + len + db fits the diameter.
  bool admits_edge(Length da, Length len, Length db) const {
    if (da >= kUnreachable || db >= kUnreachable) return false;
    return diameter_.admits(da + len + db);
  }
  Radius diameter() const { return diameter_; }

 private:
  explicit HalfRadius(Radius r) : diameter_(r) {}
  Radius diameter_;
};

/// Ball membership by index, computed from the distances of `center`.
struct BallMembership {
  std::vector<char> vertex;
  std::vector<char> edge;
};

inline BallMembership ball_membership(const WeightedGraph& g, const std::vector<Length>& dist,
                                      HalfRadius rho) {
  BallMembership m;
  m.vertex.assign(g.order(), 0);
  m.edge.assign(g.size(), 0);
  for (int i = 0; i < g.order(); ++i) m.vertex[i] = rho.admits_vertex(dist[i]);
  for (int e = 0; e < g.size(); ++e) {
    const Edge& ed = g.edge(e);
    m.edge[e] = rho.admits_edge(dist[g.index(ed.u)], ed.length, dist[g.index(ed.v)]);
  }
  return m;
}

/// Metric ball around v: vertices within rho, and edges lying on a closed walk
/// through v of length at most 2 * rho.
inline WeightedGraph ball(const WeightedGraph& g, VertexId v, HalfRadius rho) {
  auto dist = dijkstra(g, g.index(v));
  auto m = ball_membership(g, dist, rho);
  std::vector<Edge> edges;
  std::vector<VertexId> verts;
  for (int i = 0; i < g.order(); ++i) {
    if (m.vertex[i]) verts.push_back(g.id(i));
  }
  for (int e = 0; e < g.size(); ++e) {
    if (m.edge[e]) edges.push_back(g.edge(e));
  }
  return WeightedGraph(std::move(edges), std::move(verts));
}

inline bool is_geodesic_cycle(const WeightedGraph& g, const DistanceTable& dist, const Cycle& c) {
  const auto& v = c.vertices;
  const std::size_t k = v.size();
  std::vector<Length> prefix(k + 1, 0);
  std::vector<int> idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    prefix[i + 1] = prefix[i] + g.edge_length(v[i], v[(i + 1) % k]);
    idx[i] = g.index(v[i]);
  }
  const Length total = prefix[k];
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      Length arc = prefix[j] - prefix[i];
      if (dist.at(idx[i], idx[j]) < std::min(arc, total - arc)) return false;
    }
  }
  return true;
}

inline bool is_geodesic_cycle(const WeightedGraph& g, const Cycle& c) {
  if (!is_cycle_of(g, c)) throw InputError("not a cycle of the graph");
  return is_geodesic_cycle(g, DistanceTable(g), c);
}

/// Result of suppressing degree-2 vertices: each new edge remembers the path it replaced.
struct Suppression {
  WeightedGraph graph;
  std::map<std::pair<VertexId, VertexId>, Path> expansion;  // key (a, b) with a < b
};

/// Repeatedly replaces a degree-2 vertex (smallest id first) by an edge joining its
/// neighbours, unless that would create a loop or a parallel edge.
inline Suppression suppress_degree_two(const WeightedGraph& g) {
  std::map<VertexId, std::map<VertexId, Length>> adj;
  std::map<std::pair<VertexId, VertexId>, Path> path;
  for (VertexId v : g.vertices()) adj[v];
  for (const auto& e : g.edges()) {
    adj[e.u][e.v] = e.length;
    adj[e.v][e.u] = e.length;
    path[{e.u, e.v}] = Path{{e.u, e.v}};
  }
  auto oriented = [&](VertexId a, VertexId b) {
    Path p = path.at({std::min(a, b), std::max(a, b)});
    if (p.front() != a) p = p.reversed();
    return p;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [v, nbrs] : adj) {
      if (nbrs.size() != 2) continue;
      VertexId a = nbrs.begin()->first;
      VertexId b = std::next(nbrs.begin())->first;
      if (adj[a].count(b)) continue;
      Length len = nbrs.begin()->second + std::next(nbrs.begin())->second;
      Path left = oriented(a, v);
      Path right = oriented(v, b);
      left.vertices.insert(left.vertices.end(), right.vertices.begin() + 1, right.vertices.end());
      path.erase({std::min(a, v), std::max(a, v)});
      path.erase({std::min(b, v), std::max(b, v)});
      path[{a, b}] = a < b ? left : left.reversed();
      adj[a].erase(v);
      adj[b].erase(v);
      adj[a][b] = len;
      adj[b][a] = len;
      adj.erase(v);
      changed = true;
      break;
    }
  }
  std::vector<Edge> edges;
  std::vector<VertexId> verts;
  for (const auto& [v, nbrs] : adj) {
    verts.push_back(v);
    for (const auto& [u, len] : nbrs) {
      if (v < u) edges.push_back({v, u, len});
    }
  }
  return {WeightedGraph(std::move(edges), std::move(verts)), std::move(path)};
}

/// Checks that `map` (h vertex -> g vertex) is an injective, length-preserving embedding.
inline bool embeds_as_subgraph(const WeightedGraph& g, const WeightedGraph& h,
                               const std::map<VertexId, VertexId>& map) {
  std::vector<VertexId> images;
  for (VertexId v : h.vertices()) {
    auto it = map.find(v);
    if (it == map.end() || !g.contains(it->second)) return false;
    images.push_back(it->second);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  for (const auto& e : h.edges()) {
    auto ge = g.edge_index(map.at(e.u), map.at(e.v));
    if (!ge || g.edge(*ge).length != e.length) return false;
  }
  return true;
}

}  // namespace locwheel
