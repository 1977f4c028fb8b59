#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "locwheel/cycle_space.hpp"
#include "locwheel/graph.hpp"
#include "locwheel/local_connectivity.hpp"
#include "locwheel/wheel.hpp"

namespace locwheel {

namespace detail {

using EdgeKey = std::pair<VertexId, VertexId>;

inline EdgeKey edge_key(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }

/// Collects edges of paths and cycles and turns them into a subgraph of the host.
class EdgeBag {
 public:
  void add(VertexId a, VertexId b) { keys_.insert(edge_key(a, b)); }
  void add_walk(const std::vector<VertexId>& w) {
    for (std::size_t i = 1; i < w.size(); ++i) add(w[i - 1], w[i]);
  }
  void add_path(const Path& p) { add_walk(p.vertices); }
  void add_cycle(const Cycle& c) {
    add_walk(c.vertices);
    if (c.size() > 1) add(c.vertices.back(), c.vertices.front());
  }
  bool has(VertexId a, VertexId b) const { return keys_.count(edge_key(a, b)) > 0; }
  WeightedGraph graph(const WeightedGraph& host, std::vector<VertexId> extra = {}) const {
    std::vector<Edge> list;
    for (auto [a, b] : keys_) list.push_back({a, b, host.edge_length(a, b)});
    return WeightedGraph(std::move(list), std::move(extra));
  }

 private:
  std::set<EdgeKey> keys_;
};

inline Length walk_length(const WeightedGraph& g, const std::vector<VertexId>& w) {
  Length total = 0;
  for (std::size_t i = 1; i < w.size(); ++i) total += g.edge_length(w[i - 1], w[i]);
  return total;
}

inline std::map<VertexId, std::size_t> positions(const Cycle& c) {
  std::map<VertexId, std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i) out[c.vertices[i]] = i;
  return out;
}

/// Shortest a-b path using only the given edges.
inline std::optional<Path> path_within(const WeightedGraph& host, const EdgeBag& bag, VertexId a,
                                       VertexId b) {
  WeightedGraph h = bag.graph(host, {a, b});
  return shortest_path(h, a, b);
}

/// A found wheel must be a wheel subdivision of g whose short cycles generate.
inline WheelSubdivision checked_wheel(const WeightedGraph& g, Radius r,
                                      const std::optional<WheelSubdivision>& w, const char* where) {
  if (!w || !is_wheel_subdivision_of(g, *w)) {
    throw LogicError(std::string(where) + ": union is not a wheel subdivision");
  }
  if (!is_r_local_wheel(g, *w, r)) throw LogicError(std::string(where) + ": wheel is not r-local");
  return *w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Short geodesic cycle with four edges, or the triangular configuration.

/// Edge vw is a shortest path and lies in the short triangles vxw and vyw.
struct TriangularWitness {
  VertexId v = 0;
  VertexId w = 0;
  VertexId x = 0;
  VertexId y = 0;
};

using DichotomyResult = std::variant<Cycle, TriangularWitness>;

inline DichotomyResult dichotomy(const WeightedGraph& g, const DistanceTable& dist, Radius r) {
  auto shorts = enumerate_short_cycles(g, dist, r);
  std::optional<Cycle> best;
  Length best_len = 0;
  for (const auto& c : shorts) {
    if (c.size() < 4) continue;
    Length len = cycle_length(g, c);
    if (!best || len < best_len) {
      best = c;
      best_len = len;
    }
  }
  if (best) return *best;
  for (const auto& e : g.edges()) {
    if (dist.at(g.index(e.u), g.index(e.v)) != e.length) continue;
    std::vector<VertexId> apex;
    for (VertexId z : g.neighbours(e.u)) {
      if (z == e.v || !g.adjacent(z, e.v)) continue;
      if (r.admits(e.length + g.edge_length(e.u, z) + g.edge_length(z, e.v))) apex.push_back(z);
    }
    if (apex.size() >= 2) return TriangularWitness{e.u, e.v, apex[0], apex[1]};
  }
  throw LogicError("neither a long geodesic cycle nor a triangular edge");
}

inline DichotomyResult dichotomy(const WeightedGraph& g, Radius r) {
  return dichotomy(g, DistanceTable(g), r);
}

/// Wheel of short triangles around an end of the triangular edge.
inline WheelSubdivision triangular_wheel(const WeightedGraph& g, const DistanceTable& dist,
                                         Radius r, const TriangularWitness& tw) {
  // Short geodesic triangles; in a triangular graph these are all short geodesic cycles.
  std::set<std::array<VertexId, 3>> tri;
  for (const auto& c : enumerate_short_cycles(g, dist, r)) {
    if (c.size() != 3) continue;
    std::array<VertexId, 3> t{c.vertices[0], c.vertices[1], c.vertices[2]};
    std::sort(t.begin(), t.end());
    tri.insert(t);
  }
  auto has_tri = [&](VertexId a, VertexId b, VertexId c) {
    std::array<VertexId, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return tri.count(t) > 0;
  };
  // Red adjacency among edges at `hub`: two edges hub-a, hub-b are joined by a
  // short geodesic triangle that avoids the other end of e. Edges are named by
  // their far end.
  auto red_search = [&](VertexId hub, VertexId avoid, VertexId from) {
    std::map<VertexId, VertexId> parent{{from, from}};
    std::deque<VertexId> queue{from};
    while (!queue.empty()) {
      VertexId a = queue.front();
      queue.pop_front();
      for (VertexId b : g.neighbours(hub)) {
        if (b == avoid || parent.count(b) || !g.adjacent(a, b) || !has_tri(hub, a, b)) continue;
        parent[b] = a;
        queue.push_back(b);
      }
    }
    return parent;
  };
  auto chain = [&](const std::map<VertexId, VertexId>& parent, VertexId to) {
    std::vector<VertexId> out{to};
    while (parent.at(out.back()) != out.back()) out.push_back(parent.at(out.back()));
    std::reverse(out.begin(), out.end());
    return out;
  };
  auto build = [&](VertexId hub, VertexId other, const std::vector<VertexId>& fan_ends) {
    detail::EdgeBag bag;
    for (std::size_t i = 0; i < fan_ends.size(); ++i) {
      bag.add(hub, fan_ends[i]);
      if (i > 0) bag.add(fan_ends[i - 1], fan_ends[i]);
    }
    bag.add(hub, other);
    bag.add(other, fan_ends.front());
    bag.add(other, fan_ends.back());
    WeightedGraph h = bag.graph(g);
    return detail::checked_wheel(g, r, wheel_with_center(h, hub), "triangular wheel");
  };
  const std::array<std::pair<VertexId, VertexId>, 2> hubs{{{tw.v, tw.w}, {tw.w, tw.v}}};
  // A red path joins the two apexes at one end of e.
  for (auto [hub, other] : hubs) {
    auto parent = red_search(hub, other, tw.x);
    if (parent.count(tw.y)) return build(hub, other, chain(parent, tw.y));
  }
  // Otherwise leave the red component of x across a green edge, i.e. through a
  // short triangle hub-a-other with a outside the red component at the far end.
  for (auto [hub, other] : hubs) {
    auto mine = red_search(hub, other, tw.x);
    auto theirs = red_search(other, hub, tw.x);
    std::vector<std::pair<std::size_t, VertexId>> exits;
    for (auto& [a, p] : mine) {
      if (a == tw.x || theirs.count(a) || !has_tri(hub, a, other)) continue;
      exits.push_back({chain(mine, a).size(), a});
    }
    if (exits.empty()) continue;
    std::sort(exits.begin(), exits.end());
    return build(hub, other, chain(mine, exits.front().second));
  }
  throw LogicError("triangular wheel: no red path and no green exit");
}

// ---------------------------------------------------------------------------
// Pre-fans and fans.

/// Oriented short cycles through a common centre. Each piece is listed starting
/// at the centre; piece i leaves the centre along the edge by which piece i+1
/// returns to it.
struct PreFan {
  VertexId center = 0;
  std::vector<Cycle> pieces;

  /// Edge at the centre by which the first piece returns.
  detail::EdgeKey start() const { return detail::edge_key(center, pieces.front().vertices.back()); }
  /// Edge at the centre by which the last piece leaves.
  detail::EdgeKey end() const { return detail::edge_key(center, pieces.back().vertices[1]); }
};

/// A pre-fan in which only consecutive pieces meet away from the centre, and
/// they meet in one common path: the first `shared[i]` edges of piece i run back
/// along the last `shared[i]` edges of piece i+1.
struct Fan {
  VertexId center = 0;
  std::vector<Cycle> pieces;
  std::vector<std::size_t> shared;

  PreFan as_pre_fan() const { return {center, pieces}; }
};

inline bool is_pre_fan(const WeightedGraph& g, Radius r, const PreFan& f) {
  if (f.pieces.empty()) return false;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    const Cycle& c = f.pieces[i];
    if (c.size() < 3 || c.vertices[0] != f.center || !is_cycle_of(g, c)) return false;
    if (!r.admits(cycle_length(g, c))) return false;
    if (i + 1 < f.pieces.size() && c.vertices[1] != f.pieces[i + 1].vertices.back()) return false;
  }
  return true;
}

/// Number of leading edges of a that retrace the trailing edges of b backwards.
inline std::size_t shared_prefix(const Cycle& a, const Cycle& b) {
  std::size_t k = 0;
  while (k + 1 < a.size() && k + 1 < b.size() &&
         a.vertices[k + 1] == b.vertices[b.size() - 1 - k]) {
    ++k;
  }
  return k;
}

/// Shared-segment lengths if the pre-fan is a fan.
inline std::optional<std::vector<std::size_t>> fan_shape(const PreFan& f) {
  const auto& o = f.pieces;
  std::vector<std::set<VertexId>> sets;
  for (const auto& c : o) sets.emplace_back(c.vertices.begin() + 1, c.vertices.end());
  std::vector<std::size_t> shared;
  for (std::size_t i = 0; i < o.size(); ++i) {
    for (std::size_t j = i + 2; j < o.size(); ++j) {
      for (VertexId x : sets[i]) {
        if (sets[j].count(x)) return std::nullopt;
      }
    }
    if (i + 1 == o.size()) break;
    std::size_t k = shared_prefix(o[i], o[i + 1]);
    std::set<VertexId> common;
    for (VertexId x : sets[i]) {
      if (sets[i + 1].count(x)) common.insert(x);
    }
    std::set<VertexId> expected(o[i].vertices.begin() + 1, o[i].vertices.begin() + 1 + k);
    if (k == 0 || common != expected) return std::nullopt;
    shared.push_back(k);
  }
  return shared;
}

inline bool is_fan(const WeightedGraph& g, Radius r, const PreFan& f) {
  return is_pre_fan(g, r, f) && fan_shape(f).has_value();
}

namespace detail {

/// One reduction step; false when the pre-fan is already a fan.
inline bool reduce_once(const WeightedGraph& g, PreFan& f) {
  auto& o = f.pieces;
  const VertexId v = f.center;
  const std::size_t n = o.size();
  auto erase = [&](std::size_t from, std::size_t to) {  // [from, to)
    o.erase(o.begin() + static_cast<std::ptrdiff_t>(from), o.begin() + static_cast<std::ptrdiff_t>(to));
  };
  // Two pieces leaving (or returning) along the same edge: the pieces between are redundant.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (o[i].vertices[1] == o[j].vertices[1]) {
        erase(i + 1, j + 1);
        return true;
      }
      if (o[i].vertices.back() == o[j].vertices.back()) {
        erase(i, j);
        return true;
      }
    }
  }
  // Reroutes piece i or piece j through their first meeting point x, dropping
  // everything in between. `skip` leading edges of piece i are already shared.
  auto reroute = [&](std::size_t i, std::size_t j, std::size_t skip) {
    const auto oi = o[i].vertices;
    const auto oj = o[j].vertices;
    auto pj = positions(o[j]);
    std::size_t a = 0;
    for (std::size_t t = skip + 1; t < oi.size(); ++t) {
      if (pj.count(oi[t])) {
        a = t;
        break;
      }
    }
    if (a == 0) return false;
    const std::size_t px = pj.at(oi[a]);
    std::vector<VertexId> head(oi.begin(), oi.begin() + static_cast<std::ptrdiff_t>(a) + 1);
    std::vector<VertexId> tail(oj.begin() + static_cast<std::ptrdiff_t>(px), oj.end());
    tail.push_back(v);
    if (walk_length(g, head) <= walk_length(g, tail)) {
      Cycle c;
      c.vertices.assign(oj.begin(), oj.begin() + static_cast<std::ptrdiff_t>(px) + 1);
      for (std::size_t t = a - 1; t >= 1; --t) c.vertices.push_back(oi[t]);
      o[j] = std::move(c);
    } else {
      auto pi = positions(o[i]);
      std::size_t t = oj.size() - 1 - skip;
      while (!pi.count(oj[t])) --t;
      Cycle c;
      c.vertices.push_back(v);
      for (std::size_t s = oj.size() - 1; s >= t; --s) c.vertices.push_back(oj[s]);
      for (std::size_t s = pi.at(oj[t]) + 1; s < oi.size(); ++s) c.vertices.push_back(oi[s]);
      o[i] = std::move(c);
    }
    erase(i + 1, j);
    return true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (reroute(i, j, 0)) return true;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (reroute(i, i + 1, shared_prefix(o[i], o[i + 1]))) return true;
  }
  return false;
}

}  // namespace detail

/// Reduces a pre-fan to a fan with the same start and end, inside the pre-fan.
inline Fan reduce_to_fan(const WeightedGraph& g, Radius r, PreFan pf) {
  if (!is_pre_fan(g, r, pf)) throw InputError("not a pre-fan");
  const auto start = pf.start();
  const auto end = pf.end();
  auto measure = [&] {
    std::size_t s = 0;
    for (std::size_t i = 0; i + 1 < pf.pieces.size(); ++i) {
      s += shared_prefix(pf.pieces[i], pf.pieces[i + 1]);
    }
    return std::pair<std::size_t, long>(pf.pieces.size(), -static_cast<long>(s));
  };
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) throw LogicError("pre-fan reduction did not terminate");
    auto before = measure();
    if (!detail::reduce_once(g, pf)) break;
    if (!(measure() < before)) throw LogicError("pre-fan reduction made no progress");
    if (!is_pre_fan(g, r, pf) || pf.start() != start || pf.end() != end) {
      throw LogicError("pre-fan reduction broke the pre-fan");
    }
  }
  auto shape = fan_shape(pf);
  if (!shape) throw LogicError("pre-fan reduction stopped short of a fan");
  return {pf.center, std::move(pf.pieces), std::move(*shape)};
}

struct PreFanResult {
  PreFan fan;
  Cycle anchor;        // short cycle through P carrying the start and end edges
  VertexId other = 0;  // the end of P that is not the centre
};

/// Pre-fan at v0 or v1 avoiding the other end of P, plus a short cycle through P
/// whose edges at the centre are the start and end. `oref` contains the shortest
/// v0-v1 path `p` and v0, v1 are not consecutive on it.
inline PreFanResult build_pre_fan(const WeightedGraph& g, const DistanceTable& dist, Radius r,
                                  const Cycle& oref, VertexId v0, VertexId v1, Path p) {
  if (p.front() == v1) p = p.reversed();
  if (p.front() != v0 || p.back() != v1 || !cycle_contains_path(oref, p)) {
    throw LogicError("reference cycle does not carry the path");
  }
  if (path_length(g, p) != dist.at(g.index(v0), g.index(v1))) {
    throw LogicError("path is not a shortest path");
  }
  if (p.edge_count() < 2) throw LogicError("ends are consecutive on the reference cycle");
  Cycle oc = rotated_to(oref, v0);
  if (oc.vertices[1] != p.vertices[1]) oc = reversed(oc);
  // oc runs v0, along p to v1, then back along the rest.
  Path rest;
  {
    std::size_t j = *oc.position(v1);
    rest.vertices.push_back(v0);
    for (std::size_t t = oc.size() - 1; t >= j; --t) rest.vertices.push_back(oc.vertices[t]);
  }
  const VertexId n1 = oc.vertices[1];
  const VertexId n2 = oc.vertices.back();

  // A valid cycle: v0 plus an n1-n2 path avoiding v0 and v1, preferably inside
  // the explorer neighbourhood, whose short cycles generate it.
  std::vector<Path> routes;
  {
    auto ex = explorer_neighbourhood(g, dist, v0, v1, r);
    detail::EdgeBag bag;
    for (int e = 0; e < g.size(); ++e) {
      const Edge& ed = g.edge(e);
      if (!ex.edge[e] || ed.u == v0 || ed.u == v1 || ed.v == v0 || ed.v == v1) continue;
      bag.add(ed.u, ed.v);
    }
    if (auto q = detail::path_within(g, bag, n1, n2)) routes.push_back(*q);
    std::vector<char> blocked(g.order(), 0);
    blocked[g.index(v0)] = blocked[g.index(v1)] = 1;
    if (auto q = shortest_path(g, n1, n2, &blocked)) routes.push_back(*q);
  }
  std::optional<Cycle> valid;
  std::optional<std::vector<Cycle>> basis;
  for (const auto& q : routes) {
    Cycle c;
    c.vertices.push_back(v0);
    c.vertices.insert(c.vertices.end(), q.vertices.begin(), q.vertices.end());
    basis = represent(g, dist, r, edge_set(g, c));
    if (basis) {
      valid = c;
      break;
    }
  }
  if (!valid) throw LogicError("no valid cycle is generated by short cycles");
  auto family = friendly_represent(g, dist, r, v0, v1, p, *basis);
  {
    EdgeSet sum(g.size());
    for (const auto& c : family) sum ^= edge_set(g, c);
    if (!(sum == edge_set(g, *valid))) throw LogicError("friendly family does not sum to the cycle");
  }
  std::vector<const Cycle*> both;
  for (const auto& c : family) {
    if (c.contains(v0) && c.contains(v1)) both.push_back(&c);
  }
  const bool at_v0 = both.size() % 2 == 0;
  const VertexId center = at_v0 ? v0 : v1;
  const VertexId other = at_v0 ? v1 : v0;

  // Auxiliary graph: nodes are P, the two targets kinds and candidate pieces;
  // two nodes are adjacent when they share an edge at the centre.
  struct Node {
    std::set<VertexId> ends;        // far ends of the node's edges at the centre
    bool target = false;
    const Cycle* cycle = nullptr;   // piece candidate, or the anchor for targets
  };
  auto cycle_ends = [&](const Cycle& c) {
    auto pos = *c.position(center);
    return std::set<VertexId>{c.at(pos + 1), c.at(pos + c.size() - 1)};
  };
  const VertexId p_end = at_v0 ? p.vertices[1] : p.vertices[p.vertices.size() - 2];
  std::vector<Node> nodes;
  nodes.push_back({{p_end}, false, nullptr});
  nodes.push_back({{at_v0 ? rest.vertices[1] : rest.vertices[rest.vertices.size() - 2]}, true,
                   &oref});
  for (const Cycle* d : both) {
    auto ends = cycle_ends(*d);
    ends.erase(p_end);
    nodes.push_back({ends, true, d});
  }
  for (const auto& c : family) {
    if (c.contains(center) && !c.contains(other)) nodes.push_back({cycle_ends(c), false, &c});
  }
  std::vector<int> parent(nodes.size(), -1);
  parent[0] = 0;
  std::deque<int> queue{0};
  int hit = -1;
  while (!queue.empty() && hit < 0) {
    int a = queue.front();
    queue.pop_front();
    for (int b = 0; b < static_cast<int>(nodes.size()); ++b) {
      if (parent[b] >= 0) continue;
      bool meet = false;
      for (VertexId x : nodes[a].ends) meet = meet || nodes[b].ends.count(x);
      if (!meet) continue;
      parent[b] = a;
      if (nodes[b].target) {
        hit = b;
        break;
      }
      queue.push_back(b);
    }
  }
  if (hit < 0) throw LogicError("auxiliary graph has no path from P to a target");
  std::vector<int> route;
  for (int cur = parent[hit]; cur != 0; cur = parent[cur]) route.push_back(cur);
  std::reverse(route.begin(), route.end());

  PreFanResult out;
  out.other = other;
  out.fan.center = center;
  out.anchor = *nodes[hit].cycle;
  VertexId entry = p_end;
  for (int idx : route) {
    Cycle c = rotated_to(*nodes[idx].cycle, center);
    if (c.vertices.back() != entry) c = reversed(c);
    if (c.vertices.back() != entry) throw LogicError("piece does not continue the pre-fan");
    entry = c.vertices[1];
    out.fan.pieces.push_back(std::move(c));
  }
  if (out.fan.pieces.empty() || !nodes[hit].ends.count(entry)) {
    throw LogicError("pre-fan does not end on the anchor");
  }
  if (!is_pre_fan(g, r, out.fan)) throw LogicError("built pieces do not form a pre-fan");
  return out;
}

inline PreFanResult build_pre_fan(const WeightedGraph& g, Radius r, const Cycle& oref,
                                  VertexId v0, VertexId v1, const Path& p) {
  return build_pre_fan(g, DistanceTable(g), r, oref, v0, v1, p);
}

using FanOutcome = std::variant<WheelSubdivision, Cycle>;

/// Wheel from a short cycle o through the fan centre v whose start and end are
/// the edges of o at v, unless some piece meets the interiors of both v-w arcs
/// of o; that piece is returned instead.
inline FanOutcome fan_to_wheel(const WeightedGraph& g, Radius r, const Cycle& o, const Fan& f,
                               VertexId w) {
  const VertexId v = f.center;
  if (!r.admits(cycle_length(g, o)) || !o.contains(v) || !o.contains(w) || v == w) {
    throw LogicError("fan_to_wheel: bad cycle");
  }
  Cycle oc = rotated_to(o, v);
  const std::size_t pw = *oc.position(w);
  std::array<std::vector<VertexId>, 2> arc;  // v to w each way
  arc[0].assign(oc.vertices.begin(), oc.vertices.begin() + static_cast<std::ptrdiff_t>(pw) + 1);
  arc[1].push_back(v);
  for (std::size_t t = oc.size() - 1; t >= pw; --t) arc[1].push_back(oc.vertices[t]);
  {
    auto s = f.as_pre_fan().start();
    auto e = f.as_pre_fan().end();
    std::set<detail::EdgeKey> at_v{detail::edge_key(v, oc.vertices[1]),
                                   detail::edge_key(v, oc.vertices.back())};
    if (s == e || !at_v.count(s) || !at_v.count(e)) throw LogicError("fan_to_wheel: fan ends are not on o");
  }
  std::map<VertexId, std::pair<int, std::size_t>> side;  // interior vertex -> (arc, index)
  for (int k = 0; k < 2; ++k) {
    for (std::size_t t = 1; t + 1 < arc[k].size(); ++t) side[arc[k][t]] = {k, t};
  }
  const std::size_t n = f.pieces.size();
  std::vector<int> colour(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.pieces[i].contains(w)) throw LogicError("fan_to_wheel: a piece contains w");
    int mask = 0;
    for (VertexId x : f.pieces[i].vertices) {
      auto it = side.find(x);
      if (it != side.end()) mask |= 1 << it->second.first;
    }
    if (mask == 3) return f.pieces[i];
    if (mask) colour[i] = mask == 1 ? 0 : 1;
  }
  std::size_t i = n;
  std::size_t j = n;
  for (std::size_t t = 0, last = n; t < n; ++t) {
    if (colour[t] < 0) continue;
    if (last < n && colour[last] != colour[t]) {
      i = last;
      j = t;
      break;
    }
    last = t;
  }
  if (i == n) throw LogicError("fan_to_wheel: no colour change along the fan");
  // a_k: the vertex of the piece on arc k closest to w along that arc.
  auto far_point = [&](const Cycle& c, int k) {
    std::size_t best = 0;
    for (VertexId x : c.vertices) {
      auto it = side.find(x);
      if (it != side.end() && it->second.first == k) best = std::max(best, it->second.second);
    }
    return best;
  };
  const Cycle& oi = f.pieces[i];
  const Cycle& oj = f.pieces[j];
  const int ki = colour[i];
  const int kj = colour[j];
  const std::size_t ai = far_point(oi, ki);
  const std::size_t aj = far_point(oj, kj);
  const std::size_t pi = *oi.position(arc[ki][ai]);
  const std::size_t pj = *oj.position(arc[kj][aj]);
  // Q_i leaves v the way piece i returns; Q_j leaves v the way piece j leaves.
  std::vector<VertexId> qi{v};
  for (std::size_t t = oi.size() - 1; t >= pi; --t) qi.push_back(oi.vertices[t]);
  std::vector<VertexId> qj(oj.vertices.begin(), oj.vertices.begin() + static_cast<std::ptrdiff_t>(pj) + 1);
  std::vector<VertexId> arc_i(arc[ki].begin(), arc[ki].begin() + static_cast<std::ptrdiff_t>(ai) + 1);
  std::vector<VertexId> arc_j(arc[kj].begin(), arc[kj].begin() + static_cast<std::ptrdiff_t>(aj) + 1);
  const auto& si = detail::walk_length(g, arc_i) <= detail::walk_length(g, qi) ? arc_i : qi;
  const auto& sj = detail::walk_length(g, arc_j) <= detail::walk_length(g, qj) ? arc_j : qj;
  detail::EdgeBag bag;
  bag.add_walk(si);
  bag.add_walk(sj);
  bag.add_walk({oi.vertices.begin(), oi.vertices.begin() + static_cast<std::ptrdiff_t>(pi) + 1});
  {
    std::vector<VertexId> back(oj.vertices.begin() + static_cast<std::ptrdiff_t>(pj), oj.vertices.end());
    back.push_back(v);
    bag.add_walk(back);
  }
  for (std::size_t m = i + 1; m < j; ++m) bag.add_cycle(f.pieces[m]);
  bag.add_walk({arc[ki].begin() + static_cast<std::ptrdiff_t>(ai), arc[ki].end()});
  bag.add_walk({arc[kj].begin() + static_cast<std::ptrdiff_t>(aj), arc[kj].end()});
  WeightedGraph h = bag.graph(g);
  return detail::checked_wheel(g, r, wheel_with_center(h, v), "fan_to_wheel");
}

// ---------------------------------------------------------------------------
// Theta graphs.

/// Two branching vertices joined by three internally disjoint arms.
struct ThetaGraph {
  VertexId v = 0;
  VertexId w = 0;
  std::array<Path, 3> arms;  // each from v to w
};

/// Arm a out to w, arm b back to v.
inline Cycle theta_cycle(const ThetaGraph& t, int a, int b) {
  Cycle c;
  c.vertices = t.arms[a].vertices;
  const auto& back = t.arms[b].vertices;
  for (std::size_t s = back.size() - 1; s-- > 1;) c.vertices.push_back(back[s]);
  return c;
}

inline bool is_theta_graph(const WeightedGraph& g, Radius r, const ThetaGraph& t) {
  if (t.v == t.w) return false;
  std::set<VertexId> seen{t.v, t.w};
  int single = 0;
  for (const auto& a : t.arms) {
    if (a.vertices.size() < 2 || a.front() != t.v || a.back() != t.w || !is_path_of(g, a)) return false;
    single += a.edge_count() == 1;
    for (std::size_t s = 1; s + 1 < a.vertices.size(); ++s) {
      if (!seen.insert(a.vertices[s]).second) return false;
    }
  }
  if (single > 1) return false;
  int short_cycles = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      short_cycles += r.admits(path_length(g, t.arms[a]) + path_length(g, t.arms[b]));
    }
  }
  return short_cycles >= 2;
}

namespace detail {

/// Position of every theta vertex: branching vertices get arm -1.
struct ThetaPlace {
  int arm = -1;
  std::size_t index = 0;
};

inline std::map<VertexId, ThetaPlace> theta_places(const ThetaGraph& t) {
  std::map<VertexId, ThetaPlace> out{{t.v, {-1, 0}}, {t.w, {-1, 0}}};
  for (int a = 0; a < 3; ++a) {
    const auto& vs = t.arms[a].vertices;
    for (std::size_t s = 1; s + 1 < vs.size(); ++s) out[vs[s]] = {a, s};
  }
  return out;
}

inline EdgeBag theta_edges(const ThetaGraph& t) {
  EdgeBag bag;
  for (const auto& a : t.arms) bag.add_path(a);
  return bag;
}

/// Consecutive hits of a walk on interiors of different arms: the sub-walk between them.
inline std::optional<Path> first_crossing(const std::vector<VertexId>& walk,
                                          const std::map<VertexId, ThetaPlace>& places) {
  std::optional<std::size_t> last;
  for (std::size_t t = 0; t < walk.size(); ++t) {
    auto it = places.find(walk[t]);
    if (it == places.end()) continue;
    if (it->second.arm < 0) {
      last.reset();
      continue;
    }
    if (last && places.at(walk[*last]).arm != it->second.arm) {
      return Path{{walk.begin() + static_cast<std::ptrdiff_t>(*last),
                   walk.begin() + static_cast<std::ptrdiff_t>(t) + 1}};
    }
    last = t;
  }
  return std::nullopt;
}

}  // namespace detail

/// A subpath of o meeting the theta graph exactly in its ends (and not a theta edge).
struct ThetaArc {
  Path path;
  bool bridge = false;
  int arm = -1;  // circumvented arm of a detour, when determined
};

/// Arcs of o in cyclic order along o.
inline std::vector<ThetaArc> theta_arcs(const ThetaGraph& t, const Cycle& o) {
  auto places = detail::theta_places(t);
  auto tedges = detail::theta_edges(t);
  std::optional<std::size_t> first;
  for (std::size_t s = 0; s < o.size(); ++s) {
    if (places.count(o.vertices[s])) {
      first = s;
      break;
    }
  }
  if (!first) throw LogicError("cycle misses the theta graph");
  Cycle oc = rotated_to(o, o.vertices[*first]);
  std::vector<ThetaArc> arcs;
  std::size_t cur = 0;
  for (std::size_t s = 1; s <= oc.size(); ++s) {
    VertexId x = oc.at(s);
    if (!places.count(x)) continue;
    if (s == cur + 1 && tedges.has(oc.at(cur), x)) {
      cur = s;
      continue;
    }
    if (s == oc.size() && cur == 0) throw LogicError("cycle meets the theta graph only once");
    ThetaArc arc;
    for (std::size_t k = cur; k <= s; ++k) arc.path.vertices.push_back(oc.at(k));
    arcs.push_back(std::move(arc));
    cur = s;
  }
  std::set<int> bridge_arms;
  int bridges = 0;
  for (auto& a : arcs) {
    auto p = places.at(a.path.front());
    auto q = places.at(a.path.back());
    if (p.arm >= 0 && q.arm >= 0 && p.arm != q.arm) {
      a.bridge = true;
      ++bridges;
      bridge_arms.insert(p.arm);
      bridge_arms.insert(q.arm);
    } else {
      a.arm = std::max(p.arm, q.arm);
    }
  }
  if (bridges == 1) {
    for (auto& a : arcs) {
      if (a.bridge || a.arm >= 0) continue;
      for (int k = 0; k < 3; ++k) {
        if (!bridge_arms.count(k)) a.arm = k;
      }
    }
  }
  return arcs;
}

namespace detail {

/// The stretch of the circumvented arm between the ends of a detour, oriented like the detour.
inline Path replacement_path(const ThetaGraph& t, const ThetaArc& d) {
  const auto& arm = t.arms[d.arm].vertices;
  auto pos = [&](VertexId x) {
    return static_cast<std::size_t>(std::find(arm.begin(), arm.end(), x) - arm.begin());
  };
  std::size_t a = pos(d.path.front());
  std::size_t b = pos(d.path.back());
  if (a >= arm.size() || b >= arm.size()) throw LogicError("detour ends are not on its arm");
  Path out;
  if (a <= b) {
    out.vertices.assign(arm.begin() + static_cast<std::ptrdiff_t>(a), arm.begin() + static_cast<std::ptrdiff_t>(b) + 1);
  } else {
    for (std::size_t s = a + 1; s-- > b;) out.vertices.push_back(arm[s]);
  }
  return out;
}

inline bool has_branching(const ThetaGraph& t, const Cycle& o) {
  return o.contains(t.v) || o.contains(t.w);
}

/// Cycle made of the bridge plus a shortest return route through `bag`.
inline std::optional<Cycle> close_bridge(const WeightedGraph& g, const Path& bridge, EdgeBag bag) {
  auto back = path_within(g, bag, bridge.back(), bridge.front());
  if (!back) return std::nullopt;
  Cycle c;
  c.vertices = bridge.vertices;
  for (std::size_t s = 1; s + 1 < back->vertices.size(); ++s) c.vertices.push_back(back->vertices[s]);
  if (!is_cycle_of(g, c)) return std::nullopt;
  return c;
}

struct ArcCount {
  int bridges = 0;
  int detours = 0;
};

inline ArcCount count_arcs(const std::vector<ThetaArc>& arcs) {
  ArcCount c;
  for (const auto& a : arcs) (a.bridge ? c.bridges : c.detours)++;
  return c;
}

/// A short cycle through the least branching vertex on o with exactly one bridge,
/// closing the first bridge met from that vertex by a short route in the theta graph.
inline Cycle single_bridge_cycle(const WeightedGraph& g, Radius r, const ThetaGraph& t,
                                 const Cycle& o) {
  const VertexId hub = o.contains(t.v) && o.contains(t.w) ? std::min(t.v, t.w)
                       : o.contains(t.v)                 ? t.v
                                                         : t.w;
  auto arcs = theta_arcs(t, o);
  WeightedGraph tg = theta_edges(t).graph(g);
  std::optional<Cycle> best;
  for (int dir = 0; dir < 2; ++dir) {
    Cycle oc = rotated_to(o, hub);
    if (dir == 1) oc = reversed(oc);
    auto pos = positions(oc);
    std::size_t done = oc.size();
    std::size_t begin = 0;
    for (const auto& a : arcs) {
      if (!a.bridge) continue;
      std::size_t p = pos.at(a.path.front());
      std::size_t q = pos.at(a.path.back());
      if (std::max(p, q) < done) {
        done = std::max(p, q);
        begin = std::min(p, q);
      }
    }
    if (done == oc.size()) continue;
    Path bridge{{oc.vertices.begin() + static_cast<std::ptrdiff_t>(begin),
                 oc.vertices.begin() + static_cast<std::ptrdiff_t>(done) + 1}};
    auto home = shortest_path(tg, bridge.back(), hub);
    if (!home) continue;
    EdgeBag bag;
    bag.add_path(*home);
    bag.add_walk({oc.vertices.begin(), oc.vertices.begin() + static_cast<std::ptrdiff_t>(begin) + 1});
    auto u = close_bridge(g, bridge, bag);
    if (!u || !r.admits(cycle_length(g, *u))) continue;
    auto c = count_arcs(theta_arcs(t, *u));
    if (c.bridges != 1 || !has_branching(t, *u)) continue;
    if (!best || cycle_length(g, *u) < cycle_length(g, *best)) best = u;
  }
  if (!best) throw LogicError("no short cycle with a single bridge");
  return *best;
}

}  // namespace detail

/// K4 or 4-wheel subdivision from a theta graph, a short cycle o through one of
/// its branching vertices, and a path p of o between interiors of different arms.
inline WheelSubdivision theta_to_wheel(const WeightedGraph& g, Radius r, ThetaGraph theta,
                                       Cycle o, const Path& p) {
  if (!is_theta_graph(g, r, theta)) throw LogicError("theta_to_wheel: not a theta graph");
  if (!r.admits(cycle_length(g, o)) || !detail::has_branching(theta, o)) {
    throw LogicError("theta_to_wheel: cycle is long or misses the branching vertices");
  }
  {
    auto places = detail::theta_places(theta);
    auto a = places.find(p.front());
    auto b = places.find(p.back());
    if (!cycle_contains_path(o, p) || p.contains(theta.v) || p.contains(theta.w) ||
        a == places.end() || b == places.end() || a->second.arm == b->second.arm) {
      throw LogicError("theta_to_wheel: path does not join different arms");
    }
  }
  if (detail::count_arcs(theta_arcs(theta, o)).bridges >= 2) {
    o = detail::single_bridge_cycle(g, r, theta, o);
  }
  auto wheel_from = [&](const detail::EdgeBag& bag) -> std::optional<WheelSubdivision> {
    WeightedGraph h = bag.graph(g);
    auto w = recognize_wheel_subdivision(h);
    if (w && is_wheel_subdivision_of(g, *w) && is_r_local_wheel(g, *w, r)) return w;
    return std::nullopt;
  };
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 10000) throw LogicError("theta_to_wheel: detour elimination did not terminate");
    auto arcs = theta_arcs(theta, o);
    auto count = detail::count_arcs(arcs);
    if (count.bridges != 1) throw LogicError("theta_to_wheel: expected a single bridge");
    std::size_t bi = 0;
    while (!arcs[bi].bridge) ++bi;
    const Path& bridge = arcs[bi].path;
    if (count.detours == 0) {
      auto bag = detail::theta_edges(theta);
      bag.add_path(bridge);
      if (auto w = wheel_from(bag)) return *w;
      throw LogicError("theta_to_wheel: theta plus bridge is not an r-local wheel");
    }
    // Detours in order of preference: free of the bridge ends or strongly adjacent first.
    const std::size_t m = arcs.size();
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t k = 0; k < m; ++k) {
      if (arcs[k].bridge) continue;
      Path rep = detail::replacement_path(theta, arcs[k]);
      bool free = true;
      for (std::size_t s = 1; s + 1 < rep.vertices.size(); ++s) {
        free = free && rep.vertices[s] != bridge.front() && rep.vertices[s] != bridge.back();
      }
      bool strong = false;
      auto nonbranching = [&](VertexId x) { return x != theta.v && x != theta.w; };
      if (k == (bi + 1) % m) strong = strong || nonbranching(arcs[k].path.front());
      if (k == (bi + m - 1) % m) strong = strong || nonbranching(arcs[k].path.back());
      order.push_back({free || strong ? 0 : 1, k});
    }
    std::sort(order.begin(), order.end());
    bool moved = false;
    for (auto [rank, k] : order) {
      const ThetaArc& d = arcs[k];
      Path rep = detail::replacement_path(theta, d);
      ThetaGraph nt = theta;
      Cycle no = o;
      if (path_length(g, rep) <= path_length(g, d.path)) {
        // Run along the arm instead of the detour, keep a cycle through the bridge.
        detail::EdgeBag bag;
        for (std::size_t s = 0; s < o.size(); ++s) {
          VertexId a = o.vertices[s];
          VertexId b = o.at(s + 1);
          bool on_detour = false;
          for (std::size_t q = 1; q < d.path.vertices.size(); ++q) {
            on_detour = on_detour || detail::edge_key(a, b) == detail::edge_key(d.path.vertices[q - 1],
                                                                               d.path.vertices[q]);
          }
          bool on_bridge = false;
          for (std::size_t q = 1; q < bridge.vertices.size(); ++q) {
            on_bridge = on_bridge || detail::edge_key(a, b) == detail::edge_key(bridge.vertices[q - 1],
                                                                               bridge.vertices[q]);
          }
          if (!on_detour && !on_bridge) bag.add(a, b);
        }
        bag.add_path(rep);
        auto u = detail::close_bridge(g, bridge, bag);
        if (!u) continue;
        no = *u;
      } else {
        // Swap the stretch of the arm for the shorter detour.
        Path& arm = nt.arms[d.arm];
        Path seg = rep;
        Path det = d.path;
        if (std::find(arm.vertices.begin(), arm.vertices.end(), seg.front()) >
            std::find(arm.vertices.begin(), arm.vertices.end(), seg.back())) {
          seg = seg.reversed();
          det = det.reversed();
        }
        auto lo = std::find(arm.vertices.begin(), arm.vertices.end(), seg.front());
        auto hi = std::find(arm.vertices.begin(), arm.vertices.end(), seg.back());
        std::vector<VertexId> vs(arm.vertices.begin(), lo);
        vs.insert(vs.end(), det.vertices.begin(), det.vertices.end());
        vs.insert(vs.end(), hi + 1, arm.vertices.end());
        arm.vertices = std::move(vs);
      }
      if (!is_theta_graph(g, r, nt) || !r.admits(cycle_length(g, no)) ||
          !detail::has_branching(nt, no)) {
        continue;
      }
      auto c = detail::count_arcs(theta_arcs(nt, no));
      if (c.bridges != 1 || c.detours >= count.detours) continue;
      theta = std::move(nt);
      o = std::move(no);
      moved = true;
      break;
    }
    if (moved) continue;
    // No detour can be removed: theta plus o is a 4-wheel.
    auto bag = detail::theta_edges(theta);
    bag.add_cycle(o);
    if (auto w = wheel_from(bag)) return *w;
    throw LogicError("theta_to_wheel: stuck with detours and no 4-wheel");
  }
}

/// Theta graph made of a geodesic cycle o and a stretch of `piece` between the
/// interiors of the two v-w arcs of o.
inline ThetaGraph theta_from_obstruction(const WeightedGraph& g, const DistanceTable& dist,
                                         Radius r, const Cycle& o, const Cycle& piece, VertexId v,
                                         VertexId w) {
  Cycle oc = rotated_to(o, v);
  const std::size_t pw = *oc.position(w);
  std::map<VertexId, int> side;
  for (std::size_t t = 1; t < oc.size(); ++t) {
    if (t != pw) side[oc.vertices[t]] = t < pw ? 0 : 1;
  }
  side[v] = side[w] = -1;
  std::optional<VertexId> anchor;
  for (VertexId x : piece.vertices) {
    if (x == v || x == w) anchor = x;
  }
  if (!anchor) throw LogicError("theta_from_obstruction: piece misses both ends");
  Cycle pc = rotated_to(piece, *anchor);
  std::vector<VertexId> walk = pc.vertices;
  walk.push_back(*anchor);
  std::optional<std::size_t> last;
  for (std::size_t t = 0; t < walk.size(); ++t) {
    auto it = side.find(walk[t]);
    if (it == side.end()) continue;
    if (it->second < 0) {
      last.reset();
      continue;
    }
    if (last && side.at(walk[*last]) != it->second) {
      ThetaGraph th;
      th.v = walk[*last];
      th.w = walk[t];
      Path q{{walk.begin() + static_cast<std::ptrdiff_t>(*last),
              walk.begin() + static_cast<std::ptrdiff_t>(t) + 1}};
      Cycle rot = rotated_to(o, th.v);
      std::size_t k = *rot.position(th.w);
      Path a{{rot.vertices.begin(), rot.vertices.begin() + static_cast<std::ptrdiff_t>(k) + 1}};
      Path b{{th.v}};
      for (std::size_t s = rot.size() - 1; s >= k; --s) b.vertices.push_back(rot.vertices[s]);
      if (path_length(g, b) < path_length(g, a)) std::swap(a, b);
      th.arms = {a, b, q};
      if (!is_theta_graph(g, r, th)) throw LogicError("theta_from_obstruction: parameter exceeds r");
      if (path_length(g, a) != dist.at(g.index(th.v), g.index(th.w)) || a.edge_count() < 2) {
        throw LogicError("theta_from_obstruction: no long shortest path between branching vertices");
      }
      return th;
    }
    last = t;
  }
  throw LogicError("theta_from_obstruction: piece does not cross o");
}

using ThetaOutcome = std::variant<ThetaGraph, WheelSubdivision>;

/// A theta graph on the same branching vertices that contains o, or a wheel when
/// o carries a path between interiors of different arms.
inline ThetaOutcome improve_theta(const WeightedGraph& g, Radius r, const ThetaGraph& theta,
                                  const Cycle& o) {
  if (!o.contains(theta.v) || !o.contains(theta.w) || !r.admits(cycle_length(g, o))) {
    throw LogicError("improve_theta: cycle must be short and pass both branching vertices");
  }
  auto places = detail::theta_places(theta);
  Cycle oc = rotated_to(o, theta.v);
  const std::size_t pw = *oc.position(theta.w);
  std::array<Path, 2> halves;
  halves[0].vertices.assign(oc.vertices.begin(), oc.vertices.begin() + static_cast<std::ptrdiff_t>(pw) + 1);
  halves[1].vertices.push_back(theta.v);
  for (std::size_t t = oc.size() - 1; t >= pw; --t) halves[1].vertices.push_back(oc.vertices[t]);
  std::set<int> used;
  for (const auto& h : halves) {
    if (auto bridge = detail::first_crossing(h.vertices, places)) {
      return theta_to_wheel(g, r, theta, o, *bridge);
    }
    for (std::size_t t = 1; t + 1 < h.vertices.size(); ++t) {
      auto it = places.find(h.vertices[t]);
      if (it != places.end()) used.insert(it->second.arm);
    }
  }
  std::optional<int> free_arm;
  for (int a = 0; a < 3; ++a) {
    if (used.count(a)) continue;
    if (!free_arm || path_length(g, theta.arms[a]) < path_length(g, theta.arms[*free_arm])) free_arm = a;
  }
  if (!free_arm) throw LogicError("improve_theta: every arm meets the cycle");
  ThetaGraph out;
  out.v = theta.v;
  out.w = theta.w;
  out.arms = {halves[0], halves[1], theta.arms[*free_arm]};
  if (!is_theta_graph(g, r, out)) throw LogicError("improve_theta: result is not a theta graph");
  return out;
}

// ---------------------------------------------------------------------------

/// An r-local wheel subdivision in an r-locally 3-connected graph.
inline WheelSubdivision find_wheel(const WeightedGraph& g, Radius r) {
  if (!is_r_locally_3_connected(g, r)) throw LogicError("find_wheel: graph is not r-locally 3-connected");
  DistanceTable dist(g);
  auto split = dichotomy(g, dist, r);
  if (auto* tw = std::get_if<TriangularWitness>(&split)) return triangular_wheel(g, dist, r, *tw);
  const Cycle& o1 = std::get<Cycle>(split);

  // First round on the long geodesic cycle.
  const VertexId v0 = o1.vertices[0];
  const VertexId v1 = o1.vertices[2];
  Path p{{o1.vertices[0], o1.vertices[1], o1.vertices[2]}};
  {
    Path other{{v0}};
    for (std::size_t t = o1.size() - 1; t >= 2; --t) other.vertices.push_back(o1.vertices[t]);
    if (path_length(g, other) < path_length(g, p)) p = other;
  }
  auto first = build_pre_fan(g, dist, r, o1, v0, v1, p);
  auto fan = reduce_to_fan(g, r, first.fan);
  auto out1 = fan_to_wheel(g, r, first.anchor, fan, first.other);
  if (auto* w = std::get_if<WheelSubdivision>(&out1)) return *w;
  ThetaGraph theta = theta_from_obstruction(g, dist, r, first.anchor, std::get<Cycle>(out1),
                                            fan.center, first.other);

  // Second round on a cycle of the theta graph through a shortest arm.
  int shortest = 0;
  for (int a = 1; a < 3; ++a) {
    if (path_length(g, theta.arms[a]) < path_length(g, theta.arms[shortest])) shortest = a;
  }
  int partner = -1;
  for (int a = 0; a < 3; ++a) {
    if (a == shortest || theta.arms[a].edge_count() < 2) continue;
    if (partner < 0 || path_length(g, theta.arms[a]) < path_length(g, theta.arms[partner])) partner = a;
  }
  if (partner < 0) throw LogicError("find_wheel: theta graph has no second long arm");
  Cycle obar = theta_cycle(theta, shortest, partner);
  auto second = build_pre_fan(g, dist, r, obar, theta.v, theta.w, theta.arms[shortest]);
  auto fan2 = reduce_to_fan(g, r, second.fan);
  auto out2 = fan_to_wheel(g, r, second.anchor, fan2, second.other);
  if (auto* w = std::get_if<WheelSubdivision>(&out2)) return *w;
  const Cycle& piece = std::get<Cycle>(out2);

  auto improved = improve_theta(g, r, theta, second.anchor);
  if (auto* w = std::get_if<WheelSubdivision>(&improved)) return *w;
  const ThetaGraph& t2 = std::get<ThetaGraph>(improved);
  Cycle pc = rotated_to(piece, fan2.center);
  std::vector<VertexId> walk(pc.vertices.begin() + 1, pc.vertices.end());
  auto bridge = detail::first_crossing(walk, detail::theta_places(t2));
  if (!bridge) throw LogicError("find_wheel: piece does not cross the improved theta graph");
  return theta_to_wheel(g, r, t2, piece, *bridge);
}

}  // namespace locwheel
