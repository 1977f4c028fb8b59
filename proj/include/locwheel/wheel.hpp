#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "locwheel/cycle_space.hpp"
#include "locwheel/graph.hpp"
#include "locwheel/local_connectivity.hpp"

namespace locwheel {

/// A subdivided wheel inside a host graph: a rim cycle, a centre off the rim and
/// at least three internally disjoint spokes from the centre to distinct rim vertices.
struct WheelSubdivision {
  VertexId center = 0;
  Cycle rim;
  std::vector<Path> spokes;  // each starts at center and ends on the rim, in rim order

  friend bool operator==(const WheelSubdivision&, const WheelSubdivision&) = default;
};

inline std::vector<Edge> wheel_edge_list(const WeightedGraph& host, const WheelSubdivision& w) {
  std::vector<Edge> out;
  const auto& rv = w.rim.vertices;
  for (std::size_t i = 0; i < rv.size(); ++i) {
    VertexId a = rv[i];
    VertexId b = rv[(i + 1) % rv.size()];
    out.push_back({std::min(a, b), std::max(a, b), host.edge_length(a, b)});
  }
  for (const auto& s : w.spokes) {
    for (std::size_t i = 1; i < s.vertices.size(); ++i) {
      VertexId a = s.vertices[i - 1];
      VertexId b = s.vertices[i];
      out.push_back({std::min(a, b), std::max(a, b), host.edge_length(a, b)});
    }
  }
  return out;
}

/// The wheel as a standalone graph with host lengths.
inline WeightedGraph wheel_graph(const WeightedGraph& host, const WheelSubdivision& w) {
  return WeightedGraph(wheel_edge_list(host, w));
}

/// Rim starts at its least vertex, turns towards the smaller neighbour; spokes follow rim order.
inline WheelSubdivision normalized(WheelSubdivision w) {
  w.rim = canonical(std::move(w.rim));
  std::sort(w.spokes.begin(), w.spokes.end(), [&](const Path& a, const Path& b) {
    return *w.rim.position(a.back()) < *w.rim.position(b.back());
  });
  return w;
}

/// Structural check of a wheel subdivision against its host.
inline bool is_wheel_subdivision_of(const WeightedGraph& host, const WheelSubdivision& w) {
  if (w.spokes.size() < 3 || !is_cycle_of(host, w.rim) || w.rim.contains(w.center)) return false;
  std::set<VertexId> used(w.rim.vertices.begin(), w.rim.vertices.end());
  used.insert(w.center);
  std::set<VertexId> ends;
  for (const auto& s : w.spokes) {
    if (s.vertices.size() < 2 || s.front() != w.center || !is_path_of(host, s)) return false;
    if (!w.rim.contains(s.back()) || !ends.insert(s.back()).second) return false;
    for (std::size_t i = 1; i + 1 < s.vertices.size(); ++i) {
      if (!used.insert(s.vertices[i]).second) return false;
    }
  }
  return true;
}

/// Tries to read h as a wheel subdivision with the given centre.
inline std::optional<WheelSubdivision> wheel_with_center(const WeightedGraph& h, VertexId c) {
  if (!h.contains(c) || h.degree(c) < 3 || !is_connected(h)) return std::nullopt;
  const int n = h.order();
  const int ci = h.index(c);
  std::vector<int> deg(n);
  std::vector<char> alive(n, 1);
  alive[ci] = 0;
  for (int i = 0; i < n; ++i) {
    for (const auto& a : h.arcs(i)) deg[i] += a.to != ci;
  }
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    if (i != ci && deg[i] <= 1) stack.push_back(i);
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (!alive[u]) continue;
    alive[u] = 0;
    for (const auto& a : h.arcs(u)) {
      if (alive[a.to] && --deg[a.to] <= 1) stack.push_back(a.to);
    }
  }
  int rim_size = 0;
  int start = -1;
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    if (deg[i] != 2) return std::nullopt;
    ++rim_size;
    if (start < 0) start = i;
  }
  if (rim_size < 3) return std::nullopt;
  WheelSubdivision w;
  w.center = c;
  int prev = -1;
  int cur = start;
  do {
    w.rim.vertices.push_back(h.id(cur));
    int next = -1;
    for (const auto& a : h.arcs(cur)) {
      if (alive[a.to] && a.to != prev) {
        next = a.to;
        break;
      }
    }
    prev = cur;
    cur = next;
  } while (cur != start && cur >= 0);
  if (static_cast<int>(w.rim.size()) != rim_size) return std::nullopt;
  int spoke_edges = 0;
  for (const auto& a0 : h.arcs(ci)) {
    Path s{{c}};
    int p = ci;
    int u = a0.to;
    while (!alive[u]) {
      if (h.arcs(u).size() != 2) return std::nullopt;
      s.vertices.push_back(h.id(u));
      int next = h.arcs(u)[0].to == p ? h.arcs(u)[1].to : h.arcs(u)[0].to;
      p = u;
      u = next;
      if (u == ci) return std::nullopt;
    }
    s.vertices.push_back(h.id(u));
    spoke_edges += static_cast<int>(s.edge_count());
    w.spokes.push_back(std::move(s));
  }
  if (spoke_edges + rim_size != h.size()) return std::nullopt;
  if (!is_wheel_subdivision_of(h, w)) return std::nullopt;
  // Every vertex must be used.
  std::size_t covered = 1 + w.rim.size();
  for (const auto& s : w.spokes) covered += s.vertices.size() - 2;
  if (static_cast<int>(covered) != n) return std::nullopt;
  return normalized(std::move(w));
}

/// Reads h as a wheel subdivision, trying centres in increasing id order.
inline std::optional<WheelSubdivision> recognize_wheel_subdivision(const WeightedGraph& h) {
  for (VertexId c : h.vertices()) {
    if (h.degree(c) < 3) continue;
    if (auto w = wheel_with_center(h, c)) return w;
  }
  return std::nullopt;
}

/// Piece i runs out along spoke i, forward along the rim, and back along spoke i+1.
inline std::vector<Cycle> pieces_of(const WheelSubdivision& w) {
  std::vector<Cycle> out;
  const std::size_t k = w.spokes.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Path& a = w.spokes[i];
    const Path& b = w.spokes[(i + 1) % k];
    Cycle c;
    c.vertices = a.vertices;
    Path arc = cycle_arc(w.rim, *w.rim.position(a.back()), *w.rim.position(b.back()));
    c.vertices.insert(c.vertices.end(), arc.vertices.begin() + 1, arc.vertices.end());
    for (std::size_t t = b.vertices.size() - 1; t-- > 1;) c.vertices.push_back(b.vertices[t]);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Length> piece_lengths(const WeightedGraph& host, const WheelSubdivision& w) {
  std::vector<Length> out;
  for (const auto& p : pieces_of(w)) out.push_back(cycle_length(host, p));
  return out;
}

inline bool is_r_bounded(const WeightedGraph& host, const WheelSubdivision& w, Radius r) {
  for (Length len : piece_lengths(host, w)) {
#ifdef LOCWHEEL_MUTATE_BOUNDED
    if (!r.is_infinite() && len >= r.value()) return false;
#else
    if (!r.admits(len)) return false;
#endif
  }
  return true;
}

/// Every cycle of a wheel: the rim, and for each pair of spokes the two cycles
/// through the centre. Returned with the spoke pair and which rim arc was used.
struct WheelCycle {
  Cycle cycle;
  int first_spoke = -1;   // -1 for the rim
  int second_spoke = -1;
  bool is_piece = false;
};

inline std::vector<WheelCycle> wheel_cycles(const WheelSubdivision& w) {
  std::vector<WheelCycle> out;
  out.push_back({w.rim, -1, -1, false});
  const int k = static_cast<int>(w.spokes.size());
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      // Spoke i, forward rim arc from end i to end j, spoke j back.
      const Path& a = w.spokes[i];
      const Path& b = w.spokes[j];
      Cycle c;
      c.vertices = a.vertices;
      Path arc = cycle_arc(w.rim, *w.rim.position(a.back()), *w.rim.position(b.back()));
      c.vertices.insert(c.vertices.end(), arc.vertices.begin() + 1, arc.vertices.end());
      for (std::size_t t = b.vertices.size() - 1; t-- > 1;) c.vertices.push_back(b.vertices[t]);
      out.push_back({std::move(c), i, j, j == (i + 1) % k});
    }
  }
  return out;
}

/// r-local: the wheel's own cycles of length at most r span its cycle space.
inline bool is_r_local_wheel(const WeightedGraph& host, const WheelSubdivision& w, Radius r) {
  WeightedGraph h = wheel_graph(host, w);
  std::vector<Cycle> shorts;
  for (auto& wc : wheel_cycles(w)) {
    if (r.admits(cycle_length(h, wc.cycle))) shorts.push_back(wc.cycle);
  }
  return gf2_rank(h, shorts) == w.spokes.size();
}

/// All pieces short, or all but one piece short and the rim short.
inline bool has_r_explicit(const WeightedGraph& host, const WheelSubdivision& w, Radius r) {
  int long_pieces = 0;
  for (Length len : piece_lengths(host, w)) long_pieces += !r.admits(len);
  if (long_pieces == 0) return true;
  return long_pieces == 1 && r.admits(cycle_length(host, w.rim));
}

/// Turns an r-explicit wheel into an r-bounded one: either it already is, or the
/// rim and two adjacent short pieces form a three-spoke wheel with all pieces short.
inline WheelSubdivision explicit_to_bounded(const WeightedGraph& host, const WheelSubdivision& w,
                                            Radius r) {
  if (!has_r_explicit(host, w, r)) throw LogicError("wheel is not r-explicit");
  auto lens = piece_lengths(host, w);
  const std::size_t k = w.spokes.size();
  if (std::all_of(lens.begin(), lens.end(), [&](Length l) { return r.admits(l); })) return w;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = (i + 1) % k;
    if (!r.admits(lens[i]) || !r.admits(lens[j])) continue;
    // Pieces i and j share spoke j; its rim end becomes the new centre.
    const Path& sa = w.spokes[i];
    const Path& sb = w.spokes[j];
    const Path& sc = w.spokes[(j + 1) % k];
    WheelSubdivision out;
    out.center = sb.back();
    // New rim: old centre, spoke a, rim from a's end backwards to c's end, spoke c back.
    std::size_t pa = *w.rim.position(sa.back());
    std::size_t pc = *w.rim.position(sc.back());
    Path around = cycle_arc(w.rim, pc, pa);  // from c's end forward to a's end, avoiding b's end
    out.rim.vertices = sa.vertices;          // center ... a_end
    for (std::size_t t = around.vertices.size() - 1; t-- > 1;) {
      out.rim.vertices.push_back(around.vertices[t]);
    }
    for (std::size_t t = sc.vertices.size(); t-- > 1;) out.rim.vertices.push_back(sc.vertices[t]);
    std::size_t pb = *w.rim.position(sb.back());
    out.spokes.push_back(sb.reversed());
    out.spokes.push_back(cycle_arc(w.rim, pa, pb).reversed());
    out.spokes.push_back(cycle_arc(w.rim, pb, pc));
    out = normalized(std::move(out));
    if (!is_wheel_subdivision_of(host, out) || !is_r_bounded(host, out, r)) {
      throw LogicError("three-spoke wheel is not r-bounded");
    }
    return out;
  }
  throw LogicError("no two adjacent short pieces");
}

/// Deletes spokes that are chords of short geodesic cycles until the wheel is r-explicit.
inline WheelSubdivision make_explicit(const WeightedGraph& host, WheelSubdivision w, Radius r) {
  if (!is_r_local_wheel(host, w, r)) throw LogicError("wheel is not r-local");
  while (w.spokes.size() > 3) {
    WeightedGraph h = wheel_graph(host, w);
    DistanceTable dist(h);
    std::optional<std::size_t> victim;
    for (const auto& wc : wheel_cycles(w)) {
      if (wc.first_spoke < 0 || wc.is_piece) continue;
      if (!r.admits(cycle_length(h, wc.cycle)) || !is_geodesic_cycle(h, dist, wc.cycle)) continue;
      // First spoke whose end lies strictly inside the arc from first to second.
      const std::size_t k = w.spokes.size();
      victim = (static_cast<std::size_t>(wc.first_spoke) + 1) % k;
      break;
    }
    if (!victim) break;
    w.spokes.erase(w.spokes.begin() + static_cast<std::ptrdiff_t>(*victim));
    if (!is_r_local_wheel(host, w, r)) throw LogicError("spoke deletion broke locality");
  }
  if (!has_r_explicit(host, w, r)) throw LogicError("wheel did not become r-explicit");
  return w;
}

inline WheelSubdivision make_bounded(const WeightedGraph& host, const WheelSubdivision& w,
                                     Radius r) {
  auto out = explicit_to_bounded(host, make_explicit(host, w, r), r);
  if (!is_r_bounded(host, out, r)) throw LogicError("result is not r-bounded");
  return out;
}

struct GeneratedWheel {
  WeightedGraph graph;
  WheelSubdivision wheel;
};

/// Random r-local weighted wheel: hub 0, rim 1..spokes. Lengths are drawn until
/// the wheel is r-local, so some pieces may exceed r.
inline GeneratedWheel generate_r_weighted_wheel(int spokes, Radius r, std::uint64_t seed) {
  if (spokes < 3) throw InputError("a wheel needs at least three spokes");
  if (!r.is_infinite() && r.value() < 3) throw InputError("no r-local wheel for r < 3");
  std::mt19937_64 rng(seed);
  const Length top = r.is_infinite() ? 9 : std::max<Length>(1, r.value() / 2);
  auto draw = [&](Length hi) { return 1 + static_cast<Length>(rng() % static_cast<std::uint64_t>(hi)); };
  for (int attempt = 0;; ++attempt) {
    Length hi = attempt < 200 ? top : 1;
    std::vector<Edge> edges;
    for (int i = 1; i <= spokes; ++i) {
      edges.push_back({0, i, draw(hi)});
      edges.push_back({i, i % spokes + 1, draw(hi)});
    }
    WeightedGraph g(std::move(edges));
    WheelSubdivision w;
    w.center = 0;
    for (int i = 1; i <= spokes; ++i) {
      w.rim.vertices.push_back(i);
      w.spokes.push_back(Path{{0, i}});
    }
    w = normalized(std::move(w));
    if (is_r_local_wheel(g, w, r)) return {std::move(g), std::move(w)};
    if (attempt > 400) throw LogicError("could not draw an r-local wheel");
  }
}

}  // namespace locwheel
