#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "locwheel/graph.hpp"

namespace locwheel {

/// Subset of the edges of a fixed host graph, i.e. a vector over GF(2).
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe) : words_((universe + 63) / 64, 0), universe_(universe) {}

  std::size_t universe() const { return universe_; }
  void set(std::size_t i) { words_[i / 64] |= bit(i); }
  void reset(std::size_t i) { words_[i / 64] &= ~bit(i); }
  void flip(std::size_t i) { words_[i / 64] ^= bit(i); }
  bool test(std::size_t i) const { return (words_[i / 64] & bit(i)) != 0; }

  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  std::optional<std::size_t> first() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    }
    return std::nullopt;
  }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto w = words_[k];
      while (w) {
        out.push_back(static_cast<int>(k * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }
  bool intersects(const EdgeSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & o.words_[k]) return true;
    }
    return false;
  }

  EdgeSet& operator^=(const EdgeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  friend EdgeSet operator^(EdgeSet a, const EdgeSet& b) { return a ^= b; }
  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  friend auto operator<=>(const EdgeSet&, const EdgeSet&) = default;

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i % 64); }
  std::vector<std::uint64_t> words_;
  std::size_t universe_ = 0;
};

inline EdgeSet edge_set(const WeightedGraph& g, const Cycle& c) {
  EdgeSet s(g.size());
  for (int e : cycle_edge_indices(g, c)) s.flip(e);
  return s;
}

inline EdgeSet edge_set(const WeightedGraph& g, const Path& p) {
  EdgeSet s(g.size());
  for (int e : path_edge_indices(g, p)) s.flip(e);
  return s;
}

/// Edge set of a closed walk reduced mod 2.
inline EdgeSet closed_walk_edges(const WeightedGraph& g, const std::vector<VertexId>& walk) {
  EdgeSet s(g.size());
  for (std::size_t i = 0; i < walk.size(); ++i) {
    VertexId a = walk[i];
    VertexId b = walk[(i + 1) % walk.size()];
    auto e = g.edge_index(a, b);
    if (!e) throw LogicError("closed walk uses a missing edge");
    s.flip(*e);
  }
  return s;
}

/// Splits an even edge set into edge-disjoint cycles by walking from the smallest
/// vertex until a vertex repeats and cutting off the closed part.
inline std::vector<Cycle> split_even_subgraph(const WeightedGraph& g, EdgeSet edges) {
  std::vector<Cycle> out;
  std::vector<int> deg(g.order(), 0);
  for (int e : edges.indices()) {
    ++deg[g.index(g.edge(e).u)];
    ++deg[g.index(g.edge(e).v)];
  }
  for (int d : deg) {
    if (d % 2) throw LogicError("edge set is not even");
  }
  std::vector<int> pos(g.order(), -1);
  while (!edges.none()) {
    int start = static_cast<int>(std::find_if(deg.begin(), deg.end(), [](int d) { return d > 0; }) -
                                 deg.begin());
    std::vector<int> stack{start};
    pos[start] = 0;
    while (true) {
      int u = stack.back();
      int next = -1;
      for (const auto& arc : g.arcs(u)) {
        if (edges.test(arc.edge)) {
          next = arc.to;
          edges.reset(arc.edge);
          break;
        }
      }
      if (next < 0) break;
      --deg[u];
      --deg[next];
      if (pos[next] >= 0) {
        Cycle c;
        for (std::size_t k = pos[next]; k < stack.size(); ++k) c.vertices.push_back(g.id(stack[k]));
        for (std::size_t k = pos[next] + 1; k < stack.size(); ++k) pos[stack[k]] = -1;
        stack.resize(pos[next] + 1);
        out.push_back(canonical(std::move(c)));
      } else {
        pos[next] = static_cast<int>(stack.size());
        stack.push_back(next);
      }
    }
    for (int v : stack) pos[v] = -1;
  }
  return out;
}

/// Decomposes a closed walk (mod 2) into edge-disjoint cycles.
inline std::vector<Cycle> decompose_closed_walk(const WeightedGraph& g,
                                                const std::vector<VertexId>& walk) {
  return split_even_subgraph(g, closed_walk_edges(g, walk));
}

/// Incremental Gaussian elimination over GF(2) that records, for each basis row,
/// which input vectors were combined to produce it.
class Gf2Eliminator {
 public:
  Gf2Eliminator(std::size_t universe, std::size_t max_inputs)
      : universe_(universe), max_inputs_(max_inputs) {}

  /// Adds a vector; returns true when it raised the rank.
  bool add(const EdgeSet& v) {
    if (count_ >= max_inputs_) throw LogicError("too many vectors for eliminator");
    EdgeSet combo(max_inputs_);
    combo.flip(count_++);
    EdgeSet rem = v;
    reduce(rem, combo);
    if (rem.none()) return false;
    std::size_t pivot = *rem.first();
    rows_.push_back({pivot, std::move(rem), std::move(combo)});
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  /// Input indices whose sum equals target, or nullopt when target is not in the span.
  std::optional<std::vector<int>> express(const EdgeSet& target) const {
    EdgeSet rem = target;
    EdgeSet combo(max_inputs_);
    reduce(rem, combo);
    if (!rem.none()) return std::nullopt;
    return combo.indices();
  }

 private:
  struct Row {
    std::size_t pivot;
    EdgeSet vec;
    EdgeSet combo;
  };

  void reduce(EdgeSet& rem, EdgeSet& combo) const {
    for (const auto& row : rows_) {
      if (rem.test(row.pivot)) {
        rem ^= row.vec;
        combo ^= row.combo;
      }
    }
  }

  std::size_t universe_;
  std::size_t max_inputs_;
  std::size_t count_ = 0;
  std::vector<Row> rows_;
};

/// Dimension of the cycle space: m - n + number of components.
inline std::size_t cycle_space_dimension(const WeightedGraph& g) {
  std::vector<int> label;
  int c = component_labels(g, label);
  return static_cast<std::size_t>(g.size() - g.order() + c);
}

inline std::size_t gf2_rank(const WeightedGraph& g, const std::vector<Cycle>& cycles) {
  Gf2Eliminator elim(g.size(), cycles.size());
  for (const auto& c : cycles) elim.add(edge_set(g, c));
  return elim.rank();
}

/// All simple cycles of length at most `bound`, canonical and sorted.
/// `limit` caps the number of cycles produced (0 means no cap).
inline std::vector<Cycle> enumerate_cycles(const WeightedGraph& g, Radius bound,
                                           std::size_t limit = 0) {
  std::vector<Cycle> out;
  const int n = g.order();
  std::vector<char> on_path(n, 0);
  std::vector<int> path;
  bool stop = false;
  for (int s = 0; s < n && !stop; ++s) {
    // Only vertices with index > s may appear besides s, so s is the least vertex.
    std::function<void(int, Length)> dfs = [&](int u, Length len) {
      if (stop) return;
      for (const auto& arc : g.arcs(u)) {
        int w = arc.to;
        Length nl = len + g.edge(arc.edge).length;
        if (!bound.admits(nl)) continue;
        if (w == s && path.size() >= 3 && path[1] < path.back()) {
          Cycle c;
          for (int i : path) c.vertices.push_back(g.id(i));
          out.push_back(std::move(c));
          if (limit && out.size() >= limit) stop = true;
          continue;
        }
        if (w <= s || on_path[w]) continue;
        on_path[w] = 1;
        path.push_back(w);
        dfs(w, nl);
        path.pop_back();
        on_path[w] = 0;
        if (stop) return;
      }
    };
    on_path[s] = 1;
    path = {s};
    dfs(s, 0);
    on_path[s] = 0;
  }
  for (auto& c : out) c = canonical(std::move(c));
  std::sort(out.begin(), out.end());
  return out;
}

/// Upper bound on the length of a geodesic cycle: twice the largest finite
/// distance plus the longest edge.
inline Length geodesic_length_cap(const WeightedGraph& g, const DistanceTable& dist) {
  Length far = 0;
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      if (dist.at(a, b) < kUnreachable) far = std::max(far, dist.at(a, b));
    }
  }
  return 2 * far + g.max_edge_length();
}

/// All geodesic cycles of length at most r, canonical and sorted.
inline std::vector<Cycle> enumerate_short_cycles(const WeightedGraph& g, const DistanceTable& dist,
                                                 Radius r) {
  Radius bound = r;
  Length cap = geodesic_length_cap(g, dist);
  if (r.is_infinite() || r.value() > cap) bound = Radius(cap);
  std::vector<Cycle> out;
  for (auto& c : enumerate_cycles(g, bound)) {
    if (is_geodesic_cycle(g, dist, c)) out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Cycle> enumerate_short_cycles(const WeightedGraph& g, Radius r) {
  return enumerate_short_cycles(g, DistanceTable(g), r);
}

/// True when the geodesic cycles of length at most r span the cycle space.
inline bool short_cycles_generate(const WeightedGraph& g, Radius r) {
  return gf2_rank(g, enumerate_short_cycles(g, r)) == cycle_space_dimension(g);
}

/// Short geodesic cycles summing to `target`, or nullopt when target is not generated.
inline std::optional<std::vector<Cycle>> represent(const WeightedGraph& g, const DistanceTable& dist,
                                                   Radius r, const EdgeSet& target) {
  auto cycles = enumerate_short_cycles(g, dist, r);
  Gf2Eliminator elim(g.size(), cycles.size());
  for (const auto& c : cycles) elim.add(edge_set(g, c));
  auto combo = elim.express(target);
  if (!combo) return std::nullopt;
  std::vector<Cycle> out;
  for (int i : *combo) out.push_back(cycles[i]);
  return out;
}

inline std::optional<std::vector<Cycle>> represent(const WeightedGraph& g, Radius r,
                                                   const Cycle& target) {
  return represent(g, DistanceTable(g), r, edge_set(g, target));
}

/// Subpath of cycle `c` running forward from position i to position j.
inline Path cycle_arc(const Cycle& c, std::size_t i, std::size_t j) {
  Path p;
  const std::size_t k = c.size();
  for (std::size_t t = i;; t = (t + 1) % k) {
    p.vertices.push_back(c.vertices[t]);
    if (t == j) break;
  }
  return p;
}

/// Does cycle c contain path p as a subpath (in either direction)?
inline bool cycle_contains_path(const Cycle& c, const Path& p) {
  if (p.vertices.size() < 2) return p.vertices.empty() || c.contains(p.front());
  auto pos = c.position(p.front());
  if (!pos) return false;
  const std::size_t k = c.size();
  if (p.vertices.size() > k) return false;
  bool fwd = true;
  bool bwd = true;
  for (std::size_t t = 0; t < p.vertices.size(); ++t) {
    if (c.vertices[(*pos + t) % k] != p.vertices[t]) fwd = false;
    if (c.vertices[(*pos + k - t % k) % k] != p.vertices[t]) bwd = false;
  }
  return fwd || bwd;
}

/// Generating set whose cycles all satisfy the friendliness condition for
/// (v0, v1, P): short, geodesic, and containing P whenever they meet both ends.
inline bool is_friendly(const WeightedGraph& g, const DistanceTable& dist, Radius r, VertexId v0,
                        VertexId v1, const Path& p, const Cycle& c) {
  if (!r.admits(cycle_length(g, c))) return false;
  if (!is_geodesic_cycle(g, dist, c)) return false;
  if (c.contains(v0) && c.contains(v1)) return cycle_contains_path(c, p);
  return true;
}

/// Rewrites a short-cycle representation of `target` into friendly cycles for
/// (v0, v1, P). P must be a shortest v0-v1 path. The result sums to target mod 2.
inline std::vector<Cycle> friendly_represent(const WeightedGraph& g, const DistanceTable& dist,
                                             Radius, VertexId v0, VertexId v1, const Path& p,
                                             const std::vector<Cycle>& start) {
  std::vector<Cycle> work = start;
  std::map<EdgeSet, Cycle> result;  // toggled, so equal cycles cancel
  auto emit = [&](const Cycle& c) {
    auto key = edge_set(g, c);
    auto it = result.find(key);
    if (it == result.end()) {
      result.emplace(key, canonical(c));
    } else {
      result.erase(it);
    }
  };
  std::size_t guard = 0;
  while (!work.empty()) {
    if (++guard > 200000) throw LogicError("friendly rewriting did not terminate");
    Cycle x = work.back();
    work.pop_back();
    const std::size_t k = x.size();
    if (!is_geodesic_cycle(g, dist, x)) {
      // Split along a shortcut between two vertices of x.
      std::vector<Length> prefix(k + 1, 0);
      for (std::size_t i = 0; i < k; ++i) {
        prefix[i + 1] = prefix[i] + g.edge_length(x.vertices[i], x.vertices[(i + 1) % k]);
      }
      bool done = false;
      for (std::size_t i = 0; i < k && !done; ++i) {
        for (std::size_t j = i + 1; j < k && !done; ++j) {
          Length arc = prefix[j] - prefix[i];
          Length best = std::min(arc, prefix[k] - arc);
          if (dist.at(g.index(x.vertices[i]), g.index(x.vertices[j])) >= best) continue;
          Path s = *shortest_path(g, x.vertices[i], x.vertices[j]);
          for (int side = 0; side < 2; ++side) {
            Path a = side == 0 ? cycle_arc(x, i, j) : cycle_arc(x, j, i);
            std::vector<VertexId> walk = a.vertices;
            Path back = side == 0 ? s.reversed() : s;
            walk.insert(walk.end(), back.vertices.begin() + 1, back.vertices.end() - 1);
            for (auto& c : decompose_closed_walk(g, walk)) work.push_back(c);
          }
          done = true;
        }
      }
      continue;
    }
    if (x.contains(v0) && x.contains(v1) && !cycle_contains_path(x, p)) {
      auto i = *x.position(v0);
      auto j = *x.position(v1);
      for (int side = 0; side < 2; ++side) {
        Path a = side == 0 ? cycle_arc(x, i, j) : cycle_arc(x, j, i);
        // a runs v0 -> v1 or v1 -> v0; close it with P.
        std::vector<VertexId> walk = a.vertices;
        Path back = a.front() == v0 ? p.reversed() : p;
        walk.insert(walk.end(), back.vertices.begin() + 1, back.vertices.end() - 1);
        for (auto& c : decompose_closed_walk(g, walk)) work.push_back(c);
      }
      continue;
    }
    emit(x);
  }
  std::vector<Cycle> out;
  for (auto& [key, c] : result) out.push_back(c);
  return out;
}

}  // namespace locwheel
