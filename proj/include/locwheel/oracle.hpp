#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "locwheel/graph.hpp"

// Brute-force reference answers. Nothing here depends on the decision pipeline.

namespace locwheel {

namespace detail {

struct SmallGraph {
  int n = 0;
  std::vector<std::uint32_t> adj;          // bitmask per vertex index
  std::vector<std::vector<Length>> len;    // 0 when absent
};

inline SmallGraph small_graph(const WeightedGraph& g, int max_vertices) {
  if (g.order() > max_vertices || g.order() > 31) {
    throw InputError("graph too large for the brute-force oracle");
  }
  SmallGraph s;
  s.n = g.order();
  s.adj.assign(s.n, 0);
  s.len.assign(s.n, std::vector<Length>(s.n, 0));
  for (const auto& e : g.edges()) {
    int a = g.index(e.u);
    int b = g.index(e.v);
    s.adj[a] |= 1u << b;
    s.adj[b] |= 1u << a;
    s.len[a][b] = s.len[b][a] = e.length;
  }
  return s;
}

struct SpokeOption {
  Length length;
  std::uint32_t interior;
};

}  // namespace detail

/// Exhaustive search for a subdivided wheel all of whose pieces have length at most r.
inline bool oracle_has_bounded_wheel(const WeightedGraph& g, Radius r, int max_vertices = 10) {
  using namespace detail;
  const SmallGraph s = small_graph(g, max_vertices);
  const int n = s.n;
  auto fits = [&](Length len) { return r.admits(len); };

  for (int c = 0; c < n; ++c) {
    if (std::popcount(s.adj[c]) < 3) continue;
    bool found = false;
    // Enumerate rim cycles in g - c with least vertex `start`.
    std::vector<int> rim;
    std::uint32_t rim_mask = 0;
    auto try_rim = [&]() {
      const int k = static_cast<int>(rim.size());
      std::vector<Length> prefix(k + 1, 0);
      for (int i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + s.len[rim[i]][rim[(i + 1) % k]];
      auto arc = [&](int i, int j) {  // forward from position i to position j
        return j >= i ? prefix[j] - prefix[i] : prefix[k] - prefix[i] + prefix[j];
      };
      // Spoke options per rim position: c -> ... -> rim[i], interior off the rim.
      std::vector<std::vector<SpokeOption>> options(k);
      std::vector<int> pos_of(n, -1);
      for (int i = 0; i < k; ++i) pos_of[rim[i]] = i;
      std::function<void(int, Length, std::uint32_t)> walk = [&](int u, Length len,
                                                                 std::uint32_t interior) {
        for (int w = 0; w < n; ++w) {
          if (!(s.adj[u] >> w & 1) || w == c || (interior >> w & 1)) continue;
          Length nl = len + s.len[u][w];
          if (!r.is_infinite() && nl > r.value() - 2) continue;
          if (pos_of[w] >= 0) {
            options[pos_of[w]].push_back({nl, interior});
          } else {
            walk(w, nl, interior | (1u << w));
          }
        }
      };
      walk(c, 0, 0);
      // Choose spoke positions in increasing order; the first chosen is the smallest.
      std::function<bool(int, int, Length, int, Length, std::uint32_t, int)> extend =
          [&](int first_pos, int last_pos, Length last_len, int count, Length first_len,
              std::uint32_t used, int) -> bool {
        if (count >= 3 && fits(last_len + arc(last_pos, first_pos) + first_len)) return true;
        for (int p = last_pos + 1; p < k; ++p) {
          for (const auto& opt : options[p]) {
            if (opt.interior & used) continue;
            if (!fits(last_len + arc(last_pos, p) + opt.length)) continue;
            if (extend(first_pos, p, opt.length, count + 1, first_len, used | opt.interior, 0)) {
              return true;
            }
          }
        }
        return false;
      };
      for (int p0 = 0; p0 < k; ++p0) {
        for (const auto& opt : options[p0]) {
          if (extend(p0, p0, opt.length, 1, opt.length, opt.interior, 0)) return true;
        }
      }
      return false;
    };
    std::function<void(int, int)> grow = [&](int start, int u) {
      if (found) return;
      for (int w = 0; w < n && !found; ++w) {
        if (!(s.adj[u] >> w & 1) || w == c) continue;
        if (w == start && rim.size() >= 3 && rim[1] < rim.back()) {
          if (try_rim()) found = true;
          continue;
        }
        if (w <= start || (rim_mask >> w & 1)) continue;
        rim.push_back(w);
        rim_mask |= 1u << w;
        grow(start, w);
        rim.pop_back();
        rim_mask &= ~(1u << w);
      }
    };
    for (int start = 0; start < n && !found; ++start) {
      if (start == c) continue;
      rim = {start};
      rim_mask = 1u << start;
      grow(start, start);
    }
    if (found) return true;
  }
  return false;
}

/// Exhaustive search for a subdivision of K4: four branch vertices joined by six
/// internally disjoint paths.
inline bool has_k4_subdivision(const WeightedGraph& g, int max_vertices = 12) {
  using namespace detail;
  const SmallGraph s = small_graph(g, max_vertices);
  const int n = s.n;
  std::vector<int> cand;
  for (int v = 0; v < n; ++v) {
    if (std::popcount(s.adj[v]) >= 3) cand.push_back(v);
  }
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  int branch[4];
  std::function<bool(int, std::uint32_t)> connect = [&](int pi, std::uint32_t used) -> bool {
    if (pi == 6) return true;
    int a = branch[pairs[pi][0]];
    int b = branch[pairs[pi][1]];
    std::function<bool(int, std::uint32_t)> dfs = [&](int u, std::uint32_t mask) -> bool {
      for (int w = 0; w < n; ++w) {
        if (!(s.adj[u] >> w & 1)) continue;
        if (w == b) {
          if (u == a) {
            // Direct edge: allowed once per pair since the graph is simple.
            if (connect(pi + 1, mask)) return true;
            continue;
          }
          if (connect(pi + 1, mask)) return true;
          continue;
        }
        if (mask >> w & 1) continue;
        if (dfs(w, mask | (1u << w))) return true;
      }
      return false;
    };
    return dfs(a, used);
  };
  const int m = static_cast<int>(cand.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        for (int l = k + 1; l < m; ++l) {
          branch[0] = cand[i];
          branch[1] = cand[j];
          branch[2] = cand[k];
          branch[3] = cand[l];
          std::uint32_t used = (1u << cand[i]) | (1u << cand[j]) | (1u << cand[k]) | (1u << cand[l]);
          if (connect(0, used)) return true;
        }
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration of small graphs up to isomorphism.

namespace detail {

/// Canonical code of a graph on n <= 11 vertices given as adjacency bitmasks:
/// the least upper-triangle code over relabellings that respect a degree refinement.
inline std::uint64_t canonical_code(int n, const std::vector<std::uint32_t>& adj) {
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = std::popcount(adj[v]);
  std::vector<std::pair<std::vector<int>, int>> keyed;
  for (int v = 0; v < n; ++v) {
    std::vector<int> key{deg[v]};
    std::vector<int> nd;
    for (int w = 0; w < n; ++w) {
      if (adj[v] >> w & 1) nd.push_back(deg[w]);
    }
    std::sort(nd.begin(), nd.end());
    key.insert(key.end(), nd.begin(), nd.end());
    keyed.push_back({key, v});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order(n);
  std::vector<std::pair<int, int>> classes;  // [begin, end) in order
  for (int i = 0; i < n; ++i) {
    order[i] = keyed[i].second;
    if (i == 0 || keyed[i].first != keyed[i - 1].first) classes.push_back({i, i + 1});
    else classes.back().second = i + 1;
  }
  std::uint64_t best = ~std::uint64_t{0};
  auto code_of = [&](const std::vector<int>& ord) {
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) code = (code << 1) | (adj[ord[i]] >> ord[j] & 1);
    }
    return code;
  };
  std::function<void(std::size_t)> permute = [&](std::size_t ci) {
    if (ci == classes.size()) {
      best = std::min(best, code_of(order));
      return;
    }
    auto [b, e] = classes[ci];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      permute(ci + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  permute(0);
  return best;
}

inline std::vector<std::uint32_t> decode(int n, std::uint64_t code) {
  std::vector<std::uint32_t> adj(n, 0);
  int bit = n * (n - 1) / 2;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      --bit;
      if (code >> bit & 1) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
    }
  }
  return adj;
}

}  // namespace detail

/// All graphs on exactly n vertices up to isomorphism, as canonical codes in
/// increasing order. Built by adding a vertex to every graph on n - 1 vertices.
inline std::vector<std::uint64_t> all_graph_codes(int n) {
  if (n < 1 || n > 9) throw InputError("graph enumeration supports 1..9 vertices");
  std::vector<std::uint64_t> level{0};
  for (int k = 2; k <= n; ++k) {
    std::set<std::uint64_t> next;
    for (std::uint64_t code : level) {
      auto adj = detail::decode(k - 1, code);
      adj.push_back(0);
      for (std::uint32_t nb = 0; nb < (1u << (k - 1)); ++nb) {
        auto a = adj;
        a[k - 1] = nb;
        for (int v = 0; v < k - 1; ++v) {
          if (nb >> v & 1) a[v] |= 1u << (k - 1);
        }
        next.insert(detail::canonical_code(k, a));
      }
    }
    level.assign(next.begin(), next.end());
  }
  return level;
}

inline WeightedGraph graph_from_code(int n, std::uint64_t code) {
  auto adj = detail::decode(n, code);
  std::vector<Edge> edges;
  std::vector<VertexId> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj[i] >> j & 1) edges.push_back({i, j, 1});
    }
  }
  return WeightedGraph(std::move(edges), std::move(verts));
}

/// Connected unit-length graphs on n vertices up to isomorphism.
inline std::vector<WeightedGraph> connected_graphs(int n) {
  std::vector<WeightedGraph> out;
  for (std::uint64_t code : all_graph_codes(n)) {
    auto g = graph_from_code(n, code);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

/// Random connected graph on n vertices with lengths in [1, max_len]:
/// a random spanning tree plus each remaining pair with probability p_percent/100.
inline WeightedGraph random_connected_graph(int n, int p_percent, Length max_len,
                                            std::uint64_t seed) {
  if (n < 1) throw InputError("need at least one vertex");
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t k) { return rng() % k; };
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> used;
  std::vector<VertexId> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  for (int v = 1; v < n; ++v) {
    int u = static_cast<int>(below(v));
    edges.push_back({u, v, 1 + static_cast<Length>(below(max_len))});
    used.insert({u, v});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (used.count({u, v})) continue;
      if (static_cast<int>(below(100)) < p_percent) {
        edges.push_back({u, v, 1 + static_cast<Length>(below(max_len))});
      }
    }
  }
  return WeightedGraph(std::move(edges), std::move(verts));
}

}  // namespace locwheel
