#pragma once

#include <vector>

#include "locwheel/graph.hpp"

namespace locwheel::testing {

inline WeightedGraph complete(int n, Length len = 1) {
  std::vector<Edge> e;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) e.push_back({a, b, len});
  return WeightedGraph(std::move(e));
}

inline WeightedGraph cycle(int n, Length len = 1) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i) e.push_back({i, static_cast<VertexId>((i + 1) % n), len});
  return WeightedGraph(std::move(e));
}

/// Hub 0, rim 1..n in order.
inline WeightedGraph wheel(int n, Length rim_len = 1, Length spoke_len = 1) {
  std::vector<Edge> e;
  for (VertexId i = 1; i <= n; ++i) {
    e.push_back({0, i, spoke_len});
    e.push_back({i, static_cast<VertexId>(i % n + 1), rim_len});
  }
  return WeightedGraph(std::move(e));
}

inline WeightedGraph octahedron() {
  std::vector<Edge> e;
  for (VertexId a = 0; a < 6; ++a)
    for (VertexId b = a + 1; b < 6; ++b)
      if (b != a + 3) e.push_back({a, b, 1});
  return WeightedGraph(std::move(e));
}

/// Triangles 0-1-2 and 0-1-3 sharing the edge 01.
inline WeightedGraph k4_minus_edge() {
  return WeightedGraph({{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {0, 3, 1}, {1, 3, 1}});
}

/// Brute-force all-pairs distances by Floyd-Warshall, indexed by vertex position.
inline std::vector<std::vector<Length>> floyd(const WeightedGraph& g) {
  const int n = g.order();
  std::vector<std::vector<Length>> d(n, std::vector<Length>(n, kUnreachable));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) {
    int a = g.index(e.u), b = g.index(e.v);
    d[a][b] = d[b][a] = std::min(d[a][b], e.length);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace locwheel::testing
