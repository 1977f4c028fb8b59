#pragma once

#include <array>
#include <map>
#include <random>
#include <vector>

#include "locwheel/graph.hpp"
#include "locwheel/wheel.hpp"

namespace locwheel {

/// K4 with every edge replaced by a path of k unit edges. Branch vertices are 0..3.
inline WeightedGraph subdivided_k4(int k) {
  if (k < 1) throw InputError("subdivision factor must be at least 1");
  std::vector<Edge> edges;
  VertexId next = 4;
  for (VertexId a = 0; a < 4; ++a) {
    for (VertexId b = a + 1; b < 4; ++b) {
      VertexId prev = a;
      for (int s = 1; s < k; ++s) {
        edges.push_back({prev, next, 1});
        prev = next++;
      }
      edges.push_back({prev, b, 1});
    }
  }
  return WeightedGraph(std::move(edges));
}

/// Two branch vertices 0 and 1 joined by arms of a, b and c unit edges.
inline WeightedGraph theta_family(int a, int b, int c) {
  std::array<int, 3> arms{a, b, c};
  int singles = 0;
  for (int len : arms) {
    if (len < 1) throw InputError("arm lengths must be at least 1");
    singles += len == 1;
  }
  if (singles > 1) throw InputError("at most one arm may be a single edge");
  std::vector<Edge> edges;
  VertexId next = 2;
  for (int len : arms) {
    VertexId prev = 0;
    for (int s = 1; s < len; ++s) {
      edges.push_back({prev, next, 1});
      prev = next++;
    }
    edges.push_back({prev, 1, 1});
  }
  return WeightedGraph(std::move(edges));
}

/// Splits edges of length at least 2 into two, each with probability one half.
/// The wheel is rewritten to run through the new vertices.
inline GeneratedWheel subdivide_wheel(const GeneratedWheel& in, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VertexId next = in.graph.max_id() + 1;
  std::vector<Edge> edges;
  std::map<std::pair<VertexId, VertexId>, VertexId> middle;
  for (const auto& e : in.graph.edges()) {
    if (e.length >= 2 && rng() % 2 == 0) {
      Length first = 1 + static_cast<Length>(rng() % static_cast<std::uint64_t>(e.length - 1));
      edges.push_back({e.u, next, first});
      edges.push_back({next, e.v, e.length - first});
      middle[{e.u, e.v}] = next++;
    } else {
      edges.push_back(e);
    }
  }
  auto expand = [&](const std::vector<VertexId>& walk) {
    std::vector<VertexId> out{walk.front()};
    for (std::size_t i = 1; i < walk.size(); ++i) {
      auto it = middle.find({std::min(walk[i - 1], walk[i]), std::max(walk[i - 1], walk[i])});
      if (it != middle.end()) out.push_back(it->second);
      out.push_back(walk[i]);
    }
    return out;
  };
  GeneratedWheel out{WeightedGraph(std::move(edges)), {}};
  out.wheel.center = in.wheel.center;
  auto rim = in.wheel.rim.vertices;
  rim.push_back(rim.front());
  rim = expand(rim);
  rim.pop_back();
  out.wheel.rim.vertices = std::move(rim);
  for (const auto& s : in.wheel.spokes) out.wheel.spokes.push_back(Path{expand(s.vertices)});
  out.wheel = normalized(std::move(out.wheel));
  return out;
}

}  // namespace locwheel
