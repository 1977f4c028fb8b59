#include <gtest/gtest.h>

#include "../common/graphs.hpp"
#include "locwheel/cycle_space.hpp"
#include "locwheel/generators.hpp"
#include "locwheel/oracle.hpp"

using namespace locwheel;
using namespace locwheel::testing;

namespace {

EdgeSet sum_of(const WeightedGraph& g, const std::vector<Cycle>& cs) {
  EdgeSet s(g.size());
  for (const auto& c : cs) s ^= edge_set(g, c);
  return s;
}

}  // namespace

TEST(Dimension, IsEdgesMinusVerticesPlusComponents) {
  EXPECT_EQ(cycle_space_dimension(complete(4)), 3u);
  EXPECT_EQ(cycle_space_dimension(cycle(8)), 1u);
  EXPECT_EQ(cycle_space_dimension(complete(5)), 6u);
}

TEST(Enumerate, CountsAllCyclesOfK5) {
  // K5 has 10 triangles, 15 four-cycles and 12 five-cycles.
  EXPECT_EQ(enumerate_cycles(complete(5), Radius(3)).size(), 10u);
  EXPECT_EQ(enumerate_cycles(complete(5), Radius(4)).size(), 25u);
  EXPECT_EQ(enumerate_cycles(complete(5), Radius::infinite()).size(), 37u);
}

TEST(ShortCycles, K4AndC8) {
  auto k4 = enumerate_short_cycles(complete(4), Radius(3));
  EXPECT_EQ(k4.size(), 4u);
  for (const auto& c : k4) EXPECT_EQ(c.vertices.size(), 3u);
  EXPECT_TRUE(enumerate_short_cycles(cycle(8), Radius(7)).empty());
}

TEST(ShortCycles, GenerationExamples) {
  EXPECT_TRUE(short_cycles_generate(complete(4), Radius(3)));
  EXPECT_FALSE(short_cycles_generate(cycle(8), Radius(7)));
  auto sk4 = subdivided_k4(2);
  EXPECT_EQ(gf2_rank(sk4, enumerate_short_cycles(sk4, Radius(6))), cycle_space_dimension(sk4));
  EXPECT_TRUE(short_cycles_generate(sk4, Radius(6)));
  EXPECT_FALSE(short_cycles_generate(sk4, Radius(5)));
}

TEST(Represent, FourCycleOfK4IsTwoTriangles) {
  auto k4 = complete(4);
  Cycle target{{0, 1, 2, 3}};
  auto rep = represent(k4, Radius(3), target);
  ASSERT_TRUE(rep);
  EXPECT_EQ(rep->size(), 2u);
  EXPECT_EQ(sum_of(k4, *rep), edge_set(k4, target));
  EXPECT_FALSE(represent(cycle(8), Radius(7), Cycle{{0, 1, 2, 3, 4, 5, 6, 7}}));
}

TEST(Represent, RandomTargetsSumCorrectly) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    auto g = random_connected_graph(7, 60, 3, rng());
    Radius r(std::uniform_int_distribution<int>(4, 9)(rng));
    if (!short_cycles_generate(g, r)) continue;
    for (const auto& c : enumerate_cycles(g, Radius::infinite(), 30)) {
      auto rep = represent(g, r, c);
      ASSERT_TRUE(rep);
      for (const auto& s : *rep) EXPECT_LE(cycle_length(g, s), r.value());
      EXPECT_EQ(sum_of(g, *rep), edge_set(g, c));
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Friendly, K4FourCycleAvoidingAnEdge) {
  auto k4 = complete(4);
  DistanceTable dist(k4);
  Path p{{0, 1}};
  Cycle target{{0, 2, 1, 3}};
  auto start = represent(k4, dist, Radius(3), edge_set(k4, target));
  ASSERT_TRUE(start);
  auto out = friendly_represent(k4, dist, Radius(3), 0, 1, p, *start);
  for (const auto& c : out) EXPECT_TRUE(is_friendly(k4, dist, Radius(3), 0, 1, p, c));
  EXPECT_EQ(sum_of(k4, out), edge_set(k4, target));
}

TEST(Friendly, RandomInstancesStayFriendlyAndSumToTarget) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int t = 0; t < 80; ++t) {
    auto g = random_connected_graph(7, 55, 3, rng());
    Radius r(std::uniform_int_distribution<int>(4, 9)(rng));
    DistanceTable dist(g);
    if (!short_cycles_generate(g, r)) continue;
    auto vs = g.vertices();
    VertexId v0 = vs[0], v1 = vs[vs.size() - 1];
    auto p = shortest_path(g, v0, v1);
    for (const auto& c : enumerate_cycles(g, Radius::infinite(), 10)) {
      auto start = represent(g, dist, r, edge_set(g, c));
      ASSERT_TRUE(start);
      auto out = friendly_represent(g, dist, r, v0, v1, *p, *start);
      for (const auto& f : out) EXPECT_TRUE(is_friendly(g, dist, r, v0, v1, *p, f));
      EXPECT_EQ(sum_of(g, out), edge_set(g, c));
      ++checked;
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(ClosedWalk, SplitsIntoCycles) {
  auto k4 = complete(4);
  // The walk uses 02 twice, which cancels and leaves the 4-cycle 0-1-2-3.
  std::vector<VertexId> walk{0, 1, 2, 0, 3, 2};
  auto cs = decompose_closed_walk(k4, walk);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].vertices.size(), 4u);
  EXPECT_EQ(sum_of(k4, cs), closed_walk_edges(k4, walk));
}
