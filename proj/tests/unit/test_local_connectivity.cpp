#include <gtest/gtest.h>

#include "../common/graphs.hpp"
#include "locwheel/decomposer.hpp"
#include "locwheel/generators.hpp"

using namespace locwheel;
using namespace locwheel::testing;

namespace {

std::vector<std::size_t> component_sizes(const ExplorerNeighbourhood& ex) {
  std::vector<std::size_t> out;
  for (const auto& c : ex.components) out.push_back(c.vertices.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Cutvertex, CycleDependsOnRadius) {
  EXPECT_TRUE(is_local_cutvertex(cycle(8), 0, Radius(4)));
  EXPECT_FALSE(is_local_cutvertex(cycle(8), 0, Radius(16)));
  EXPECT_FALSE(is_local_cutvertex(cycle(8), 0, Radius(8)));
  EXPECT_TRUE(is_local_cutvertex(cycle(8), 0, Radius(7)));
}

TEST(Cutvertex, NeverInK4) {
  for (Length r : {3, 4, 10})
    for (VertexId v = 0; v < 4; ++v) EXPECT_FALSE(is_local_cutvertex(complete(4), v, Radius(r)));
}

TEST(Cutvertex, TreeInternalVertices) {
  WeightedGraph star({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  EXPECT_TRUE(is_local_cutvertex(star, 0, Radius::infinite()));
  EXPECT_FALSE(is_local_cutvertex(star, 1, Radius::infinite()));
}

TEST(Explorer, K4AdjacentPair) {
  auto ex = explorer_neighbourhood(complete(4), 0, 1, Radius(3));
  EXPECT_EQ(ex.subgraph(complete(4)).order(), 4);
  ASSERT_EQ(ex.components.size(), 1u);
  EXPECT_EQ(ex.components[0].vertices, (std::vector<VertexId>{2, 3}));
  EXPECT_TRUE(ex.xy_edge.has_value());
}

TEST(Explorer, K23DegreeThreePair) {
  auto k23 = theta_family(2, 2, 2);
  auto ex = explorer_neighbourhood(k23, 0, 1, Radius(4));
  EXPECT_EQ(component_sizes(ex), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(ex.components_touching_both(), 3u);
}

TEST(Explorer, C8AntipodalPair) {
  auto ex = explorer_neighbourhood(cycle(8), 0, 4, Radius(8));
  EXPECT_EQ(component_sizes(ex), (std::vector<std::size_t>{3, 3}));
}

TEST(TwoSeparator, Examples) {
  EXPECT_TRUE(is_local_2separator(theta_family(2, 2, 2), 0, 1, Radius(4)));
  for (VertexId a = 0; a < 4; ++a)
    for (VertexId b = a + 1; b < 4; ++b) EXPECT_FALSE(is_local_2separator(complete(4), a, b, Radius(3)));
  EXPECT_TRUE(is_local_2separator(k4_minus_edge(), 0, 1, Radius(3)));
  EXPECT_FALSE(is_local_2separator(k4_minus_edge(), 2, 3, Radius(3)));
}

TEST(CutVertex, CycleOfLengthRPlusOneBecomesAPath) {
  const Length r = 5;
  auto cut = cut_at_vertex(cycle(static_cast<int>(r + 1)), 0, Radius(r));
  EXPECT_EQ(cut.graph.size(), r + 1);
  EXPECT_EQ(cut.graph.order(), r + 2);
  ASSERT_EQ(cut.op.groups.size(), 2u);
  for (const auto& g : cut.op.groups) EXPECT_EQ(cut.graph.degree(*g.x_slice), 1);
  EXPECT_TRUE(is_connected(cut.graph));
  EXPECT_TRUE(slices_are_far(cut.graph, cut.op, Radius(r)));
}

TEST(CutPair, K23GivesThreeFourCycles) {
  auto k23 = theta_family(2, 2, 2);
  auto cut = cut_at_pair(k23, 0, 1, Radius(4));
  ASSERT_EQ(cut.op.groups.size(), 3u);
  for (const auto& g : cut.op.groups) {
    ASSERT_TRUE(g.link_length);
    EXPECT_EQ(*g.link_length, 2);
  }
  auto torsos = torsos_of(cut.graph);
  ASSERT_EQ(torsos.size(), 3u);
  for (const auto& t : torsos) {
    EXPECT_EQ(t.kind, TorsoKind::kCycle);
    EXPECT_EQ(t.graph.order(), 3);
    Length total = 0;
    for (const auto& e : t.graph.edges()) total += e.length;
    EXPECT_EQ(total, 4);
  }
  EXPECT_TRUE(slices_are_far(cut.graph, cut.op, Radius(4)));
}

// The edge xy itself becomes a separate single-edge torso.
TEST(CutPair, K4MinusEdgeGivesTwoTrianglesAndTheEdge) {
  auto cut = cut_at_pair(k4_minus_edge(), 0, 1, Radius(3));
  auto torsos = torsos_of(cut.graph);
  int triangles = 0;
  int edges = 0;
  for (const auto& t : torsos) {
    triangles += t.kind == TorsoKind::kCycle && t.graph.size() == 3;
    edges += t.kind == TorsoKind::kEdge;
  }
  EXPECT_EQ(triangles, 2);
  EXPECT_EQ(edges, 1);
  for (const auto& g : cut.op.groups) {
    if (g.carries_xy) continue;
    ASSERT_TRUE(g.link_length);
    EXPECT_EQ(*g.link_length, 1);
  }
}

TEST(CutPair, RejectsNonSeparator) {
  EXPECT_THROW(cut_at_pair(complete(4), 0, 1, Radius(3)), std::exception);
}

TEST(LocalConnectivity, Examples) {
  EXPECT_TRUE(is_r_locally_2_connected(complete(4), Radius(3)));
  EXPECT_TRUE(is_r_locally_3_connected(complete(4), Radius(3)));
  EXPECT_FALSE(is_r_locally_2_connected(cycle(8), Radius(4)));
  EXPECT_TRUE(is_r_locally_2_connected(cycle(8), Radius(8)));
  EXPECT_FALSE(is_r_locally_3_connected(cycle(8), Radius(8)));
  EXPECT_FALSE(is_r_locally_3_connected(theta_family(2, 2, 2), Radius(4)));
  EXPECT_FALSE(is_r_locally_2_connected(complete(4), Radius(2)));
}

TEST(LocalConnectivity, GeneratedWheelsAreLocally3Connected) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Radius r(3 + static_cast<Length>(seed % 8));
    auto gw = generate_r_weighted_wheel(3 + static_cast<int>(seed % 5), r, seed);
    EXPECT_TRUE(is_r_locally_3_connected(gw.graph, r)) << "seed " << seed;
  }
}
