#include <gtest/gtest.h>

#include "../common/graphs.hpp"
#include "locwheel/decomposer.hpp"
#include "locwheel/generators.hpp"
#include "locwheel/oracle.hpp"

using namespace locwheel;
using namespace locwheel::testing;

namespace {

std::map<TorsoKind, int> kind_counts(const std::vector<DecompositionTorso>& ts) {
  std::map<TorsoKind, int> out;
  for (const auto& t : ts) ++out[t.kind];
  return out;
}

const GraphDecomposition& as_decomposition(const Certificate& c) {
  return std::get<GraphDecomposition>(c.payload);
}

}  // namespace

TEST(Decide, K4IsItsOwnWheel) {
  auto c = decide(complete(4), Radius(3));
  ASSERT_TRUE(c.is_wheel());
  const auto& w = std::get<WheelSubdivision>(c.payload);
  EXPECT_EQ(piece_lengths(complete(4), w), (std::vector<Length>{3, 3, 3}));
}

TEST(Decide, C8IsOneCycleTorsoOnceItFits) {
  for (Length r : {8, 9, 20}) {
    auto c = decide(cycle(8), Radius(r));
    ASSERT_FALSE(c.is_wheel());
    const auto& d = as_decomposition(c);
    ASSERT_EQ(d.torsos.size(), 1u);
    EXPECT_EQ(d.torsos[0].kind, TorsoKind::kCycle);
    EXPECT_TRUE(d.cuts.empty());
  }
  auto inf = decide(cycle(8), Radius::infinite());
  EXPECT_EQ(as_decomposition(inf).torsos.size(), 1u);
}

TEST(Decide, ShortRadiusCutsC8IntoEdges) {
  for (Length r : {3, 5, 7}) {
    auto c = decide(cycle(8), Radius(r));
    ASSERT_FALSE(c.is_wheel());
    auto counts = kind_counts(as_decomposition(c).torsos);
    EXPECT_EQ(counts[TorsoKind::kEdge], 8);
    EXPECT_EQ(counts[TorsoKind::kCycle], 0);
  }
}

TEST(Decide, K23GivesThreeFourCycles) {
  auto g = theta_family(2, 2, 2);
  EXPECT_FALSE(oracle_has_bounded_wheel(g, Radius(4)));
  auto c = decide(g, Radius(4));
  ASSERT_FALSE(c.is_wheel());
  const auto& d = as_decomposition(c);
  ASSERT_EQ(d.cuts.size(), 1u);
  EXPECT_EQ(d.cuts[0].kind, CutOp::Kind::kPair);
  ASSERT_EQ(d.torsos.size(), 3u);
  for (const auto& t : d.torsos) {
    EXPECT_EQ(t.kind, TorsoKind::kCycle);
    Length total = 0;
    for (const auto& e : t.graph.edges()) total += e.length;
    EXPECT_EQ(total, 4);
    EXPECT_EQ(t.links.size(), 1u);
  }
  for (const auto& e : d.edges) EXPECT_LE(e.adhesion.size(), 2u);
}

TEST(Decide, SubdividedK4LiftsTheTorsoWheel) {
  auto g = subdivided_k4(2);
  auto c = decide(g, Radius(6));
  ASSERT_TRUE(c.is_wheel());
  const auto& w = std::get<WheelSubdivision>(c.payload);
  EXPECT_TRUE(is_wheel_subdivision_of(g, w));
  EXPECT_TRUE(is_r_bounded(g, w, Radius(6)));
  EXPECT_FALSE(decide(g, Radius(5)).is_wheel());
}

TEST(Decide, RadiusBelowThreeGivesSingleEdges) {
  for (const auto& g : {complete(4), complete(5), wheel(5)}) {
    auto c = decide(g, Radius(2));
    ASSERT_FALSE(c.is_wheel());
    auto counts = kind_counts(as_decomposition(c).torsos);
    EXPECT_EQ(counts[TorsoKind::kEdge], g.size());
    EXPECT_EQ(counts.size(), 1u);
  }
}

TEST(Decide, DisconnectedAndTrivialInputs) {
  WeightedGraph two_triangles({{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}});
  auto c = decide(two_triangles, Radius(3));
  ASSERT_FALSE(c.is_wheel());
  EXPECT_EQ(kind_counts(as_decomposition(c).torsos)[TorsoKind::kCycle], 2);
  auto single = decide(WeightedGraph({}, {0}), Radius(3));
  EXPECT_FALSE(single.is_wheel());
}

// A weighted K4 that is r-locally 3-connected but contains no r-bounded wheel.
TEST(Decide, WeightedK4CounterexampleIsReported) {
  WeightedGraph g({{1, 3, 5}, {0, 1, 3}, {1, 2, 4}, {0, 3, 1}, {2, 3, 2}, {0, 2, 4}});
  Radius r(10);
  EXPECT_TRUE(is_r_locally_3_connected(g, r));
  EXPECT_FALSE(oracle_has_bounded_wheel(g, r));
  EXPECT_THROW(decide(g, r), LogicError);
}

TEST(Blocks, TwoTrianglesSharingAVertex) {
  WeightedGraph bowtie({{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 3, 1}, {3, 4, 1}, {4, 0, 1}});
  auto res = block_cut_decompose(bowtie, Radius(3));
  ASSERT_EQ(res.blocks.size(), 2u);
  for (const auto& b : res.blocks) EXPECT_EQ(b.kind, TorsoKind::kCycle);
}

TEST(Blocks, TreeFallsApartIntoEdges) {
  WeightedGraph tree({{0, 1, 1}, {1, 2, 2}, {1, 3, 1}, {3, 4, 3}, {3, 5, 1}});
  auto res = block_cut_decompose(tree, Radius(6));
  ASSERT_EQ(res.blocks.size(), 5u);
  for (const auto& b : res.blocks) EXPECT_EQ(b.kind, TorsoKind::kEdge);
}

TEST(Blocks, CycleOfLengthRPlusOneIsCut) {
  auto res = block_cut_decompose(cycle(6), Radius(5));
  ASSERT_FALSE(res.history.cuts.empty());
  EXPECT_EQ(res.history.cuts.front().groups.size(), 2u);
  for (const auto& b : res.blocks) EXPECT_EQ(b.kind, TorsoKind::kEdge);
}

TEST(TwoSeparators, Examples) {
  auto c6 = two_sep_decompose(cycle(6), Radius(6));
  ASSERT_EQ(c6.torsos.size(), 1u);
  EXPECT_EQ(c6.torsos[0].kind, TorsoKind::kCycle);
  auto k4 = two_sep_decompose(complete(4), Radius(3));
  ASSERT_TRUE(k4.three_connected);
  EXPECT_EQ(k4.three_connected->size(), 6);
  EXPECT_TRUE(k4.history.cuts.empty());
}

TEST(Replay, ReproducesTheFinalGraph) {
  std::mt19937_64 rng(31);
  int with_cuts = 0;
  for (int t = 0; t < 80; ++t) {
    auto g = random_connected_graph(8, 35, 3, rng());
    Radius r(std::uniform_int_distribution<int>(3, 9)(rng));
    auto h = run_cuts(g, r, CutPolicy::kVerticesAndPairs);
    with_cuts += !h.cuts.empty();
    auto again = replay_cuts(g, h.cuts);
    EXPECT_TRUE(std::ranges::equal(again.graph.edges(), h.graph.edges(), [](const Edge& a, const Edge& b) {
      return a.u == b.u && a.v == b.v && a.length == b.length;
    }));
    for (const auto& op : h.cuts) {
      for (const auto& grp : op.groups) {
        if (grp.x_slice) {
          EXPECT_EQ(h.origin.at(*grp.x_slice), h.origin.at(op.x));
        }
      }
    }
  }
  EXPECT_GT(with_cuts, 20);
}

TEST(Decide, AgreesWithBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 150; ++t) {
    int n = std::uniform_int_distribution<int>(4, 8)(rng);
    auto g = random_connected_graph(n, 50, 1, rng());
    Radius r(std::uniform_int_distribution<int>(3, 8)(rng));
    auto c = decide(g, r);
    EXPECT_EQ(c.is_wheel(), oracle_has_bounded_wheel(g, r)) << graph_text(g) << " r=" << r.str();
    if (c.is_wheel()) {
      const auto& w = std::get<WheelSubdivision>(c.payload);
      EXPECT_TRUE(is_wheel_subdivision_of(g, w));
      EXPECT_TRUE(is_r_bounded(g, w, r));
    }
  }
}
