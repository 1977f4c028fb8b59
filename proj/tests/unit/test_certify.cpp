#include <gtest/gtest.h>

#include "../common/graphs.hpp"
#include "locwheel/certificate.hpp"
#include "locwheel/certify.hpp"
#include "locwheel/dot.hpp"
#include "locwheel/generators.hpp"

using namespace locwheel;
using namespace locwheel::testing;

namespace {

bool mentions(const VerdictReport& rep, const std::string& invariant) {
  for (const auto& v : rep.violations)
    if (v.invariant == invariant) return true;
  return false;
}

GraphDecomposition k23_decomposition() {
  return std::get<GraphDecomposition>(decide(theta_family(2, 2, 2), Radius(4)).payload);
}

}  // namespace

TEST(VerifyWheel, AcceptsDecidedWheels) {
  for (const auto& [g, r] : std::vector<std::pair<WeightedGraph, Radius>>{
           {complete(4), Radius(3)}, {wheel(5), Radius(3)}, {subdivided_k4(2), Radius(6)}, {octahedron(), Radius(3)}}) {
    auto c = decide_certificate(g, r);
    ASSERT_TRUE(c.is_wheel());
    auto rep = verify_certificate(g, r, c);
    EXPECT_TRUE(rep.pass()) << rep.str();
  }
}

TEST(VerifyWheel, RejectsDeletedSpoke) {
  auto g = wheel(5);
  auto w = *recognize_wheel_subdivision(g);
  w.spokes.erase(w.spokes.begin() + 2);
  auto rep = verify_wheel(g, Radius(3), w);
  EXPECT_TRUE(mentions(rep, "piece-length")) << rep.str();
}

TEST(VerifyWheel, RejectsSpokeThroughMissingEdge) {
  auto g = subdivided_k4(2);
  auto w = std::get<WheelSubdivision>(decide(g, Radius(6)).payload);
  w.spokes[0].vertices.erase(w.spokes[0].vertices.begin() + 1);
  EXPECT_TRUE(mentions(verify_wheel(g, Radius(6), w), "embedding"));
}

TEST(VerifyWheel, RejectsPieceOfLengthRPlusOne) {
  // One edge of length 2: two pieces of length 4.
  WeightedGraph g({{0, 1, 2}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  auto c = decide(g, Radius(4));
  ASSERT_TRUE(c.is_wheel());
  const auto& w = std::get<WheelSubdivision>(c.payload);
  EXPECT_TRUE(verify_wheel(g, Radius(4), w).pass());
  EXPECT_TRUE(mentions(verify_wheel(g, Radius(3), w), "piece-length"));
}

TEST(VerifyWheel, RejectsMalformedShape) {
  auto w = *recognize_wheel_subdivision(complete(4));
  w.spokes.pop_back();
  EXPECT_TRUE(mentions(verify_wheel(complete(4), Radius(3), w), "structure"));
}

TEST(VerifyDecomposition, AcceptsDecidedDecompositions) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 60; ++t) {
    auto g = random_connected_graph(8, 30, 3, rng());
    Radius r(std::uniform_int_distribution<int>(3, 9)(rng));
    Certificate c;
    try {
      c = decide_certificate(g, r);
    } catch (const LogicError&) {
      continue;
    }
    auto rep = verify_certificate(g, r, c);
    EXPECT_TRUE(rep.pass()) << rep.str();
  }
}

TEST(VerifyDecomposition, RejectsNonLocalCut) {
  auto d = k23_decomposition();
  // Joining the middle vertices leaves {0, 1} with one side only.
  auto g = theta_family(2, 2, 2);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.push_back({2, 3, 1});
  edges.push_back({3, 4, 1});
  auto rep = verify_decomposition(WeightedGraph(std::move(edges)), Radius(4), d);
  EXPECT_TRUE(mentions(rep, "locality")) << rep.str();
}

TEST(VerifyDecomposition, RejectsFakeCycleTorso) {
  auto d = k23_decomposition();
  auto& t = d.torsos[0];
  std::vector<Edge> edges(t.graph.edges().begin(), t.graph.edges().end());
  edges.front().length += 1;
  t.graph = WeightedGraph(std::move(edges), std::vector<VertexId>(t.graph.vertices().begin(), t.graph.vertices().end()));
  EXPECT_FALSE(verify_decomposition(theta_family(2, 2, 2), Radius(4), d).pass());

  auto k = k23_decomposition();
  k.torsos[1].kind = TorsoKind::kThreeConnected;
  EXPECT_TRUE(mentions(verify_decomposition(theta_family(2, 2, 2), Radius(4), k), "torso-kind"));
}

TEST(VerifyDecomposition, RejectsMissingLinkTagAndAdhesion) {
  auto d = k23_decomposition();
  d.torsos[0].links.clear();
  EXPECT_TRUE(mentions(verify_decomposition(theta_family(2, 2, 2), Radius(4), d), "links"));
  auto e = k23_decomposition();
  ASSERT_FALSE(e.edges.empty());
  e.edges.pop_back();
  EXPECT_TRUE(mentions(verify_decomposition(theta_family(2, 2, 2), Radius(4), e), "adhesion"));
}

TEST(VerifyDecomposition, RejectsDecompositionOfGraphWithWheel) {
  // A K4 decomposed into nothing: the whole graph is left as one torso.
  GraphDecomposition d;
  d.torsos.push_back({TorsoKind::kThreeConnected, complete(4), {}});
  EXPECT_TRUE(mentions(verify_decomposition(complete(4), Radius(3), d), "torso-kind"));
}

TEST(VerifyCertificate, ChecksRadiusAndHash) {
  auto c = decide_certificate(complete(4), Radius(3));
  EXPECT_TRUE(mentions(verify_certificate(complete(4), Radius(4), c), "radius"));
  EXPECT_TRUE(mentions(verify_certificate(complete(4, 2), Radius(3), c), "graph-hash"));
}

TEST(Json, RoundTripsBothCertificateKinds) {
  for (const auto& [g, r] : std::vector<std::pair<WeightedGraph, Radius>>{
           {complete(4), Radius(3)}, {theta_family(2, 2, 2), Radius(4)}, {cycle(8), Radius(5)},
           {random_connected_graph(9, 30, 4, 5), Radius(7)}}) {
    auto c = decide_certificate(g, r);
    std::string text = to_json(c).dump(2);
    auto back = certificate_from_text(text);
    EXPECT_EQ(to_json(back).dump(2), text);
    EXPECT_TRUE(verify_certificate(g, r, back).pass());
  }
}

TEST(Json, RejectsMalformedCertificates) {
  EXPECT_THROW(certificate_from_text("not json"), InputError);
  EXPECT_THROW(certificate_from_text("{}"), InputError);
  EXPECT_THROW(certificate_from_text(R"({"schema": 99, "r": "3", "graph_sha": "", "type": "wheel", "payload": {}})"),
               InputError);
  EXPECT_THROW(certificate_from_text(R"({"schema": 1, "r": "3", "graph_sha": "", "type": "wheel", "payload": {"center": "x"}})"),
               InputError);
  EXPECT_THROW(certificate_from_text(R"({"schema": 1, "r": "3", "graph_sha": "", "type": "tree", "payload": {}})"),
               InputError);
}

TEST(Hash, DependsOnLengthsNotEdgeOrder) {
  WeightedGraph a({{0, 1, 1}, {1, 2, 2}});
  WeightedGraph b({{2, 1, 2}, {1, 0, 1}});
  WeightedGraph c({{0, 1, 1}, {1, 2, 3}});
  EXPECT_EQ(graph_sha(a), graph_sha(b));
  EXPECT_NE(graph_sha(a), graph_sha(c));
  EXPECT_EQ(graph_sha(a).size(), 64u);
}

TEST(Dot, RendersBothKinds) {
  auto wheel_dot = certificate_dot(complete(4), decide(complete(4), Radius(3)));
  EXPECT_NE(wheel_dot.find("graph"), std::string::npos);
  auto dec_dot = certificate_dot(theta_family(2, 2, 2), decide(theta_family(2, 2, 2), Radius(4)));
  EXPECT_NE(dec_dot.find("cluster_2"), std::string::npos);
  EXPECT_NE(dec_dot.find("dashed"), std::string::npos);
}

TEST(Suite, SmallExhaustiveRunPasses) {
  auto res = dichotomy_suite(5, {Radius(3), Radius(4), Radius::infinite()}, 2);
  EXPECT_TRUE(res.report.pass()) << res.report.str();
  EXPECT_EQ(res.rows.size(), 3u * (1 + 1 + 2 + 6 + 21));
  std::ostringstream csv;
  write_suite_csv(csv, res.rows);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(res.rows.size()) + 1);
}
