// Copyright 2026 The CSGU Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csgu/signed_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "gtest/gtest.h"

#include "csgu/error.hpp"
#include "test_util.hpp"

namespace csgu {
namespace {

using ::csgu::testing::GraphOf;
using ::csgu::testing::Neg;
using ::csgu::testing::Pos;
using ::csgu::testing::RandomSignedGraph;

LoadedGraph Parse(const std::string& text, EdgeFormat fmt) {
  std::istringstream in(text);
  return ParseEdgeList(in, fmt, 7);
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInternal;
}

TEST(SignedGraphTest, CanonicalStorageAndSymmetricSigns) {
  const SignedGraph g = GraphOf(4, {Pos(2, 0), Neg(3, 1), Pos(1, 2)});
  ASSERT_EQ(g.num_edges(), 3u);
  for (const SignedEdge& se : g.edges()) EXPECT_LT(se.edge.u, se.edge.v);
  EXPECT_TRUE(std::is_sorted(g.edges().begin(), g.edges().end(),
                             [](const SignedEdge& a, const SignedEdge& b) {
                               return a.edge < b.edge;
                             }));
  EXPECT_EQ(g.sign_of(0, 2), 1);
  EXPECT_EQ(g.sign_of(2, 0), 1);
  EXPECT_EQ(g.sign_of(1, 3), -1);
  EXPECT_EQ(g.sign_of(3, 1), -1);
  EXPECT_EQ(g.sign_of(0, 3), 0);
  EXPECT_EQ(g.num_positive(), 2u);
  EXPECT_EQ(g.num_negative(), 1u);
}

TEST(SignedGraphTest, DegreeMatchesAdjacencyAndAverageDegree) {
  const SignedGraph g = RandomSignedGraph(3, 30, 0.2);
  std::size_t total = 0;
  for (NodeId v : g.nodes()) {
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (const Neighbor& nb : g.neighbors(v)) (nb.sign > 0 ? pos : neg)++;
    EXPECT_EQ(g.degree(v), pos + neg);
    total += g.degree(v);
  }
  EXPECT_EQ(total, 2 * g.num_edges());
  EXPECT_DOUBLE_EQ(g.average_degree(), 2.0 * g.num_edges() / 30.0);
}

TEST(SignedGraphTest, SymmetryHoldsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SignedGraph g = RandomSignedGraph(seed, 25, 0.3);
    for (NodeId a = 0; a < 25; ++a) {
      for (NodeId b = 0; b < 25; ++b) EXPECT_EQ(g.sign_of(a, b), g.sign_of(b, a));
    }
  }
}

TEST(SignedGraphTest, RejectsSelfLoops) {
  EXPECT_EQ(CodeOf([] { GraphOf(3, {{Edge{1, 1}, 1}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(LoaderTest, RatedCsvPositiveRating) {
  const LoadedGraph lg = Parse("1,2,4,1453\n", EdgeFormat::kRatedCsv);
  ASSERT_EQ(lg.graph.num_edges(), 1u);
  EXPECT_EQ(lg.original_ids, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(lg.graph.sign_of(0, 1), 1);
}

TEST(LoaderTest, RatedCsvZeroRatingIsSkippedAndCounted) {
  const LoadedGraph lg =
      Parse("1,2,0,1453\n3,4,-10,99\n", EdgeFormat::kRatedCsv);
  EXPECT_EQ(lg.stats.skipped_zero_rating, 1u);
  ASSERT_EQ(lg.graph.num_edges(), 1u);
  // Only ids 3 and 4 survive the remap.
  EXPECT_EQ(lg.original_ids, (std::vector<std::int64_t>{3, 4}));
  EXPECT_EQ(lg.graph.sign_of(0, 1), -1);
}

TEST(LoaderTest, ConflictingDirectionsResolveToNegative) {
  const LoadedGraph lg = Parse("0 1 +1\n1 0 -1\n", EdgeFormat::kSignedTriple);
  ASSERT_EQ(lg.graph.num_edges(), 1u);
  EXPECT_EQ(lg.graph.sign_of(0, 1), -1);
  EXPECT_EQ(lg.stats.sign_conflicts, 1u);
}

TEST(LoaderTest, RemapsSparseIdsDensely) {
  const LoadedGraph lg =
      Parse("# comment\n\n100 7 1\n7 -3 -1\n", EdgeFormat::kSignedTriple);
  EXPECT_EQ(lg.original_ids, (std::vector<std::int64_t>{-3, 7, 100}));
  EXPECT_EQ(lg.graph.num_nodes(), 3u);
  EXPECT_EQ(lg.graph.sign_of(1, 2), 1);
  EXPECT_EQ(lg.graph.sign_of(0, 1), -1);
  EXPECT_EQ(lg.graph.features().rows(), 3);
  EXPECT_EQ(lg.graph.features().cols(), kDefaultFeatureDim);
}

TEST(LoaderTest, MalformedLineReportsLineNumber) {
  try {
    Parse("0 1 1\n0 2 x\n", EdgeFormat::kSignedTriple);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([] { Parse("0 1 2\n", EdgeFormat::kSignedTriple); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { Parse("0,1\n", EdgeFormat::kRatedCsv); }),
            ErrorCode::kParse);
}

TEST(LoaderTest, EmptyGraphIsAnError) {
  EXPECT_EQ(CodeOf([] { Parse("# nothing\n", EdgeFormat::kSignedTriple); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Parse("1,2,0\n", EdgeFormat::kRatedCsv); }),
            ErrorCode::kInvalidArgument);
}

TEST(LoaderTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] {
              LoadEdgeList("/nonexistent/edges.txt", EdgeFormat::kSignedTriple, 0);
            }),
            ErrorCode::kIo);
}

TEST(LoaderTest, DeterministicForSameInputAndSeed) {
  const std::string text = "5 9 1\n9 2 -1\n2 5 1\n";
  const LoadedGraph a = Parse(text, EdgeFormat::kSignedTriple);
  const LoadedGraph b = Parse(text, EdgeFormat::kSignedTriple);
  ASSERT_EQ(a.graph.num_edges(), b.graph.num_edges());
  for (std::size_t i = 0; i < a.graph.num_edges(); ++i) {
    EXPECT_EQ(a.graph.edges()[i].edge, b.graph.edges()[i].edge);
    EXPECT_EQ(a.graph.edges()[i].sign, b.graph.edges()[i].sign);
  }
  EXPECT_TRUE(a.graph.features() == b.graph.features());
}

TEST(LoaderTest, RoundTripsThroughSignedTriples) {
  const SignedGraph g = RandomSignedGraph(11, 20, 0.25);
  std::ostringstream out;
  WriteSignedTriples(out, g);
  const LoadedGraph back = Parse(out.str(), EdgeFormat::kSignedTriple);
  ASSERT_EQ(back.graph.num_edges(), g.num_edges());
  for (const SignedEdge& se : back.graph.edges()) {
    const auto u = static_cast<NodeId>(back.original_ids[se.edge.u]);
    const auto v = static_cast<NodeId>(back.original_ids[se.edge.v]);
    EXPECT_EQ(g.sign_of(u, v), se.sign);
  }
}

TEST(TriangleTest, SingleTriangle) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2), Pos(0, 2)});
  const auto tris = EnumerateTriangles(g);
  ASSERT_EQ(tris.size(), 1u);
  EXPECT_EQ(tris[0].nodes, (std::array<NodeId, 3>{0, 1, 2}));
  EXPECT_EQ(tris[0].signs, (std::array<int, 3>{1, 1, 1}));
}

TEST(TriangleTest, SignsFollowTripleOrder) {
  const SignedGraph g = GraphOf(3, {Neg(0, 1), Pos(1, 2), Neg(0, 2)});
  const auto tris = EnumerateTriangles(g, 2);
  ASSERT_EQ(tris.size(), 1u);
  EXPECT_EQ(tris[0].signs, (std::array<int, 3>{-1, 1, -1}));
}

TEST(TriangleTest, PathHasNone) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2)});
  EXPECT_TRUE(EnumerateTriangles(g, 1).empty());
}

TEST(TriangleTest, UnknownNodeIsAnError) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2)});
  EXPECT_EQ(CodeOf([&] { EnumerateTriangles(g, 9); }), ErrorCode::kNotFound);
}

std::vector<Triangle> BruteForceTriangles(const SignedGraph& g) {
  std::vector<Triangle> out;
  const auto n = static_cast<NodeId>(g.num_nodes());
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      for (NodeId c = b + 1; c < n; ++c) {
        const int ab = g.sign_of(a, b);
        const int bc = g.sign_of(b, c);
        const int ac = g.sign_of(a, c);
        if (ab && bc && ac) out.push_back({{a, b, c}, {ab, bc, ac}});
      }
    }
  }
  return out;
}

TEST(TriangleTest, MatchesCubicScanOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 10 + seed * 2;  // up to 48 nodes
    const SignedGraph g = RandomSignedGraph(seed, n, 0.2);
    EXPECT_EQ(EnumerateTriangles(g), BruteForceTriangles(g)) << "seed " << seed;
  }
}

TEST(TriangleTest, PerNodeListsAreTheGlobalListFiltered) {
  const SignedGraph g = RandomSignedGraph(5, 30, 0.2);
  const auto all = EnumerateTriangles(g);
  for (NodeId v = 0; v < 30; ++v) {
    std::vector<Triangle> expected;
    for (const Triangle& t : all) {
      if (std::find(t.nodes.begin(), t.nodes.end(), v) != t.nodes.end()) {
        expected.push_back(t);
      }
    }
    EXPECT_EQ(EnumerateTriangles(g, v), expected);
  }
}

TEST(DeletionTest, NodeRequestRemovesIncidentEdges) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2), Pos(0, 2)});
  const DeletionOutcome out = ApplyDeletion(g, DeletionRequest::ForNodes({0}));
  EXPECT_EQ(out.deletion_set, (std::vector<Edge>{{0, 1}, {0, 2}}));
  ASSERT_EQ(out.remaining.num_edges(), 1u);
  EXPECT_EQ(out.remaining.edges()[0].edge, (Edge{1, 2}));
  EXPECT_FALSE(out.remaining.has_node(0));
}

TEST(DeletionTest, EdgeRequestKeepsTheRest) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2), Neg(0, 2)});
  const DeletionOutcome out =
      ApplyDeletion(g, DeletionRequest::ForEdges({Edge{1, 0}}));
  EXPECT_EQ(out.deletion_set, (std::vector<Edge>{{0, 1}}));
  ASSERT_EQ(out.remaining.num_edges(), 2u);
  EXPECT_EQ(out.remaining.sign_of(1, 2), 1);
  EXPECT_EQ(out.remaining.sign_of(0, 2), -1);
  EXPECT_EQ(out.remaining.num_present_nodes(), 3u);
}

TEST(DeletionTest, StarCenterLeavesNoNodes) {
  const SignedGraph g = GraphOf(4, {Pos(0, 1), Pos(0, 2), Neg(0, 3)});
  const DeletionOutcome out = ApplyDeletion(g, DeletionRequest::ForNodes({0}));
  EXPECT_EQ(out.remaining.num_present_nodes(), 0u);
  EXPECT_EQ(out.remaining.num_edges(), 0u);
  EXPECT_EQ(out.deletion_set.size(), 3u);
}

TEST(DeletionTest, FeatureRequestZeroesDimsAndKeepsStructure) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 4);
  const SignedGraph g =
      SignedGraph::FromEdges(3, std::vector{Pos(0, 1), Pos(1, 2)}, x);
  const DeletionOutcome out =
      ApplyDeletion(g, DeletionRequest::ForFeatures({{1, {0, 2}}}));
  EXPECT_EQ(out.remaining.num_edges(), 2u);
  EXPECT_EQ(out.deletion_set, (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(out.remaining.features()(1, 0), 0.0);
  EXPECT_EQ(out.remaining.features()(1, 1), 1.0);
  EXPECT_EQ(out.remaining.features()(1, 2), 0.0);
  EXPECT_EQ(out.remaining.features()(0, 0), 1.0);
}

TEST(DeletionTest, RejectsAbsentOrEmptyReferences) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2)});
  EXPECT_EQ(CodeOf([&] { ApplyDeletion(g, DeletionRequest::ForEdges({{0, 2}})); }),
            ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { ApplyDeletion(g, DeletionRequest::ForNodes({7})); }),
            ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { ApplyDeletion(g, DeletionRequest::ForEdges({})); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(
      CodeOf([&] { ApplyDeletion(g, DeletionRequest::ForFeatures({{0, {5}}})); }),
      ErrorCode::kNotFound);
}

TEST(DeletionTest, EdgeDeletionPlusDeletedEdgesRestoresTheGraph) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SignedGraph g = RandomSignedGraph(seed, 30, 0.2);
    std::vector<Edge> pick;
    for (std::size_t i = 0; i < g.num_edges(); i += 3) {
      pick.push_back(g.edges()[i].edge);
    }
    const DeletionOutcome out =
        ApplyDeletion(g, DeletionRequest::ForEdges(pick));
    std::vector<std::tuple<Edge, int>> rebuilt;
    for (const SignedEdge& se : out.remaining.edges()) {
      EXPECT_FALSE(std::binary_search(out.deletion_set.begin(),
                                      out.deletion_set.end(), se.edge));
      rebuilt.emplace_back(se.edge, se.sign);
    }
    for (const Edge& e : out.deletion_set) rebuilt.emplace_back(e, g.sign_of(e.u, e.v));
    std::sort(rebuilt.begin(), rebuilt.end());
    std::vector<std::tuple<Edge, int>> original;
    for (const SignedEdge& se : g.edges()) original.emplace_back(se.edge, se.sign);
    EXPECT_EQ(rebuilt, original);
  }
}

TEST(DeletionTest, DeletionSetAgreesWithApplyDeletion) {
  const SignedGraph g = RandomSignedGraph(4, 25, 0.25);
  const auto req = DeletionRequest::ForNodes({1, 5, 9});
  EXPECT_EQ(DeletionSet(g, req), ApplyDeletion(g, req).deletion_set);
}

TEST(ScenarioTest, NamesRoundTrip) {
  for (Scenario s : {Scenario::kEdge, Scenario::kNode, Scenario::kFeature}) {
    EXPECT_EQ(ParseScenario(ScenarioName(s)), s);
  }
  EXPECT_FALSE(ParseScenario("vertex").has_value());
}

}  // namespace
}  // namespace csgu
