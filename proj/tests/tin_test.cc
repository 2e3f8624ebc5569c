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

#include "csgu/tin.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "gtest/gtest.h"

#include "csgu/error.hpp"
#include "test_util.hpp"

namespace csgu {
namespace {

using ::csgu::testing::GraphOf;
using ::csgu::testing::Neg;
using ::csgu::testing::Pos;
using ::csgu::testing::RandomSignedGraph;

// Literal fixed-point iteration: each pass scans every (candidate, region)
// edge pair. Returns the region after every pass.
std::vector<std::set<Edge>> NaiveTinPasses(const SignedGraph& g,
                                           const std::vector<Edge>& deletion) {
  std::vector<std::set<Edge>> passes;
  std::set<Edge> region(deletion.begin(), deletion.end());
  while (true) {
    std::set<Edge> next = region;
    for (const SignedEdge& cand : g.edges()) {
      if (region.count(cand.edge)) continue;
      for (const Edge& r : region) {
        if (TriadicClosure(g, cand.edge, r)) {
          next.insert(cand.edge);
          break;
        }
      }
    }
    passes.push_back(next);
    if (next == region) return passes;
    region = std::move(next);
  }
}

std::vector<std::size_t> BfsDistances(const SignedGraph& g,
                                      const std::vector<Edge>& deletion) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.num_nodes(), kInf);
  std::deque<NodeId> q;
  for (const Edge& e : deletion) {
    for (NodeId n : {e.u, e.v}) {
      if (dist[n] == kInf) {
        dist[n] = 0;
        q.push_back(n);
      }
    }
  }
  while (!q.empty()) {
    const NodeId n = q.front();
    q.pop_front();
    for (const Neighbor& nb : g.neighbors(n)) {
      if (dist[nb.node] == kInf) {
        dist[nb.node] = dist[n] + 1;
        q.push_back(nb.node);
      }
    }
  }
  return dist;
}

std::vector<Edge> BruteKhop(const SignedGraph& g, const std::vector<Edge>& deletion,
                            std::size_t k) {
  const auto dist = BfsDistances(g, deletion);
  std::vector<Edge> out;
  for (const SignedEdge& se : g.edges()) {
    if (dist[se.edge.u] <= k && dist[se.edge.v] <= k) out.push_back(se.edge);
  }
  return out;
}

std::vector<Edge> SampleEdges(const SignedGraph& g, std::size_t stride,
                              std::size_t offset) {
  std::vector<Edge> out;
  for (std::size_t i = offset; i < g.num_edges(); i += stride) {
    out.push_back(g.edges()[i].edge);
  }
  return out;
}

TEST(TriadicClosureTest, Examples) {
  const SignedGraph tri = GraphOf(4, {Pos(0, 1), Pos(1, 2), Neg(0, 2), Pos(2, 3)});
  EXPECT_TRUE(TriadicClosure(tri, {0, 1}, {1, 2}));
  EXPECT_FALSE(TriadicClosure(tri, {0, 1}, {2, 3}));  // disjoint
  EXPECT_FALSE(TriadicClosure(tri, {1, 2}, {2, 3}));  // (1,3) absent
  EXPECT_FALSE(TriadicClosure(tri, {0, 1}, {0, 1}));  // two shared endpoints
}

TEST(TriadicClosureTest, AbsentEdgeIsAnError) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2)});
  EXPECT_THROW(TriadicClosure(g, {0, 1}, {0, 2}), Error);
}

TEST(BuildTinTest, TriangleTakesTwoPasses) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2), Pos(0, 2)});
  const CertRegion r = BuildTin(g, std::vector<Edge>{{0, 1}});
  EXPECT_EQ(r.region, (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_FALSE(r.truncated);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].size(), 2u);
}

TEST(BuildTinTest, PathStopsAfterOnePass) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2)});
  const CertRegion r = BuildTin(g, std::vector<Edge>{{0, 1}});
  EXPECT_EQ(r.region, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_TRUE(r.trace.empty());
}

TEST(BuildTinTest, TwoTrianglesSharingAnEdge) {
  // a=0, b=1, c=2, d=3; triangles abc and bcd.
  const SignedGraph g =
      GraphOf(4, {Pos(0, 1), Pos(1, 2), Neg(0, 2), Pos(1, 3), Neg(2, 3)});
  const CertRegion r = BuildTin(g, std::vector<Edge>{{0, 1}});
  EXPECT_EQ(r.region.size(), 5u);
  ASSERT_EQ(r.trace.size(), 2u);
  std::vector<Edge> first;
  for (const auto& a : r.trace[0]) first.push_back(a.edge);
  std::vector<Edge> second;
  for (const auto& a : r.trace[1]) second.push_back(a.edge);
  EXPECT_EQ(first, (std::vector<Edge>{{0, 2}, {1, 2}}));
  EXPECT_EQ(second, (std::vector<Edge>{{1, 3}, {2, 3}}));
  EXPECT_EQ(r.iterations, 3u);
}

TEST(BuildTinTest, MaxIterTruncates) {
  const SignedGraph g =
      GraphOf(4, {Pos(0, 1), Pos(1, 2), Neg(0, 2), Pos(1, 3), Neg(2, 3)});
  const CertRegion r = BuildTin(g, std::vector<Edge>{{0, 1}}, 1);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.region.size(), 3u);
  EXPECT_THROW(BuildTin(g, std::vector<Edge>{{0, 1}}, 0), Error);
}

TEST(BuildTinTest, AbsentDeletionEdgeIsAnError) {
  const SignedGraph g = GraphOf(3, {Pos(0, 1), Pos(1, 2)});
  try {
    BuildTin(g, std::vector<Edge>{{0, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(BuildTinTest, MatchesLiteralFixedPointOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SignedGraph g = RandomSignedGraph(seed, 20 + seed, 0.15);
    if (g.num_edges() == 0) continue;
    const auto deletion = SampleEdges(g, 7, seed % 7);
    const CertRegion r = BuildTin(g, deletion);
    const auto passes = NaiveTinPasses(g, r.deletion_set);
    ASSERT_EQ(r.iterations, passes.size()) << "seed " << seed;
    std::set<Edge> grown(r.deletion_set.begin(), r.deletion_set.end());
    for (std::size_t k = 0; k + 1 < passes.size(); ++k) {
      for (const auto& a : r.trace[k]) grown.insert(a.edge);
      EXPECT_EQ(grown, passes[k]) << "seed " << seed << " pass " << k + 1;
    }
    EXPECT_EQ(std::set<Edge>(r.region.begin(), r.region.end()), passes.back());
  }
}

TEST(BuildTinTest, StructuralProperties) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const SignedGraph g = RandomSignedGraph(seed, 40, 0.12);
    if (g.num_edges() == 0) continue;
    const auto deletion = SampleEdges(g, 11, seed % 5);
    const CertRegion r = BuildTin(g, deletion);

    // Deletion set inside the region.
    for (const Edge& e : r.deletion_set) EXPECT_TRUE(r.Contains(e));
    // Trace partitions region minus deletion set; parents were already in.
    std::set<Edge> seen(r.deletion_set.begin(), r.deletion_set.end());
    std::size_t traced = 0;
    for (const auto& pass : r.trace) {
      std::set<Edge> before = seen;
      for (const auto& a : pass) {
        ASSERT_TRUE(a.parent.has_value());
        EXPECT_TRUE(before.count(*a.parent));
        EXPECT_FALSE(before.count(a.edge));
        EXPECT_TRUE(TriadicClosure(g, a.edge, *a.parent));
        seen.insert(a.edge);
        ++traced;
      }
      EXPECT_FALSE(pass.empty());
    }
    EXPECT_EQ(traced + r.deletion_set.size(), r.region.size());
    EXPECT_EQ(seen, std::set<Edge>(r.region.begin(), r.region.end()));

    // Fixed point: seeding with the region adds nothing.
    const CertRegion again = BuildTin(g, r.region);
    EXPECT_EQ(again.region, r.region);
    EXPECT_EQ(again.iterations, 1u);

    // Each adding pass reaches at most one hop further.
    const auto dist = BfsDistances(g, r.deletion_set);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      for (const auto& a : r.trace[k]) {
        EXPECT_LE(std::max(dist[a.edge.u], dist[a.edge.v]), k + 1);
      }
    }
    const auto khop = BruteKhop(g, r.deletion_set, r.iterations);
    EXPECT_TRUE(std::includes(khop.begin(), khop.end(), r.region.begin(),
                              r.region.end()));
    // Every adding pass adds at least one edge.
    EXPECT_LE(r.iterations, g.num_edges() - r.deletion_set.size() + 1);
  }
}

TEST(BuildTinTest, FanNeedsOnePassPerBlade) {
  // Hub 0 with rim 1..6 and rim edges (i, i+1): every node is one hop from the
  // hub, yet the closure walks around the rim one blade per pass.
  std::vector<SignedEdge> edges;
  for (NodeId i = 1; i <= 6; ++i) edges.push_back(Pos(0, i));
  for (NodeId i = 1; i < 6; ++i) edges.push_back(Pos(i, i + 1));
  const SignedGraph g = GraphOf(7, edges);
  const CertRegion r = BuildTin(g, std::vector<Edge>{{0, 1}});
  EXPECT_EQ(r.region.size(), g.num_edges());
  // Five adding passes, one per remaining blade, then the confirming pass.
  EXPECT_EQ(r.iterations, 6u);
}

TEST(KhopRegionTest, PathOneHop) {
  const SignedGraph g = GraphOf(4, {Pos(0, 1), Pos(1, 2), Pos(2, 3)});
  const CertRegion r = KhopRegion(g, std::vector<Edge>{{0, 1}}, 1);
  EXPECT_EQ(r.region, (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(r.iterations, 1u);
}

TEST(KhopRegionTest, LargeKCoversTheComponent) {
  const SignedGraph g = GraphOf(5, {Pos(0, 1), Pos(1, 2), Neg(2, 3), Pos(3, 4)});
  const CertRegion r = KhopRegion(g, std::vector<Edge>{{0, 1}}, 10);
  EXPECT_EQ(r.region.size(), g.num_edges());
}

TEST(KhopRegionTest, MatchesBfsOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SignedGraph g = RandomSignedGraph(seed, 40, 0.06);
    if (g.num_edges() == 0) continue;
    const auto deletion = SampleEdges(g, 17, seed % 3);
    for (std::size_t k : {1u, 2u, 3u}) {
      const CertRegion r = KhopRegion(g, deletion, k);
      EXPECT_EQ(r.region, BruteKhop(g, r.deletion_set, k)) << seed << " " << k;
      std::size_t traced = 0;
      for (const auto& level : r.trace) traced += level.size();
      EXPECT_EQ(traced + r.deletion_set.size(), r.region.size());
    }
  }
}

TEST(KhopRegionTest, RejectsZeroHops) {
  const SignedGraph g = GraphOf(2, {Pos(0, 1)});
  EXPECT_THROW(KhopRegion(g, std::vector<Edge>{{0, 1}}, 0), Error);
}

TEST(RegionModeTest, NamesRoundTrip) {
  EXPECT_EQ(ParseRegionMode("tin"), RegionMode::kTin);
  EXPECT_EQ(ParseRegionMode("khop"), RegionMode::kKhop);
  EXPECT_FALSE(ParseRegionMode("ring").has_value());
  EXPECT_STREQ(RegionModeName(RegionMode::kKhop), "khop");
}

}  // namespace
}  // namespace csgu
