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
#ifndef CSGU_SIGNED_GRAPH_HPP_
#define CSGU_SIGNED_GRAPH_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace csgu {

using NodeId = std::uint32_t;

inline constexpr int kDefaultFeatureDim = 20;

// Unordered node pair stored with the smaller id first.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  static Edge Make(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  bool Touches(NodeId n) const { return u == n || v == n; }
  // Endpoint that is not `n`; `n` must be an endpoint.
  NodeId Other(NodeId n) const { return n == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);

struct SignedEdge {
  Edge edge;
  int sign = 1;  // +1 or -1

  bool operator==(const SignedEdge&) const = default;
};

struct Neighbor {
  NodeId node = 0;
  int sign = 1;
};

// Canonical sorted triple. signs[0] is the sign of (nodes[0], nodes[1]),
// signs[1] of (nodes[1], nodes[2]) and signs[2] of (nodes[0], nodes[2]).
struct Triangle {
  std::array<NodeId, 3> nodes{};
  std::array<int, 3> signs{};

  bool operator==(const Triangle&) const = default;
};

// Immutable signed graph over the id space 0..num_nodes()-1.
//
// Node ids are stable across deletions: removing a node clears its presence
// bit instead of renumbering, so embeddings and parameters indexed by node id
// stay valid on the remaining graph.
class SignedGraph {
 public:
  // Builds a graph from signed pairs. Self-loops are rejected. Duplicate pairs
  // with conflicting signs resolve to -1. `present` marks which ids belong to
  // the node set; empty means every id is present.
  static SignedGraph FromEdges(std::size_t num_nodes,
                               std::span<const SignedEdge> edges,
                               Eigen::MatrixXd features,
                               std::vector<bool> present = {});

  SignedGraph() = default;

  std::size_t num_nodes() const { return present_.size(); }
  std::size_t num_present_nodes() const { return present_nodes_.size(); }
  const std::vector<NodeId>& nodes() const { return present_nodes_; }
  bool has_node(NodeId n) const { return n < present_.size() && present_[n]; }

  // Canonically sorted by (u, v).
  const std::vector<SignedEdge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_positive() const { return num_positive_; }
  std::size_t num_negative() const { return edges_.size() - num_positive_; }

  // +1 or -1 for a present pair, 0 otherwise. Symmetric.
  int sign_of(NodeId a, NodeId b) const;
  bool has_edge(const Edge& e) const { return sign_of(e.u, e.v) != 0; }
  std::optional<std::size_t> edge_index(const Edge& e) const;

  // Sorted by neighbor id.
  std::span<const Neighbor> neighbors(NodeId n) const;
  std::size_t degree(NodeId n) const { return neighbors(n).size(); }
  std::size_t max_degree() const;
  // 2|E| / |V| over present nodes, isolated ones included.
  double average_degree() const;

  // num_nodes() x feature_dim, row per node id.
  const Eigen::MatrixXd& features() const { return features_; }

  void CheckNode(NodeId n) const;
  void CheckEdge(const Edge& e) const;

 private:
  std::vector<bool> present_;
  std::vector<NodeId> present_nodes_;
  std::vector<SignedEdge> edges_;
  std::size_t num_positive_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;
  Eigen::MatrixXd features_;
};

// ---- loading ---------------------------------------------------------------

enum class EdgeFormat { kSignedTriple, kRatedCsv };

std::optional<EdgeFormat> ParseEdgeFormat(const std::string& name);

struct LoadStats {
  std::size_t lines = 0;
  std::size_t skipped_zero_rating = 0;
  std::size_t skipped_self_loops = 0;
  std::size_t sign_conflicts = 0;
};

struct LoadedGraph {
  SignedGraph graph;
  LoadStats stats;
  // original_ids[dense id] is the id as written in the file.
  std::vector<std::int64_t> original_ids;
};

// Reads `u v s` lines (signed_triple) or `source,target,rating[,time]` lines
// (rated_csv). Directed pairs are symmetrized; node features are synthesized
// as seeded standard normals since the supported datasets carry none.
LoadedGraph LoadEdgeList(const std::string& path, EdgeFormat format,
                         std::uint64_t feature_seed,
                         int feature_dim = kDefaultFeatureDim);
LoadedGraph ParseEdgeList(std::istream& in, EdgeFormat format,
                          std::uint64_t feature_seed,
                          int feature_dim = kDefaultFeatureDim);

Eigen::MatrixXd GaussianFeatures(std::size_t rows, int cols,
                                 std::uint64_t seed);

void WriteSignedTriples(std::ostream& out, const SignedGraph& g);

// ---- triangles -------------------------------------------------------------

std::vector<Triangle> EnumerateTriangles(const SignedGraph& g);
std::vector<Triangle> EnumerateTriangles(const SignedGraph& g, NodeId v);

// ---- deletion --------------------------------------------------------------

enum class Scenario { kEdge, kNode, kFeature };

std::optional<Scenario> ParseScenario(const std::string& name);
const char* ScenarioName(Scenario s);

struct FeatureDeletion {
  NodeId node = 0;
  std::vector<int> dims;
};

struct DeletionRequest {
  Scenario scenario = Scenario::kEdge;
  std::vector<Edge> edges;
  std::vector<NodeId> nodes;
  std::vector<FeatureDeletion> features;

  static DeletionRequest ForEdges(std::vector<Edge> edges);
  static DeletionRequest ForNodes(std::vector<NodeId> nodes);
  static DeletionRequest ForFeatures(std::vector<FeatureDeletion> features);
};

struct DeletionOutcome {
  SignedGraph remaining;
  // Sorted, deduplicated. For the feature scenario these are the edges
  // incident to affected nodes; the remaining graph keeps them.
  std::vector<Edge> deletion_set;
};

DeletionOutcome ApplyDeletion(const SignedGraph& g, const DeletionRequest& req);

// Validates `req` against g and returns its sorted deletion set without
// materializing the remaining graph.
std::vector<Edge> DeletionSet(const SignedGraph& g, const DeletionRequest& req);

}  // namespace csgu

#endif  // CSGU_SIGNED_GRAPH_HPP_
