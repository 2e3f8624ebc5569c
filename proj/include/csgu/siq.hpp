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
#ifndef CSGU_SIQ_HPP_
#define CSGU_SIQ_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csgu/signed_graph.hpp"
#include "csgu/tin.hpp"

namespace csgu {

enum class WeightMode { kSiq, kUniform, kDegree };

std::optional<WeightMode> ParseWeightMode(const std::string& name);
const char* WeightModeName(WeightMode m);

// 1 iff the product of the triangle's edge signs is +1.
int BalanceIndicator(const Triangle& t);

// Fraction of balanced triangles through v; 0 when v is in no triangle.
double BalanceCentrality(const SignedGraph& g, NodeId v);

// Signed neighbor sum of sigmoid(deg(u) / avg_degree), scaled by
// 1/sqrt(deg(v)). 0 for isolated nodes.
double StatusCentrality(const SignedGraph& g, NodeId v);

// deg(v) / max degree.
double DegreeInfluence(const SignedGraph& g, NodeId v);

// Min-max scaling onto [0, 1]; a constant input maps to 0.5 everywhere.
std::vector<double> MinMaxNormalize(std::span<const double> x);
std::vector<double> Softmax(std::span<const double> x);

// Per-node influence over the region's node set and per-edge weights over
// the region. Per-node vectors are aligned with `region_nodes`; edge weights
// with `region_edges`.
struct InfluenceWeights {
  WeightMode mode = WeightMode::kSiq;
  double alpha = 0.5;
  std::vector<NodeId> region_nodes;
  std::vector<double> balance;
  std::vector<double> status;
  std::vector<double> unified;
  std::vector<double> influence;
  std::vector<Edge> region_edges;
  std::vector<double> edge_weights;

  // Weight of an edge; edges outside the region weigh 1.
  double WeightOf(const Edge& e) const;
  double InfluenceOf(NodeId v) const;
};

// Balance/status weighting. Centralities are read from g, which should be
// the graph before deletion.
InfluenceWeights UnifiedInfluence(const CertRegion& region,
                                  const SignedGraph& g, double alpha);

// Dispatches on the weighting mode: kSiq (balance/status), kUniform (all 1)
// or kDegree (normalized degree, for unsigned graphs).
InfluenceWeights ComputeWeights(const CertRegion& region, const SignedGraph& g,
                                WeightMode mode, double alpha);

}  // namespace csgu

#endif  // CSGU_SIQ_HPP_
