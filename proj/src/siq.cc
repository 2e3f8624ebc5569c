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
#include "csgu/siq.hpp"

#include <algorithm>
#include <cmath>

#include "csgu/error.hpp"

namespace csgu {

std::optional<WeightMode> ParseWeightMode(const std::string& name) {
  if (name == "siq") return WeightMode::kSiq;
  if (name == "uniform") return WeightMode::kUniform;
  if (name == "degree") return WeightMode::kDegree;
  return std::nullopt;
}

const char* WeightModeName(WeightMode m) {
  switch (m) {
    case WeightMode::kSiq:
      return "siq";
    case WeightMode::kUniform:
      return "uniform";
    case WeightMode::kDegree:
      return "degree";
  }
  return "unknown";
}

int BalanceIndicator(const Triangle& t) {
  return t.signs[0] * t.signs[1] * t.signs[2] == 1 ? 1 : 0;
}

double BalanceCentrality(const SignedGraph& g, NodeId v) {
  const auto triangles = EnumerateTriangles(g, v);
  if (triangles.empty()) return 0.0;
  int balanced = 0;
  for (const Triangle& t : triangles) balanced += BalanceIndicator(t);
  return static_cast<double>(balanced) / static_cast<double>(triangles.size());
}

double StatusCentrality(const SignedGraph& g, NodeId v) {
  g.CheckNode(v);
  const auto nbrs = g.neighbors(v);
  if (nbrs.empty()) return 0.0;
  const double avg = g.average_degree();
  double sum = 0.0;
  for (const Neighbor& nb : nbrs) {
    const double x = static_cast<double>(g.degree(nb.node)) / avg;
    sum += nb.sign * (1.0 / (1.0 + std::exp(-x)));
  }
  return sum / std::sqrt(static_cast<double>(nbrs.size()));
}

double DegreeInfluence(const SignedGraph& g, NodeId v) {
  g.CheckNode(v);
  const std::size_t max_deg = g.max_degree();
  if (max_deg == 0) Fail(ErrorCode::kInvalidArgument, "graph has no edges");
  return static_cast<double>(g.degree(v)) / static_cast<double>(max_deg);
}

std::vector<double> MinMaxNormalize(std::span<const double> x) {
  std::vector<double> out(x.size(), 0.5);
  if (x.empty()) return out;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double range = *hi - *lo;
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - *lo) / range;
  return out;
}

std::vector<double> Softmax(std::span<const double> x) {
  std::vector<double> out(x.size());
  if (x.empty()) return out;
  const double shift = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - shift);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

double InfluenceWeights::WeightOf(const Edge& e) const {
  auto it = std::lower_bound(region_edges.begin(), region_edges.end(), e);
  if (it == region_edges.end() || *it != e) return 1.0;
  return edge_weights[static_cast<std::size_t>(it - region_edges.begin())];
}

double InfluenceWeights::InfluenceOf(NodeId v) const {
  auto it = std::lower_bound(region_nodes.begin(), region_nodes.end(), v);
  if (it == region_nodes.end() || *it != v || influence.empty()) return 0.0;
  return influence[static_cast<std::size_t>(it - region_nodes.begin())];
}

namespace {

void FillEdgeWeights(InfluenceWeights& w) {
  w.edge_weights.resize(w.region_edges.size());
  for (std::size_t i = 0; i < w.region_edges.size(); ++i) {
    const Edge& e = w.region_edges[i];
    w.edge_weights[i] =
        std::min((w.InfluenceOf(e.u) + w.InfluenceOf(e.v)) / 2.0, 1.0);
  }
}

InfluenceWeights Skeleton(const CertRegion& region, WeightMode mode,
                          double alpha) {
  if (region.region.empty()) {
    Fail(ErrorCode::kInvalidArgument, "certification region is empty");
  }
  InfluenceWeights w;
  w.mode = mode;
  w.alpha = alpha;
  w.region_nodes = region.Nodes();
  w.region_edges = region.region;
  return w;
}

}  // namespace

InfluenceWeights UnifiedInfluence(const CertRegion& region,
                                  const SignedGraph& g, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  }
  InfluenceWeights w = Skeleton(region, WeightMode::kSiq, alpha);
  const std::size_t m = w.region_nodes.size();
  w.balance.resize(m);
  w.status.resize(m);
  std::vector<double> abs_status(m);
  for (std::size_t i = 0; i < m; ++i) {
    w.balance[i] = BalanceCentrality(g, w.region_nodes[i]);
    w.status[i] = StatusCentrality(g, w.region_nodes[i]);
    abs_status[i] = std::abs(w.status[i]);
  }
  const auto bal = MinMaxNormalize(w.balance);
  const auto sta = MinMaxNormalize(abs_status);
  w.unified.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    w.unified[i] = alpha * bal[i] + (1.0 - alpha) * sta[i];
  }
  w.influence = Softmax(w.unified);
  FillEdgeWeights(w);
  return w;
}

InfluenceWeights ComputeWeights(const CertRegion& region, const SignedGraph& g,
                                WeightMode mode, double alpha) {
  switch (mode) {
    case WeightMode::kSiq:
      return UnifiedInfluence(region, g, alpha);
    case WeightMode::kUniform: {
      InfluenceWeights w = Skeleton(region, mode, alpha);
      w.edge_weights.assign(w.region_edges.size(), 1.0);
      return w;
    }
    case WeightMode::kDegree: {
      InfluenceWeights w = Skeleton(region, mode, alpha);
      w.influence.resize(w.region_nodes.size());
      for (std::size_t i = 0; i < w.region_nodes.size(); ++i) {
        w.influence[i] = DegreeInfluence(g, w.region_nodes[i]);
      }
      FillEdgeWeights(w);
      return w;
    }
  }
  Fail(ErrorCode::kInternal, "unhandled weight mode");
}

}  // namespace csgu
