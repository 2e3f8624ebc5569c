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
#include "csgu/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "csgu/error.hpp"

namespace csgu {

namespace {

double F1(std::size_t tp, std::size_t fp, std::size_t fn) {
  if (tp + fp == 0 || tp + fn == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double MacroF1(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    Fail(ErrorCode::kInvalidArgument, "prediction/label length mismatch");
  }
  if (predictions.empty()) Fail(ErrorCode::kInvalidArgument, "empty input");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] != 0;
    const bool y = labels[i] != 0;
    if (p && y) ++tp;
    else if (p && !y) ++fp;
    else if (!p && y) ++fn;
    else ++tn;
  }
  // Class 0 swaps the roles: its true positives are tn, etc.
  return 0.5 * (F1(tp, fp, fn) + F1(tn, fn, fp));
}

double AucFromScores(std::span<const double> members,
                     std::span<const double> nonmembers) {
  if (members.empty() || nonmembers.empty()) {
    Fail(ErrorCode::kInvalidArgument, "AUC needs members and nonmembers");
  }
  // Mann-Whitney U via midranks over the pooled scores.
  struct Item {
    double score;
    bool member;
  };
  std::vector<Item> pooled;
  pooled.reserve(members.size() + nonmembers.size());
  for (double s : members) pooled.push_back({s, true});
  for (double s : nonmembers) pooled.push_back({s, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Item& a, const Item& b) { return a.score < b.score; });
  double member_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].score == pooled[i].score) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].member) member_rank_sum += midrank;
    }
    i = j;
  }
  const double m = static_cast<double>(members.size());
  const double n = static_cast<double>(nonmembers.size());
  const double u = member_rank_sum - m * (m + 1.0) / 2.0;
  return u / (m * n);
}

double MiAuc(const Eigen::VectorXd& theta, const Embeddings& emb,
             std::span<const Edge> members, std::span<const Edge> nonmembers,
             const SignedGraph* graph) {
  if (members.empty() || nonmembers.empty()) {
    Fail(ErrorCode::kInvalidArgument, "MI-AUC needs members and nonmembers");
  }
  if (graph) {
    for (const Edge& e : nonmembers) {
      if (graph->has_edge(e)) {
        Fail(ErrorCode::kInvalidArgument, "nonmember overlaps an existing edge");
      }
    }
  }
  auto scores = [&](std::span<const Edge> edges) {
    std::vector<double> s;
    s.reserve(edges.size());
    for (const Edge& e : edges) s.push_back(std::abs(theta.dot(emb.EdgeRep(e))));
    return s;
  };
  return AucFromScores(scores(members), scores(nonmembers));
}

std::vector<Edge> SampleNonmembers(const SignedGraph& g, std::size_t count,
                                   std::uint64_t seed) {
  const std::size_t n = g.num_present_nodes();
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  const std::size_t absent = pairs - g.num_edges();
  if (count > absent) {
    Fail(ErrorCode::kInvalidArgument,
         "graph too dense: " + std::to_string(absent) + " absent pairs, " +
             std::to_string(count) + " requested");
  }
  std::vector<Edge> out;
  if (count == 0) return out;
  std::mt19937_64 rng(seed ^ 0xa5a5a5a5ULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<Edge> chosen;
  const auto& nodes = g.nodes();
  while (chosen.size() < count) {
    const NodeId a = nodes[pick(rng)];
    const NodeId b = nodes[pick(rng)];
    if (a == b) continue;
    const Edge e = Edge::Make(a, b);
    if (g.has_edge(e) || chosen.count(e)) continue;
    chosen.insert(e);
    out.push_back(e);
  }
  return out;
}

EdgeSplit SplitEdges(const SignedGraph& g, double train_fraction,
                     std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "train fraction must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed ^ 0x5b117ULL);
  EdgeSplit split;
  for (int sign : {1, -1}) {
    std::vector<SignedEdge> cls;
    for (const SignedEdge& se : g.edges()) {
      if (se.sign == sign) cls.push_back(se);
    }
    std::shuffle(cls.begin(), cls.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(cls.size())));
    split.train.insert(split.train.end(), cls.begin(), cls.begin() + n_train);
    split.test.insert(split.test.end(), cls.begin() + n_train, cls.end());
  }
  auto by_edge = [](const SignedEdge& a, const SignedEdge& b) {
    return a.edge < b.edge;
  };
  std::sort(split.train.begin(), split.train.end(), by_edge);
  std::sort(split.test.begin(), split.test.end(), by_edge);
  return split;
}

nlohmann::json EvalReport::ToJson() const {
  return {{"macro_f1", macro_f1},
          {"mi_auc", mi_auc},
          {"unlearn_time_s", unlearn_time_s},
          {"retrain_time_s", retrain_time_s},
          {"dist_to_original", dist_to_original},
          {"dist_to_retrained", dist_to_retrained},
          {"original_to_retrained", original_to_retrained},
          {"config", config}};
}

EvalReport Evaluate(const EvalInputs& in) {
  if (!in.theta_original || !in.theta_unlearned || !in.theta_retrained ||
      !in.embeddings) {
    Fail(ErrorCode::kInvalidArgument, "evaluation inputs incomplete");
  }
  const Eigen::VectorXd& theta = *in.theta_unlearned;
  if (theta.size() != in.theta_original->size() ||
      theta.size() != in.theta_retrained->size() ||
      theta.size() != in.embeddings->dim()) {
    Fail(ErrorCode::kInvalidArgument, "evaluation dimension mismatch");
  }
  EvalReport r;
  if (!in.test_edges.empty()) {
    std::vector<int> predictions;
    std::vector<int> labels;
    predictions.reserve(in.test_edges.size());
    labels.reserve(in.test_edges.size());
    for (const SignedEdge& se : in.test_edges) {
      const double f = Sigmoid(theta.dot(in.embeddings->EdgeRep(se.edge)));
      predictions.push_back(f >= 0.5 ? 1 : 0);
      labels.push_back(se.sign > 0 ? 1 : 0);
    }
    r.macro_f1 = MacroF1(predictions, labels);
  }
  if (!in.members.empty() && !in.nonmembers.empty()) {
    r.mi_auc = MiAuc(theta, *in.embeddings, in.members, in.nonmembers);
  }
  r.dist_to_original = (theta - *in.theta_original).norm();
  r.dist_to_retrained = (theta - *in.theta_retrained).norm();
  r.original_to_retrained =
      (*in.theta_original - *in.theta_retrained).norm();
  return r;
}

}  // namespace csgu
