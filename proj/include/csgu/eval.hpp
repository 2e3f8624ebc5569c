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
#ifndef CSGU_EVAL_HPP_
#define CSGU_EVAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "csgu/model.hpp"
#include "csgu/signed_graph.hpp"

namespace csgu {

// Unweighted mean of the F1 scores of class 1 and class 0. A class whose
// precision or recall is undefined (0/0) scores 0.
double MacroF1(std::span<const int> predictions, std::span<const int> labels);

// Probability that a random member outscores a random nonmember, ties 0.5.
double AucFromScores(std::span<const double> members,
                     std::span<const double> nonmembers);

// Membership-inference AUC with confidence |theta^T h_uv|. When `graph` is
// given, nonmembers must be absent from it.
double MiAuc(const Eigen::VectorXd& theta, const Embeddings& emb,
             std::span<const Edge> members, std::span<const Edge> nonmembers,
             const SignedGraph* graph = nullptr);

// Uniform rejection sampling of distinct node pairs absent from g.
std::vector<Edge> SampleNonmembers(const SignedGraph& g, std::size_t count,
                                   std::uint64_t seed);

struct EdgeSplit {
  std::vector<SignedEdge> train;
  std::vector<SignedEdge> test;
};

// Per-sign seeded shuffle; floor(train_fraction * class size) of each sign
// goes to train. Both halves come back in canonical order.
EdgeSplit SplitEdges(const SignedGraph& g, double train_fraction,
                     std::uint64_t seed);

struct EvalInputs {
  const Eigen::VectorXd* theta_original = nullptr;
  const Eigen::VectorXd* theta_unlearned = nullptr;
  const Eigen::VectorXd* theta_retrained = nullptr;
  const Embeddings* embeddings = nullptr;
  std::span<const SignedEdge> test_edges;
  std::span<const Edge> members;
  std::span<const Edge> nonmembers;
};

struct EvalReport {
  double macro_f1 = 0.0;
  double mi_auc = 0.5;
  double unlearn_time_s = 0.0;
  double retrain_time_s = 0.0;
  double dist_to_original = 0.0;   // |theta_tilde - theta*|
  double dist_to_retrained = 0.0;  // |theta_tilde - theta_r*|
  double original_to_retrained = 0.0;  // |theta* - theta_r*|
  nlohmann::json config;

  nlohmann::json ToJson() const;
};

// Thresholds f >= 0.5 as positive on the test edges.
EvalReport Evaluate(const EvalInputs& in);

}  // namespace csgu

#endif  // CSGU_EVAL_HPP_
