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
#ifndef CSGU_PIPELINE_HPP_
#define CSGU_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "csgu/eval.hpp"
#include "csgu/signed_graph.hpp"
#include "csgu/siq.hpp"
#include "csgu/tin.hpp"
#include "csgu/unlearn.hpp"

namespace csgu {

inline constexpr const char* kCsvHeader =
    "dataset,method,scenario,ratio,seed,macro_f1,mi_auc,time_s,epsilon,delta,"
    "alpha";

enum class Method { kCsgu, kWoSiq, kWoTin, kWoNoise, kRetrain };
enum class SignFilter { kMixed, kPositive, kNegative };

std::optional<Method> ParseMethod(const std::string& name);
const char* MethodName(Method m);
std::optional<SignFilter> ParseSignFilter(const std::string& name);
const char* SignFilterName(SignFilter f);

struct RunConfig {
  // "synthetic" selects the bundled generator; anything else is a path.
  std::string dataset = "synthetic";
  EdgeFormat format = EdgeFormat::kSignedTriple;
  // Seeds the dataset itself (generator or synthesized features), so every
  // run seed sees the same graph.
  std::uint64_t graph_seed = 0;
  Scenario scenario = Scenario::kEdge;
  double ratio = 0.025;
  Method method = Method::kCsgu;
  SignFilter sign_filter = SignFilter::kMixed;
  double alpha = 0.5;
  double epsilon = 1.0;
  double delta = 1e-5;
  double damping = 0.1;
  double lambda_reg = 1e-4;
  double update_scale = 1.0;
  double cg_tol = 1e-6;
  int cg_max_iter = 20;
  int embedding_dim = 20;
  double clip_c = 1.0;
  int max_epochs = 500;
  double grad_tol = 1e-8;
  RegionMode region = RegionMode::kTin;
  std::size_t khop_k = 2;
  std::optional<std::size_t> tin_max_iter;
  WeightMode weights = WeightMode::kSiq;
  bool no_noise = false;
  double train_fraction = 0.8;
  // When false, wall-clock fields are reported as 0 so every output byte is
  // a function of (config, seed).
  bool record_timing = true;
  std::uint64_t seed = 0;

  // Keys mirror the field names; missing keys keep their current value.
  void MergeJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
  void Validate() const;
  // Display name used in the CSV dataset column.
  std::string DatasetName() const;
};

// Seeded uniform sample without replacement of floor(ratio * pool), at least
// one. Pools: edges (edge), nodes with degree > 0 (node, feature). The sign
// filter restricts the edge pool, or the node pool to nodes with an edge of
// that sign.
DeletionRequest SampleDeletion(const SignedGraph& g, Scenario scenario,
                               double ratio, std::uint64_t seed,
                               SignFilter filter = SignFilter::kMixed);

// Bundled benchmark graph: disjoint 4-cliques with faction-consistent signs
// (mostly balanced triangles) linked by sparse triangle-free cross edges.
// Features carry a noisy faction signal.
SignedGraph SyntheticSignedGraph(std::uint64_t seed,
                                 std::size_t num_nodes = 200);

struct RunOutput {
  EvalReport report;
  UnlearnResult unlearn;
  nlohmann::json json;
  std::string csv_row;
};

// Load, split, train theta*, sample a deletion, run the method, retrain on
// the remaining graph, evaluate.
RunOutput Run(const RunConfig& config);

}  // namespace csgu

#endif  // CSGU_PIPELINE_HPP_
