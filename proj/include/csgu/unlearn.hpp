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
#ifndef CSGU_UNLEARN_HPP_
#define CSGU_UNLEARN_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "csgu/model.hpp"
#include "csgu/signed_graph.hpp"
#include "csgu/siq.hpp"
#include "csgu/tin.hpp"

namespace csgu {

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
// Applies a linear operator to every column of its argument.
using BlockOperator = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

// sum over deleted edges of w_e * grad_edge, i.e. the full-set gradient minus
// the remaining-set gradient. Edges in `full` missing from `remaining` are the
// deleted ones. Zero when nothing was deleted.
Eigen::VectorXd WeightedGradient(const PredictorState& state,
                                 std::span<const SignedEdge> full,
                                 std::span<const SignedEdge> remaining,
                                 const Embeddings& emb,
                                 const InfluenceWeights* weights);

struct CgResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // |A x - b|
  int iterations = 0;
  bool hit_max_iter = false;
};

// Conjugate gradient for a symmetric positive definite operator. Stops when
// |A x - b| <= tol * max(1, |b|). Throws kNumeric on non-finite iterates.
CgResult CgSolve(const LinearOperator& op, const Eigen::VectorXd& b, double tol,
                 int max_iter);

struct BlockCgResult {
  Eigen::MatrixXd x;
  Eigen::VectorXd residual;  // per column
  std::vector<int> iterations;
  bool hit_max_iter = false;
};

// Independent CG runs on each column of `b`, advanced together so that every
// iteration costs one block product. Column j stops at
// |A x_j - b_j| <= tol * max(1, |b_j|).
BlockCgResult CgSolveBlock(const BlockOperator& op, const Eigen::MatrixXd& b,
                           double tol, int max_iter);

struct SensitivityResult {
  double sensitivity = 0.0;  // max_e |H^-1 w_e grad_e|
  double bound = 0.0;        // max_e w_e |h_e| / lambda_eff
  std::vector<double> per_edge;
  std::size_t argmax = 0;
  bool hit_max_iter = false;
};

// Per-edge solves against `op`, whose curvature floor is `lambda_eff`.
// Throws kNumeric if the measured value exceeds the analytic bound.
SensitivityResult Sensitivity(const PredictorState& state,
                              const EdgeBatch& deleted,
                              const BlockOperator& op, double lambda_eff,
                              double cg_tol, int cg_max_iter);

// Gaussian-mechanism scale sqrt(2 ln(1.25/delta)) * sensitivity / epsilon.
double NoiseScale(double epsilon, double delta, double sensitivity);

// Seeded N(0, sigma^2 I); `stream` separates independent draws for one seed.
Eigen::VectorXd SampleGaussianNoise(int dim, double sigma, std::uint64_t seed,
                                    std::uint64_t stream = 0);

struct PrivacySpend {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Basic sequential composition: componentwise sums.
PrivacySpend ComposeBudget(std::span<const PrivacySpend> ledger);

class PrivacyAccountant {
 public:
  void Spend(double epsilon, double delta);
  PrivacySpend Total() const { return ComposeBudget(ledger_); }
  const std::vector<PrivacySpend>& ledger() const { return ledger_; }

 private:
  std::vector<PrivacySpend> ledger_;
};

struct UnlearnConfig {
  double epsilon = 1.0;
  double delta = 1e-5;
  double alpha = 0.5;
  double damping = 0.1;
  double update_scale = 1.0;
  bool add_noise = true;
  RegionMode region = RegionMode::kTin;
  std::size_t khop_k = 2;
  std::optional<std::size_t> tin_max_iter;
  WeightMode weights = WeightMode::kSiq;
  double cg_tol = 1e-6;
  int cg_max_iter = 20;
  std::uint64_t seed = 0;
};

struct UnlearnResult {
  Eigen::VectorXd theta_tilde;
  Eigen::VectorXd delta_theta;
  Eigen::VectorXd noise;
  double cg_residual = 0.0;
  int cg_iterations = 0;
  bool cg_hit_max_iter = false;
  double sensitivity = 0.0;
  double sensitivity_bound = 0.0;
  double sigma = 0.0;
  std::size_t deletion_size = 0;
  std::size_t region_size = 0;
  std::size_t region_iterations = 0;
  bool region_truncated = false;
  double min_weight = 0.0;
  double max_weight = 0.0;
  double mean_deleted_weight = 0.0;
  double seconds = 0.0;
};

// Certification region, influence weights, influence-function step
// (H_r + damping I)^-1 g, sensitivity and Gaussian noise, in that order.
// `g` is the graph the predictor was trained on; `emb` its embeddings.
UnlearnResult Unlearn(const SignedGraph& g, const DeletionRequest& request,
                      const Embeddings& emb, const PredictorState& trained,
                      const UnlearnConfig& config);

}  // namespace csgu

#endif  // CSGU_UNLEARN_HPP_
