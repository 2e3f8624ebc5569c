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
#ifndef CSGU_MODEL_HPP_
#define CSGU_MODEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "csgu/signed_graph.hpp"
#include "csgu/siq.hpp"

namespace csgu {

struct EncoderConfig {
  int dim = 20;
  double clip_c = 1.0;
  std::uint64_t seed = 0;
};

// Output of the frozen signed encoder: one row per node id.
class Embeddings {
 public:
  Embeddings() = default;
  Embeddings(Eigen::MatrixXd nodes, double clip_c);

  const Eigen::MatrixXd& nodes() const { return nodes_; }
  int dim() const { return static_cast<int>(nodes_.cols()); }
  double clip_c() const { return clip_c_; }

  // h_u * h_v elementwise, rescaled onto the clip_c ball when longer.
  Eigen::VectorXd EdgeRep(const Edge& e) const;

 private:
  Eigen::MatrixXd nodes_;
  double clip_c_ = 1.0;
};

// h_u = tanh(P [x_u ; mean(x over N+(u)) - mean(x over N-(u))]) with a
// seeded Gaussian projection P.
Embeddings Encode(const SignedGraph& g, const EncoderConfig& config);

struct PredictorState {
  Eigen::VectorXd theta;
  double lambda_reg = 1e-4;
  double clip_c = 1.0;
};

// Edge representations, labels and loss weights laid out for the head.
struct EdgeBatch {
  std::vector<Edge> edges;
  Eigen::MatrixXd reps;     // one row per edge
  Eigen::VectorXd labels;   // (1 + sign) / 2
  Eigen::VectorXd weights;

  std::size_t size() const { return edges.size(); }
};

// Weights come from `weights` when given (1 outside its region), else 1.
EdgeBatch MakeBatch(std::span<const SignedEdge> edges, const Embeddings& emb,
                    const InfluenceWeights* weights = nullptr);

double Sigmoid(double z);

double Predict(const PredictorState& state, const Eigen::VectorXd& h);

// Weighted BCE plus (lambda/2)|theta|^2.
double Loss(const PredictorState& state, const EdgeBatch& batch);

// (f - y) h: gradient of one unweighted BCE term.
Eigen::VectorXd GradEdge(const PredictorState& state, const Eigen::VectorXd& h,
                         double label);

// Full gradient including the regularizer.
Eigen::VectorXd Gradient(const PredictorState& state, const EdgeBatch& batch);

// Matrix-free Hessian product of the weighted BCE head:
//   (sum_e w_e f_e (1 - f_e) h_e h_e^T + (lambda + damping) I) v.
// Curvature coefficients are computed once at construction.
class HessianOperator {
 public:
  HessianOperator(const PredictorState& state, const EdgeBatch& batch,
                  double damping = 0.0);

  Eigen::VectorXd Apply(const Eigen::VectorXd& v) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& v) const { return Apply(v); }
  // Column-wise product for several right-hand sides at once.
  Eigen::MatrixXd ApplyBlock(const Eigen::MatrixXd& v) const;
  // Assembles the d x d matrix; O(|E| d^2).
  Eigen::MatrixXd Dense() const;
  // Curvature floor: lambda + damping.
  double floor() const { return floor_; }

 private:
  Eigen::MatrixXd reps_;
  Eigen::VectorXd coeffs_;
  double floor_;
};

Eigen::VectorXd Hvp(const PredictorState& state, const EdgeBatch& batch,
                    const Eigen::VectorXd& v);

struct TrainConfig {
  double lambda_reg = 1e-4;
  int max_epochs = 500;
  double grad_tol = 1e-8;
};

struct TrainResult {
  PredictorState state;
  int epochs = 0;
  double grad_norm = 0.0;
};

// Full-batch gradient descent with Barzilai-Borwein step sizes and a
// nonmonotone backtracking line search. Throws kConvergence when the
// gradient norm is still above grad_tol after max_epochs.
TrainResult Train(const EdgeBatch& batch, int dim, const TrainConfig& config,
                  std::optional<Eigen::VectorXd> init = std::nullopt);

// JSON header line followed by dim little-endian float64 values.
void SaveState(std::ostream& out, const PredictorState& state);
PredictorState LoadState(std::istream& in);

}  // namespace csgu

#endif  // CSGU_MODEL_HPP_
