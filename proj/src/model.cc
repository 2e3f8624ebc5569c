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
#include "csgu/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "json.hpp"

#include "csgu/error.hpp"

namespace csgu {

Embeddings::Embeddings(Eigen::MatrixXd nodes, double clip_c)
    : nodes_(std::move(nodes)), clip_c_(clip_c) {
  if (!(clip_c > 0.0)) Fail(ErrorCode::kInvalidArgument, "clip_c must be > 0");
}

Eigen::VectorXd Embeddings::EdgeRep(const Edge& e) const {
  if (e.u >= nodes_.rows() || e.v >= nodes_.rows()) {
    Fail(ErrorCode::kNotFound, "no embedding for edge endpoint");
  }
  Eigen::VectorXd h =
      nodes_.row(e.u).transpose().cwiseProduct(nodes_.row(e.v).transpose());
  const double norm = h.norm();
  if (norm > clip_c_) h *= clip_c_ / norm;
  return h;
}

Embeddings Encode(const SignedGraph& g, const EncoderConfig& config) {
  if (config.dim < 1) Fail(ErrorCode::kInvalidArgument, "dim must be >= 1");
  const Eigen::MatrixXd& x = g.features();
  const Eigen::Index n = x.rows();
  const Eigen::Index df = x.cols();

  Eigen::MatrixXd input(n, 2 * df);
  for (Eigen::Index u = 0; u < n; ++u) {
    Eigen::VectorXd pos = Eigen::VectorXd::Zero(df);
    Eigen::VectorXd neg = Eigen::VectorXd::Zero(df);
    int npos = 0;
    int nneg = 0;
    for (const Neighbor& nb : g.neighbors(static_cast<NodeId>(u))) {
      if (nb.sign > 0) {
        pos += x.row(nb.node).transpose();
        ++npos;
      } else {
        neg += x.row(nb.node).transpose();
        ++nneg;
      }
    }
    if (npos > 0) pos /= npos;
    if (nneg > 0) neg /= nneg;
    input.row(u).head(df) = x.row(u);
    input.row(u).tail(df) = (pos - neg).transpose();
  }

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0 * df));
  Eigen::MatrixXd proj(2 * df, config.dim);
  for (Eigen::Index r = 0; r < proj.rows(); ++r) {
    for (Eigen::Index c = 0; c < proj.cols(); ++c) proj(r, c) = normal(rng);
  }
  Eigen::MatrixXd h = (input * proj).array().tanh().matrix();
  return Embeddings(std::move(h), config.clip_c);
}

EdgeBatch MakeBatch(std::span<const SignedEdge> edges, const Embeddings& emb,
                    const InfluenceWeights* weights) {
  EdgeBatch b;
  const auto m = static_cast<Eigen::Index>(edges.size());
  b.edges.reserve(edges.size());
  b.reps.resize(m, emb.dim());
  b.labels.resize(m);
  b.weights.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const SignedEdge& se = edges[static_cast<std::size_t>(i)];
    b.edges.push_back(se.edge);
    b.reps.row(i) = emb.EdgeRep(se.edge).transpose();
    b.labels(i) = (1.0 + se.sign) / 2.0;
    b.weights(i) = weights ? weights->WeightOf(se.edge) : 1.0;
  }
  return b;
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double ez = std::exp(z);
  return ez / (1.0 + ez);
}

namespace {

void CheckDim(const PredictorState& state, Eigen::Index dim) {
  if (state.theta.size() != dim) {
    Fail(ErrorCode::kInvalidArgument,
         "dimension mismatch: theta has " + std::to_string(state.theta.size()) +
             ", representation has " + std::to_string(dim));
  }
}

// log(1 + e^z) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace

double Predict(const PredictorState& state, const Eigen::VectorXd& h) {
  CheckDim(state, h.size());
  return Sigmoid(state.theta.dot(h));
}

double Loss(const PredictorState& state, const EdgeBatch& batch) {
  CheckDim(state, batch.reps.cols());
  const Eigen::VectorXd z = batch.reps * state.theta;
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // -y log f - (1 - y) log(1 - f) == softplus(z) - y z
    total += batch.weights(i) * (Softplus(z(i)) - batch.labels(i) * z(i));
  }
  return total + 0.5 * state.lambda_reg * state.theta.squaredNorm();
}

Eigen::VectorXd GradEdge(const PredictorState& state, const Eigen::VectorXd& h,
                         double label) {
  return (Predict(state, h) - label) * h;
}

Eigen::VectorXd Gradient(const PredictorState& state, const EdgeBatch& batch) {
  CheckDim(state, batch.reps.cols());
  Eigen::VectorXd r = batch.reps * state.theta;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    r(i) = batch.weights(i) * (Sigmoid(r(i)) - batch.labels(i));
  }
  return batch.reps.transpose() * r + state.lambda_reg * state.theta;
}

HessianOperator::HessianOperator(const PredictorState& state,
                                 const EdgeBatch& batch, double damping)
    : reps_(batch.reps),
      coeffs_(batch.reps.rows()),
      floor_(state.lambda_reg + damping) {
  CheckDim(state, batch.reps.cols());
  const Eigen::VectorXd z = reps_ * state.theta;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double f = Sigmoid(z(i));
    coeffs_(i) = batch.weights(i) * f * (1.0 - f);
  }
}

Eigen::VectorXd HessianOperator::Apply(const Eigen::VectorXd& v) const {
  if (v.size() != reps_.cols()) {
    Fail(ErrorCode::kInvalidArgument, "hvp vector dimension mismatch");
  }
  const Eigen::VectorXd scaled = coeffs_.cwiseProduct(reps_ * v);
  return reps_.transpose() * scaled + floor_ * v;
}

Eigen::MatrixXd HessianOperator::ApplyBlock(const Eigen::MatrixXd& v) const {
  if (v.rows() != reps_.cols()) {
    Fail(ErrorCode::kInvalidArgument, "hvp block dimension mismatch");
  }
  const Eigen::MatrixXd scaled = coeffs_.asDiagonal() * (reps_ * v);
  return reps_.transpose() * scaled + floor_ * v;
}

Eigen::MatrixXd HessianOperator::Dense() const {
  Eigen::MatrixXd h = reps_.transpose() * coeffs_.asDiagonal() * reps_;
  h.diagonal().array() += floor_;
  return h;
}

Eigen::VectorXd Hvp(const PredictorState& state, const EdgeBatch& batch,
                    const Eigen::VectorXd& v) {
  return HessianOperator(state, batch).Apply(v);
}

TrainResult Train(const EdgeBatch& batch, int dim, const TrainConfig& config,
                  std::optional<Eigen::VectorXd> init) {
  if (batch.size() == 0) Fail(ErrorCode::kInvalidArgument, "no training edges");
  if (!(config.lambda_reg > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "lambda_reg must be > 0");
  }
  PredictorState state;
  state.lambda_reg = config.lambda_reg;
  state.theta = init ? *init : Eigen::VectorXd::Zero(dim);
  CheckDim(state, batch.reps.cols());

  // Lipschitz bound of the gradient seeds the first step.
  double lipschitz = config.lambda_reg;
  for (Eigen::Index i = 0; i < batch.reps.rows(); ++i) {
    lipschitz += 0.25 * batch.weights(i) * batch.reps.row(i).squaredNorm();
  }

  constexpr std::size_t kMemory = 10;
  constexpr double kArmijo = 1e-4;
  std::deque<double> recent;

  double loss = Loss(state, batch);
  Eigen::VectorXd grad = Gradient(state, batch);
  double step = 1.0 / lipschitz;
  TrainResult result;
  int epoch = 0;
  for (; epoch < config.max_epochs; ++epoch) {
    if (grad.norm() <= config.grad_tol) break;
    recent.push_back(loss);
    if (recent.size() > kMemory) recent.pop_front();
    const double reference = *std::max_element(recent.begin(), recent.end());
    const double gg = grad.squaredNorm();

    PredictorState trial = state;
    double trial_loss = 0.0;
    for (int tries = 0;; ++tries) {
      trial.theta = state.theta - step * grad;
      trial_loss = Loss(trial, batch);
      if (trial_loss <= reference - kArmijo * step * gg) break;
      if (tries > 60) {
        Fail(ErrorCode::kNumeric, "line search failed to find descent");
      }
      step *= 0.5;
    }
    Eigen::VectorXd next_grad = Gradient(trial, batch);
    const Eigen::VectorXd s = trial.theta - state.theta;
    const Eigen::VectorXd y = next_grad - grad;
    const double sy = s.dot(y);
    step = sy > 0.0 ? s.squaredNorm() / sy : 1.0 / lipschitz;
    step = std::clamp(step, 1e-12, 1e12);
    state = std::move(trial);
    loss = trial_loss;
    grad = std::move(next_grad);
  }
  result.state = std::move(state);
  result.epochs = epoch;
  result.grad_norm = grad.norm();
  if (!std::isfinite(result.grad_norm)) {
    Fail(ErrorCode::kNumeric, "training diverged");
  }
  if (result.grad_norm > config.grad_tol) {
    Fail(ErrorCode::kConvergence,
         "training did not converge in " + std::to_string(config.max_epochs) +
             " epochs; final gradient norm " +
             std::to_string(result.grad_norm));
  }
  return result;
}

void SaveState(std::ostream& out, const PredictorState& state) {
  static_assert(std::endian::native == std::endian::little,
                "payload is written as little-endian float64");
  nlohmann::json header = {{"format", "csgu-predictor"},
                           {"version", 1},
                           {"dim", state.theta.size()},
                           {"lambda_reg", state.lambda_reg},
                           {"clip_c", state.clip_c},
                           {"dtype", "float64-le"}};
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(state.theta.data()),
            static_cast<std::streamsize>(state.theta.size() * sizeof(double)));
  if (!out) Fail(ErrorCode::kIo, "failed to write predictor state");
}

PredictorState LoadState(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kIo, "missing state header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad state header: ") + e.what());
  }
  if (header.value("format", "") != "csgu-predictor" ||
      header.value("dtype", "") != "float64-le") {
    Fail(ErrorCode::kParse, "not a csgu predictor state");
  }
  PredictorState state;
  Eigen::Index dim = 0;
  try {
    dim = header.at("dim").get<Eigen::Index>();
    state.lambda_reg = header.at("lambda_reg").get<double>();
    state.clip_c = header.at("clip_c").get<double>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad state header: ") + e.what());
  }
  if (dim < 1) Fail(ErrorCode::kParse, "state dimension must be >= 1");
  state.theta.resize(dim);
  in.read(reinterpret_cast<char*>(state.theta.data()),
          static_cast<std::streamsize>(dim * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(dim * sizeof(double))) {
    Fail(ErrorCode::kParse, "truncated state payload");
  }
  return state;
}

}  // namespace csgu
