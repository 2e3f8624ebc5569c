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
#include "csgu/unlearn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "csgu/error.hpp"

namespace csgu {

Eigen::VectorXd WeightedGradient(const PredictorState& state,
                                 std::span<const SignedEdge> full,
                                 std::span<const SignedEdge> remaining,
                                 const Embeddings& emb,
                                 const InfluenceWeights* weights) {
  std::vector<Edge> kept;
  kept.reserve(remaining.size());
  for (const SignedEdge& se : remaining) kept.push_back(se.edge);
  std::sort(kept.begin(), kept.end());

  Eigen::VectorXd g = Eigen::VectorXd::Zero(state.theta.size());
  std::size_t found = 0;
  for (const SignedEdge& se : full) {
    if (std::binary_search(kept.begin(), kept.end(), se.edge)) {
      ++found;
      continue;
    }
    const double w = weights ? weights->WeightOf(se.edge) : 1.0;
    g += w * GradEdge(state, emb.EdgeRep(se.edge), (1.0 + se.sign) / 2.0);
  }
  if (found != kept.size()) {
    Fail(ErrorCode::kInvalidArgument, "remaining edges are not a subset of full");
  }
  return g;
}

CgResult CgSolve(const LinearOperator& op, const Eigen::VectorXd& b, double tol,
                 int max_iter) {
  if (!(tol > 0.0)) Fail(ErrorCode::kInvalidArgument, "cg tolerance must be > 0");
  if (max_iter < 1) Fail(ErrorCode::kInvalidArgument, "cg max_iter must be >= 1");
  const double target = tol * std::max(1.0, b.norm());

  CgResult out;
  out.x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  out.residual = std::sqrt(rr);
  while (out.residual > target) {
    if (out.iterations >= max_iter) {
      out.hit_max_iter = true;
      break;
    }
    const Eigen::VectorXd ap = op(p);
    const double pap = p.dot(ap);
    if (!std::isfinite(pap) || pap <= 0.0) {
      Fail(ErrorCode::kNumeric,
           "conjugate gradient met a non-positive or non-finite curvature");
    }
    const double step = rr / pap;
    out.x += step * p;
    r -= step * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    out.residual = std::sqrt(rr);
    ++out.iterations;
    if (!std::isfinite(out.residual)) {
      Fail(ErrorCode::kNumeric, "conjugate gradient produced non-finite values");
    }
  }
  // Report the true residual rather than the recurrence estimate.
  if (out.iterations > 0) out.residual = (op(out.x) - b).norm();
  return out;
}

BlockCgResult CgSolveBlock(const BlockOperator& op, const Eigen::MatrixXd& b,
                           double tol, int max_iter) {
  if (!(tol > 0.0)) Fail(ErrorCode::kInvalidArgument, "cg tolerance must be > 0");
  if (max_iter < 1) Fail(ErrorCode::kInvalidArgument, "cg max_iter must be >= 1");
  const Eigen::Index k = b.cols();
  BlockCgResult out;
  out.x = Eigen::MatrixXd::Zero(b.rows(), k);
  out.residual.resize(k);
  out.iterations.assign(static_cast<std::size_t>(k), 0);
  if (k == 0) return out;

  Eigen::VectorXd target(k);
  Eigen::MatrixXd r = b;
  Eigen::MatrixXd p = r;
  Eigen::VectorXd rr = r.colwise().squaredNorm().transpose();
  std::vector<bool> active(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    target(j) = tol * std::max(1.0, b.col(j).norm());
    active[static_cast<std::size_t>(j)] = std::sqrt(rr(j)) > target(j);
  }
  for (int it = 0; it < max_iter; ++it) {
    if (std::none_of(active.begin(), active.end(), [](bool a) { return a; })) {
      break;
    }
    const Eigen::MatrixXd ap = op(p);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto js = static_cast<std::size_t>(j);
      if (!active[js]) continue;
      const double pap = p.col(j).dot(ap.col(j));
      if (!std::isfinite(pap) || pap <= 0.0) {
        Fail(ErrorCode::kNumeric,
             "conjugate gradient met a non-positive or non-finite curvature");
      }
      const double step = rr(j) / pap;
      out.x.col(j) += step * p.col(j);
      r.col(j) -= step * ap.col(j);
      const double rr_next = r.col(j).squaredNorm();
      if (!std::isfinite(rr_next)) {
        Fail(ErrorCode::kNumeric, "conjugate gradient produced non-finite values");
      }
      p.col(j) = r.col(j) + (rr_next / rr(j)) * p.col(j);
      rr(j) = rr_next;
      ++out.iterations[js];
      active[js] = std::sqrt(rr_next) > target(j);
    }
  }
  out.hit_max_iter = std::any_of(active.begin(), active.end(), [](bool a) { return a; });
  out.residual = (op(out.x) - b).colwise().norm().transpose();
  return out;
}

SensitivityResult Sensitivity(const PredictorState& state,
                              const EdgeBatch& deleted,
                              const BlockOperator& op, double lambda_eff,
                              double cg_tol, int cg_max_iter) {
  if (deleted.size() == 0) {
    Fail(ErrorCode::kInvalidArgument, "sensitivity needs a non-empty deletion set");
  }
  if (!(lambda_eff > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "curvature floor must be > 0");
  }
  if (state.theta.size() != deleted.reps.cols()) {
    Fail(ErrorCode::kInvalidArgument, "parameter and representation dims differ");
  }
  // Column i is w_i * grad_edge_i.
  Eigen::VectorXd coeff = deleted.reps * state.theta;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) {
    coeff(i) = deleted.weights(i) * (Sigmoid(coeff(i)) - deleted.labels(i));
  }
  const Eigen::MatrixXd grads = deleted.reps.transpose() * coeff.asDiagonal();
  const BlockCgResult solve = CgSolveBlock(op, grads, cg_tol, cg_max_iter);

  SensitivityResult out;
  out.hit_max_iter = solve.hit_max_iter;
  out.per_edge.resize(deleted.size());
  for (std::size_t i = 0; i < deleted.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    out.per_edge[i] = solve.x.col(col).norm();
    if (out.per_edge[i] > out.sensitivity) {
      out.sensitivity = out.per_edge[i];
      out.argmax = i;
    }
    out.bound = std::max(
        out.bound, deleted.weights(col) * deleted.reps.row(col).norm() / lambda_eff);
  }
  // CG stops within tol of the exact solve, whose norm obeys the bound.
  const double slack = cg_tol * std::max(1.0, out.bound) / lambda_eff;
  if (out.sensitivity > out.bound + slack) {
    Fail(ErrorCode::kNumeric, "measured sensitivity exceeds its analytic bound");
  }
  return out;
}

double NoiseScale(double epsilon, double delta, double sensitivity) {
  if (!(epsilon > 0.0)) Fail(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  if (!(sensitivity >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "sensitivity must be >= 0");
  }
  return std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity / epsilon;
}

Eigen::VectorXd SampleGaussianNoise(int dim, double sigma, std::uint64_t seed,
                                    std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x6e6f6973u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd xi(dim);
  for (int i = 0; i < dim; ++i) xi(i) = sigma * normal(rng);
  return xi;
}

PrivacySpend ComposeBudget(std::span<const PrivacySpend> ledger) {
  PrivacySpend total;
  for (const PrivacySpend& s : ledger) {
    if (!(s.epsilon > 0.0) || !(s.delta >= 0.0 && s.delta < 1.0)) {
      Fail(ErrorCode::kInvalidArgument, "invalid ledger entry");
    }
    total.epsilon += s.epsilon;
    total.delta += s.delta;
  }
  return total;
}

void PrivacyAccountant::Spend(double epsilon, double delta) {
  const PrivacySpend entry{epsilon, delta};
  ComposeBudget(std::span(&entry, 1));
  ledger_.push_back(entry);
}

namespace {

constexpr std::uint64_t kNoiseStream = 0x5eed;

}  // namespace

UnlearnResult Unlearn(const SignedGraph& g, const DeletionRequest& request,
                      const Embeddings& emb, const PredictorState& trained,
                      const UnlearnConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (trained.theta.size() != emb.dim()) {
    Fail(ErrorCode::kInvalidArgument, "parameter and embedding dims differ");
  }
  if (!(config.damping >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "damping must be >= 0");
  }
  // Validate the privacy parameters up front, even when noise is disabled.
  NoiseScale(config.epsilon, config.delta, 0.0);

  UnlearnResult out;
  const std::vector<Edge> deleted = DeletionSet(g, request);
  out.deletion_size = deleted.size();
  out.theta_tilde = trained.theta;
  out.delta_theta = Eigen::VectorXd::Zero(trained.theta.size());
  out.noise = Eigen::VectorXd::Zero(trained.theta.size());
  if (deleted.empty()) {
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return out;
  }

  const CertRegion region =
      config.region == RegionMode::kTin
          ? BuildTin(g, deleted, config.tin_max_iter)
          : KhopRegion(g, deleted, config.khop_k);
  out.region_size = region.region.size();
  out.region_iterations = region.iterations;
  out.region_truncated = region.truncated;

  const InfluenceWeights weights =
      ComputeWeights(region, g, config.weights, config.alpha);
  if (!weights.edge_weights.empty()) {
    const auto [lo, hi] = std::minmax_element(weights.edge_weights.begin(),
                                              weights.edge_weights.end());
    out.min_weight = *lo;
    out.max_weight = *hi;
  }

  // Both lists are sorted, so one merge pass splits the edges.
  std::vector<SignedEdge> remaining;
  std::vector<SignedEdge> removed;
  remaining.reserve(g.num_edges());
  removed.reserve(deleted.size());
  auto next = deleted.begin();
  for (const SignedEdge& se : g.edges()) {
    while (next != deleted.end() && *next < se.edge) ++next;
    if (next != deleted.end() && *next == se.edge) {
      removed.push_back(se);
    } else {
      remaining.push_back(se);
    }
  }

  const EdgeBatch deleted_batch = MakeBatch(removed, emb, &weights);
  // Full-minus-remaining gradient; the regularizer cancels.
  Eigen::VectorXd residual = deleted_batch.reps * trained.theta;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    residual(i) = deleted_batch.weights(i) *
                  (Sigmoid(residual(i)) - deleted_batch.labels(i));
  }
  const Eigen::VectorXd grad = deleted_batch.reps.transpose() * residual;

  const EdgeBatch remaining_batch = MakeBatch(remaining, emb, &weights);
  const HessianOperator hessian(trained, remaining_batch, config.damping);

  // Every solve below goes through CG. Assembling H_r costs about d/2
  // matrix-free products and makes each later product O(d^2), so it pays off
  // once the solves need more than that.
  const auto solves = static_cast<double>(1 + removed.size());
  const bool assemble =
      emb.dim() < 2.0 * solves * static_cast<double>(config.cg_max_iter);
  const Eigen::MatrixXd dense = assemble ? hessian.Dense() : Eigen::MatrixXd();
  const LinearOperator op = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (assemble) return dense * v;
    return hessian.Apply(v);
  };
  const BlockOperator block_op = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
    if (assemble) return dense * v;
    return hessian.ApplyBlock(v);
  };

  // theta* minimizes L_r + L_d, so grad L_r(theta*) = -g and the Newton step
  // on L_r from theta* is +H_r^-1 g.
  const CgResult step = CgSolve(op, grad, config.cg_tol, config.cg_max_iter);
  out.delta_theta = step.x;
  out.cg_residual = step.residual;
  out.cg_iterations = step.iterations;
  out.cg_hit_max_iter = step.hit_max_iter;

  out.mean_deleted_weight =
      deleted_batch.weights.sum() / static_cast<double>(removed.size());
  const SensitivityResult sens =
      Sensitivity(trained, deleted_batch, block_op, hessian.floor(),
                  config.cg_tol, config.cg_max_iter);
  out.sensitivity = sens.sensitivity;
  out.sensitivity_bound = sens.bound;
  out.cg_hit_max_iter = out.cg_hit_max_iter || sens.hit_max_iter;

  out.theta_tilde = trained.theta + config.update_scale * out.delta_theta;
  if (config.add_noise) {
    out.sigma = NoiseScale(config.epsilon, config.delta, out.sensitivity);
    out.noise = SampleGaussianNoise(emb.dim(), out.sigma, config.seed,
                                    kNoiseStream);
    out.theta_tilde += out.noise;
  }
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace csgu
