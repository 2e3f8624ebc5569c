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
#include "csgu/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "csgu/error.hpp"
#include "csgu/model.hpp"

namespace csgu {

std::optional<Method> ParseMethod(const std::string& name) {
  if (name == "csgu") return Method::kCsgu;
  if (name == "wo_siq") return Method::kWoSiq;
  if (name == "wo_tin") return Method::kWoTin;
  if (name == "wo_noise") return Method::kWoNoise;
  if (name == "retrain") return Method::kRetrain;
  return std::nullopt;
}

const char* MethodName(Method m) {
  switch (m) {
    case Method::kCsgu:
      return "csgu";
    case Method::kWoSiq:
      return "wo_siq";
    case Method::kWoTin:
      return "wo_tin";
    case Method::kWoNoise:
      return "wo_noise";
    case Method::kRetrain:
      return "retrain";
  }
  return "unknown";
}

std::optional<SignFilter> ParseSignFilter(const std::string& name) {
  if (name == "mixed") return SignFilter::kMixed;
  if (name == "pos") return SignFilter::kPositive;
  if (name == "neg") return SignFilter::kNegative;
  return std::nullopt;
}

const char* SignFilterName(SignFilter f) {
  switch (f) {
    case SignFilter::kMixed:
      return "mixed";
    case SignFilter::kPositive:
      return "pos";
    case SignFilter::kNegative:
      return "neg";
  }
  return "unknown";
}

namespace {

template <typename T, typename Parse>
void ReadEnum(const nlohmann::json& j, const char* key, T* out, Parse parse) {
  if (!j.contains(key)) return;
  const auto name = j.at(key).get<std::string>();
  auto parsed = parse(name);
  if (!parsed) {
    Fail(ErrorCode::kInvalidArgument,
         std::string("unknown value '") + name + "' for " + key);
  }
  *out = *parsed;
}

template <typename T>
void ReadValue(const nlohmann::json& j, const char* key, T* out) {
  if (j.contains(key) && !j.at(key).is_null()) *out = j.at(key).get<T>();
}

const char* FormatName(EdgeFormat f) {
  return f == EdgeFormat::kRatedCsv ? "rated_csv" : "signed_triple";
}

}  // namespace

void RunConfig::MergeJson(const nlohmann::json& j) {
  if (!j.is_object()) Fail(ErrorCode::kInvalidArgument, "config must be an object");
  try {
    ReadValue(j, "dataset", &dataset);
    ReadEnum(j, "format", &format, ParseEdgeFormat);
    ReadValue(j, "graph_seed", &graph_seed);
    ReadEnum(j, "scenario", &scenario, ParseScenario);
    ReadValue(j, "ratio", &ratio);
    ReadEnum(j, "method", &method, ParseMethod);
    ReadEnum(j, "sign_filter", &sign_filter, ParseSignFilter);
    ReadValue(j, "alpha", &alpha);
    ReadValue(j, "epsilon", &epsilon);
    ReadValue(j, "delta", &delta);
    ReadValue(j, "damping", &damping);
    ReadValue(j, "lambda_reg", &lambda_reg);
    ReadValue(j, "update_scale", &update_scale);
    ReadValue(j, "cg_tol", &cg_tol);
    ReadValue(j, "cg_max_iter", &cg_max_iter);
    ReadValue(j, "embedding_dim", &embedding_dim);
    ReadValue(j, "clip_c", &clip_c);
    ReadValue(j, "max_epochs", &max_epochs);
    ReadValue(j, "grad_tol", &grad_tol);
    ReadEnum(j, "region", &region, ParseRegionMode);
    ReadValue(j, "khop_k", &khop_k);
    if (j.contains("tin_max_iter")) {
      if (j.at("tin_max_iter").is_null()) {
        tin_max_iter.reset();
      } else {
        tin_max_iter = j.at("tin_max_iter").get<std::size_t>();
      }
    }
    ReadEnum(j, "weights", &weights, ParseWeightMode);
    ReadValue(j, "no_noise", &no_noise);
    ReadValue(j, "train_fraction", &train_fraction);
    ReadValue(j, "record_timing", &record_timing);
    ReadValue(j, "seed", &seed);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("bad config value: ") + e.what());
  }
}

nlohmann::json RunConfig::ToJson() const {
  nlohmann::json j = {{"dataset", dataset},
                      {"format", FormatName(format)},
                      {"graph_seed", graph_seed},
                      {"scenario", ScenarioName(scenario)},
                      {"ratio", ratio},
                      {"method", MethodName(method)},
                      {"sign_filter", SignFilterName(sign_filter)},
                      {"alpha", alpha},
                      {"epsilon", epsilon},
                      {"delta", delta},
                      {"damping", damping},
                      {"lambda_reg", lambda_reg},
                      {"update_scale", update_scale},
                      {"cg_tol", cg_tol},
                      {"cg_max_iter", cg_max_iter},
                      {"embedding_dim", embedding_dim},
                      {"clip_c", clip_c},
                      {"max_epochs", max_epochs},
                      {"grad_tol", grad_tol},
                      {"region", RegionModeName(region)},
                      {"khop_k", khop_k},
                      {"weights", WeightModeName(weights)},
                      {"no_noise", no_noise},
                      {"train_fraction", train_fraction},
                      {"record_timing", record_timing},
                      {"seed", seed}};
  j["tin_max_iter"] = tin_max_iter ? nlohmann::json(*tin_max_iter) : nlohmann::json();
  return j;
}

void RunConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, what);
  };
  require(ratio > 0.0 && ratio < 1.0, "ratio must lie in (0, 1)");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  require(lambda_reg > 0.0, "lambda_reg must be > 0");
  require(damping >= 0.0, "damping must be >= 0");
  require(cg_tol > 0.0, "cg_tol must be > 0");
  require(cg_max_iter >= 1, "cg_max_iter must be >= 1");
  require(embedding_dim >= 1, "embedding_dim must be >= 1");
  require(clip_c > 0.0, "clip_c must be > 0");
  require(max_epochs >= 1, "max_epochs must be >= 1");
  require(khop_k >= 1, "khop_k must be >= 1");
  require(!tin_max_iter || *tin_max_iter >= 1, "tin_max_iter must be >= 1");
  require(train_fraction > 0.0 && train_fraction <= 1.0,
          "train_fraction must lie in (0, 1]");
  // Retraining ignores the privacy knobs.
  if (method != Method::kRetrain) {
    require(epsilon > 0.0, "epsilon must be > 0");
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  }
}

std::string RunConfig::DatasetName() const {
  if (dataset == "synthetic") return dataset;
  return std::filesystem::path(dataset).stem().string();
}

DeletionRequest SampleDeletion(const SignedGraph& g, Scenario scenario,
                               double ratio, std::uint64_t seed,
                               SignFilter filter) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "ratio must lie in (0, 1]");
  }
  auto sign_ok = [filter](int sign) {
    return filter == SignFilter::kMixed ||
           (filter == SignFilter::kPositive && sign > 0) ||
           (filter == SignFilter::kNegative && sign < 0);
  };
  auto count_for = [ratio](std::size_t pool) {
    if (pool == 0) Fail(ErrorCode::kInvalidArgument, "deletion pool is empty");
    const auto n = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(pool) + 1e-9));
    return std::clamp<std::size_t>(n, 1, pool);
  };
  std::mt19937_64 rng(seed ^ 0xde1e7eULL);

  if (scenario == Scenario::kEdge) {
    std::vector<Edge> pool;
    for (const SignedEdge& se : g.edges()) {
      if (sign_ok(se.sign)) pool.push_back(se.edge);
    }
    const std::size_t count = count_for(pool.size());
    std::vector<Edge> picked;
    std::sample(pool.begin(), pool.end(), std::back_inserter(picked), count, rng);
    return DeletionRequest::ForEdges(std::move(picked));
  }

  std::vector<NodeId> pool;
  for (NodeId n : g.nodes()) {
    const auto nbrs = g.neighbors(n);
    if (std::any_of(nbrs.begin(), nbrs.end(),
                    [&](const Neighbor& nb) { return sign_ok(nb.sign); })) {
      pool.push_back(n);
    }
  }
  const std::size_t count = count_for(pool.size());
  std::vector<NodeId> picked;
  std::sample(pool.begin(), pool.end(), std::back_inserter(picked), count, rng);
  if (scenario == Scenario::kNode) return DeletionRequest::ForNodes(std::move(picked));

  std::vector<int> all_dims(static_cast<std::size_t>(g.features().cols()));
  for (std::size_t d = 0; d < all_dims.size(); ++d) all_dims[d] = static_cast<int>(d);
  std::vector<FeatureDeletion> features;
  for (NodeId n : picked) features.push_back({n, all_dims});
  return DeletionRequest::ForFeatures(std::move(features));
}

SignedGraph SyntheticSignedGraph(std::uint64_t seed, std::size_t num_nodes) {
  if (num_nodes < 8) Fail(ErrorCode::kInvalidArgument, "need at least 8 nodes");
  constexpr int kCommunity = 4;
  constexpr double kPositiveFaction = 0.75;
  constexpr double kInnerFlip = 0.1;
  constexpr double kCrossFlip = 0.15;
  constexpr double kSignal = 1.5;

  std::mt19937_64 rng(seed ^ 0x5ca1ab1eULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = num_nodes;

  std::vector<int> faction(n);
  for (auto& f : faction) f = unit(rng) < kPositiveFaction ? 1 : -1;
  std::vector<std::size_t> community(n);
  for (std::size_t i = 0; i < n; ++i) community[i] = i / kCommunity;

  std::vector<std::set<NodeId>> adj(n);
  std::vector<SignedEdge> edges;
  auto add = [&](NodeId a, NodeId b, double flip) {
    int sign = faction[a] * faction[b];
    if (unit(rng) < flip) sign = -sign;
    edges.push_back({Edge::Make(a, b), sign});
    adj[a].insert(b);
    adj[b].insert(a);
  };

  const std::size_t full = n / kCommunity * kCommunity;
  for (std::size_t base = 0; base < full; base += kCommunity) {
    for (std::size_t i = base; i < base + kCommunity; ++i) {
      for (std::size_t j = i + 1; j < base + kCommunity; ++j) {
        add(static_cast<NodeId>(i), static_cast<NodeId>(j), kInnerFlip);
      }
    }
  }

  // Cross edges never close a triangle, so every triangle sits inside one
  // community. The squared draw skews degrees toward low ids.
  const std::size_t target = n;
  std::size_t added = 0;
  for (std::size_t attempt = 0; attempt < 50 * n && added < target; ++attempt) {
    const auto a = static_cast<NodeId>(unit(rng) * static_cast<double>(n));
    const double r = unit(rng);
    const auto b = static_cast<NodeId>(r * r * static_cast<double>(n));
    if (a == b || community[a] == community[b] || adj[a].count(b)) continue;
    bool closes = false;
    for (NodeId x : adj[a]) {
      if (adj[b].count(x)) {
        closes = true;
        break;
      }
    }
    if (closes) continue;
    add(a, b, kCrossFlip);
    ++added;
  }

  Eigen::MatrixXd x = GaussianFeatures(n, kDefaultFeatureDim, seed ^ 0xfea7ULL);
  Eigen::VectorXd direction = GaussianFeatures(1, kDefaultFeatureDim, seed ^ 0xd1ULL)
                                  .row(0)
                                  .transpose()
                                  .normalized();
  for (std::size_t i = 0; i < n; ++i) {
    x.row(static_cast<Eigen::Index>(i)) +=
        kSignal * faction[i] * direction.transpose();
  }
  return SignedGraph::FromEdges(n, edges, std::move(x));
}

namespace {

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string FormatDouble(double v, const char* fmt = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

nlohmann::json VectorJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

RunOutput Run(const RunConfig& config) {
  config.Validate();

  SignedGraph graph;
  nlohmann::json load_info = nlohmann::json::object();
  if (config.dataset == "synthetic") {
    graph = SyntheticSignedGraph(config.graph_seed);
  } else {
    LoadedGraph loaded = LoadEdgeList(config.dataset, config.format,
                                      config.graph_seed, kDefaultFeatureDim);
    load_info = {{"lines", loaded.stats.lines},
                 {"skipped_zero_rating", loaded.stats.skipped_zero_rating},
                 {"skipped_self_loops", loaded.stats.skipped_self_loops},
                 {"sign_conflicts", loaded.stats.sign_conflicts}};
    graph = std::move(loaded.graph);
  }

  const EdgeSplit split = SplitEdges(graph, config.train_fraction, config.seed);
  const SignedGraph train_graph =
      SignedGraph::FromEdges(graph.num_nodes(), split.train, graph.features());
  if (train_graph.num_edges() == 0) {
    Fail(ErrorCode::kInvalidArgument, "training split is empty");
  }

  const EncoderConfig enc{config.embedding_dim, config.clip_c, config.seed};
  const Embeddings emb = Encode(train_graph, enc);
  const TrainConfig train_cfg{config.lambda_reg, config.max_epochs,
                              config.grad_tol};
  TrainResult original =
      Train(MakeBatch(train_graph.edges(), emb), emb.dim(), train_cfg);
  original.state.clip_c = config.clip_c;

  const DeletionRequest request = SampleDeletion(
      train_graph, config.scenario, config.ratio, config.seed, config.sign_filter);
  const DeletionOutcome outcome = ApplyDeletion(train_graph, request);

  // Feature deletion changes the encoder input; other scenarios only remove
  // training pairs and keep the frozen embeddings.
  const Embeddings retrain_emb = config.scenario == Scenario::kFeature
                                     ? Encode(outcome.remaining, enc)
                                     : emb;
  const auto retrain_start = std::chrono::steady_clock::now();
  TrainResult retrained = Train(MakeBatch(outcome.remaining.edges(), retrain_emb),
                                retrain_emb.dim(), train_cfg);
  const double retrain_time = Seconds(retrain_start);

  RunOutput out;
  Eigen::VectorXd theta_tilde;
  double unlearn_time = 0.0;
  if (config.method == Method::kRetrain) {
    theta_tilde = retrained.state.theta;
    unlearn_time = retrain_time;
    out.unlearn.theta_tilde = theta_tilde;
    out.unlearn.deletion_size = outcome.deletion_set.size();
  } else {
    UnlearnConfig ucfg;
    ucfg.epsilon = config.epsilon;
    ucfg.delta = config.delta;
    ucfg.alpha = config.alpha;
    ucfg.damping = config.damping;
    ucfg.update_scale = config.update_scale;
    ucfg.add_noise = !config.no_noise;
    ucfg.region = config.region;
    ucfg.khop_k = config.khop_k;
    ucfg.tin_max_iter = config.tin_max_iter;
    ucfg.weights = config.weights;
    ucfg.cg_tol = config.cg_tol;
    ucfg.cg_max_iter = config.cg_max_iter;
    ucfg.seed = config.seed;
    switch (config.method) {
      case Method::kWoSiq:
        ucfg.weights = WeightMode::kUniform;
        break;
      case Method::kWoTin:
        ucfg.region = RegionMode::kKhop;
        break;
      case Method::kWoNoise:
        ucfg.add_noise = false;
        break;
      default:
        break;
    }
    out.unlearn = Unlearn(train_graph, request, emb, original.state, ucfg);
    theta_tilde = out.unlearn.theta_tilde;
    unlearn_time = out.unlearn.seconds;
  }

  const std::vector<Edge>& members = outcome.deletion_set;
  const std::vector<Edge> nonmembers =
      SampleNonmembers(graph, members.size(), config.seed + 1);

  EvalInputs in;
  in.theta_original = &original.state.theta;
  in.theta_unlearned = &theta_tilde;
  in.theta_retrained = &retrained.state.theta;
  in.embeddings = &retrain_emb;
  in.test_edges = split.test;
  in.members = members;
  in.nonmembers = nonmembers;
  out.report = Evaluate(in);
  out.report.unlearn_time_s = config.record_timing ? unlearn_time : 0.0;
  out.report.retrain_time_s = config.record_timing ? retrain_time : 0.0;
  out.report.config = config.ToJson();

  const UnlearnResult& u = out.unlearn;
  out.json = {
      {"config", out.report.config},
      {"dataset",
       {{"name", config.DatasetName()},
        {"nodes", graph.num_present_nodes()},
        {"edges", graph.num_edges()},
        {"positive", graph.num_positive()},
        {"negative", graph.num_negative()},
        {"train_edges", split.train.size()},
        {"test_edges", split.test.size()},
        {"load", load_info}}},
      {"training",
       {{"epochs", original.epochs},
        {"grad_norm", original.grad_norm},
        {"retrain_epochs", retrained.epochs},
        {"retrain_grad_norm", retrained.grad_norm}}},
      {"deletion",
       {{"scenario", ScenarioName(config.scenario)},
        {"requested", config.scenario == Scenario::kEdge ? request.edges.size()
                      : config.scenario == Scenario::kNode
                          ? request.nodes.size()
                          : request.features.size()},
        {"edges", members.size()}}},
      {"unlearn",
       {{"region_size", u.region_size},
        {"region_iterations", u.region_iterations},
        {"region_truncated", u.region_truncated},
        {"min_weight", u.min_weight},
        {"max_weight", u.max_weight},
        {"mean_deleted_weight", u.mean_deleted_weight},
        {"cg_residual", u.cg_residual},
        {"cg_iterations", u.cg_iterations},
        {"cg_hit_max_iter", u.cg_hit_max_iter},
        {"sensitivity", u.sensitivity},
        {"sensitivity_bound", u.sensitivity_bound},
        {"sigma", u.sigma},
        {"theta_tilde", VectorJson(theta_tilde)}}},
      {"metrics",
       {{"macro_f1", out.report.macro_f1},
        {"mi_auc", out.report.mi_auc},
        {"unlearn_time_s", out.report.unlearn_time_s},
        {"retrain_time_s", out.report.retrain_time_s},
        {"dist_to_original", out.report.dist_to_original},
        {"dist_to_retrained", out.report.dist_to_retrained},
        {"original_to_retrained", out.report.original_to_retrained}}}};

  out.csv_row = config.DatasetName() + "," + MethodName(config.method) + "," +
                ScenarioName(config.scenario) + "," +
                FormatDouble(config.ratio, "%g") + "," +
                std::to_string(config.seed) + "," +
                FormatDouble(out.report.macro_f1) + "," +
                FormatDouble(out.report.mi_auc) + "," +
                FormatDouble(out.report.unlearn_time_s) + "," +
                FormatDouble(config.epsilon, "%g") + "," +
                FormatDouble(config.delta, "%g") + "," +
                FormatDouble(config.alpha, "%g");
  return out;
}

}  // namespace csgu
