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

// Command-line front end. Talks to the library only through csgu.h.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csgu/csgu.h"

namespace {

using nlohmann::json;

int ReportError(csgu_status status, const std::string& message) {
  json err = {{"error",
               {{"status", csgu_status_name(status)},
                {"code", static_cast<int>(status)},
                {"message", message}}}};
  std::cerr << err.dump() << std::endl;
  return static_cast<int>(status);
}

int ReportLibraryError(csgu_status status) {
  return ReportError(status, csgu_last_error());
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { csgu_string_free(ptr); }
};

// Parses "a..b" (inclusive) or a single integer.
bool ParseSeedRange(const std::string& text, std::uint64_t* lo, std::uint64_t* hi) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      *lo = *hi = std::stoull(text);
    } else {
      *lo = std::stoull(text.substr(0, dots));
      *hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return *lo <= *hi;
}

void AppendCsv(const std::filesystem::path& path, const std::string& row) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (fresh) out << csgu_csv_header() << '\n';
  // One write per row keeps concurrent appends line-atomic in practice.
  const std::string line = row + "\n";
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
}

struct RunFlags {
  json overrides = json::object();
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string config_path;
  std::string out_dir = ".";
  std::string report_name = "report.json";
  std::string csv_name = "results.csv";
};

template <typename T>
void AddKnob(CLI::App* app, RunFlags* flags, const std::string& flag,
             const std::string& key, const std::string& help) {
  app->add_option_function<T>(
      flag, [flags, key](const T& v) { flags->overrides[key] = v; }, help);
}

int RunCommand(RunFlags& flags) {
  json config = flags.overrides;
  if (!flags.seed) {
    if (const char* env = std::getenv("CSGU_SEED")) {
      try {
        flags.seed = std::stoull(env);
      } catch (const std::exception&) {
        return ReportError(CSGU_ERR_INVALID_ARGUMENT, "CSGU_SEED is not an integer");
      }
    }
  }
  if (flags.seed) config["seed"] = *flags.seed;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) return ReportError(CSGU_ERR_IO, "cannot open " + flags.config_path);
    try {
      json file = json::parse(in);
      if (!file.is_object()) {
        return ReportError(CSGU_ERR_PARSE, "config file must hold an object");
      }
      config.update(file);
    } catch (const json::exception& e) {
      return ReportError(CSGU_ERR_PARSE, e.what());
    }
  }

  std::vector<std::uint64_t> seeds;
  if (!flags.seeds.empty()) {
    std::uint64_t lo = 0, hi = 0;
    if (!ParseSeedRange(flags.seeds, &lo, &hi)) {
      return ReportError(CSGU_ERR_INVALID_ARGUMENT, "--seeds expects a..b");
    }
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  } else {
    seeds.push_back(config.value("seed", std::uint64_t{0}));
  }

  const std::filesystem::path out_dir(flags.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) return ReportError(CSGU_ERR_IO, "cannot create " + flags.out_dir);

  json reports = json::array();
  for (std::uint64_t seed : seeds) {
    config["seed"] = seed;
    OwnedString report;
    OwnedString row;
    const csgu_status status =
        csgu_run(config.dump().c_str(), &report.ptr, &row.ptr);
    if (status != CSGU_OK) return ReportLibraryError(status);
    reports.push_back(json::parse(report.ptr));
    AppendCsv(out_dir / flags.csv_name, row.ptr);
  }
  std::ofstream out(out_dir / flags.report_name);
  out << (reports.size() == 1 ? reports[0] : reports).dump(2) << '\n';
  if (!out) return ReportError(CSGU_ERR_IO, "cannot write report");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified unlearning for signed graphs"};
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run = app.add_subcommand("run", "Run one unlearning experiment");
  AddKnob<std::string>(run, &flags, "--dataset", "dataset",
                       "Edge-list path, or 'synthetic' (default)");
  AddKnob<std::string>(run, &flags, "--format", "format",
                       "signed_triple | rated_csv");
  AddKnob<std::uint64_t>(run, &flags, "--graph-seed", "graph_seed",
                         "Seed for the generator / synthesized features");
  AddKnob<std::string>(run, &flags, "--scenario", "scenario", "edge | node | feature");
  AddKnob<double>(run, &flags, "--ratio", "ratio", "Deletion ratio, e.g. 0.025");
  AddKnob<std::string>(run, &flags, "--method", "method",
                       "csgu | wo_siq | wo_tin | wo_noise | retrain");
  AddKnob<std::string>(run, &flags, "--sign-filter", "sign_filter", "pos | neg | mixed");
  AddKnob<double>(run, &flags, "--alpha", "alpha", "Balance weight in [0, 1]");
  AddKnob<double>(run, &flags, "--epsilon", "epsilon", "Privacy budget");
  AddKnob<double>(run, &flags, "--delta", "delta", "Failure probability");
  AddKnob<double>(run, &flags, "--damping", "damping", "Hessian damping");
  AddKnob<double>(run, &flags, "--lambda", "lambda_reg", "L2 coefficient");
  AddKnob<double>(run, &flags, "--update-scale", "update_scale",
                  "Multiplier on the parameter update");
  AddKnob<double>(run, &flags, "--cg-tol", "cg_tol", "CG tolerance");
  AddKnob<int>(run, &flags, "--cg-max-iter", "cg_max_iter", "CG iteration cap");
  AddKnob<std::string>(run, &flags, "--region", "region", "tin | khop");
  AddKnob<std::size_t>(run, &flags, "--khop-k", "khop_k", "Hops for the khop region");
  AddKnob<std::size_t>(run, &flags, "--tin-max-iter", "tin_max_iter",
                       "Cap on triadic expansion passes");
  AddKnob<std::string>(run, &flags, "--weights", "weights", "siq | uniform | degree");
  AddKnob<int>(run, &flags, "--embedding-dim", "embedding_dim", "Embedding dimension");
  AddKnob<double>(run, &flags, "--clip-c", "clip_c", "Edge representation norm cap");
  AddKnob<int>(run, &flags, "--max-epochs", "max_epochs", "Training epoch cap");
  AddKnob<double>(run, &flags, "--train-fraction", "train_fraction",
                  "Fraction of each sign used for training");
  run->add_flag_function(
      "--no-noise", [&flags](std::int64_t) { flags.overrides["no_noise"] = true; },
      "Skip the Gaussian noise");
  run->add_flag_function(
      "--no-timing",
      [&flags](std::int64_t) { flags.overrides["record_timing"] = false; },
      "Report wall-clock fields as 0 for byte-reproducible output");
  run->add_option("--seed", flags.seed, "Run seed (falls back to $CSGU_SEED)");
  run->add_option("--seeds", flags.seeds, "Sweep seeds a..b inclusive");
  run->add_option("--config", flags.config_path,
                  "JSON file whose keys override the flags");
  run->add_option("--out-dir", flags.out_dir, "Output directory");
  run->add_option("--report", flags.report_name, "Report file name");
  run->add_option("--csv", flags.csv_name, "CSV file name (appended)");

  std::uint64_t synth_seed = 0;
  std::size_t synth_nodes = 200;
  std::string synth_out;
  CLI::App* synth =
      app.add_subcommand("synth", "Write the bundled synthetic graph as `u v s` lines");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--nodes", synth_nodes, "Node count");
  synth->add_option("--out", synth_out, "Output path")->required();

  std::string stats_path;
  std::string stats_format = "signed_triple";
  CLI::App* stats = app.add_subcommand("stats", "Print graph statistics as JSON");
  stats->add_option("path", stats_path, "Edge-list path")->required();
  stats->add_option("--format", stats_format, "signed_triple | rated_csv");

  CLI11_PARSE(app, argc, argv);

  if (*run) return RunCommand(flags);

  if (*synth) {
    csgu_graph* g = nullptr;
    csgu_status s = csgu_graph_synthetic(synth_seed, synth_nodes, &g);
    if (s != CSGU_OK) return ReportLibraryError(s);
    s = csgu_graph_save(g, synth_out.c_str());
    csgu_graph_free(g);
    return s == CSGU_OK ? 0 : ReportLibraryError(s);
  }

  if (*stats) {
    csgu_graph* g = nullptr;
    csgu_status s = csgu_graph_load(stats_path.c_str(), stats_format.c_str(), 0, &g);
    if (s != CSGU_OK) return ReportLibraryError(s);
    std::size_t triangles = 0;
    s = csgu_graph_count_triangles(g, &triangles);
    if (s == CSGU_OK) {
      std::cout << json{{"nodes", csgu_graph_num_nodes(g)},
                        {"edges", csgu_graph_num_edges(g)},
                        {"negative", csgu_graph_num_negative(g)},
                        {"triangles", triangles}}
                       .dump()
                << std::endl;
    }
    csgu_graph_free(g);
    return s == CSGU_OK ? 0 : ReportLibraryError(s);
  }
  return 0;
}
