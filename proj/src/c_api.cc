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
#include "csgu/csgu.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "csgu/error.hpp"
#include "csgu/pipeline.hpp"
#include "csgu/signed_graph.hpp"
#include "csgu/tin.hpp"
#include "csgu/unlearn.hpp"

struct csgu_graph {
  csgu::SignedGraph graph;
};

namespace {

thread_local std::string g_last_error;

csgu_status SetError(csgu_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename Body>
csgu_status Guard(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return CSGU_OK;
  } catch (const csgu::Error& e) {
    return SetError(static_cast<csgu_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return SetError(CSGU_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return SetError(CSGU_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(CSGU_ERR_INTERNAL, e.what());
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void RequireNonNull(const void* p, const char* what) {
  if (!p) csgu::Fail(csgu::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* csgu_version(void) { return "0.1.0"; }

const char* csgu_last_error(void) { return g_last_error.c_str(); }

const char* csgu_status_name(csgu_status status) {
  switch (status) {
    case CSGU_OK:
      return "ok";
    case CSGU_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case CSGU_ERR_IO:
      return "io";
    case CSGU_ERR_PARSE:
      return "parse";
    case CSGU_ERR_NOT_FOUND:
      return "not_found";
    case CSGU_ERR_NUMERIC:
      return "numeric";
    case CSGU_ERR_CONVERGENCE:
      return "convergence";
    case CSGU_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void csgu_string_free(char* str) { std::free(str); }

csgu_status csgu_graph_load(const char* path, const char* format,
                            uint64_t feature_seed, csgu_graph** out) {
  return Guard([&] {
    RequireNonNull(path, "path");
    RequireNonNull(format, "format");
    RequireNonNull(out, "out");
    auto fmt = csgu::ParseEdgeFormat(format);
    if (!fmt) {
      csgu::Fail(csgu::ErrorCode::kInvalidArgument,
                 std::string("unknown format ") + format);
    }
    auto loaded = csgu::LoadEdgeList(path, *fmt, feature_seed);
    *out = new csgu_graph{std::move(loaded.graph)};
  });
}

csgu_status csgu_graph_synthetic(uint64_t seed, size_t num_nodes,
                                 csgu_graph** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = new csgu_graph{csgu::SyntheticSignedGraph(seed, num_nodes)};
  });
}

void csgu_graph_free(csgu_graph* graph) { delete graph; }

size_t csgu_graph_num_nodes(const csgu_graph* graph) {
  return graph ? graph->graph.num_present_nodes() : 0;
}

size_t csgu_graph_num_edges(const csgu_graph* graph) {
  return graph ? graph->graph.num_edges() : 0;
}

size_t csgu_graph_num_negative(const csgu_graph* graph) {
  return graph ? graph->graph.num_negative() : 0;
}

csgu_status csgu_graph_sign(const csgu_graph* graph, uint32_t u, uint32_t v,
                            int* sign) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(sign, "sign");
    graph->graph.CheckNode(u);
    graph->graph.CheckNode(v);
    *sign = graph->graph.sign_of(u, v);
  });
}

csgu_status csgu_graph_count_triangles(const csgu_graph* graph, size_t* count) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(count, "count");
    *count = csgu::EnumerateTriangles(graph->graph).size();
  });
}

csgu_status csgu_graph_save(const csgu_graph* graph, const char* path) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(path, "path");
    std::ofstream out(path);
    if (!out) csgu::Fail(csgu::ErrorCode::kIo, std::string("cannot write ") + path);
    csgu::WriteSignedTriples(out, graph->graph);
    if (!out) csgu::Fail(csgu::ErrorCode::kIo, std::string("write failed: ") + path);
  });
}

csgu_status csgu_region(const csgu_graph* graph, const uint32_t* pairs,
                        size_t num_edges, const char* mode, size_t khop_k,
                        size_t* region_size, size_t* iterations) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(mode, "mode");
    if (num_edges > 0) RequireNonNull(pairs, "pairs");
    auto parsed = csgu::ParseRegionMode(mode);
    if (!parsed) {
      csgu::Fail(csgu::ErrorCode::kInvalidArgument,
                 std::string("unknown region mode ") + mode);
    }
    std::vector<csgu::Edge> deletion;
    for (size_t i = 0; i < num_edges; ++i) {
      deletion.push_back(csgu::Edge::Make(pairs[2 * i], pairs[2 * i + 1]));
    }
    const csgu::CertRegion r =
        *parsed == csgu::RegionMode::kTin
            ? csgu::BuildTin(graph->graph, deletion)
            : csgu::KhopRegion(graph->graph, deletion, khop_k);
    if (region_size) *region_size = r.region.size();
    if (iterations) *iterations = r.iterations;
  });
}

csgu_status csgu_noise_scale(double epsilon, double delta, double sensitivity,
                             double* sigma) {
  return Guard([&] {
    RequireNonNull(sigma, "sigma");
    *sigma = csgu::NoiseScale(epsilon, delta, sensitivity);
  });
}

csgu_status csgu_run(const char* config_json, char** report_json,
                     char** csv_row) {
  if (report_json) *report_json = nullptr;
  if (csv_row) *csv_row = nullptr;
  return Guard([&] {
    RequireNonNull(config_json, "config_json");
    csgu::RunConfig config;
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      csgu::Fail(csgu::ErrorCode::kParse, std::string("config: ") + e.what());
    }
    config.MergeJson(parsed);
    const csgu::RunOutput result = csgu::Run(config);
    char* report = report_json ? CopyString(result.json.dump(2)) : nullptr;
    char* row = nullptr;
    try {
      row = csv_row ? CopyString(result.csv_row) : nullptr;
    } catch (...) {
      std::free(report);
      throw;
    }
    if (report_json) *report_json = report;
    if (csv_row) *csv_row = row;
  });
}

const char* csgu_csv_header(void) { return csgu::kCsvHeader; }

}  // extern "C"
