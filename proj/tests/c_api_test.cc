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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(csgu_version(), "0.1.0");
  EXPECT_STREQ(csgu_status_name(CSGU_OK), "ok");
  EXPECT_STREQ(csgu_status_name(CSGU_ERR_NOT_FOUND), "not_found");
  EXPECT_EQ(std::string(csgu_csv_header()),
            "dataset,method,scenario,ratio,seed,macro_f1,mi_auc,time_s,epsilon,"
            "delta,alpha");
}

TEST(CApiTest, NoiseScale) {
  double sigma = 0.0;
  ASSERT_EQ(csgu_noise_scale(1.0, 1e-5, 1.0, &sigma), CSGU_OK);
  EXPECT_NEAR(sigma, 4.84480526260538942, 1e-12);
  EXPECT_EQ(csgu_noise_scale(0.0, 1e-5, 1.0, &sigma), CSGU_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(csgu_last_error()), "");
  EXPECT_EQ(csgu_noise_scale(1.0, 1e-5, 1.0, nullptr), CSGU_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, GraphLifecycle) {
  csgu_graph* g = nullptr;
  ASSERT_EQ(csgu_graph_synthetic(0, 200, &g), CSGU_OK);
  EXPECT_EQ(csgu_graph_num_nodes(g), 200u);
  EXPECT_GT(csgu_graph_num_edges(g), 0u);
  size_t triangles = 0;
  ASSERT_EQ(csgu_graph_count_triangles(g, &triangles), CSGU_OK);
  EXPECT_GT(triangles, 0u);

  const auto path = std::filesystem::temp_directory_path() / "csgu_c_api_graph.txt";
  ASSERT_EQ(csgu_graph_save(g, path.c_str()), CSGU_OK);
  csgu_graph* back = nullptr;
  ASSERT_EQ(csgu_graph_load(path.c_str(), "signed_triple", 0, &back), CSGU_OK);
  EXPECT_EQ(csgu_graph_num_edges(back), csgu_graph_num_edges(g));
  EXPECT_EQ(csgu_graph_num_negative(back), csgu_graph_num_negative(g));
  csgu_graph_free(back);
  std::filesystem::remove(path);

  int sign = 7;
  ASSERT_EQ(csgu_graph_sign(g, 0, 1, &sign), CSGU_OK);
  EXPECT_NE(sign, 0);
  EXPECT_EQ(csgu_graph_sign(g, 0, 100000, &sign), CSGU_ERR_NOT_FOUND);
  csgu_graph_free(g);
  csgu_graph_free(nullptr);
}

TEST(CApiTest, LoadErrors) {
  csgu_graph* g = nullptr;
  EXPECT_EQ(csgu_graph_load("/nonexistent/graph.txt", "signed_triple", 0, &g),
            CSGU_ERR_IO);
  EXPECT_EQ(csgu_graph_load("/tmp/x", "xml", 0, &g), CSGU_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(g, nullptr);
}

TEST(CApiTest, Region) {
  csgu_graph* g = nullptr;
  ASSERT_EQ(csgu_graph_synthetic(0, 200, &g), CSGU_OK);
  // Nodes 0 and 1 share a planted community.
  const uint32_t pairs[] = {0, 1};
  size_t tin_size = 0, tin_iter = 0, khop_size = 0, khop_iter = 0;
  ASSERT_EQ(csgu_region(g, pairs, 1, "tin", 0, &tin_size, &tin_iter), CSGU_OK);
  ASSERT_EQ(csgu_region(g, pairs, 1, "khop", 2, &khop_size, &khop_iter), CSGU_OK);
  EXPECT_GE(tin_size, 1u);
  EXPECT_LE(tin_size, khop_size);
  EXPECT_EQ(khop_iter, 2u);
  EXPECT_EQ(csgu_region(g, pairs, 1, "ring", 0, &tin_size, &tin_iter),
            CSGU_ERR_INVALID_ARGUMENT);
  csgu_graph_free(g);
}

TEST(CApiTest, RunProducesReportAndRow) {
  char* report = nullptr;
  char* row = nullptr;
  ASSERT_EQ(csgu_run(R"({"seed": 3, "record_timing": false})", &report, &row), CSGU_OK)
      << csgu_last_error();
  const auto j = nlohmann::json::parse(report);
  EXPECT_EQ(j.at("config").at("seed"), 3);
  EXPECT_EQ(std::string(row).rfind("synthetic,csgu,edge,", 0), 0u);
  csgu_string_free(report);
  csgu_string_free(row);

  EXPECT_EQ(csgu_run(R"({"method": "nope"})", nullptr, nullptr), CSGU_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(csgu_run("{not json", nullptr, nullptr), CSGU_ERR_PARSE);
  EXPECT_EQ(csgu_run(nullptr, nullptr, nullptr), CSGU_ERR_INVALID_ARGUMENT);
}

}  // namespace
