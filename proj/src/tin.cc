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
#include "csgu/tin.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "csgu/error.hpp"

namespace csgu {

std::optional<RegionMode> ParseRegionMode(const std::string& name) {
  if (name == "tin") return RegionMode::kTin;
  if (name == "khop") return RegionMode::kKhop;
  return std::nullopt;
}

const char* RegionModeName(RegionMode m) {
  return m == RegionMode::kTin ? "tin" : "khop";
}

bool CertRegion::Contains(const Edge& e) const {
  return std::binary_search(region.begin(), region.end(), e);
}

std::vector<NodeId> CertRegion::Nodes() const {
  std::vector<NodeId> out;
  out.reserve(region.size() * 2);
  for (const Edge& e : region) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool TriadicClosure(const SignedGraph& g, const Edge& e1, const Edge& e2) {
  g.CheckEdge(e1);
  g.CheckEdge(e2);
  NodeId shared = 0;
  int shared_count = 0;
  for (NodeId a : {e1.u, e1.v}) {
    if (e2.Touches(a)) {
      shared = a;
      ++shared_count;
    }
  }
  if (shared_count != 1) return false;
  return g.sign_of(e1.Other(shared), e2.Other(shared)) != 0;
}

namespace {

std::vector<std::size_t> DeletionIndices(const SignedGraph& g,
                                         std::span<const Edge> deletion_set) {
  std::vector<std::size_t> idx;
  idx.reserve(deletion_set.size());
  for (const Edge& raw : deletion_set) {
    const Edge e = Edge::Make(raw.u, raw.v);
    auto i = g.edge_index(e);
    if (!i) {
      std::ostringstream msg;
      msg << "deletion edge " << e << " not in graph";
      Fail(ErrorCode::kNotFound, msg.str());
    }
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

CertRegion Collect(const SignedGraph& g, const std::vector<bool>& in_region,
                   const std::vector<std::size_t>& deletion) {
  CertRegion r;
  for (std::size_t i = 0; i < in_region.size(); ++i) {
    if (in_region[i]) r.region.push_back(g.edges()[i].edge);
  }
  for (std::size_t i : deletion) r.deletion_set.push_back(g.edges()[i].edge);
  return r;
}

}  // namespace

CertRegion BuildTin(const SignedGraph& g, std::span<const Edge> deletion_set,
                    std::optional<std::size_t> max_iter) {
  if (max_iter && *max_iter < 1) {
    Fail(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  }
  const auto deletion = DeletionIndices(g, deletion_set);
  std::vector<bool> in_region(g.num_edges(), false);
  for (std::size_t i : deletion) in_region[i] = true;

  // Only edges added in the previous pass can close new triangles: an older
  // edge's closures were all taken in the pass after it joined.
  std::vector<std::size_t> frontier = deletion;
  std::vector<std::vector<CertRegion::Addition>> trace;
  std::size_t k = 0;
  bool truncated = false;
  while (true) {
    ++k;
    std::vector<std::size_t> added;
    std::vector<CertRegion::Addition> additions;
    std::vector<bool> claimed(g.num_edges(), false);
    for (std::size_t pi : frontier) {
      const Edge parent = g.edges()[pi].edge;
      for (NodeId shared : {parent.u, parent.v}) {
        const NodeId other = parent.Other(shared);
        for (const Neighbor& nb : g.neighbors(shared)) {
          if (nb.node == other) continue;
          const Edge cand = Edge::Make(shared, nb.node);
          const std::size_t ci = *g.edge_index(cand);
          if (in_region[ci] || claimed[ci]) continue;
          if (g.sign_of(other, nb.node) == 0) continue;
          claimed[ci] = true;
          added.push_back(ci);
          additions.push_back({cand, parent});
        }
      }
    }
    if (added.empty()) break;
    for (std::size_t ci : added) in_region[ci] = true;
    std::sort(additions.begin(), additions.end(),
              [](const auto& a, const auto& b) { return a.edge < b.edge; });
    trace.push_back(std::move(additions));
    std::sort(added.begin(), added.end());
    frontier = std::move(added);
    if (max_iter && k >= *max_iter) {
      truncated = true;
      break;
    }
  }

  CertRegion r = Collect(g, in_region, deletion);
  r.iterations = k;
  r.truncated = truncated;
  r.trace = std::move(trace);
  return r;
}

CertRegion KhopRegion(const SignedGraph& g, std::span<const Edge> deletion_set,
                      std::size_t k) {
  if (k < 1) Fail(ErrorCode::kInvalidArgument, "k must be >= 1");
  const auto deletion = DeletionIndices(g, deletion_set);

  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.num_nodes(), kUnreached);
  std::deque<NodeId> queue;
  for (std::size_t i : deletion) {
    for (NodeId n : {g.edges()[i].edge.u, g.edges()[i].edge.v}) {
      if (dist[n] == kUnreached) {
        dist[n] = 0;
        queue.push_back(n);
      }
    }
  }
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    if (dist[n] == k) continue;
    for (const Neighbor& nb : g.neighbors(n)) {
      if (dist[nb.node] == kUnreached) {
        dist[nb.node] = dist[n] + 1;
        queue.push_back(nb.node);
      }
    }
  }

  std::vector<bool> in_region(g.num_edges(), false);
  std::vector<std::vector<CertRegion::Addition>> trace(k);
  std::vector<bool> is_deleted(g.num_edges(), false);
  for (std::size_t i : deletion) is_deleted[i] = true;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i].edge;
    if (dist[e.u] == kUnreached || dist[e.v] == kUnreached) continue;
    in_region[i] = true;
    if (is_deleted[i]) continue;
    // Hop level of an edge: its farther endpoint's distance, at least 1.
    const std::size_t level = std::max<std::size_t>(1, std::max(dist[e.u], dist[e.v]));
    trace[level - 1].push_back({e, std::nullopt});
  }

  CertRegion r = Collect(g, in_region, deletion);
  r.iterations = k;
  r.trace = std::move(trace);
  return r;
}

}  // namespace csgu
