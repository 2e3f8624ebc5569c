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
#ifndef CSGU_TIN_HPP_
#define CSGU_TIN_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csgu/signed_graph.hpp"

namespace csgu {

enum class RegionMode { kTin, kKhop };

std::optional<RegionMode> ParseRegionMode(const std::string& name);
const char* RegionModeName(RegionMode m);

// Certification region grown from a deletion set.
struct CertRegion {
  struct Addition {
    Edge edge;
    // Region edge the addition formed a triadic closure with. Empty for k-hop
    // regions, which grow by distance rather than closure.
    std::optional<Edge> parent;
  };

  std::vector<Edge> region;        // sorted; contains deletion_set
  std::vector<Edge> deletion_set;  // sorted
  // TIN: first pass k at which the region stopped changing, so a pass that
  // adds nothing still counts. k-hop: the hop radius.
  std::size_t iterations = 0;
  // True when a max-iteration cap stopped TIN before its fixed point.
  bool truncated = false;
  // trace[k - 1] lists the edges first added by pass (or hop) k.
  std::vector<std::vector<Addition>> trace;

  bool Contains(const Edge& e) const;
  // Nodes incident to region edges, sorted.
  std::vector<NodeId> Nodes() const;
};

// True iff e1 and e2 share exactly one endpoint and their other endpoints
// are adjacent in g. Both edges must exist in g.
bool TriadicClosure(const SignedGraph& g, const Edge& e1, const Edge& e2);

// Expands the deletion set by triadic closure until no edge joins, or until
// `max_iter` passes when given.
CertRegion BuildTin(const SignedGraph& g, std::span<const Edge> deletion_set,
                    std::optional<std::size_t> max_iter = std::nullopt);

// Edges of the subgraph induced by nodes within k hops of any deletion-edge
// endpoint.
CertRegion KhopRegion(const SignedGraph& g, std::span<const Edge> deletion_set,
                      std::size_t k);

}  // namespace csgu

#endif  // CSGU_TIN_HPP_
