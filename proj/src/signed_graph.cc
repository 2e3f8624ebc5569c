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
#include "csgu/signed_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "csgu/error.hpp"

namespace csgu {

std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << "(" << e.u << ", " << e.v << ")";
}

SignedGraph SignedGraph::FromEdges(std::size_t num_nodes,
                                   std::span<const SignedEdge> edges,
                                   Eigen::MatrixXd features,
                                   std::vector<bool> present) {
  if (static_cast<std::size_t>(features.rows()) != num_nodes) {
    Fail(ErrorCode::kInvalidArgument,
         "feature matrix has " + std::to_string(features.rows()) +
             " rows, expected " + std::to_string(num_nodes));
  }
  if (present.empty()) present.assign(num_nodes, true);
  if (present.size() != num_nodes) {
    Fail(ErrorCode::kInvalidArgument, "presence mask size mismatch");
  }

  std::map<Edge, int> merged;
  for (const SignedEdge& se : edges) {
    const Edge e = Edge::Make(se.edge.u, se.edge.v);
    if (e.u == e.v) {
      Fail(ErrorCode::kInvalidArgument,
           "self-loop on node " + std::to_string(e.u));
    }
    if (e.v >= num_nodes) {
      Fail(ErrorCode::kNotFound, "edge endpoint " + std::to_string(e.v) +
                                     " outside id space");
    }
    if (!present[e.u] || !present[e.v]) {
      Fail(ErrorCode::kInvalidArgument, "edge touches an absent node");
    }
    if (se.sign != 1 && se.sign != -1) {
      Fail(ErrorCode::kInvalidArgument, "edge sign must be +1 or -1");
    }
    auto [it, inserted] = merged.emplace(e, se.sign);
    if (!inserted && it->second != se.sign) it->second = -1;
  }

  SignedGraph g;
  g.present_ = std::move(present);
  for (NodeId n = 0; n < num_nodes; ++n) {
    if (g.present_[n]) g.present_nodes_.push_back(n);
  }
  g.features_ = std::move(features);
  g.adjacency_.assign(num_nodes, {});
  g.edges_.reserve(merged.size());
  for (const auto& [e, sign] : merged) {
    g.edges_.push_back({e, sign});
    if (sign > 0) ++g.num_positive_;
    g.adjacency_[e.u].push_back({e.v, sign});
    g.adjacency_[e.v].push_back({e.u, sign});
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

int SignedGraph::sign_of(NodeId a, NodeId b) const {
  if (a >= adjacency_.size() || b >= adjacency_.size() || a == b) return 0;
  const auto& list = adjacency_[a];
  auto it = std::lower_bound(
      list.begin(), list.end(), b,
      [](const Neighbor& n, NodeId id) { return n.node < id; });
  return (it != list.end() && it->node == b) ? it->sign : 0;
}

std::optional<std::size_t> SignedGraph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const SignedEdge& se, const Edge& key) { return se.edge < key; });
  if (it == edges_.end() || it->edge != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::span<const Neighbor> SignedGraph::neighbors(NodeId n) const {
  if (n >= adjacency_.size()) return {};
  return adjacency_[n];
}

std::size_t SignedGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

double SignedGraph::average_degree() const {
  if (present_nodes_.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) /
         static_cast<double>(present_nodes_.size());
}

void SignedGraph::CheckNode(NodeId n) const {
  if (!has_node(n)) {
    Fail(ErrorCode::kNotFound, "unknown node id " + std::to_string(n));
  }
}

void SignedGraph::CheckEdge(const Edge& e) const {
  if (!has_edge(e)) {
    std::ostringstream msg;
    msg << "edge " << e << " not in graph";
    Fail(ErrorCode::kNotFound, msg.str());
  }
}

// ---- loading ---------------------------------------------------------------

std::optional<EdgeFormat> ParseEdgeFormat(const std::string& name) {
  if (name == "signed_triple") return EdgeFormat::kSignedTriple;
  if (name == "rated_csv") return EdgeFormat::kRatedCsv;
  return std::nullopt;
}

Eigen::MatrixXd GaussianFeatures(std::size_t rows, int cols,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), cols);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = normal(rng);
  }
  return x;
}

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool ParseInt64(const std::string& s, std::int64_t* out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

bool ParseDouble(const std::string& s, double* out) {
  try {
    std::size_t used = 0;
    *out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

[[noreturn]] void Malformed(std::size_t line_no, const std::string& why) {
  Fail(ErrorCode::kParse,
       "malformed line " + std::to_string(line_no) + ": " + why);
}

struct RawEdge {
  std::int64_t a;
  std::int64_t b;
  int sign;
};

}  // namespace

LoadedGraph ParseEdgeList(std::istream& in, EdgeFormat format,
                          std::uint64_t feature_seed, int feature_dim) {
  if (feature_dim < 1) {
    Fail(ErrorCode::kInvalidArgument, "feature dimension must be >= 1");
  }
  LoadStats stats;
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = Trim(line);
    if (text.empty() || text[0] == '#' || text[0] == '%') continue;
    ++stats.lines;

    std::vector<std::string> fields;
    if (format == EdgeFormat::kRatedCsv) {
      std::stringstream ss(text);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(Trim(field));
      if (fields.size() < 3 || fields.size() > 4) {
        Malformed(line_no, "expected source,target,rating[,time]");
      }
    } else {
      std::istringstream ss(text);
      std::string field;
      while (ss >> field) fields.push_back(field);
      if (fields.size() != 3) Malformed(line_no, "expected `u v s`");
    }

    RawEdge e{};
    if (!ParseInt64(fields[0], &e.a) || !ParseInt64(fields[1], &e.b)) {
      Malformed(line_no, "node ids must be integers");
    }
    if (format == EdgeFormat::kRatedCsv) {
      double rating = 0.0;
      if (!ParseDouble(fields[2], &rating)) Malformed(line_no, "bad rating");
      if (rating == 0.0) {
        ++stats.skipped_zero_rating;
        continue;
      }
      e.sign = rating > 0 ? 1 : -1;
    } else {
      std::int64_t s = 0;
      if (!ParseInt64(fields[2], &s) || (s != 1 && s != -1)) {
        Malformed(line_no, "sign must be +1 or -1");
      }
      e.sign = static_cast<int>(s);
    }
    if (e.a == e.b) {
      ++stats.skipped_self_loops;
      continue;
    }
    raw.push_back(e);
  }
  if (in.bad()) Fail(ErrorCode::kIo, "read error");

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const RawEdge& e : raw) {
    ids.push_back(e.a);
    ids.push_back(e.b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) Fail(ErrorCode::kInvalidArgument, "graph has no edges");

  auto dense = [&ids](std::int64_t id) {
    return static_cast<NodeId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::map<Edge, int> seen;
  std::vector<SignedEdge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& r : raw) {
    const Edge e = Edge::Make(dense(r.a), dense(r.b));
    auto [it, inserted] = seen.emplace(e, r.sign);
    if (!inserted && it->second != r.sign) {
      ++stats.sign_conflicts;
      it->second = -1;
    }
    edges.push_back({e, r.sign});
  }

  LoadedGraph out;
  out.graph = SignedGraph::FromEdges(
      ids.size(), edges, GaussianFeatures(ids.size(), feature_dim, feature_seed));
  out.stats = stats;
  out.original_ids = std::move(ids);
  return out;
}

LoadedGraph LoadEdgeList(const std::string& path, EdgeFormat format,
                         std::uint64_t feature_seed, int feature_dim) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  return ParseEdgeList(in, format, feature_seed, feature_dim);
}

void WriteSignedTriples(std::ostream& out, const SignedGraph& g) {
  for (const SignedEdge& se : g.edges()) {
    out << se.edge.u << ' ' << se.edge.v << ' ' << (se.sign > 0 ? "+1" : "-1")
        << '\n';
  }
}

// ---- triangles -------------------------------------------------------------

namespace {

Triangle MakeTriangle(const SignedGraph& g, NodeId a, NodeId b, NodeId c) {
  std::array<NodeId, 3> n{a, b, c};
  std::sort(n.begin(), n.end());
  return Triangle{n,
                  {g.sign_of(n[0], n[1]), g.sign_of(n[1], n[2]),
                   g.sign_of(n[0], n[2])}};
}

bool TriangleLess(const Triangle& x, const Triangle& y) {
  return x.nodes < y.nodes;
}

}  // namespace

std::vector<Triangle> EnumerateTriangles(const SignedGraph& g) {
  std::vector<Triangle> out;
  // For each edge (u, w) with u < w, intersect the neighbor lists above w.
  for (const SignedEdge& se : g.edges()) {
    const NodeId u = se.edge.u;
    const NodeId w = se.edge.v;
    auto nu = g.neighbors(u);
    auto nw = g.neighbors(w);
    auto i = nu.begin();
    auto j = nw.begin();
    while (i != nu.end() && j != nw.end()) {
      if (i->node < j->node) {
        ++i;
      } else if (j->node < i->node) {
        ++j;
      } else {
        if (i->node > w) out.push_back(MakeTriangle(g, u, w, i->node));
        ++i;
        ++j;
      }
    }
  }
  std::sort(out.begin(), out.end(), TriangleLess);
  return out;
}

std::vector<Triangle> EnumerateTriangles(const SignedGraph& g, NodeId v) {
  g.CheckNode(v);
  std::vector<Triangle> out;
  auto nv = g.neighbors(v);
  for (std::size_t a = 0; a < nv.size(); ++a) {
    for (std::size_t b = a + 1; b < nv.size(); ++b) {
      if (g.sign_of(nv[a].node, nv[b].node) != 0) {
        out.push_back(MakeTriangle(g, v, nv[a].node, nv[b].node));
      }
    }
  }
  std::sort(out.begin(), out.end(), TriangleLess);
  return out;
}

// ---- deletion --------------------------------------------------------------

std::optional<Scenario> ParseScenario(const std::string& name) {
  if (name == "edge") return Scenario::kEdge;
  if (name == "node") return Scenario::kNode;
  if (name == "feature") return Scenario::kFeature;
  return std::nullopt;
}

const char* ScenarioName(Scenario s) {
  switch (s) {
    case Scenario::kEdge:
      return "edge";
    case Scenario::kNode:
      return "node";
    case Scenario::kFeature:
      return "feature";
  }
  return "unknown";
}

DeletionRequest DeletionRequest::ForEdges(std::vector<Edge> edges) {
  DeletionRequest r;
  r.scenario = Scenario::kEdge;
  r.edges = std::move(edges);
  return r;
}

DeletionRequest DeletionRequest::ForNodes(std::vector<NodeId> nodes) {
  DeletionRequest r;
  r.scenario = Scenario::kNode;
  r.nodes = std::move(nodes);
  return r;
}

DeletionRequest DeletionRequest::ForFeatures(
    std::vector<FeatureDeletion> features) {
  DeletionRequest r;
  r.scenario = Scenario::kFeature;
  r.features = std::move(features);
  return r;
}

namespace {

std::vector<Edge> IncidentEdges(const SignedGraph& g,
                                const std::set<NodeId>& nodes) {
  std::vector<Edge> out;
  for (const SignedEdge& se : g.edges()) {
    if (nodes.count(se.edge.u) || nodes.count(se.edge.v)) out.push_back(se.edge);
  }
  return out;
}

std::vector<SignedEdge> EdgesExcept(const SignedGraph& g,
                                    const std::vector<Edge>& removed) {
  std::vector<SignedEdge> out;
  out.reserve(g.num_edges());
  for (const SignedEdge& se : g.edges()) {
    if (!std::binary_search(removed.begin(), removed.end(), se.edge)) {
      out.push_back(se);
    }
  }
  return out;
}

}  // namespace

std::vector<Edge> DeletionSet(const SignedGraph& g, const DeletionRequest& req) {
  switch (req.scenario) {
    case Scenario::kEdge: {
      if (req.edges.empty()) {
        Fail(ErrorCode::kInvalidArgument, "empty edge deletion request");
      }
      std::vector<Edge> del;
      del.reserve(req.edges.size());
      for (const Edge& raw : req.edges) {
        const Edge e = Edge::Make(raw.u, raw.v);
        g.CheckEdge(e);
        del.push_back(e);
      }
      std::sort(del.begin(), del.end());
      del.erase(std::unique(del.begin(), del.end()), del.end());
      return del;
    }
    case Scenario::kNode: {
      if (req.nodes.empty()) {
        Fail(ErrorCode::kInvalidArgument, "empty node deletion request");
      }
      std::set<NodeId> nodes;
      for (NodeId n : req.nodes) {
        g.CheckNode(n);
        nodes.insert(n);
      }
      return IncidentEdges(g, nodes);
    }
    case Scenario::kFeature: {
      if (req.features.empty()) {
        Fail(ErrorCode::kInvalidArgument, "empty feature deletion request");
      }
      std::set<NodeId> nodes;
      for (const FeatureDeletion& fd : req.features) {
        g.CheckNode(fd.node);
        if (fd.dims.empty()) {
          Fail(ErrorCode::kInvalidArgument, "feature request without dims");
        }
        for (int d : fd.dims) {
          if (d < 0 || d >= g.features().cols()) {
            Fail(ErrorCode::kNotFound,
                 "feature dim " + std::to_string(d) + " out of range");
          }
        }
        nodes.insert(fd.node);
      }
      return IncidentEdges(g, nodes);
    }
  }
  Fail(ErrorCode::kInternal, "unhandled scenario");
}

DeletionOutcome ApplyDeletion(const SignedGraph& g, const DeletionRequest& req) {
  DeletionOutcome out;
  out.deletion_set = DeletionSet(g, req);
  std::vector<bool> present(g.num_nodes(), false);
  switch (req.scenario) {
    case Scenario::kEdge: {
      // Edge deletion keeps the node set.
      for (NodeId n : g.nodes()) present[n] = true;
      out.remaining = SignedGraph::FromEdges(
          g.num_nodes(), EdgesExcept(g, out.deletion_set), g.features(), present);
      break;
    }
    case Scenario::kNode: {
      const auto kept = EdgesExcept(g, out.deletion_set);
      for (const SignedEdge& se : kept) {
        present[se.edge.u] = true;
        present[se.edge.v] = true;
      }
      out.remaining =
          SignedGraph::FromEdges(g.num_nodes(), kept, g.features(), present);
      break;
    }
    case Scenario::kFeature: {
      Eigen::MatrixXd x = g.features();
      for (const FeatureDeletion& fd : req.features) {
        for (int d : fd.dims) x(fd.node, d) = 0.0;
      }
      for (NodeId n : g.nodes()) present[n] = true;
      out.remaining =
          SignedGraph::FromEdges(g.num_nodes(), g.edges(), std::move(x), present);
      break;
    }
  }
  return out;
}

}  // namespace csgu
