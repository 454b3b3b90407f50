#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mwtree/error.hpp"
#include "mwtree/linalg.hpp"

namespace mwtree {

/// An undirected edge with an s x s weight. Vertices are 1-based and stored
/// with u < v; the edge is oriented from u to v wherever a sign is needed.
struct Edge {
  Index u = 0;
  Index v = 0;
  DenseMatrix weight;
};

struct MatrixWeightedGraph {
  Index n = 0;
  Index s = 1;
  std::vector<Edge> edges;

  std::size_t edge_count() const { return edges.size(); }
};

enum class ViolationKind {
  BadVertexCount,
  BadBlockSize,
  VertexOutOfRange,
  NonCanonicalOrientation,
  SelfLoop,
  DuplicateEdge,
  BadWeightShape,
  NonFiniteWeight,
  NotConnected,
};

constexpr std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::BadVertexCount: return "BadVertexCount";
    case ViolationKind::BadBlockSize: return "BadBlockSize";
    case ViolationKind::VertexOutOfRange: return "VertexOutOfRange";
    case ViolationKind::NonCanonicalOrientation: return "NonCanonicalOrientation";
    case ViolationKind::SelfLoop: return "SelfLoop";
    case ViolationKind::DuplicateEdge: return "DuplicateEdge";
    case ViolationKind::BadWeightShape: return "BadWeightShape";
    case ViolationKind::NonFiniteWeight: return "NonFiniteWeight";
    case ViolationKind::NotConnected: return "NotConnected";
  }
  return "Unknown";
}

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> edge;
  std::string message;
};

/// 2 - degree(i) for every vertex, in vertex order.
struct DeltaVector {
  std::vector<long long> entries;

  long long sum() const {
    return std::accumulate(entries.begin(), entries.end(), 0LL);
  }
  Eigen::VectorXd as_vector() const {
    Eigen::VectorXd out(static_cast<Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      out(static_cast<Index>(i)) = static_cast<double>(entries[i]);
    }
    return out;
  }
};

/// Edge ids (0-based, into g.edges) walked from `from` to `to`.
struct TreePath {
  Index from = 0;
  Index to = 0;
  std::vector<std::size_t> edges;
};

namespace detail {

struct Neighbor {
  Index vertex;  // 0-based
  std::size_t edge;
};

using Adjacency = std::vector<std::vector<Neighbor>>;

inline bool endpoints_ok(const MatrixWeightedGraph& g, const Edge& e) {
  return e.u >= 1 && e.u <= g.n && e.v >= 1 && e.v <= g.n && e.u != e.v;
}

/// Adjacency over edges with usable endpoints; `skip` drops one edge.
inline Adjacency adjacency(const MatrixWeightedGraph& g,
                           std::optional<std::size_t> skip = std::nullopt) {
  Adjacency adj(static_cast<std::size_t>(std::max<Index>(g.n, 0)));
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (skip && *skip == k) continue;
    const Edge& e = g.edges[k];
    if (!endpoints_ok(g, e)) continue;
    adj[static_cast<std::size_t>(e.u - 1)].push_back({e.v - 1, k});
    adj[static_cast<std::size_t>(e.v - 1)].push_back({e.u - 1, k});
  }
  return adj;
}

inline std::size_t reachable_count(const Adjacency& adj, Index start) {
  if (adj.empty()) return 0;
  std::vector<bool> seen(adj.size(), false);
  std::vector<Index> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Index x = stack.back();
    stack.pop_back();
    for (const auto& nb : adj[static_cast<std::size_t>(x)]) {
      if (!seen[static_cast<std::size_t>(nb.vertex)]) {
        seen[static_cast<std::size_t>(nb.vertex)] = true;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  return count;
}

}  // namespace detail

inline bool is_connected(const MatrixWeightedGraph& g) {
  if (g.n < 1) return false;
  return detail::reachable_count(detail::adjacency(g), 0) ==
         static_cast<std::size_t>(g.n);
}

/// All invariant violations, plus NotConnected. Empty iff the graph is a
/// well-formed connected matrix-weighted graph.
inline std::vector<Violation> validate(const MatrixWeightedGraph& g) {
  std::vector<Violation> out;
  if (g.n < 1) {
    out.push_back({ViolationKind::BadVertexCount, std::nullopt,
                   "vertex count must be >= 1"});
  }
  if (g.s < 1) {
    out.push_back({ViolationKind::BadBlockSize, std::nullopt,
                   "block size must be >= 1"});
  }
  std::set<std::pair<Index, Index>> seen;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    const std::string tag = "edge " + std::to_string(k) + " (" +
                            std::to_string(e.u) + "," + std::to_string(e.v) +
                            ")";
    if (e.u < 1 || e.u > g.n || e.v < 1 || e.v > g.n) {
      out.push_back({ViolationKind::VertexOutOfRange, k,
                     tag + ": vertex outside 1.." + std::to_string(g.n)});
    } else if (e.u == e.v) {
      out.push_back({ViolationKind::SelfLoop, k, tag + ": self-loop"});
    } else if (e.u > e.v) {
      out.push_back({ViolationKind::NonCanonicalOrientation, k,
                     tag + ": endpoints must satisfy u < v"});
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      out.push_back({ViolationKind::DuplicateEdge, k, tag + ": duplicate"});
    }
    if (e.weight.rows() != g.s || e.weight.cols() != g.s) {
      out.push_back({ViolationKind::BadWeightShape, k,
                     tag + ": weight is " + std::to_string(e.weight.rows()) +
                         "x" + std::to_string(e.weight.cols()) +
                         ", expected " + std::to_string(g.s) + "x" +
                         std::to_string(g.s)});
    } else if (!e.weight.allFinite()) {
      out.push_back({ViolationKind::NonFiniteWeight, k,
                     tag + ": non-finite weight entry"});
    }
  }
  if (g.n >= 1 && !is_connected(g)) {
    out.push_back({ViolationKind::NotConnected, std::nullopt,
                   "graph is not connected"});
  }
  return out;
}

/// Throws InvalidGraph on any violation other than NotConnected.
inline void require_well_formed(const MatrixWeightedGraph& g) {
  for (const auto& v : validate(g)) {
    if (v.kind != ViolationKind::NotConnected) {
      throw Error(ErrorCode::InvalidGraph, v.message, v.edge);
    }
  }
}

inline void require_connected(const MatrixWeightedGraph& g) {
  require_well_formed(g);
  if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "graph is not connected");
}

inline bool is_tree(const MatrixWeightedGraph& g) {
  require_connected(g);
  return static_cast<Index>(g.edges.size()) == g.n - 1;
}

inline void require_tree(const MatrixWeightedGraph& g) {
  require_well_formed(g);
  if (!is_connected(g) || static_cast<Index>(g.edges.size()) != g.n - 1) {
    throw Error(ErrorCode::NotATree, "graph is not a tree");
  }
}

inline TreePath tree_path(const MatrixWeightedGraph& g, Index u, Index v) {
  require_tree(g);
  if (u < 1 || u > g.n || v < 1 || v > g.n) {
    throw std::out_of_range("tree_path: vertex out of range");
  }
  if (u == v) throw Error(ErrorCode::SameVertex, "u and v coincide");

  const auto adj = detail::adjacency(g);
  std::vector<Index> parent(static_cast<std::size_t>(g.n), -1);
  std::vector<std::size_t> parent_edge(static_cast<std::size_t>(g.n), 0);
  std::queue<Index> frontier;
  frontier.push(u - 1);
  parent[static_cast<std::size_t>(u - 1)] = u - 1;
  while (!frontier.empty()) {
    const Index x = frontier.front();
    frontier.pop();
    for (const auto& nb : adj[static_cast<std::size_t>(x)]) {
      auto& p = parent[static_cast<std::size_t>(nb.vertex)];
      if (p < 0) {
        p = x;
        parent_edge[static_cast<std::size_t>(nb.vertex)] = nb.edge;
        frontier.push(nb.vertex);
      }
    }
  }

  TreePath path{u, v, {}};
  for (Index x = v - 1; x != u - 1; x = parent[static_cast<std::size_t>(x)]) {
    path.edges.push_back(parent_edge[static_cast<std::size_t>(x)]);
  }
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

inline std::vector<Index> degrees(const MatrixWeightedGraph& g) {
  std::vector<Index> deg(static_cast<std::size_t>(std::max<Index>(g.n, 0)), 0);
  for (const auto& e : g.edges) {
    if (!detail::endpoints_ok(g, e)) continue;
    ++deg[static_cast<std::size_t>(e.u - 1)];
    ++deg[static_cast<std::size_t>(e.v - 1)];
  }
  return deg;
}

inline DeltaVector delta_vector(const MatrixWeightedGraph& g) {
  DeltaVector out;
  for (Index d : degrees(g)) out.entries.push_back(2 - static_cast<long long>(d));
  return out;
}

inline DenseMatrix weight_sum(const MatrixWeightedGraph& g) {
  DenseMatrix sum = DenseMatrix::Zero(g.s, g.s);
  for (const auto& e : g.edges) sum += e.weight;
  return sum;
}

/// is_bridge[k] is true when removing edge k disconnects the graph.
inline std::vector<bool> bridge_edges(const MatrixWeightedGraph& g) {
  require_connected(g);
  std::vector<bool> out(g.edges.size(), false);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    out[k] = detail::reachable_count(detail::adjacency(g, k), 0) !=
             static_cast<std::size_t>(g.n);
  }
  return out;
}

}  // namespace mwtree
