#pragma once

// Assembly of the distance matrix D, the block Laplacian L and the scaled
// incidence matrix Q of a matrix-weighted graph.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mwtree/error.hpp"
#include "mwtree/graph.hpp"
#include "mwtree/linalg.hpp"

namespace mwtree {

enum class LaplacianMode {
  Raw,       // blocks built from W
  Inverted,  // blocks built from W^{-1}
};

/// Block (i, j) is the sum of the weights on the tree path between i and j.
/// One rooted traversal per vertex, each extending the parent's path sum by
/// the connecting edge weight.
inline BlockMatrix distance_matrix(const MatrixWeightedGraph& g) {
  require_tree(g);
  const Index n = g.n;
  const Index s = g.s;
  BlockMatrix d(n, n, s);
  const auto adj = detail::adjacency(g);

  std::vector<DenseMatrix> path_sum(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n));
  std::vector<Index> stack;
  for (Index root = 0; root < n; ++root) {
    std::fill(seen.begin(), seen.end(), false);
    path_sum[static_cast<std::size_t>(root)] = DenseMatrix::Zero(s, s);
    seen[static_cast<std::size_t>(root)] = true;
    stack.assign(1, root);
    while (!stack.empty()) {
      const Index x = stack.back();
      stack.pop_back();
      for (const auto& nb : adj[static_cast<std::size_t>(x)]) {
        const auto y = static_cast<std::size_t>(nb.vertex);
        if (seen[y]) continue;
        seen[y] = true;
        path_sum[y] = path_sum[static_cast<std::size_t>(x)] + g.edges[nb.edge].weight;
        // Fill one triangle and mirror it so the blocks agree bit for bit.
        if (nb.vertex > root) {
          d.block(root, nb.vertex) = path_sum[y];
          d.block(nb.vertex, root) = path_sum[y];
        }
        stack.push_back(nb.vertex);
      }
    }
  }
  return d;
}

/// Per-edge W^{-1}; SingularWeight names the first offending edge.
inline std::vector<DenseMatrix> inverted_weights(const MatrixWeightedGraph& g) {
  std::vector<DenseMatrix> out;
  out.reserve(g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    try {
      out.push_back(inverse(g.edges[k].weight));
    } catch (const Error&) {
      throw Error(ErrorCode::SingularWeight,
                  "weight of edge " + std::to_string(k) + " (" +
                      std::to_string(g.edges[k].u) + "," +
                      std::to_string(g.edges[k].v) + ") is singular",
                  k);
    }
  }
  return out;
}

inline BlockMatrix laplacian(const MatrixWeightedGraph& g,
                             LaplacianMode mode = LaplacianMode::Inverted) {
  require_well_formed(g);
  std::vector<DenseMatrix> blocks;
  if (mode == LaplacianMode::Inverted) {
    blocks = inverted_weights(g);
  } else {
    for (const auto& e : g.edges) blocks.push_back(e.weight);
  }
  BlockMatrix l(g.n, g.n, g.s);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Index u = g.edges[k].u - 1;
    const Index v = g.edges[k].v - 1;
    const DenseMatrix& b = blocks[k];
    l.block(u, u) += b;
    l.block(v, v) += b;
    l.block(u, v) -= b;
    l.block(v, u) -= b;
  }
  return l;
}

/// ns x ms incidence matrix with blocks +W_j^{-1/2} at the origin of edge j
/// and -W_j^{-1/2} at its terminus. Edges originate at the smaller vertex;
/// `flip[j]` reverses edge j.
inline BlockMatrix incidence_matrix(const MatrixWeightedGraph& g,
                                    const std::vector<bool>& flip = {}) {
  require_well_formed(g);
  if (!flip.empty() && flip.size() != g.edges.size()) {
    throw std::invalid_argument("incidence_matrix: flip size mismatch");
  }
  BlockMatrix q(g.n, static_cast<Index>(g.edges.size()), g.s);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    DenseMatrix root;
    try {
      root = spd_inverse_sqrt(g.edges[k].weight);
    } catch (const Error& err) {
      throw Error(ErrorCode::NotSPD,
                  "weight of edge " + std::to_string(k) + " (" +
                      std::to_string(g.edges[k].u) + "," +
                      std::to_string(g.edges[k].v) + "): " + err.what(),
                  k);
    }
    const bool flipped = !flip.empty() && flip[k];
    const Index origin = (flipped ? g.edges[k].v : g.edges[k].u) - 1;
    const Index terminus = (flipped ? g.edges[k].u : g.edges[k].v) - 1;
    const auto col = static_cast<Index>(k);
    q.block(origin, col) = root;
    q.block(terminus, col) = -root;
  }
  return q;
}

}  // namespace mwtree
