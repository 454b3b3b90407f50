#pragma once

#include <string>
#include <vector>

#include "mwtree/graph.hpp"
#include "mwtree/linalg.hpp"

namespace mwtree::testing {

inline DenseMatrix scalar(double w) { return DenseMatrix::Constant(1, 1, w); }

/// Path 1-2-...-n with the given weights in order.
inline MatrixWeightedGraph path_graph(const std::vector<DenseMatrix>& weights) {
  const auto s = weights.front().rows();
  MatrixWeightedGraph g{static_cast<Index>(weights.size()) + 1, s, {}};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    g.edges.push_back({static_cast<Index>(k) + 1, static_cast<Index>(k) + 2, weights[k]});
  }
  return g;
}

inline MatrixWeightedGraph unit_path(Index n) {
  return path_graph(std::vector<DenseMatrix>(static_cast<std::size_t>(n - 1), scalar(1)));
}

/// Star with center 1 and leaves 2..n.
inline MatrixWeightedGraph star_graph(const std::vector<DenseMatrix>& weights) {
  const auto s = weights.front().rows();
  MatrixWeightedGraph g{static_cast<Index>(weights.size()) + 1, s, {}};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    g.edges.push_back({1, static_cast<Index>(k) + 2, weights[k]});
  }
  return g;
}

inline DenseMatrix mixed_w1() { return from_rows({{2, 0}, {0, 1}}); }
inline DenseMatrix mixed_w2() { return from_rows({{0, 2}, {1, 0}}); }
inline DenseMatrix mixed_w3() { return from_rows({{1, 0}, {0, 2}}); }

/// Path of order 4 with three 2x2 weights, one of them asymmetric.
inline MatrixWeightedGraph mixed_path4() {
  return path_graph({mixed_w1(), mixed_w2(), mixed_w3()});
}

/// Reference D for mixed_path4, entered by hand.
inline DenseMatrix mixed_path4_distance() {
  return from_rows({{0, 0, 2, 0, 2, 2, 3, 2},
                    {0, 0, 0, 1, 1, 1, 1, 3},
                    {2, 0, 0, 0, 0, 2, 1, 2},
                    {0, 1, 0, 0, 1, 0, 1, 2},
                    {2, 2, 0, 2, 0, 0, 1, 0},
                    {1, 1, 1, 0, 0, 0, 0, 2},
                    {3, 2, 1, 2, 1, 0, 0, 0},
                    {1, 3, 1, 2, 0, 2, 0, 0}});
}

/// Reference L for mixed_path4 (inverted weights), entered by hand.
inline DenseMatrix mixed_path4_laplacian() {
  return from_rows({{.5, 0, -.5, 0, 0, 0, 0, 0},
                    {0, 1, 0, -1, 0, 0, 0, 0},
                    {-.5, 0, .5, 1, 0, -1, 0, 0},
                    {0, -1, .5, 1, -.5, 0, 0, 0},
                    {0, 0, 0, -1, 1, 1, -1, 0},
                    {0, 0, -.5, 0, .5, .5, 0, -.5},
                    {0, 0, 0, 0, -1, 0, 1, 0},
                    {0, 0, 0, 0, 0, -.5, 0, .5}});
}

/// 4-cycle with weights I, swap, I, swap on (1,2), (2,3), (3,4), (1,4).
inline MatrixWeightedGraph swap_cycle4() {
  const DenseMatrix eye = DenseMatrix::Identity(2, 2);
  const DenseMatrix swap = from_rows({{0, 1}, {1, 0}});
  return {4, 2, {{1, 2, eye}, {2, 3, swap}, {3, 4, eye}, {1, 4, swap}}};
}

inline DenseMatrix swap_cycle4_laplacian() {
  return from_rows({{1, 1, -1, 0, 0, 0, 0, -1},
                    {1, 1, 0, -1, 0, 0, -1, 0},
                    {-1, 0, 1, 1, 0, -1, 0, 0},
                    {0, -1, 1, 1, -1, 0, 0, 0},
                    {0, 0, 0, -1, 1, 1, -1, 0},
                    {0, 0, -1, 0, 1, 1, 0, -1},
                    {0, -1, 0, 0, -1, 0, 1, 1},
                    {-1, 0, 0, 0, 0, -1, 1, 1}});
}

/// K4 minus the edge (2,4); the chord (1,3) is edge 1.
inline MatrixWeightedGraph k4_minus_edge() {
  return {4, 1, {{1, 2, scalar(1)}, {1, 3, scalar(1)}, {1, 4, scalar(1)},
                 {2, 3, scalar(1)}, {3, 4, scalar(1)}}};
}

inline MatrixWeightedGraph cycle4_scalar() {
  return {4, 1, {{1, 2, scalar(1)}, {2, 3, scalar(1)}, {3, 4, scalar(1)}, {1, 4, scalar(1)}}};
}

inline MatrixWeightedGraph complete4_scalar() {
  MatrixWeightedGraph g{4, 1, {}};
  for (Index u = 1; u <= 4; ++u)
    for (Index v = u + 1; v <= 4; ++v) g.edges.push_back({u, v, scalar(1)});
  return g;
}

inline std::string data_path(const std::string& name) {
  return std::string(MWTREE_DATA_DIR) + "/" + name;
}

}  // namespace mwtree::testing
