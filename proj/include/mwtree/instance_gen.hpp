#pragma once

// Seeded instance generators and brute-force oracles for property tests.
// Everything here is a pure function of its arguments and seed; the random
// stream comes from mwtree::Rng so outputs are reproducible across
// platforms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mwtree/error.hpp"
#include "mwtree/graph.hpp"
#include "mwtree/linalg.hpp"
#include "mwtree/random.hpp"

namespace mwtree {

enum class WeightKind {
  Spd,
  Nonsingular,
  ScalarPositive,    // w * I_s, w in [0.5, 2]
  ScalarAnyNonzero,  // +-w * I_s, w in [0.5, 2]
};

constexpr std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::Spd: return "spd";
    case WeightKind::Nonsingular: return "nonsingular";
    case WeightKind::ScalarPositive: return "scalar-positive";
    case WeightKind::ScalarAnyNonzero: return "scalar-any";
  }
  return "unknown";
}

struct GenConfig {
  Index n_min = 2;
  Index n_max = 2;
  Index s_min = 1;
  Index s_max = 1;
  WeightKind kind = WeightKind::Spd;
  double condition_cap = 100.0;
  std::uint64_t seed = 0;
};

inline void check_config(const GenConfig& cfg) {
  if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) {
    throw Error(ErrorCode::BadConfig, "need 2 <= n_min <= n_max");
  }
  if (cfg.s_min < 1 || cfg.s_max < cfg.s_min) {
    throw Error(ErrorCode::BadConfig, "need 1 <= s_min <= s_max");
  }
  if (!(cfg.condition_cap > 1.0)) {
    throw Error(ErrorCode::BadConfig, "condition cap must exceed 1");
  }
}

/// V diag(l) V^T with V orthogonal (Householder QR of a uniform matrix) and
/// eigenvalues log-uniform in [cap^{-1/2}, cap^{1/2}].
inline DenseMatrix random_spd(Index s, double condition_cap, Rng& rng) {
  if (!(condition_cap > 1.0)) {
    throw Error(ErrorCode::BadConfig, "condition cap must exceed 1");
  }
  const DenseMatrix seed_matrix = random_uniform_matrix(s, s, rng);
  const DenseMatrix v = Eigen::HouseholderQR<DenseMatrix>(seed_matrix).householderQ();
  const double half_log = 0.5 * std::log(condition_cap);
  Eigen::VectorXd lambda(s);
  for (Index i = 0; i < s; ++i) lambda(i) = std::exp(rng.uniform(-half_log, half_log));
  DenseMatrix w = v * lambda.asDiagonal() * v.transpose();
  return 0.5 * (w + w.transpose());
}

inline DenseMatrix random_spd(Index s, double condition_cap, std::uint64_t seed) {
  Rng rng(seed);
  return random_spd(s, condition_cap, rng);
}

/// Uniform(-1, 1) entries, redrawn while |det| < 0.05 or cond > cap.
inline DenseMatrix random_nonsingular(Index s, double condition_cap, Rng& rng) {
  for (;;) {
    DenseMatrix w = random_uniform_matrix(s, s, rng);
    if (std::abs(determinant(w)) >= 0.05 && condition_number(w) <= condition_cap) {
      return w;
    }
  }
}

inline DenseMatrix random_weight(WeightKind kind, Index s, double condition_cap,
                                 Rng& rng) {
  switch (kind) {
    case WeightKind::Spd:
      return random_spd(s, condition_cap, rng);
    case WeightKind::Nonsingular:
      return random_nonsingular(s, condition_cap, rng);
    case WeightKind::ScalarPositive:
      return rng.uniform(0.5, 2.0) * DenseMatrix::Identity(s, s);
    case WeightKind::ScalarAnyNonzero: {
      const double sign = rng.below(2) == 0 ? -1.0 : 1.0;
      return sign * rng.uniform(0.5, 2.0) * DenseMatrix::Identity(s, s);
    }
  }
  throw Error(ErrorCode::BadConfig, "unknown weight kind");
}

namespace detail {

/// Uniform labeled tree on n >= 2 vertices by Pruefer decoding. Edges come
/// back 1-based with u < v, in decoding order.
inline std::vector<std::pair<Index, Index>> random_tree_edges(Index n, Rng& rng) {
  std::vector<std::pair<Index, Index>> edges;
  if (n == 2) {
    edges.emplace_back(1, 2);
    return edges;
  }
  std::vector<Index> code(static_cast<std::size_t>(n - 2));
  for (auto& c : code) c = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));

  std::vector<Index> degree(static_cast<std::size_t>(n + 1), 1);
  for (Index c : code) ++degree[static_cast<std::size_t>(c)];
  for (Index c : code) {
    Index leaf = 1;
    while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    --degree[static_cast<std::size_t>(leaf)];
    --degree[static_cast<std::size_t>(c)];
  }
  Index a = 0;
  Index b = 0;
  for (Index x = 1; x <= n; ++x) {
    if (degree[static_cast<std::size_t>(x)] == 1) (a == 0 ? a : b) = x;
  }
  edges.emplace_back(a, b);
  return edges;
}

inline MatrixWeightedGraph attach_weights(
    Index n, Index s, const std::vector<std::pair<Index, Index>>& topology,
    const GenConfig& cfg, Rng& rng) {
  MatrixWeightedGraph g{n, s, {}};
  for (const auto& [u, v] : topology) {
    g.edges.push_back({u, v, random_weight(cfg.kind, s, cfg.condition_cap, rng)});
  }
  return g;
}

}  // namespace detail

inline MatrixWeightedGraph random_tree(const GenConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);
  const Index n = rng.between(cfg.n_min, cfg.n_max);
  const Index s = rng.between(cfg.s_min, cfg.s_max);
  const auto topology = detail::random_tree_edges(n, rng);
  return detail::attach_weights(n, s, topology, cfg, rng);
}

/// A random tree plus between 1 and min(n - 1, available) extra edges.
inline MatrixWeightedGraph random_connected_nontree(const GenConfig& cfg) {
  check_config(cfg);
  if (cfg.n_min < 3) {
    throw Error(ErrorCode::BadConfig, "a non-tree needs n >= 3");
  }
  Rng rng(cfg.seed);
  const Index n = rng.between(cfg.n_min, cfg.n_max);
  const Index s = rng.between(cfg.s_min, cfg.s_max);
  auto topology = detail::random_tree_edges(n, rng);

  std::vector<std::pair<Index, Index>> absent;
  for (Index u = 1; u <= n; ++u) {
    for (Index v = u + 1; v <= n; ++v) {
      if (std::find(topology.begin(), topology.end(), std::pair{u, v}) ==
          topology.end()) {
        absent.emplace_back(u, v);
      }
    }
  }
  const auto max_extra = std::min<std::size_t>(absent.size(), static_cast<std::size_t>(n - 1));
  const auto extra = 1 + rng.below(max_extra);
  for (std::uint64_t k = 0; k < extra; ++k) {
    const auto pick = rng.below(absent.size());
    topology.push_back(absent[pick]);
    absent.erase(absent.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return detail::attach_weights(n, s, topology, cfg, rng);
}

struct SpanningTreeCounts {
  long long containing = 0;  // a
  long long avoiding = 0;    // b

  long long total() const { return containing + avoiding; }
};

/// Exhaustive spanning-tree enumeration over edge subsets (n <= 9).
inline SpanningTreeCounts spanning_tree_oracle(const MatrixWeightedGraph& g,
                                               std::size_t marked_edge) {
  require_well_formed(g);
  if (g.n > 9) throw Error(ErrorCode::TooLarge, "enumeration limited to n <= 9");
  if (marked_edge >= g.edges.size()) {
    throw std::out_of_range("spanning_tree_oracle: marked edge out of range");
  }
  SpanningTreeCounts counts;
  const auto m = g.edges.size();
  const auto need = static_cast<std::size_t>(g.n - 1);

  // component label per vertex; merging relabels so undo is a copy
  std::function<void(std::size_t, std::size_t, bool, std::vector<Index>)> walk =
      [&](std::size_t k, std::size_t chosen, bool has_marked,
          std::vector<Index> comp) {
        if (chosen == need) {
          (has_marked ? counts.containing : counts.avoiding) += 1;
          return;
        }
        if (k == m || m - k < need - chosen) return;
        const Index cu = comp[static_cast<std::size_t>(g.edges[k].u - 1)];
        const Index cv = comp[static_cast<std::size_t>(g.edges[k].v - 1)];
        if (cu != cv) {
          std::vector<Index> merged = comp;
          for (auto& c : merged) if (c == cv) c = cu;
          walk(k + 1, chosen + 1, has_marked || k == marked_edge, std::move(merged));
        }
        walk(k + 1, chosen, has_marked, std::move(comp));
      };
  std::vector<Index> comp(static_cast<std::size_t>(g.n));
  for (Index i = 0; i < g.n; ++i) comp[static_cast<std::size_t>(i)] = i;
  walk(0, 0, false, std::move(comp));
  return counts;
}

/// Distance matrix from independent per-pair path queries; each block sums
/// its path's weights in ascending edge id.
inline BlockMatrix distance_oracle(const MatrixWeightedGraph& g) {
  require_tree(g);
  BlockMatrix d(g.n, g.n, g.s);
  for (Index i = 1; i <= g.n; ++i) {
    for (Index j = 1; j <= g.n; ++j) {
      if (i == j) continue;
      auto path = tree_path(g, i, j).edges;
      std::sort(path.begin(), path.end());
      DenseMatrix sum = DenseMatrix::Zero(g.s, g.s);
      for (auto k : path) sum += g.edges[k].weight;
      d.block(i - 1, j - 1) = sum;
    }
  }
  return d;
}

}  // namespace mwtree
