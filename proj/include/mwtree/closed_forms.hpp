#pragma once

// Closed-form determinant and inverse of tree distance matrices, and
// executable checks of the identities, g-inverse, inertia, interlacing and
// rank results that accompany them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mwtree/error.hpp"
#include "mwtree/graph.hpp"
#include "mwtree/instance_gen.hpp"
#include "mwtree/linalg.hpp"
#include "mwtree/operators.hpp"
#include "mwtree/random.hpp"

namespace mwtree {

enum class CheckStatus { Pass, Fail, Skipped };

constexpr std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

/// One residual-vs-tolerance verdict. status is Pass iff residual <= tolerance
/// (a NaN residual fails); Skipped carries a reason and no residual.
struct VerificationReport {
  std::string name;
  double residual = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Skipped;
  std::string reason;
  Index n = 0;
  Index s = 0;

  bool passed() const { return status == CheckStatus::Pass; }

  static VerificationReport measured(std::string name, double residual,
                                     double tolerance, Index n, Index s) {
    VerificationReport r{std::move(name), residual, tolerance, CheckStatus::Fail,
                         {}, n, s};
    if (residual <= tolerance) r.status = CheckStatus::Pass;
    return r;
  }

  static VerificationReport skipped(std::string name, std::string reason,
                                    Index n, Index s) {
    VerificationReport r;
    r.name = std::move(name);
    r.reason = std::move(reason);
    r.n = n;
    r.s = s;
    return r;
  }
};

inline bool all_weights_spd(const MatrixWeightedGraph& g) {
  return std::all_of(g.edges.begin(), g.edges.end(),
                     [](const Edge& e) { return is_spd(e.weight); });
}

inline void require_spd_weights(const MatrixWeightedGraph& g) {
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (!is_spd(g.edges[k].weight)) {
      throw Error(ErrorCode::NotSPD,
                  "weight of edge " + std::to_string(k) + " is not SPD", k);
    }
  }
}

// ---------------------------------------------------------------------------
// Determinant and inverse

/// (-1)^{(n-1)s} 2^{(n-2)s} det(W_1 ... W_{n-1}) det(W_1 + ... + W_{n-1}),
/// the product taken in edge storage order.
inline double distance_determinant(const MatrixWeightedGraph& g) {
  require_tree(g);
  const Index exponent = (g.n - 1) * g.s;
  const double sign = exponent % 2 == 0 ? 1.0 : -1.0;
  DenseMatrix product = DenseMatrix::Identity(g.s, g.s);
  for (const auto& e : g.edges) product = product * e.weight;
  return sign * std::ldexp(1.0, static_cast<int>((g.n - 2) * g.s)) *
         determinant(product) * determinant(weight_sum(g));
}

/// Same closed form as distance_determinant in sign / log-magnitude form.
inline SignedLogDet distance_log_determinant(const MatrixWeightedGraph& g) {
  require_tree(g);
  SignedLogDet out{((g.n - 1) * g.s) % 2 == 0 ? 1 : -1,
                   static_cast<double>((g.n - 2) * g.s) * std::log(2.0)};
  auto absorb = [&out](const DenseMatrix& m) {
    const auto part = log_determinant(m);
    out.sign *= part.sign;
    out.log_abs += part.log_abs;
  };
  for (const auto& e : g.edges) absorb(e.weight);
  absorb(weight_sum(g));
  if (out.sign == 0) out.log_abs = -std::numeric_limits<double>::infinity();
  return out;
}

struct InvertibilityVerdict {
  bool invertible = true;
  std::string reason;
  std::optional<std::size_t> singular_edge;
  bool weight_sum_singular = false;
};

/// D is invertible iff every W_i and the sum of all W_i are nonsingular.
inline InvertibilityVerdict invertibility_check(
    const MatrixWeightedGraph& g, double rel_tol = kDefaultRankTolerance) {
  require_tree(g);
  InvertibilityVerdict verdict;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (!is_full_rank(g.edges[k].weight, rel_tol)) {
      verdict.invertible = false;
      verdict.singular_edge = k;
      verdict.reason = "weight of edge " + std::to_string(k) + " (" +
                       std::to_string(g.edges[k].u) + "," +
                       std::to_string(g.edges[k].v) + ") is singular";
      return verdict;
    }
  }
  if (!is_full_rank(weight_sum(g), rel_tol)) {
    verdict.invertible = false;
    verdict.weight_sum_singular = true;
    verdict.reason = "sum of edge weights is singular";
  }
  return verdict;
}

inline void require_invertible(const MatrixWeightedGraph& g,
                               double rel_tol = kDefaultRankTolerance) {
  const auto verdict = invertibility_check(g, rel_tol);
  if (!verdict.invertible) {
    throw Error(ErrorCode::NotInvertible, verdict.reason, verdict.singular_edge);
  }
}

/// D^{-1} = -L/2 + (delta delta^T (x) R^{-1}) / 2, with L built from the
/// inverted weights, delta_i = 2 - deg(i) and R the weight sum.
inline BlockMatrix distance_inverse(const MatrixWeightedGraph& g,
                                    double rel_tol = kDefaultRankTolerance) {
  require_invertible(g, rel_tol);
  const BlockMatrix l = laplacian(g, LaplacianMode::Inverted);
  const Eigen::VectorXd delta = delta_vector(g).as_vector();
  const DenseMatrix outer = delta * delta.transpose();
  DenseMatrix result =
      -0.5 * l.dense() + 0.5 * kronecker(outer, inverse(weight_sum(g)));
  return BlockMatrix(std::move(result), g.s);
}

/// The positive definite special case written as -L/2 + Delta R^{-1} Delta^T / 2
/// with Delta = tau (x) I_s.
inline BlockMatrix balaji_bapat_inverse(const MatrixWeightedGraph& g) {
  require_tree(g);
  require_spd_weights(g);
  const BlockMatrix l = laplacian(g, LaplacianMode::Inverted);
  const Eigen::VectorXd tau = delta_vector(g).as_vector();
  const DenseMatrix big_delta =
      kronecker(tau, DenseMatrix::Identity(g.s, g.s));
  DenseMatrix result = -0.5 * l.dense() +
                       0.5 * big_delta * inverse(weight_sum(g)) *
                           big_delta.transpose();
  return BlockMatrix(std::move(result), g.s);
}

// ---------------------------------------------------------------------------
// Identity suite

inline constexpr double kIdentityToleranceFactor = 1e-8;  // times ns

inline std::vector<VerificationReport> verify_identities(
    const MatrixWeightedGraph& g, double rel_tol = kDefaultRankTolerance) {
  require_invertible(g, rel_tol);
  const Index n = g.n;
  const Index s = g.s;
  const Index ns = n * s;
  const double tol = kIdentityToleranceFactor * static_cast<double>(ns);

  const DenseMatrix d = distance_matrix(g).dense();
  const DenseMatrix l = laplacian(g, LaplacianMode::Inverted).dense();
  const DenseMatrix d_inv = distance_inverse(g, rel_tol).dense();
  const Eigen::VectorXd delta = delta_vector(g).as_vector();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const DenseMatrix eye_s = DenseMatrix::Identity(s, s);
  const DenseMatrix eye = DenseMatrix::Identity(ns, ns);

  std::vector<VerificationReport> out;
  {
    const DenseMatrix rhs = kronecker(delta * ones.transpose(), eye_s) - 2.0 * eye;
    out.push_back(VerificationReport::measured(
        "identity_i: LD = delta 1^T (x) I - 2I", (l * d - rhs).norm(), tol, n, s));
  }
  {
    const DenseMatrix rhs = kronecker(ones * delta.transpose(), eye_s) - 2.0 * eye;
    out.push_back(VerificationReport::measured(
        "identity_ii: DL = 1 delta^T (x) I - 2I", (d * l - rhs).norm(), tol, n, s));
  }
  out.push_back(VerificationReport::measured(
      "identity_iii: LDL = -2L", (l * d * l + 2.0 * l).norm(), tol, n, s));
  {
    // Product form: (D^{-1} - L) (D/3 + J (x) R / 3) = I.
    const DenseMatrix j = DenseMatrix::Ones(n, n);
    const DenseMatrix candidate = d / 3.0 + kronecker(j, weight_sum(g)) / 3.0;
    out.push_back(VerificationReport::measured(
        "identity_iv: (D^-1 - L)^-1 = D/3 + J (x) R/3",
        ((d_inv - l) * candidate - eye).norm(), tol, n, s));
  }
  {
    const char* name = "identity_v: Q^T D Q = -2I";
    if (all_weights_spd(g)) {
      const DenseMatrix q = incidence_matrix(g).dense();
      const DenseMatrix lhs = q.transpose() * d * q;
      const DenseMatrix rhs = -2.0 * DenseMatrix::Identity(lhs.rows(), lhs.cols());
      out.push_back(VerificationReport::measured(name, (lhs - rhs).norm(), tol, n, s));
    } else {
      out.push_back(VerificationReport::skipped(
          name, "requires positive definite weights", n, s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// g-inverses

/// (e_ij (x) I_s)^T H (e_ij (x) I_s) = H_ii + H_jj - H_ij - H_ji; 0-based.
inline DenseMatrix pair_contraction(const DenseMatrix& h, Index s, Index i,
                                    Index j) {
  return h.block(i * s, i * s, s, s) + h.block(j * s, j * s, s, s) -
         h.block(i * s, j * s, s, s) - h.block(j * s, i * s, s, s);
}

inline constexpr double kGInverseToleranceFactor = 1e-7;

/// Largest Frobenius gap between pair contractions of two seeded
/// g-inverses of L. Any connected graph with positive definite weights.
inline VerificationReport ginverse_invariance_check(const MatrixWeightedGraph& g,
                                                    std::uint64_t seed_a,
                                                    std::uint64_t seed_b) {
  require_connected(g);
  require_spd_weights(g);
  const DenseMatrix l = laplacian(g, LaplacianMode::Inverted).dense();
  const DenseMatrix h1 = random_g_inverse(l, seed_a);
  const DenseMatrix h2 = random_g_inverse(l, seed_b);
  double worst = 0.0;
  for (Index i = 0; i < g.n; ++i) {
    for (Index j = i + 1; j < g.n; ++j) {
      worst = std::max(worst, (pair_contraction(h1, g.s, i, j) -
                               pair_contraction(h2, g.s, i, j))
                                  .norm());
    }
  }
  const double tol = kGInverseToleranceFactor * pseudo_inverse(l).norm();
  return VerificationReport::measured("ginverse_invariance", worst, tol, g.n, g.s);
}

/// Every off-diagonal block D_ij against the pair contraction of a seeded
/// g-inverse of L. Trees with positive definite weights.
inline VerificationReport ginverse_distance_recovery(const MatrixWeightedGraph& g,
                                                     std::uint64_t seed) {
  require_tree(g);
  require_spd_weights(g);
  const DenseMatrix d = distance_matrix(g).dense();
  const DenseMatrix l = laplacian(g, LaplacianMode::Inverted).dense();
  const DenseMatrix h = random_g_inverse(l, seed);
  double worst = 0.0;
  for (Index i = 0; i < g.n; ++i) {
    for (Index j = 0; j < g.n; ++j) {
      if (i == j) continue;
      worst = std::max(worst, (pair_contraction(h, g.s, i, j) -
                               d.block(i * g.s, j * g.s, g.s, g.s))
                                  .norm());
    }
  }
  const double tol = kGInverseToleranceFactor * d.norm();
  return VerificationReport::measured("ginverse_distance_recovery", worst, tol,
                                      g.n, g.s);
}

// ---------------------------------------------------------------------------
// Spectra

/// Counts eigenvalues above, below and within rel_zero * max|value| of zero.
inline Inertia inertia_of(const Spectrum& spectrum, double rel_zero = 1e-9) {
  double scale = 0.0;
  for (double v : spectrum.values) scale = std::max(scale, std::abs(v));
  const double cutoff = rel_zero * scale;
  Inertia out;
  for (double v : spectrum.values) {
    if (v > cutoff) {
      ++out.positive;
    } else if (v < -cutoff) {
      ++out.negative;
    } else {
      ++out.zero;
    }
  }
  return out;
}

/// Inertia of D for a tree with positive definite weights; the expected
/// value is (s, (n-1)s, 0).
inline Inertia inertia_check(const MatrixWeightedGraph& g) {
  require_tree(g);
  require_spd_weights(g);
  return inertia_of(symmetric_eigenvalues(distance_matrix(g).dense()));
}

struct InterlacingTriple {
  Index i = 0;         // 1-based
  double lower = 0.0;  // mu_{s+i}
  double middle = 0.0; // -2 / lambda_i
  double upper = 0.0;  // mu_i
  bool holds = false;
};

struct InterlacingReport {
  Spectrum mu;      // eigenvalues of D
  Spectrum lambda;  // eigenvalues of L, the s zeros last
  std::vector<InterlacingTriple> triples;
  double slack = 0.0;
  double max_violation = 0.0;  // 0 when every triple holds exactly
  bool pass = false;
};

inline constexpr double kInterlacingSlackFactor = 1e-8;

/// mu_{s+i} <= -2/lambda_i <= mu_i for i = 1..(n-1)s, each side allowed
/// slack 1e-8 * max(|mu_1|, lambda_1).
inline InterlacingReport interlacing_check(const MatrixWeightedGraph& g) {
  require_tree(g);
  require_spd_weights(g);
  InterlacingReport report;
  report.mu = symmetric_eigenvalues(distance_matrix(g).dense());
  report.lambda = symmetric_eigenvalues(laplacian(g, LaplacianMode::Inverted).dense());
  report.slack = kInterlacingSlackFactor *
                 std::max(std::abs(report.mu[0]), report.lambda[0]);
  report.pass = true;
  const auto s = static_cast<std::size_t>(g.s);
  const auto count = static_cast<std::size_t>((g.n - 1) * g.s);
  for (std::size_t k = 0; k < count; ++k) {
    InterlacingTriple t;
    t.i = static_cast<Index>(k + 1);
    t.lower = report.mu[s + k];
    t.middle = -2.0 / report.lambda[k];
    t.upper = report.mu[k];
    const double violation =
        std::max({0.0, t.lower - t.middle, t.middle - t.upper});
    t.holds = violation <= report.slack;
    report.max_violation = std::max(report.max_violation, violation);
    report.pass = report.pass && t.holds;
    report.triples.push_back(t);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rank characterization

/// n x n scalar Laplacian with weight w on `edge` and 1 on every other edge.
inline DenseMatrix scalar_laplacian(const MatrixWeightedGraph& g, std::size_t edge,
                                    double w) {
  DenseMatrix l = DenseMatrix::Zero(g.n, g.n);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const double weight = k == edge ? w : 1.0;
    const Index u = g.edges[k].u - 1;
    const Index v = g.edges[k].v - 1;
    l(u, u) += weight;
    l(v, v) += weight;
    l(u, v) -= weight;
    l(v, u) -= weight;
  }
  return l;
}

struct DeficientWeighting {
  std::size_t edge = 0;
  long long containing = 0;  // a: spanning trees through the edge
  long long avoiding = 0;    // b: spanning trees avoiding it
  double w = 0.0;            // -b / a
};

/// Scalar reweighting (w on one cycle edge, 1 elsewhere) that zeroes every
/// cofactor of L. The cofactor is affine in w, so a and b come from its
/// values at w = 1 and w = 2. Without an explicit edge, picks the non-bridge
/// edge with the largest endpoint degree sum (lowest id on ties).
inline DeficientWeighting rank_deficient_weighting(
    const MatrixWeightedGraph& g, std::optional<std::size_t> edge = std::nullopt) {
  require_connected(g);
  if (static_cast<Index>(g.edges.size()) == g.n - 1) {
    throw Error(ErrorCode::IsATree, "graph is a tree");
  }
  const auto bridges = bridge_edges(g);
  std::size_t chosen = g.edges.size();
  if (edge) {
    if (*edge >= g.edges.size()) throw std::out_of_range("edge id out of range");
    if (bridges[*edge]) {
      throw Error(ErrorCode::NoBridgelessEdge,
                  "edge " + std::to_string(*edge) + " is a bridge", *edge);
    }
    chosen = *edge;
  } else {
    const auto deg = degrees(g);
    Index best = -1;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      if (bridges[k]) continue;
      const Index score = deg[static_cast<std::size_t>(g.edges[k].u - 1)] +
                          deg[static_cast<std::size_t>(g.edges[k].v - 1)];
      if (score > best) {
        best = score;
        chosen = k;
      }
    }
    if (chosen == g.edges.size()) {
      throw Error(ErrorCode::NoBridgelessEdge, "every edge is a bridge");
    }
  }

  auto cofactor = [&](double w) {
    const DenseMatrix l = scalar_laplacian(g, chosen, w);
    return determinant(l.bottomRightCorner(g.n - 1, g.n - 1));
  };
  const double at_one = cofactor(1.0);
  const double at_two = cofactor(2.0);
  DeficientWeighting out;
  out.edge = chosen;
  out.containing = std::llround(at_two - at_one);
  out.avoiding = std::llround(2.0 * at_one - at_two);
  out.w = -static_cast<double>(out.avoiding) / static_cast<double>(out.containing);
  return out;
}

struct RankProbe {
  bool tree = false;
  Index expected_rank = 0;  // (n-1)s for trees, n-1 for the scalar witness
  std::optional<Index> rank_given_weights;
  std::vector<Index> trial_ranks;
  std::optional<DeficientWeighting> witness;
  std::optional<Index> witness_rank;
  bool pass = false;
};

inline constexpr double kProbeConditionCap = 100.0;

/// Trees: rank of L is (n-1)s for the given weights and for `trials` random
/// nonsingular reweightings. Non-trees: the constructed scalar weighting
/// drops the rank below n-1.
inline RankProbe rank_characterization_probe(const MatrixWeightedGraph& g,
                                             std::size_t trials,
                                             std::uint64_t seed,
                                             double rel_tol = kDefaultRankTolerance) {
  require_connected(g);
  RankProbe probe;
  probe.tree = static_cast<Index>(g.edges.size()) == g.n - 1;
  probe.rank_given_weights =
      numerical_rank(laplacian(g, LaplacianMode::Inverted).dense(), rel_tol);

  if (probe.tree) {
    probe.expected_rank = (g.n - 1) * g.s;
    probe.pass = *probe.rank_given_weights == probe.expected_rank;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(split_seed(seed, t));
      MatrixWeightedGraph reweighted = g;
      for (auto& e : reweighted.edges) {
        e.weight = random_nonsingular(g.s, kProbeConditionCap, rng);
      }
      const Index r = numerical_rank(
          laplacian(reweighted, LaplacianMode::Inverted).dense(), rel_tol);
      probe.trial_ranks.push_back(r);
      probe.pass = probe.pass && r == probe.expected_rank;
    }
  } else {
    probe.expected_rank = g.n - 1;
    probe.witness = rank_deficient_weighting(g);
    probe.witness_rank = numerical_rank(
        scalar_laplacian(g, probe.witness->edge, probe.witness->w), rel_tol);
    probe.pass = *probe.witness_rank < probe.expected_rank;
  }
  return probe;
}

}  // namespace mwtree
