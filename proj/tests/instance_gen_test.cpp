#include "mwtree/instance_gen.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mwtree/operators.hpp"

namespace mwtree {
namespace {

using namespace mwtree::testing;

using EdgeList = std::vector<std::pair<Index, Index>>;

EdgeList topology(const MatrixWeightedGraph& g) {
  EdgeList out;
  for (const auto& e : g.edges) out.emplace_back(e.u, e.v);
  return out;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::InvalidGraph;
}

TEST(Rng, MatchesReferenceEngine) {
  // The standard pins the 10000th output of a default-seeded mt19937_64.
  Rng rng(5489u);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ull);
}

TEST(Rng, BelowAndBetweenStayInRange) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(rng.below(7), 7u);
    const auto v = rng.between(-2, 2);
    EXPECT_GE(v, -2);
    EXPECT_LE(v, 2);
    const double u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, SplitSeedSeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(split_seed(42, k));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(split_seed(42, 3), split_seed(42, 3));
}

TEST(GenConfig, RejectsBadRanges) {
  EXPECT_EQ(code_of([] { check_config({1, 3, 1, 1, WeightKind::Spd, 10.0, 0}); }),
            ErrorCode::BadConfig);
  EXPECT_EQ(code_of([] { check_config({4, 3, 1, 1, WeightKind::Spd, 10.0, 0}); }),
            ErrorCode::BadConfig);
  EXPECT_EQ(code_of([] { check_config({2, 3, 0, 1, WeightKind::Spd, 10.0, 0}); }),
            ErrorCode::BadConfig);
  EXPECT_EQ(code_of([] { check_config({2, 3, 1, 1, WeightKind::Spd, 1.0, 0}); }),
            ErrorCode::BadConfig);
}

TEST(RandomTree, DeterministicPerSeed) {
  const GenConfig cfg{3, 9, 1, 3, WeightKind::Nonsingular, 100.0, 1234};
  const auto a = random_tree(cfg);
  const auto b = random_tree(cfg);
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.s, b.s);
  ASSERT_EQ(topology(a), topology(b));
  for (std::size_t k = 0; k < a.edges.size(); ++k) EXPECT_EQ(a.edges[k].weight, b.edges[k].weight);

  auto other = cfg;
  other.seed = 1235;
  const auto c = random_tree(other);
  EXPECT_FALSE(c.n == a.n && topology(c) == topology(a) &&
               c.edges[0].weight.size() == a.edges[0].weight.size() &&
               c.edges[0].weight == a.edges[0].weight);
}

TEST(RandomTree, GoldenTopology) {
  const auto g = random_tree({7, 7, 1, 1, WeightKind::ScalarPositive, 10.0, 42});
  EXPECT_EQ(topology(g), (EdgeList{{2, 6}, {1, 3}, {4, 7}, {1, 6}, {1, 5}, {5, 7}}));
}

TEST(RandomTree, TwoVerticesGiveSingleEdge) {
  const auto g = random_tree({2, 2, 2, 2, WeightKind::Spd, 10.0, 5});
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].u, 1);
  EXPECT_EQ(g.edges[0].v, 2);
}

TEST(RandomTree, ValidTreesForEveryKind) {
  for (auto kind : {WeightKind::Spd, WeightKind::Nonsingular, WeightKind::ScalarPositive,
                    WeightKind::ScalarAnyNonzero}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto g = random_tree({2, 12, 1, 4, kind, 100.0, seed});
      EXPECT_TRUE(validate(g).empty());
      EXPECT_TRUE(is_tree(g));
      EXPECT_GE(g.n, 2);
      EXPECT_LE(g.n, 12);
      for (const auto& e : g.edges) EXPECT_TRUE(is_full_rank(e.weight)) << to_string(kind);
    }
  }
}

TEST(RandomTree, PrueferUniformOnFourVertices) {
  constexpr int kSamples = 10000;
  std::map<EdgeList, int> freq;
  for (int i = 0; i < kSamples; ++i) {
    auto t = topology(random_tree({4, 4, 1, 1, WeightKind::ScalarPositive, 10.0,
                                   static_cast<std::uint64_t>(i)}));
    std::sort(t.begin(), t.end());
    ++freq[t];
  }
  ASSERT_EQ(freq.size(), 16u);
  const double p = 1.0 / 16.0;
  const double mean = kSamples * p;
  const double sigma = std::sqrt(kSamples * p * (1 - p));
  for (const auto& [t, count] : freq) EXPECT_LT(std::abs(count - mean), 5 * sigma);
}

TEST(RandomNonTree, TriangleOnThreeVertices) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_connected_nontree({3, 3, 1, 2, WeightKind::Spd, 10.0, seed});
    auto t = topology(g);
    std::sort(t.begin(), t.end());
    EXPECT_EQ(t, (EdgeList{{1, 2}, {1, 3}, {2, 3}}));
  }
}

TEST(RandomNonTree, ConnectedNotTreeNoDuplicates) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_connected_nontree({3, 10, 1, 3, WeightKind::Nonsingular, 100.0, seed});
    EXPECT_TRUE(validate(g).empty()) << seed;
    EXPECT_FALSE(is_tree(g));
    EXPECT_GT(static_cast<Index>(g.edges.size()), g.n - 1);
  }
}

TEST(RandomNonTree, RejectsTwoVertices) {
  EXPECT_EQ(code_of([] {
              random_connected_nontree({2, 4, 1, 1, WeightKind::Spd, 10.0, 0});
            }),
            ErrorCode::BadConfig);
}

TEST(RandomSpd, ScalarIsPositive) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = random_spd(1, 100.0, seed);
    ASSERT_EQ(w.rows(), 1);
    EXPECT_GT(w(0, 0), 0.0);
  }
}

TEST(RandomSpd, SymmetricPositiveAndConditionCapped) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index s = 1 + static_cast<Index>(seed % 5);
    const double cap = seed % 2 == 0 ? 10.0 : 1e4;
    const auto w = random_spd(s, cap, seed);
    EXPECT_EQ(w, DenseMatrix(w.transpose()));
    EXPECT_GT(symmetric_eigenvalues(w).values.back(), 0.0);
    EXPECT_NO_THROW(spd_inverse_sqrt(w));
    EXPECT_LE(condition_number(w), cap * 1.01);
  }
}

TEST(RandomNonsingular, DeterminantAndConditionBounds) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_nonsingular(3, 100.0, rng);
    EXPECT_GE(std::abs(determinant(w)), 0.05);
    EXPECT_LE(condition_number(w), 100.0);
    EXPECT_LE(w.cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(RandomWeight, ScalarKinds) {
  Rng rng(4);
  bool saw_negative = false;
  for (int i = 0; i < 100; ++i) {
    const auto w = random_weight(WeightKind::ScalarAnyNonzero, 3, 10.0, rng);
    EXPECT_TRUE(w.isApprox(w(0, 0) * DenseMatrix::Identity(3, 3)));
    EXPECT_GE(std::abs(w(0, 0)), 0.5);
    saw_negative = saw_negative || w(0, 0) < 0;
    EXPECT_GT(random_weight(WeightKind::ScalarPositive, 1, 10.0, rng)(0, 0), 0.0);
  }
  EXPECT_TRUE(saw_negative);
}

TEST(SpanningTreeOracle, HandCounts) {
  for (std::size_t k = 0; k < 4; ++k) {
    const auto c = spanning_tree_oracle(cycle4_scalar(), k);
    EXPECT_EQ(c.containing, 3);
    EXPECT_EQ(c.avoiding, 1);
  }
  const auto f = spanning_tree_oracle(k4_minus_edge(), 1);
  EXPECT_EQ(f.containing, 4);
  EXPECT_EQ(f.avoiding, 4);
  const auto t = spanning_tree_oracle(unit_path(5), 2);
  EXPECT_EQ(t.containing, 1);
  EXPECT_EQ(t.avoiding, 0);
  EXPECT_EQ(spanning_tree_oracle(complete4_scalar(), 0).total(), 16);
}

TEST(SpanningTreeOracle, TooLarge) {
  EXPECT_EQ(code_of([] { spanning_tree_oracle(unit_path(10), 0); }), ErrorCode::TooLarge);
}

TEST(SpanningTreeOracle, TotalEqualsKirchhoffCofactor) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = random_connected_nontree({3, 9, 1, 1, WeightKind::ScalarPositive, 10.0, seed});
    DenseMatrix l = DenseMatrix::Zero(g.n, g.n);
    for (const auto& e : g.edges) {
      l(e.u - 1, e.u - 1) += 1;
      l(e.v - 1, e.v - 1) += 1;
      l(e.u - 1, e.v - 1) -= 1;
      l(e.v - 1, e.u - 1) -= 1;
    }
    const double cofactor = determinant(l.bottomRightCorner(g.n - 1, g.n - 1));
    EXPECT_EQ(spanning_tree_oracle(g, 0).total(), std::llround(cofactor)) << seed;
  }
}

TEST(DistanceOracle, MixedPath4MatchesReference) {
  EXPECT_EQ(distance_oracle(mixed_path4()).dense(), mixed_path4_distance());
}

TEST(DistanceOracle, StarBlockIsSumOfSpokes) {
  const DenseMatrix a = from_rows({{1, 2}, {3, 4}});
  const DenseMatrix b = from_rows({{0, 1}, {1, 0}});
  const DenseMatrix c = from_rows({{5, 0}, {0, 5}});
  const auto d = distance_oracle(star_graph({a, b, c}));
  EXPECT_EQ(DenseMatrix(d.block(1, 2)), a + b);
  EXPECT_EQ(DenseMatrix(d.block(2, 3)), b + c);
}

TEST(DistanceOracle, MatchesDistanceMatrixOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_tree({2, 9, 1, 3, WeightKind::Spd, 100.0, seed});
    const DenseMatrix fast = distance_matrix(g).dense();
    const DenseMatrix slow = distance_oracle(g).dense();
    EXPECT_LT((fast - slow).cwiseAbs().maxCoeff(), 1e-13 * std::max(1.0, slow.norm())) << seed;
  }
}

TEST(DistanceOracle, BitIdenticalOnPathsWithAscendingIds) {
  // On a path built in order, every root-outward walk visits edges in
  // ascending id when heading right, so compare that triangle exactly.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    std::vector<DenseMatrix> ws;
    for (int k = 0; k < 6; ++k) ws.push_back(random_nonsingular(2, 100.0, rng));
    const auto g = path_graph(ws);
    const auto fast = distance_matrix(g);
    const auto slow = distance_oracle(g);
    for (Index i = 0; i < g.n; ++i)
      for (Index j = i + 1; j < g.n; ++j)
        EXPECT_EQ(DenseMatrix(fast.block(i, j)), DenseMatrix(slow.block(i, j)));
  }
}

}  // namespace
}  // namespace mwtree
