#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "simrank/config.hpp"
#include "simrank/error.hpp"
#include "simrank/random.hpp"
#include "simrank/spectral.hpp"

namespace simrank {
namespace {

// Symmetric n x n matrix Q diag(values) Q^T with a random orthonormal Q.
Eigen::MatrixXd planted(Index n, const Eigen::VectorXd& values, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(n, values.size());
  for (Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() *
                            Eigen::MatrixXd::Identity(n, values.size());
  return q * values.asDiagonal() * q.transpose();
}

SymmetricOperator dense_op(const Eigen::MatrixXd& m) {
  return [&m](const Eigen::MatrixXd& z) { return Eigen::MatrixXd(m * z); };
}

TEST(Gaussian, MatchesBoxMullerOnMt19937) {
  std::mt19937_64 engine(123);
  auto uniform = [&] { return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53; };
  GaussianSource source(123);
  for (int pair = 0; pair < 50; ++pair) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    EXPECT_DOUBLE_EQ(source.next(), radius * std::cos(2.0 * std::numbers::pi * u2));
    EXPECT_DOUBLE_EQ(source.next(), radius * std::sin(2.0 * std::numbers::pi * u2));
  }
}

TEST(Gaussian, MatrixFillsColumnMajor) {
  GaussianSource a(9);
  GaussianSource b(9);
  const Eigen::MatrixXd m = a.matrix(3, 2);
  for (Index j = 0; j < 2; ++j) {
    for (Index i = 0; i < 3; ++i) EXPECT_EQ(m(i, j), b.next());
  }
}

TEST(Truncated, OrdersAndSigns) {
  Eigen::VectorXd values(4);
  values << 3.0, -5.0, 1.0, 0.5;
  const Eigen::MatrixXd m = planted(6, values, 1);
  const EigenPairs alg = truncated_eig_dense(m, 2, EigOrder::algebraic_desc);
  EXPECT_NEAR(alg.values[0], 3.0, 1e-12);
  EXPECT_NEAR(alg.values[1], 1.0, 1e-12);
  const EigenPairs mag = truncated_eig_dense(m, 2, EigOrder::magnitude_desc);
  EXPECT_NEAR(mag.values[0], -5.0, 1e-12);
  EXPECT_NEAR(mag.values[1], 3.0, 1e-12);
  for (Index j = 0; j < 2; ++j) {
    Index pivot = 0;
    mag.vectors.col(j).cwiseAbs().maxCoeff(&pivot);
    EXPECT_GT(mag.vectors(pivot, j), 0.0);
    EXPECT_LT((m * mag.vectors.col(j) - mag.values[j] * mag.vectors.col(j)).norm(), 1e-12);
  }
  EXPECT_THROW(truncated_eig_dense(m, 0, EigOrder::algebraic_desc), UsageError);
  EXPECT_THROW(truncated_eig_dense(m, 7, EigOrder::algebraic_desc), UsageError);
  Eigen::MatrixXd bad = m;
  bad(0, 0) = std::nan("");
  EXPECT_THROW(truncated_eig_dense(bad, 1, EigOrder::algebraic_desc), NumericError);
}

TEST(SelectIndices, StableOnTies) {
  Eigen::VectorXd v(5);
  v << 1.0, -2.0, 2.0, 1.0, 0.0;
  EXPECT_EQ(select_eigen_indices(v, 3, EigOrder::algebraic_desc), (std::vector<Index>{2, 0, 3}));
  EXPECT_EQ(select_eigen_indices(v, 3, EigOrder::magnitude_desc), (std::vector<Index>{1, 2, 0}));
}

TEST(Randomized, RecoversExactLowRank) {
  Eigen::VectorXd values(6);
  values << 4.0, 2.5, -1.5, 1.0, 0.75, 0.1;
  const Eigen::MatrixXd m = planted(120, values, 2);
  const RandomizedEigResult r = randomized_eig(dense_op(m), 120, 6, 4, 5, EigOrder::magnitude_desc);
  EXPECT_EQ(r.basis_rank, 6);
  const Eigen::MatrixXd approx = r.pairs.vectors * r.pairs.values.asDiagonal() * r.pairs.vectors.transpose();
  EXPECT_LT(testing::svd_norm(approx - m), 1e-10);
  EXPECT_LT((r.pairs.vectors.transpose() * r.pairs.vectors - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Randomized, SameSeedIsBitIdentical) {
  Eigen::VectorXd values(3);
  values << 3.0, 2.0, 1.0;
  const Eigen::MatrixXd m = planted(50, values, 3);
  const auto a = randomized_eig(dense_op(m), 50, 3, 2, 77, EigOrder::algebraic_desc);
  const auto b = randomized_eig(dense_op(m), 50, 3, 2, 77, EigOrder::algebraic_desc);
  EXPECT_TRUE(a.pairs.vectors == b.pairs.vectors);
  EXPECT_TRUE(a.pairs.values == b.pairs.values);
}

TEST(Randomized, CollapsedRangeIsPaddedWithZeros) {
  Eigen::VectorXd values(2);
  values << 2.0, -1.0;
  const Eigen::MatrixXd m = planted(30, values, 4);
  const RandomizedEigResult r = randomized_eig(dense_op(m), 30, 5, 0, 1, EigOrder::algebraic_desc);
  EXPECT_EQ(r.basis_rank, 2);
  ASSERT_EQ(r.pairs.values.size(), 5);
  EXPECT_NEAR(r.pairs.values[0], 2.0, 1e-12);
  EXPECT_EQ(r.pairs.values[1], 0.0);
  EXPECT_EQ(r.pairs.values[3], 0.0);
  EXPECT_NEAR(r.pairs.values[4], -1.0, 1e-12);
  EXPECT_LT((r.pairs.vectors.transpose() * r.pairs.vectors - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Randomized, ZeroOperatorGivesCanonicalBasis) {
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(8, 8);
  const RandomizedEigResult r = randomized_eig(dense_op(zero), 8, 3, 1, 1, EigOrder::algebraic_desc);
  EXPECT_EQ(r.basis_rank, 0);
  EXPECT_TRUE(r.pairs.values.isZero());
  EXPECT_LT((r.pairs.vectors.transpose() * r.pairs.vectors - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Randomized, Guards) {
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_THROW(randomized_eig(dense_op(m), 4, 0, 0, 1, EigOrder::algebraic_desc), UsageError);
  EXPECT_THROW(randomized_eig(dense_op(m), 4, 3, 2, 1, EigOrder::algebraic_desc), UsageError);
  EXPECT_THROW(randomized_eig(dense_op(m), 4, 2, -1, 1, EigOrder::algebraic_desc), UsageError);
  const SymmetricOperator nan_op = [](const Eigen::MatrixXd& z) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Constant(z.rows(), z.cols(), std::nan("")));
  };
  EXPECT_THROW(randomized_eig(nan_op, 4, 2, 0, 1, EigOrder::algebraic_desc), NumericError);
}

TEST(Config, Validation) {
  SolveConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.c = 1.0;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = {};
  cfg.rank = 4;
  cfg.oversampling = 2;
  EXPECT_THROW(cfg.validate_for(5), UsageError);
  EXPECT_NO_THROW(cfg.validate_for(6));
  cfg.dense_limit = 10;
  EXPECT_THROW(cfg.require_dense(11), UsageError);
  EXPECT_EQ(parse_eig_order("magnitude_desc"), EigOrder::magnitude_desc);
  EXPECT_EQ(to_string(EigOrder::algebraic_desc), "algebraic_desc");
  EXPECT_THROW(parse_eig_order("ascending"), UsageError);
}

}  // namespace
}  // namespace simrank
