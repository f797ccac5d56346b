#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "simrank/error.hpp"
#include "simrank/exact.hpp"
#include "simrank/metrics.hpp"

namespace simrank {
namespace {

DenseSymMatrix sym(const Eigen::MatrixXd& m) { return DenseSymMatrix(0.5 * (m + m.transpose())); }

TEST(SpectralNorm, MatchesSvd) {
  for (int seed = 0; seed < 5; ++seed) {
    std::srand(static_cast<unsigned>(seed));
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(12, 12);
    EXPECT_NEAR(spectral_norm(x), testing::svd_norm(x), 1e-6 * testing::svd_norm(x));
  }
  EXPECT_EQ(spectral_norm(Eigen::MatrixXd::Zero(3, 3)), 0.0);
}

TEST(SpectralErr, ScaleInvariantAndZeroForEqual) {
  const DenseSymMatrix s = sym(Eigen::MatrixXd::Random(6, 6) + 3 * Eigen::MatrixXd::Identity(6, 6));
  EXPECT_NEAR(spectral_err(s, s), 0.0, 1e-12);
  EXPECT_NEAR(spectral_err(s, DenseSymMatrix(2.0 * s.matrix())), 0.0, 1e-12);
  EXPECT_THROW(spectral_err(s, DenseSymMatrix(Eigen::MatrixXd::Zero(6, 6))), NumericError);
  EXPECT_THROW(spectral_err(s, DenseSymMatrix::identity(5)), UsageError);
}

TEST(Correlation, OffDiagonalPearson) {
  Eigen::MatrixXd a(3, 3);
  a << 9, 1, 2, 1, 9, 3, 2, 3, 9;
  Eigen::MatrixXd b(3, 3);
  b << 0, 2, 4, 2, 0, 6, 4, 6, 0;
  EXPECT_NEAR(offdiag_corr(DenseSymMatrix(a), DenseSymMatrix(b)), 1.0, 1e-12);
  EXPECT_NEAR(offdiag_corr(DenseSymMatrix(a), DenseSymMatrix(-b)), -1.0, 1e-12);
  EXPECT_THROW(offdiag_corr(DenseSymMatrix::identity(3), DenseSymMatrix(a)), NumericError);
  EXPECT_THROW(offdiag_corr(DenseSymMatrix::identity(1), DenseSymMatrix::identity(1)), NumericError);
}

TEST(RelativeError, Frobenius) {
  const DenseSymMatrix s = DenseSymMatrix::identity(4);
  const DenseSymMatrix z(Eigen::MatrixXd::Zero(4, 4));
  EXPECT_DOUBLE_EQ(relative_error(s, z), 1.0);
  EXPECT_THROW(relative_error(z, s), NumericError);
}

TEST(Evaluate, FillsReport) {
  const AdjacencyMatrix a = load_graph(SIMRANK_TEST_DATA "/graph2.edges", GraphFormat::edgelist).adjacency;
  SolveConfig cfg;
  cfg.c = 0.8;
  cfg.rank = 2;
  const DenseSymMatrix exact = simrank_matrix_iter(column_normalize(a), cfg);
  const EvalReport r = evaluate("g", a, cfg, exact, best_rank_r_baseline(exact, 2));
  EXPECT_EQ(r.n, 5);
  EXPECT_EQ(r.nnz, 8);
  EXPECT_DOUBLE_EQ(r.avg_degree, 1.6);
  EXPECT_GT(r.err, 0.0);
  EXPECT_TRUE(r.corr.has_value());
  EXPECT_EQ(r.peak_bytes_estimate, estimate_peak_bytes(5, 8, 2, 0));
}

TEST(Sweep, NestingSeedsAndCsv) {
  std::mt19937_64 rng(6);
  const AdjacencyMatrix a = testing::random_digraph(20, 0.2, rng);
  const SparseColMatrix w = column_normalize(a);
  SweepSpec spec;
  spec.ranks = {2, 4};
  spec.cs = {0.4, 0.6};
  spec.oversampling = {0, 2};
  SolveConfig defaults;
  defaults.iterations = 5;
  const auto rows = sweep("rand", a, w, spec, defaults, [](const std::string&) {});
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].c, 0.4);
  EXPECT_EQ(rows[0].rank, 2);
  EXPECT_EQ(rows[1].p, 2);
  EXPECT_EQ(rows[2].rank, 4);
  EXPECT_EQ(rows[4].c, 0.6);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.baseline_rel_err.has_value());
    EXPECT_FALSE(r.seconds.has_value());
  }
  std::ostringstream csv;
  write_csv_header(csv);
  write_csv_row(csv, rows[0]);
  std::string header;
  std::string line;
  std::istringstream in(csv.str());
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_EQ(header, "graph,n,nnz,avg_degree,rank,c,p,k,err,corr,rel_err,baseline_rel_err,seconds");
  EXPECT_EQ(line.rfind("rand,20,", 0), 0u);
  EXPECT_EQ(line.back(), ',');
  const auto again = sweep("rand", a, w, spec, defaults, [](const std::string&) {});
  EXPECT_EQ(again[5].err, rows[5].err);
}

}  // namespace
}  // namespace simrank
