#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "simrank/dense.hpp"
#include "simrank/error.hpp"
#include "simrank/factor_io.hpp"

namespace simrank {
namespace {

LowRankFactor sample_factor() {
  std::mt19937_64 rng(9);
  LowRankFactor f = testing::random_factor(6, 3, rng, false);
  f.c = 0.35;
  f.iterations_done = 7;
  f.seed = 99;
  return f;
}

TEST(FactorIo, TextRoundTripIsExact) {
  const LowRankFactor f = sample_factor();
  std::stringstream s;
  write_factor_text(s, f);
  const LowRankFactor g = read_factor(s);
  EXPECT_EQ(g.n, 6);
  EXPECT_TRUE(g.U == f.U);
  EXPECT_TRUE(g.D == f.D);
  EXPECT_EQ(g.c, 0.35);
  EXPECT_EQ(g.iterations_done, 7);
  EXPECT_EQ(g.seed, 99u);
}

TEST(FactorIo, BinaryRoundTripIsExact) {
  const LowRankFactor f = sample_factor();
  std::stringstream s;
  write_factor_binary(s, f);
  EXPECT_EQ(s.str().substr(0, 4), "SRLR");
  const LowRankFactor g = read_factor(s);
  EXPECT_TRUE(g.U == f.U);
  EXPECT_TRUE(g.D == f.D);
  EXPECT_EQ(g.c, 0.35);
}

TEST(FactorIo, FilesChooseLayout) {
  const auto dir = std::filesystem::temp_directory_path();
  const LowRankFactor f = sample_factor();
  save_factor(dir / "simrank_io_test.srlr", f);
  save_factor(dir / "simrank_io_test.txt", f);
  save_factor(dir / "simrank_io_test.bin", f, true);
  EXPECT_TRUE(load_factor(dir / "simrank_io_test.srlr").U == f.U);
  EXPECT_TRUE(load_factor(dir / "simrank_io_test.txt").U == f.U);
  EXPECT_TRUE(load_factor(dir / "simrank_io_test.bin").U == f.U);
  EXPECT_THROW(load_factor(dir / "simrank_io_missing.txt"), IoError);
}

TEST(FactorIo, RejectsMalformed) {
  std::istringstream empty("");
  EXPECT_THROW(read_factor(empty), ParseError);
  std::istringstream truncated("simrank-factor v1\n2 1 0.5 1 1\n1\n0.5\n");
  EXPECT_THROW(read_factor(truncated), ParseError);
  std::istringstream bad_c("simrank-factor v1\n1 1 1.5 1 1\n1\n1\n");
  EXPECT_THROW(read_factor(bad_c), ParseError);
}

TEST(DenseIo, TextAndBinaryRoundTrip) {
  Eigen::MatrixXd m(3, 3);
  m << 1, 0.1, 1.0 / 3.0, 0.1, 1, 0.2, 1.0 / 3.0, 0.2, 1;
  const DenseSymMatrix s(m);
  std::stringstream text;
  write_dense_text(text, s);
  EXPECT_EQ(read_dense(text), s);
  std::stringstream bin;
  write_dense_binary(bin, s);
  EXPECT_EQ(read_dense(bin), s);
}

TEST(DenseIo, RejectsAsymmetric) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW(DenseSymMatrix{m}, UsageError);
  std::istringstream in("2\n1 0.5\n0 1\n");
  EXPECT_THROW(read_dense(in), UsageError);
}

}  // namespace
}  // namespace simrank
