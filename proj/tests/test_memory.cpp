#include <gtest/gtest.h>

#include "alloc_counter.hpp"
#include "generators.hpp"
#include "simrank/lowrank.hpp"

namespace simrank {
namespace {

TEST(Memory, CounterSeesEigenAllocations) {
  testing::reset_alloc_peak();
  const auto before = testing::alloc_stats();
  {
    const Eigen::MatrixXd m = Eigen::MatrixXd::Zero(100, 100);
    EXPECT_GE(testing::alloc_stats().live_bytes, before.live_bytes + 80000);
  }
  EXPECT_TRUE(testing::alloc_counter_active());
  EXPECT_GE(testing::alloc_stats().largest_block, 80000u);
}

TEST(Memory, RandomizedSolveStaysLinearInN) {
  const Index n = 1024;
  const Index r = 16;
  const Index p = 4;
  const SparseColMatrix w = column_normalize(testing::random_sparse_symmetric(n, 6, 1));
  SolveConfig cfg;
  cfg.rank = r;
  cfg.oversampling = p;
  cfg.iterations = 3;
  testing::reset_alloc_peak();
  const auto before = testing::alloc_stats();
  LowRankFactor f = lowrank_simrank(w, cfg);
  const auto after = testing::alloc_stats();
  const std::size_t doubles = (after.peak_bytes - before.live_bytes) / sizeof(double);
  EXPECT_LE(doubles, static_cast<std::size_t>(4 * n * (r + p)));
  EXPECT_LT(after.largest_block, static_cast<std::size_t>(n * n) * sizeof(double) / 8);
  EXPECT_EQ(f.rank(), r);
}

}  // namespace
}  // namespace simrank
