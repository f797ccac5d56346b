#include "simrank/exact.hpp"

#include <string>

#include "simrank/error.hpp"
#include "simrank/spectral.hpp"

namespace simrank {

namespace {

void check_exact_config(const SolveConfig& cfg, Index n) {
  if (!(cfg.c > 0.0 && cfg.c < 1.0)) throw UsageError("decay c must lie in (0, 1)");
  if (cfg.iterations < 0) throw UsageError("iterations must be >= 0");
  cfg.require_dense(n);
}

}  // namespace

DenseSymMatrix simrank_pairwise_oracle(const AdjacencyMatrix& a, const SolveConfig& cfg) {
  const Index n = a.size();
  check_exact_config(cfg, n);

  std::vector<double> in_weight(static_cast<std::size_t>(n), 0.0);
  for (Index v = 0; v < n; ++v) {
    for (double w : a.in_weights(v)) in_weight[static_cast<std::size_t>(v)] += w;
  }

  Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd next(n, n);
  for (int k = 0; k < cfg.iterations; ++k) {
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        if (x == y) {
          next(x, y) = 1.0;
          continue;
        }
        const auto ix = a.in_neighbors(x), iy = a.in_neighbors(y);
        if (ix.empty() || iy.empty()) {
          next(x, y) = 0.0;
          continue;
        }
        const auto wx = a.in_weights(x), wy = a.in_weights(y);
        double sum = 0.0;
        for (std::size_t p = 0; p < ix.size(); ++p) {
          for (std::size_t q = 0; q < iy.size(); ++q) sum += wx[p] * wy[q] * prev(ix[p], iy[q]);
        }
        next(x, y) = cfg.c * sum / (in_weight[static_cast<std::size_t>(x)] * in_weight[static_cast<std::size_t>(y)]);
      }
    }
    std::swap(prev, next);
  }
  return DenseSymMatrix(std::move(prev));
}

DenseSymMatrix simrank_matrix_iter(const SparseColMatrix& w, const SolveConfig& cfg, const IterateObserver& observe) {
  const Index n = w.size();
  check_exact_config(cfg, n);
  if (!w.normalized()) throw UsageError("transition matrix must be column-normalized");

  const auto& csc = w.storage();
  DenseSymMatrix s = DenseSymMatrix::identity(n);
  Eigen::MatrixXd& cur = s.matrix();
  Eigen::MatrixXd sw(n, n);
  for (int k = 1; k <= cfg.iterations; ++k) {
    // sw = S W
#pragma omp parallel for schedule(dynamic, 16)
    for (Index j = 0; j < n; ++j) {
      sw.col(j).setZero();
      for (Index e = csc.col_ptr[j]; e < csc.col_ptr[j + 1]; ++e) sw.col(j) += csc.values[e] * cur.col(csc.row_idx[e]);
    }
    double change = 0.0;
    // next(a, b) = c * sum_{i in col a} W(i, a) sw(i, b), written over cur.
#pragma omp parallel for schedule(dynamic, 16) reduction(max : change)
    for (Index b = 0; b < n; ++b) {
      for (Index a = 0; a < n; ++a) {
        double acc = 0.0;
        for (Index e = csc.col_ptr[a]; e < csc.col_ptr[a + 1]; ++e) acc += csc.values[e] * sw(csc.row_idx[e], b);
        const double value = a == b ? 1.0 : cfg.c * acc;
        change = std::max(change, std::abs(value - cur(a, b)));
        cur(a, b) = value;
      }
    }
    // Both triangles are computed with different summation orders; average them.
    for (Index b = 0; b < n; ++b) {
      for (Index a = 0; a < b; ++a) cur(a, b) = cur(b, a) = 0.5 * (cur(a, b) + cur(b, a));
    }
    if (observe) observe(k, s);
    if (cfg.early_stop_tol && change < *cfg.early_stop_tol) break;
  }
  return s;
}

DenseSymMatrix best_rank_r_baseline(const DenseSymMatrix& s, Index rank) {
  if (rank < 1 || rank > s.size()) {
    throw UsageError("baseline rank " + std::to_string(rank) + " outside [1, " + std::to_string(s.size()) + "]");
  }
  const EigenPairs pairs = truncated_eig_dense(s.matrix(), rank, EigOrder::magnitude_desc);
  Eigen::MatrixXd recon = pairs.vectors * pairs.values.asDiagonal() * pairs.vectors.transpose();
  recon = 0.5 * (recon + recon.transpose()).eval();
  return DenseSymMatrix(std::move(recon));
}

}  // namespace simrank
