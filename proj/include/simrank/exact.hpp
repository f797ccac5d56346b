#pragma once

#include <functional>

#include "simrank/config.hpp"
#include "simrank/dense.hpp"
#include "simrank/graph.hpp"

namespace simrank {

/// Receives each dense iterate S_k, k = 1, 2, ...
using IterateObserver = std::function<void(int iteration, const DenseSymMatrix& s)>;

/// Literal pairwise recursion: R_0 = I and, for a != b with both in-neighbour
/// sets non-empty,
///   R_{k+1}(a, b) = c / (|I(a)| |I(b)|) * sum_{v in I(a), w in I(b)} R_k(v, w).
/// Weighted edges enter as multiplicities. Runs cfg.iterations steps (0 allowed);
/// only c, iterations and dense_limit are read. O(k n^2 d^2) work.
DenseSymMatrix simrank_pairwise_oracle(const AdjacencyMatrix& a, const SolveConfig& cfg);

/// Matrix-form iteration S_{k+1} = c W^T S_k W - c diag(W^T S_k W) + I from
/// S_0 = I; W must be column-normalized. Stops after cfg.iterations steps, or
/// earlier when cfg.early_stop_tol is set and the max entry change drops below
/// it. O(n^2) memory, O(n nnz) work per step.
DenseSymMatrix simrank_matrix_iter(const SparseColMatrix& w, const SolveConfig& cfg,
                                   const IterateObserver& observe = {});

/// Best rank-r reconstruction of S: keep the r eigenpairs of largest magnitude.
DenseSymMatrix best_rank_r_baseline(const DenseSymMatrix& s, Index rank);

}  // namespace simrank
