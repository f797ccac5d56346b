#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "simrank/config.hpp"
#include "simrank/graph.hpp"
#include "simrank/spectral.hpp"

namespace simrank {

/// S ~= I + U diag(D) U^T with orthonormal U (n x r).
struct LowRankFactor {
  Index n = 0;
  Eigen::MatrixXd U;
  Eigen::VectorXd D;
  double c = 0.0;
  int iterations_done = 0;
  std::uint64_t seed = 0;
  EigOrder order = EigOrder::algebraic_desc;

  Index rank() const noexcept { return D.size(); }

  /// D = 0 and U = first r canonical vectors, so the represented matrix is I.
  static LowRankFactor initial(Index n, Index rank, double c, std::uint64_t seed, EigOrder order);

  /// Dense I + U D U^T. Only for desk-scale n.
  Eigen::MatrixXd reconstruct() const;

  /// max |U^T U - I|.
  double orthonormality_error() const;

  /// Throws UsageError if the shapes of U, D and n disagree.
  void check_shape() const;
};

/// Binds W and a factor to the operator
///   M = c W^T (I + U D U^T) W - diag(c W^T (I + U D U^T) W),
/// which is never formed explicitly. Holds references: W and the factor must
/// outlive the handle.
class OperatorHandle {
 public:
  OperatorHandle(const SparseColMatrix& w, const LowRankFactor& factor);
  OperatorHandle(const SparseColMatrix& w, const LowRankFactor& factor, double c);

  Index size() const noexcept { return w_->size(); }
  double decay() const noexcept { return c_; }
  const SparseColMatrix& transition() const noexcept { return *w_; }
  const LowRankFactor& factor() const noexcept { return *factor_; }

  /// Entry i is c (||w_i||^2 + g_i^T diag(D) g_i) with g_i = U^T w_i.
  const Eigen::VectorXd& diagonal() const noexcept { return diag_; }

  /// M Z in O((nnz + n r) s); one n-vector of scratch per thread.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& z) const;

  /// Dense M, for the exact-eigendecomposition mode. O(n^2) memory.
  Eigen::MatrixXd materialize() const;

  SymmetricOperator as_operator() const;

 private:
  const SparseColMatrix* w_;
  const LowRankFactor* factor_;
  double c_;
  Eigen::VectorXd diag_;
};

Eigen::VectorXd diagonal_of_iterate(const OperatorHandle& h);
Eigen::MatrixXd operator_apply(const OperatorHandle& h, const Eigen::MatrixXd& z);

enum class SolveMode {
  randomized,       // randomized_eig on the implicit operator
  dense_exact_eig,  // full eigendecomposition of the materialized operator
};

SolveMode parse_solve_mode(std::string_view text);

using FactorObserver = std::function<void(const LowRankFactor&)>;
using WarningSink = std::function<void(const std::string&)>;

/// Factored SimRank iteration. Starting from LowRankFactor::initial, each of
/// cfg.iterations steps decomposes the operator bound to the current factor and
/// keeps cfg.rank eigenpairs ordered by cfg.order. Iteration i (0-based) of the
/// randomized mode draws its probes with seed cfg.seed + i. `warn` receives a
/// single message if the sampled range collapsed (defaults to std::clog).
LowRankFactor lowrank_simrank(const SparseColMatrix& w, const SolveConfig& cfg,
                              SolveMode mode = SolveMode::randomized, const FactorObserver& observe = {},
                              const WarningSink& warn = {});

enum class RefineForm {
  /// Row of I + X - diag(X), X = c W^T (I + U D U^T) W: one exact step of the
  /// matrix iteration on top of the factor. Self-score is exactly 1.
  one_step,
  /// Row of I + X - c W^T diag(W^T (I + U D U^T) W) W, the formula as printed.
  literal,
};

/// Evaluates rows of the one-step refined similarity matrix without forming it.
/// The diagonal correction is computed once (O(nnz r)); each row then costs
/// O(nnz + n r). Read-only and safe to share between threads.
class RowRefiner {
 public:
  RowRefiner(const SparseColMatrix& w, const LowRankFactor& factor, RefineForm form = RefineForm::one_step);

  Eigen::VectorXd row(Index a) const;

 private:
  const SparseColMatrix* w_;
  const LowRankFactor* factor_;
  RefineForm form_;
  Eigen::VectorXd diag_;
};

Eigen::VectorXd refine_query_row(const SparseColMatrix& w, const LowRankFactor& factor, Index a,
                                 RefineForm form = RefineForm::one_step);

}  // namespace simrank
