#include "simrank/lowrank.hpp"

#include <algorithm>
#include <iostream>
#include <string>

#include "simrank/error.hpp"

namespace simrank {

namespace {

// c (||w_i||^2 + g_i^T diag(D) g_i), g_i = U^T w_i.
Eigen::VectorXd iterate_diagonal(const SparseColMatrix& w, const LowRankFactor& f, double c) {
  const Index n = w.size();
  const auto& csc = w.storage();
  Eigen::VectorXd diag(n);
#pragma omp parallel
  {
    Eigen::VectorXd g(f.rank());
#pragma omp for schedule(static)
    for (Index i = 0; i < n; ++i) {
      double self = 0.0;
      g.setZero();
      for (Index e = csc.col_ptr[i]; e < csc.col_ptr[i + 1]; ++e) {
        const double v = csc.values[e];
        self += v * v;
        if (f.rank() > 0) g.noalias() += v * f.U.row(csc.row_idx[e]).transpose();
      }
      diag[i] = c * (self + g.cwiseAbs2().dot(f.D));
    }
  }
  return diag;
}

void check_binding(const SparseColMatrix& w, const LowRankFactor& f) {
  f.check_shape();
  if (!w.normalized()) throw UsageError("transition matrix must be column-normalized");
  if (f.n != w.size()) {
    throw UsageError("factor has n = " + std::to_string(f.n) + " but the graph has " + std::to_string(w.size()) +
                     " vertices");
  }
}

}  // namespace

LowRankFactor LowRankFactor::initial(Index n, Index rank, double c, std::uint64_t seed, EigOrder order) {
  if (rank < 1 || rank > n) throw UsageError("rank must lie in [1, n]");
  LowRankFactor f;
  f.n = n;
  f.U = Eigen::MatrixXd::Identity(n, rank);
  f.D = Eigen::VectorXd::Zero(rank);
  f.c = c;
  f.seed = seed;
  f.order = order;
  return f;
}

Eigen::MatrixXd LowRankFactor::reconstruct() const {
  check_shape();
  Eigen::MatrixXd s = U * D.asDiagonal() * U.transpose();
  s.diagonal().array() += 1.0;
  return s;
}

double LowRankFactor::orthonormality_error() const {
  if (rank() == 0) return 0.0;
  return (U.transpose() * U - Eigen::MatrixXd::Identity(rank(), rank())).cwiseAbs().maxCoeff();
}

void LowRankFactor::check_shape() const {
  if (U.rows() != n || U.cols() != D.size()) {
    throw UsageError("factor shape mismatch: U is " + std::to_string(U.rows()) + "x" + std::to_string(U.cols()) +
                     ", D has " + std::to_string(D.size()) + " entries, n = " + std::to_string(n));
  }
}

OperatorHandle::OperatorHandle(const SparseColMatrix& w, const LowRankFactor& factor)
    : OperatorHandle(w, factor, factor.c) {}

OperatorHandle::OperatorHandle(const SparseColMatrix& w, const LowRankFactor& factor, double c)
    : w_(&w), factor_(&factor), c_(c) {
  check_binding(w, factor);
  diag_ = iterate_diagonal(w, factor, c);
}

Eigen::MatrixXd OperatorHandle::apply(const Eigen::MatrixXd& z) const {
  const Index n = size();
  if (z.rows() != n) {
    throw UsageError("operator expects " + std::to_string(n) + " rows, got " + std::to_string(z.rows()));
  }
  const LowRankFactor& f = *factor_;
  Eigen::MatrixXd out(n, z.cols());
#pragma omp parallel
  {
    Eigen::VectorXd t(n);
    Eigen::VectorXd g(f.rank());
#pragma omp for schedule(static)
    for (Index j = 0; j < z.cols(); ++j) {
      w_->multiply_into(z.col(j), t);
      if (f.rank() > 0) {
        g.noalias() = f.U.transpose() * t;
        g.array() *= f.D.array();
        t.noalias() += f.U * g;
      }
      w_->multiply_transpose_into(t, out.col(j));
      out.col(j) = c_ * out.col(j) - diag_.cwiseProduct(z.col(j));
    }
  }
  return out;
}

Eigen::MatrixXd OperatorHandle::materialize() const {
  const LowRankFactor& f = *factor_;
  const Eigen::MatrixXd p = w_->multiply_transpose(f.U);
  Eigen::MatrixXd m = w_->multiply_transpose(w_->to_dense());
  m.noalias() += p * f.D.asDiagonal() * p.transpose();
  m *= c_;
  m = 0.5 * (m + m.transpose()).eval();
  m.diagonal().setZero();
  return m;
}

SymmetricOperator OperatorHandle::as_operator() const {
  return [this](const Eigen::MatrixXd& z) { return apply(z); };
}

Eigen::VectorXd diagonal_of_iterate(const OperatorHandle& h) { return h.diagonal(); }

Eigen::MatrixXd operator_apply(const OperatorHandle& h, const Eigen::MatrixXd& z) { return h.apply(z); }

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "randomized") return SolveMode::randomized;
  if (text == "dense_exact_eig" || text == "dense") return SolveMode::dense_exact_eig;
  throw UsageError("unknown solve mode '" + std::string(text) + "' (expected randomized or dense_exact_eig)");
}

LowRankFactor lowrank_simrank(const SparseColMatrix& w, const SolveConfig& cfg, SolveMode mode,
                              const FactorObserver& observe, const WarningSink& warn) {
  const Index n = w.size();
  cfg.validate_for(n);
  if (!w.normalized()) throw UsageError("transition matrix must be column-normalized");
  if (mode == SolveMode::dense_exact_eig) cfg.require_dense(n);

  const Index samples = cfg.rank + cfg.oversampling;
  LowRankFactor f = LowRankFactor::initial(n, cfg.rank, cfg.c, cfg.seed, cfg.order);
  int collapsed = 0;
  Index smallest_basis = samples;

  for (int it = 0; it < cfg.iterations; ++it) {
    EigenPairs next;
    {
      const OperatorHandle h(w, f, cfg.c);
      if (mode == SolveMode::randomized) {
        RandomizedEigResult r = randomized_eig(h.as_operator(), n, cfg.rank, cfg.oversampling,
                                               cfg.seed + static_cast<std::uint64_t>(it), cfg.order);
        if (r.basis_rank < samples) {
          ++collapsed;
          smallest_basis = std::min(smallest_basis, r.basis_rank);
        }
        next = std::move(r.pairs);
      } else {
        next = truncated_eig_dense(h.materialize(), cfg.rank, cfg.order);
      }
    }
    f.U = std::move(next.vectors);
    f.D = std::move(next.values);
    f.iterations_done = it + 1;
    if (observe) observe(f);
  }

  if (collapsed > 0) {
    const std::string msg = "randomized range collapsed in " + std::to_string(collapsed) + " of " +
                            std::to_string(cfg.iterations) + " iterations (basis rank down to " +
                            std::to_string(smallest_basis) + " of " + std::to_string(samples) +
                            "); missing eigenvalues padded with zeros";
    if (warn) {
      warn(msg);
    } else {
      std::clog << "warning: " << msg << '\n';
    }
  }
  return f;
}

RowRefiner::RowRefiner(const SparseColMatrix& w, const LowRankFactor& factor, RefineForm form)
    : w_(&w), factor_(&factor), form_(form) {
  check_binding(w, factor);
  if (form_ == RefineForm::literal) diag_ = iterate_diagonal(w, factor, factor.c);
}

Eigen::VectorXd RowRefiner::row(Index a) const {
  const Index n = w_->size();
  if (a < 0 || a >= n) throw UsageError("vertex " + std::to_string(a) + " out of range [0, " + std::to_string(n) + ")");
  const LowRankFactor& f = *factor_;
  const auto rows = w_->column_rows(a);
  const auto vals = w_->column_values(a);

  // t = (I + U D U^T) w_a
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < rows.size(); ++k) t[rows[k]] = vals[k];
  if (f.rank() > 0) {
    Eigen::VectorXd g = f.U.transpose() * t;
    g.array() *= f.D.array();
    t.noalias() += f.U * g;
  }
  Eigen::VectorXd out(n);
  w_->multiply_transpose_into(t, out);
  out *= f.c;

  if (form_ == RefineForm::one_step) {
    out[a] = 1.0;
    return out;
  }
  // literal: subtract W^T (diag .* w_a)
  t.setZero();
  for (std::size_t k = 0; k < rows.size(); ++k) t[rows[k]] = diag_[rows[k]] * vals[k];
  Eigen::VectorXd correction(n);
  w_->multiply_transpose_into(t, correction);
  out -= correction;
  out[a] += 1.0;
  return out;
}

Eigen::VectorXd refine_query_row(const SparseColMatrix& w, const LowRankFactor& factor, Index a, RefineForm form) {
  return RowRefiner(w, factor, form).row(a);
}

}  // namespace simrank
