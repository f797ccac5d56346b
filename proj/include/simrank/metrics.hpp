#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "simrank/config.hpp"
#include "simrank/dense.hpp"
#include "simrank/graph.hpp"
#include "simrank/lowrank.hpp"

namespace simrank {

/// ||X||_2 by power iteration on X^T X (deterministic start vector), stopping
/// when the estimate changes by less than tol relative, or after max_iterations. Returns 0 for the zero matrix.
double spectral_norm(const Eigen::MatrixXd& x, double tol = 1e-8, int max_iterations = 1000);

/// || S / ||S||_2 - A / ||A||_2 ||_2. NumericError if either input is zero.
double spectral_err(const DenseSymMatrix& exact, const DenseSymMatrix& approx);

/// Pearson correlation over the n^2 - n off-diagonal entries. NumericError when
/// n < 2 or either operand has zero off-diagonal variance.
double offdiag_corr(const DenseSymMatrix& exact, const DenseSymMatrix& approx);

/// ||S - A||_F / ||S||_F. NumericError for zero S.
double relative_error(const DenseSymMatrix& exact, const DenseSymMatrix& approx);

struct EvalReport {
  std::string graph;
  Index n = 0;
  Index nnz = 0;
  double avg_degree = 0.0;
  Index rank = 0;
  double c = 0.0;
  Index p = 0;
  int k = 0;
  double err = 0.0;
  /// Empty when the off-diagonal variance vanishes.
  std::optional<double> corr;
  double rel_err = 0.0;
  std::optional<double> baseline_rel_err;
  /// Wall time of the low-rank solve; empty unless timing was requested.
  std::optional<double> seconds;
  /// Analytic bound on the randomized solver's working set, in bytes.
  std::size_t peak_bytes_estimate = 0;
};

/// 8 * (2 n (r + p) + 2 n r + 2 n) + CSC storage of W.
std::size_t estimate_peak_bytes(Index n, Index nnz, Index rank, Index oversampling);

/// Fills the metric fields of a report comparing `approx` against `exact`.
EvalReport evaluate(const std::string& graph, const AdjacencyMatrix& a, const SolveConfig& cfg,
                    const DenseSymMatrix& exact, const DenseSymMatrix& approx);

struct SweepSpec {
  std::vector<Index> ranks;
  std::vector<double> cs;
  std::vector<Index> oversampling{0};
  SolveMode mode = SolveMode::randomized;
  bool baseline = true;
  bool timing = false;
};

/// Every (c, rank, p) combination in that nesting order. Point i uses seed
/// defaults.seed + i; the exact S is computed once per c with defaults.iterations
/// steps. Needs n <= defaults.dense_limit.
std::vector<EvalReport> sweep(const std::string& graph, const AdjacencyMatrix& a, const SparseColMatrix& w,
                              const SweepSpec& spec, const SolveConfig& defaults, const WarningSink& warn = {});

/// `graph,n,nnz,avg_degree,rank,c,p,k,err,corr,rel_err,baseline_rel_err,seconds`
/// err is the normalized spectral-norm error, rel_err and baseline_rel_err are
/// Frobenius-relative. Missing values are written as empty fields.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const EvalReport& report);

}  // namespace simrank
