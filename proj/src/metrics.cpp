#include "simrank/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "simrank/error.hpp"
#include "simrank/exact.hpp"
#include "simrank/random.hpp"

namespace simrank {

namespace {

constexpr std::uint64_t kPowerIterationSeed = 0x5eed5eedULL;

void check_same_size(const DenseSymMatrix& x, const DenseSymMatrix& y) {
  if (x.size() != y.size()) {
    throw UsageError("matrices differ in size: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
}

std::string csv_number(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

double spectral_norm(const Eigen::MatrixXd& x, double tol, int max_iterations) {
  if (x.rows() != x.cols()) throw UsageError("spectral_norm needs a square matrix");
  if (x.size() == 0 || x.isZero(0.0)) return 0.0;
  if (!x.allFinite()) throw NumericError("spectral_norm input contains non-finite values");

  // power iteration on X^T X; the estimate is ||X v||
  Eigen::VectorXd v = GaussianSource(kPowerIterationSeed).matrix(x.rows(), 1).col(0);
  v.normalize();
  Eigen::VectorXd xv = x * v;
  double estimate = xv.norm();
  for (int it = 0; it < max_iterations && estimate > 0.0; ++it) {
    v.noalias() = x.transpose() * xv;
    v.normalize();
    xv.noalias() = x * v;
    const double next = xv.norm();
    const bool converged = std::abs(next - estimate) <= tol * next;
    estimate = next;
    if (converged) break;
  }
  return estimate;
}

double spectral_err(const DenseSymMatrix& exact, const DenseSymMatrix& approx) {
  check_same_size(exact, approx);
  const double ns = spectral_norm(exact.matrix());
  const double na = spectral_norm(approx.matrix());
  if (ns == 0.0 || na == 0.0) throw NumericError("spectral_err is undefined for a zero matrix");
  return spectral_norm(exact.matrix() / ns - approx.matrix() / na);
}

double offdiag_corr(const DenseSymMatrix& exact, const DenseSymMatrix& approx) {
  check_same_size(exact, approx);
  const Index n = exact.size();
  if (n < 2) throw NumericError("correlation needs at least two vertices");
  const auto& x = exact.matrix();
  const auto& y = approx.matrix();
  const double count = static_cast<double>(n * n - n);

  double sx = 0.0, sy = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      sx += x(i, j);
      sy += y(i, j);
    }
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      const double dx = x(i, j) - mx, dy = y(i, j) - my;
      sxx += dx * dx;
      syy += dy * dy;
      sxy += dx * dy;
    }
  }
  if (sxx == 0.0 || syy == 0.0) throw NumericError("correlation undefined: zero off-diagonal variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double relative_error(const DenseSymMatrix& exact, const DenseSymMatrix& approx) {
  check_same_size(exact, approx);
  const double denom = exact.matrix().norm();
  if (denom == 0.0) throw NumericError("relative error undefined for zero reference");
  return (exact.matrix() - approx.matrix()).norm() / denom;
}

std::size_t estimate_peak_bytes(Index n, Index nnz, Index rank, Index oversampling) {
  const auto doubles = 2 * n * (rank + oversampling) + 2 * n * rank + 2 * n;
  const auto csc = nnz * (sizeof(double) + sizeof(Index)) + (n + 1) * sizeof(Index);
  return static_cast<std::size_t>(doubles) * sizeof(double) + static_cast<std::size_t>(csc);
}

EvalReport evaluate(const std::string& graph, const AdjacencyMatrix& a, const SolveConfig& cfg,
                    const DenseSymMatrix& exact, const DenseSymMatrix& approx) {
  EvalReport r;
  r.graph = graph;
  r.n = a.size();
  r.nnz = a.nnz();
  r.avg_degree = r.n > 0 ? static_cast<double>(r.nnz) / static_cast<double>(r.n) : 0.0;
  r.rank = cfg.rank;
  r.c = cfg.c;
  r.p = cfg.oversampling;
  r.k = cfg.iterations;
  r.err = spectral_err(exact, approx);
  try {
    r.corr = offdiag_corr(exact, approx);
  } catch (const NumericError&) {
    r.corr.reset();
  }
  r.rel_err = relative_error(exact, approx);
  r.peak_bytes_estimate = estimate_peak_bytes(r.n, r.nnz, cfg.rank, cfg.oversampling);
  return r;
}

std::vector<EvalReport> sweep(const std::string& graph, const AdjacencyMatrix& a, const SparseColMatrix& w,
                              const SweepSpec& spec, const SolveConfig& defaults, const WarningSink& warn) {
  const Index n = w.size();
  defaults.require_dense(n);
  if (spec.ranks.empty() || spec.cs.empty() || spec.oversampling.empty()) {
    throw UsageError("sweep needs at least one rank, one c and one oversampling value");
  }

  std::vector<EvalReport> rows;
  std::uint64_t point = 0;
  for (double c : spec.cs) {
    SolveConfig exact_cfg = defaults;
    exact_cfg.c = c;
    exact_cfg.validate();
    const DenseSymMatrix exact = simrank_matrix_iter(w, exact_cfg);
    std::map<Index, double> baseline_cache;

    for (Index rank : spec.ranks) {
      for (Index p : spec.oversampling) {
        SolveConfig cfg = exact_cfg;
        cfg.rank = rank;
        cfg.oversampling = p;
        cfg.seed = defaults.seed + point++;
        cfg.validate_for(n);

        const auto start = std::chrono::steady_clock::now();
        const LowRankFactor f = lowrank_simrank(w, cfg, spec.mode, {}, warn);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        EvalReport report = evaluate(graph, a, cfg, exact, DenseSymMatrix(f.reconstruct()));
        if (spec.baseline) {
          auto it = baseline_cache.find(rank);
          if (it == baseline_cache.end()) {
            it = baseline_cache.emplace(rank, relative_error(exact, best_rank_r_baseline(exact, rank))).first;
          }
          report.baseline_rel_err = it->second;
        }
        if (spec.timing) report.seconds = elapsed.count();
        rows.push_back(std::move(report));
      }
    }
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "graph,n,nnz,avg_degree,rank,c,p,k,err,corr,rel_err,baseline_rel_err,seconds\n";
}

void write_csv_row(std::ostream& out, const EvalReport& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); };
  out << csv_escape(r.graph) << ',' << r.n << ',' << r.nnz << ',' << csv_number(r.avg_degree) << ',' << r.rank << ','
      << csv_number(r.c) << ',' << r.p << ',' << r.k << ',' << csv_number(r.err) << ',' << opt(r.corr) << ','
      << csv_number(r.rel_err) << ',' << opt(r.baseline_rel_err) << ',' << opt(r.seconds) << '\n';
}

}  // namespace simrank
