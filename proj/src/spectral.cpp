#include "simrank/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "simrank/error.hpp"
#include "simrank/random.hpp"

namespace simrank {

namespace {

constexpr double kRangeTolerance = 1e-12;

void normalize_signs(Eigen::MatrixXd& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index pivot = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&pivot);
    if (vectors(pivot, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

EigenPairs select_pairs(const Eigen::VectorXd& values, const Eigen::MatrixXd& basis_vectors, Index rank,
                        EigOrder order) {
  const auto keep = select_eigen_indices(values, rank, order);
  EigenPairs out;
  out.values.resize(static_cast<Index>(keep.size()));
  out.vectors.resize(basis_vectors.rows(), static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.values[static_cast<Index>(j)] = values[keep[j]];
    out.vectors.col(static_cast<Index>(j)) = basis_vectors.col(keep[j]);
  }
  return out;
}

// Appends columns to `u` until it has `target` orthonormal columns, taking
// canonical vectors least represented in span(u) first.
void complete_orthonormal_basis(Eigen::MatrixXd& u, Index target) {
  const Index n = u.rows();
  Index have = u.cols();
  u.conservativeResize(n, target);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Eigen::VectorXd weight = u.leftCols(have).rowwise().squaredNorm();
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return weight[a] < weight[b]; });

  for (Index candidate : order) {
    if (have == target) break;
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, candidate);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd proj = u.leftCols(have).transpose() * v;
      v.noalias() -= u.leftCols(have) * proj;
    }
    const double norm = v.norm();
    if (norm > 0.5) u.col(have++) = v / norm;
  }
  if (have != target) throw NumericError("could not complete an orthonormal basis");
}

}  // namespace

std::vector<Index> select_eigen_indices(const Eigen::VectorXd& values, Index rank, EigOrder order) {
  std::vector<Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  if (order == EigOrder::algebraic_desc) {
    std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return values[a] > values[b]; });
  } else {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](Index a, Index b) { return std::abs(values[a]) > std::abs(values[b]); });
  }
  idx.resize(static_cast<std::size_t>(std::min<Index>(rank, values.size())));
  return idx;
}

EigenPairs truncated_eig_dense(const Eigen::MatrixXd& m, Index rank, EigOrder order) {
  if (m.rows() != m.cols()) throw UsageError("eigendecomposition needs a square matrix");
  if (rank < 1 || rank > m.rows()) {
    throw UsageError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(m.rows()) + "]");
  }
  if (!m.allFinite()) throw NumericError("eigendecomposition input contains non-finite values");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  EigenPairs out = select_pairs(solver.eigenvalues(), solver.eigenvectors(), rank, order);
  normalize_signs(out.vectors);
  return out;
}

RandomizedEigResult randomized_eig(const SymmetricOperator& op, Index n, Index rank, Index oversampling,
                                   std::uint64_t seed, EigOrder order) {
  if (rank < 1) throw UsageError("rank must be >= 1");
  if (oversampling < 0) throw UsageError("oversampling must be >= 0");
  const Index samples = rank + oversampling;
  if (samples > n) {
    throw UsageError("rank + oversampling (" + std::to_string(samples) + ") exceeds n = " + std::to_string(n));
  }

  Eigen::MatrixXd y = GaussianSource(seed).matrix(n, samples);
  y = op(y);
  if (y.rows() != n || y.cols() != samples) throw UsageError("operator returned a block of the wrong shape");
  if (!y.allFinite()) throw NumericError("operator produced non-finite values");

  // Householder QR in place; R (samples x samples) has the singular values of Y.
  Eigen::HouseholderQR<Eigen::Ref<Eigen::MatrixXd>> qr(y);
  const Eigen::MatrixXd r_factor = y.topRows(samples).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_factor, Eigen::ComputeFullU);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma[0] : 0.0;
  Index basis_rank = 0;
  while (basis_rank < sigma.size() && sigma[basis_rank] > kRangeTolerance * sigma_max) ++basis_rank;

  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, samples);
  qr.householderQ().applyThisOnTheLeft(q);
  if (basis_rank < samples) q = q * svd.matrixU().leftCols(basis_rank);
  y.resize(0, 0);

  RandomizedEigResult result;
  result.basis_rank = basis_rank;
  if (basis_rank > 0) {
    Eigen::MatrixXd b = q.transpose() * op(q);
    b = 0.5 * (b + b.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success) throw NumericError("projected eigenproblem did not converge");
    EigenPairs small = select_pairs(solver.eigenvalues(), solver.eigenvectors(), rank, order);
    result.pairs.values = std::move(small.values);
    result.pairs.vectors = q * small.vectors;
  } else {
    result.pairs.vectors.resize(n, 0);
  }
  q.resize(0, 0);

  const Index found = result.pairs.values.size();
  if (found < rank) {
    complete_orthonormal_basis(result.pairs.vectors, rank);
    result.pairs.values.conservativeResize(rank);
    result.pairs.values.tail(rank - found).setZero();
    result.pairs = select_pairs(result.pairs.values, result.pairs.vectors, rank, order);
  }
  normalize_signs(result.pairs.vectors);
  return result;
}

}  // namespace simrank
