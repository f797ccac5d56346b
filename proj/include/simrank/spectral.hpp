#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "simrank/config.hpp"

namespace simrank {

/// Eigenpairs (U, D): U has orthonormal columns, D is ordered per EigOrder.
/// Each eigenvector's largest-magnitude entry is made positive (first such
/// entry on ties), so results are sign-stable.
struct EigenPairs {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
};

/// Applies a symmetric linear operator to a block of column vectors.
using SymmetricOperator = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

/// Full symmetric eigendecomposition of `m`, keeping `rank` pairs by `order`.
/// Throws UsageError if rank is outside [1, n], NumericError on non-finite input.
EigenPairs truncated_eig_dense(const Eigen::MatrixXd& m, Index rank, EigOrder order);

struct RandomizedEigResult {
  EigenPairs pairs;
  /// Numerical rank of the sampled range; below rank + oversampling signals
  /// rank collapse. When it is below `rank`, the trailing columns of
  /// pairs.vectors complete an orthonormal basis and carry zero eigenvalues.
  Index basis_rank = 0;
};

/// Randomized (range-sampling) eigendecomposition of a symmetric operator:
///   Z  = n x (rank + oversampling) standard normals from GaussianSource(seed)
///   Y  = op(Z);  Q = orthonormal basis of range(Y), dropping directions whose
///        singular value is <= 1e-12 * the largest one
///   B  = Q^T op(Q);  B = V diag(l) V^T;  keep `rank` pairs by `order`
///   U  = Q V
/// Bit-for-bit deterministic for a given seed and thread count.
RandomizedEigResult randomized_eig(const SymmetricOperator& op, Index n, Index rank, Index oversampling,
                                   std::uint64_t seed, EigOrder order);

/// Indices of the `rank` entries of `values` selected by `order`, in order.
std::vector<Index> select_eigen_indices(const Eigen::VectorXd& values, Index rank, EigOrder order);

}  // namespace simrank
