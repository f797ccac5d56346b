#pragma once

#include <iosfwd>

#include <Eigen/Core>

#include "simrank/graph.hpp"

namespace simrank {

/// Dense symmetric n x n matrix, e.g. an exact SimRank iterate.
class DenseSymMatrix {
 public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(Index n) : values_(Eigen::MatrixXd::Zero(n, n)) {}
  /// Throws UsageError unless `values` is square and symmetric within 1e-12.
  explicit DenseSymMatrix(Eigen::MatrixXd values);

  static DenseSymMatrix identity(Index n);

  Index size() const noexcept { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return values_; }
  Eigen::MatrixXd& matrix() noexcept { return values_; }

  bool operator==(const DenseSymMatrix& other) const { return values_ == other.values_; }

 private:
  Eigen::MatrixXd values_;
};

/// Text grid: first line n, then n rows of n values with 17 significant digits.
void write_dense_text(std::ostream& out, const DenseSymMatrix& s);

/// Binary layout: 4-byte magic "SRDM", little-endian u64 n, then n*n
/// little-endian f64 values in row-major order.
void write_dense_binary(std::ostream& out, const DenseSymMatrix& s);

/// Reads either layout, detected by the magic bytes.
DenseSymMatrix read_dense(std::istream& in);

}  // namespace simrank
