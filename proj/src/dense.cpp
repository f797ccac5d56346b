#include "simrank/dense.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "binary_io.hpp"
#include "simrank/error.hpp"

namespace simrank {

namespace {
constexpr char kDenseMagic[] = "SRDM";
}

DenseSymMatrix::DenseSymMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) throw UsageError("dense SimRank matrix must be square");
  if (values_.size() > 0 && (values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw UsageError("dense SimRank matrix is not symmetric");
  }
}

DenseSymMatrix DenseSymMatrix::identity(Index n) {
  DenseSymMatrix s(n);
  s.values_.diagonal().setOnes();
  return s;
}

void write_dense_text(std::ostream& out, const DenseSymMatrix& s) {
  const auto old_precision = out.precision(17);
  const Index n = s.size();
  out << n << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out << (j ? " " : "") << s(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_dense_binary(std::ostream& out, const DenseSymMatrix& s) {
  out.write(kDenseMagic, 4);
  detail::write_u64_le(out, static_cast<std::uint64_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) {
    for (Index j = 0; j < s.size(); ++j) detail::write_f64_le(out, s(i, j));
  }
}

DenseSymMatrix read_dense(std::istream& in) {
  Eigen::MatrixXd values;
  if (detail::peek_magic(in) == kDenseMagic) {
    in.ignore(4);
    const auto n = detail::read_u64_le(in);
    if (n > static_cast<std::uint64_t>(kMaxVertices)) throw ParseError("dense matrix too large", 0);
    values.resize(static_cast<Index>(n), static_cast<Index>(n));
    for (Index i = 0; i < values.rows(); ++i) {
      for (Index j = 0; j < values.cols(); ++j) values(i, j) = detail::read_f64_le(in);
    }
  } else {
    Index n = -1;
    if (!(in >> n) || n < 0 || n >= kMaxVertices) throw ParseError("dense text: bad size header", 1);
    values.resize(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (!(in >> values(i, j))) throw ParseError("dense text: missing value", static_cast<std::size_t>(i + 2));
      }
    }
  }
  if (!values.allFinite()) throw NumericError("dense matrix contains non-finite values");
  return DenseSymMatrix(std::move(values));
}

}  // namespace simrank
