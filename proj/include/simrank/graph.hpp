#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace simrank {

using Index = Eigen::Index;

/// Vertex ids must stay below this bound; larger indices are rejected as overflow.
inline constexpr Index kMaxVertices = Index{1} << 31;

/// Directed edge src -> dst. In the adjacency matrix it is entry (src, dst), so
/// column dst lists the in-neighbours of dst.
struct Edge {
  Index src = 0;
  Index dst = 0;
  double weight = 1.0;
};

/// Compressed sparse column layout; row indices strictly increasing per column.
struct CscStorage {
  Index n = 0;
  std::vector<Index> col_ptr{0};
  std::vector<Index> row_idx;
  std::vector<double> values;

  bool operator==(const CscStorage&) const = default;
};

/// Raw weighted adjacency A. Square, no duplicate entries, all weights > 0.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;

  /// Duplicate (src, dst) pairs are merged by summing their weights. Throws
  /// UsageError on out-of-range indices or non-positive / non-finite weights.
  static AdjacencyMatrix from_edges(Index n, std::span<const Edge> edges);

  Index size() const noexcept { return csc_.n; }
  Index nnz() const noexcept { return static_cast<Index>(csc_.row_idx.size()); }

  std::span<const Index> in_neighbors(Index v) const;
  std::span<const double> in_weights(Index v) const;
  /// Weight of src -> dst, 0 when absent.
  double weight(Index src, Index dst) const;
  /// All edges in column-major order.
  std::vector<Edge> edges() const;

  const CscStorage& storage() const noexcept { return csc_; }

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  CscStorage csc_;
};

/// Sparse square matrix in CSC form; used for the column-normalized transition
/// matrix W. Immutable once built.
class SparseColMatrix {
 public:
  SparseColMatrix() = default;
  SparseColMatrix(CscStorage csc, bool normalized);

  Index size() const noexcept { return csc_.n; }
  Index nnz() const noexcept { return static_cast<Index>(csc_.row_idx.size()); }
  bool normalized() const noexcept { return normalized_; }

  std::span<const Index> column_rows(Index j) const;
  std::span<const double> column_values(Index j) const;

  /// y = W x
  void multiply_into(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> y) const;
  /// y = W^T x
  void multiply_transpose_into(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> y) const;

  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd multiply_transpose(const Eigen::MatrixXd& x) const;

  /// ||w_j||^2 for every column j.
  Eigen::VectorXd squared_column_norms() const;
  Eigen::MatrixXd to_dense() const;

  const CscStorage& storage() const noexcept { return csc_; }

 private:
  CscStorage csc_;
  bool normalized_ = false;
};

/// W = A D^{-1} with D the column sums; empty columns stay zero.
SparseColMatrix column_normalize(const AdjacencyMatrix& a);

/// Bijection between dense vertex ids [0, size) and string labels.
class VertexLabels {
 public:
  /// Id of `label`, assigning the next free id on first sight.
  Index intern(std::string_view label);
  std::optional<Index> find(std::string_view label) const;
  const std::string& label(Index id) const;
  Index size() const noexcept { return static_cast<Index>(names_.size()); }

  /// Up to `limit` labels (sorted) starting with `prefix`. When nothing matches,
  /// the prefix is shortened one character at a time until something does.
  std::vector<std::string> nearest_by_prefix(std::string_view prefix, std::size_t limit) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> ids_;
};

enum class Indexing { zero_based, one_based };

struct EdgeListOptions {
  Indexing indexing = Indexing::zero_based;
  /// Treat vertex tokens as arbitrary labels instead of integers.
  bool labeled = false;
};

struct ParsedGraph {
  AdjacencyMatrix adjacency;
  std::optional<VertexLabels> labels;
};

/// Lines are "src dst" or "src dst weight"; '#' starts a comment line.
/// Errors are ParseError carrying the offending line number.
ParsedGraph parse_edge_list(std::istream& in, const EdgeListOptions& options = {});

/// Accepts `%%MatrixMarket matrix coordinate (pattern|real|integer)
/// (general|symmetric)`. Indices are converted to 0-based; pattern entries get
/// weight 1; symmetric storage is expanded to both triangles.
AdjacencyMatrix parse_matrix_market(std::istream& in);

void write_edge_list(std::ostream& out, const AdjacencyMatrix& a, const VertexLabels* labels = nullptr);
void write_matrix_market(std::ostream& out, const AdjacencyMatrix& a);

enum class GraphFormat { edgelist, mtx };

GraphFormat parse_graph_format(std::string_view text);

/// Reads a graph file; IoError if it cannot be opened.
ParsedGraph load_graph(const std::filesystem::path& path, GraphFormat format,
                       const EdgeListOptions& options = {});

}  // namespace simrank
