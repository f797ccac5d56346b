#include "simrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "simrank/error.hpp"

namespace simrank {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

// Parses a vertex index as written in the file (before base conversion).
Index parse_index(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("index overflow: '" + std::string(token) + "'", line_no);
  }
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("malformed vertex index '" + std::string(token) + "'", line_no);
  }
  if (value < 0) throw ParseError("negative index " + std::string(token), line_no);
  if (value >= kMaxVertices) {
    throw ParseError("index overflow: " + std::string(token) + " exceeds vertex limit", line_no);
  }
  return static_cast<Index>(value);
}

double parse_weight(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("malformed weight '" + std::string(token) + "'", line_no);
  }
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParseError("weight must be positive and finite, got " + std::string(token), line_no);
  }
  return value;
}

void check_column(const CscStorage& csc, Index j) {
  if (j < 0 || j >= csc.n) {
    throw UsageError("column " + std::to_string(j) + " out of range [0, " + std::to_string(csc.n) + ")");
  }
}

}  // namespace

UnknownLabelError::UnknownLabelError(const std::string& label, std::vector<std::string> candidates)
    : UsageError([&] {
        std::string msg = "unknown label '" + label + "'";
        if (!candidates.empty()) {
          msg += "; did you mean:";
          for (const auto& c : candidates) msg += " '" + c + "'";
        }
        return msg;
      }()),
      candidates_(std::move(candidates)) {}

AdjacencyMatrix AdjacencyMatrix::from_edges(Index n, std::span<const Edge> edges) {
  if (n < 0 || n > kMaxVertices) throw UsageError("vertex count out of range: " + std::to_string(n));
  std::vector<Edge> sorted(edges.begin(), edges.end());
  for (const Edge& e : sorted) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw UsageError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                       ") outside [0, " + std::to_string(n) + ")");
    }
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw UsageError("edge weight must be positive and finite");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Edge& x, const Edge& y) {
    return x.dst != y.dst ? x.dst < y.dst : x.src < y.src;
  });

  AdjacencyMatrix a;
  CscStorage& csc = a.csc_;
  csc.n = n;
  csc.col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  csc.row_idx.reserve(sorted.size());
  csc.values.reserve(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const Edge& e = sorted[k];
    if (k > 0 && sorted[k - 1].dst == e.dst && sorted[k - 1].src == e.src) {
      csc.values.back() += e.weight;
      continue;
    }
    csc.row_idx.push_back(e.src);
    csc.values.push_back(e.weight);
    ++csc.col_ptr[static_cast<std::size_t>(e.dst) + 1];
  }
  for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) csc.col_ptr[j + 1] += csc.col_ptr[j];
  return a;
}

std::span<const Index> AdjacencyMatrix::in_neighbors(Index v) const {
  check_column(csc_, v);
  const auto b = csc_.col_ptr[v], e = csc_.col_ptr[v + 1];
  return {csc_.row_idx.data() + b, static_cast<std::size_t>(e - b)};
}

std::span<const double> AdjacencyMatrix::in_weights(Index v) const {
  check_column(csc_, v);
  const auto b = csc_.col_ptr[v], e = csc_.col_ptr[v + 1];
  return {csc_.values.data() + b, static_cast<std::size_t>(e - b)};
}

double AdjacencyMatrix::weight(Index src, Index dst) const {
  const auto rows = in_neighbors(dst);
  const auto it = std::lower_bound(rows.begin(), rows.end(), src);
  if (it == rows.end() || *it != src) return 0.0;
  return in_weights(dst)[static_cast<std::size_t>(it - rows.begin())];
}

std::vector<Edge> AdjacencyMatrix::edges() const {
  std::vector<Edge> out;
  out.reserve(csc_.row_idx.size());
  for (Index j = 0; j < csc_.n; ++j) {
    for (Index k = csc_.col_ptr[j]; k < csc_.col_ptr[j + 1]; ++k) {
      out.push_back({csc_.row_idx[k], j, csc_.values[k]});
    }
  }
  return out;
}

SparseColMatrix::SparseColMatrix(CscStorage csc, bool normalized)
    : csc_(std::move(csc)), normalized_(normalized) {
  if (csc_.col_ptr.size() != static_cast<std::size_t>(csc_.n) + 1 ||
      csc_.row_idx.size() != csc_.values.size() ||
      static_cast<std::size_t>(csc_.col_ptr.back()) != csc_.row_idx.size()) {
    throw UsageError("inconsistent CSC storage");
  }
}

std::span<const Index> SparseColMatrix::column_rows(Index j) const {
  check_column(csc_, j);
  const auto b = csc_.col_ptr[j], e = csc_.col_ptr[j + 1];
  return {csc_.row_idx.data() + b, static_cast<std::size_t>(e - b)};
}

std::span<const double> SparseColMatrix::column_values(Index j) const {
  check_column(csc_, j);
  const auto b = csc_.col_ptr[j], e = csc_.col_ptr[j + 1];
  return {csc_.values.data() + b, static_cast<std::size_t>(e - b)};
}

void SparseColMatrix::multiply_into(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> y) const {
  if (x.size() != csc_.n || y.size() != csc_.n) throw UsageError("W * x: dimension mismatch");
  y.setZero();
  for (Index j = 0; j < csc_.n; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (Index k = csc_.col_ptr[j]; k < csc_.col_ptr[j + 1]; ++k) y[csc_.row_idx[k]] += csc_.values[k] * xj;
  }
}

void SparseColMatrix::multiply_transpose_into(Eigen::Ref<const Eigen::VectorXd> x,
                                              Eigen::Ref<Eigen::VectorXd> y) const {
  if (x.size() != csc_.n || y.size() != csc_.n) throw UsageError("W^T * x: dimension mismatch");
  for (Index j = 0; j < csc_.n; ++j) {
    double acc = 0.0;
    for (Index k = csc_.col_ptr[j]; k < csc_.col_ptr[j + 1]; ++k) acc += csc_.values[k] * x[csc_.row_idx[k]];
    y[j] = acc;
  }
}

Eigen::MatrixXd SparseColMatrix::multiply(const Eigen::MatrixXd& x) const {
  if (x.rows() != csc_.n) throw UsageError("W * X: dimension mismatch");
  Eigen::MatrixXd y(csc_.n, x.cols());
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < x.cols(); ++c) multiply_into(x.col(c), y.col(c));
  return y;
}

Eigen::MatrixXd SparseColMatrix::multiply_transpose(const Eigen::MatrixXd& x) const {
  if (x.rows() != csc_.n) throw UsageError("W^T * X: dimension mismatch");
  Eigen::MatrixXd y(csc_.n, x.cols());
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < x.cols(); ++c) multiply_transpose_into(x.col(c), y.col(c));
  return y;
}

Eigen::VectorXd SparseColMatrix::squared_column_norms() const {
  Eigen::VectorXd out(csc_.n);
  for (Index j = 0; j < csc_.n; ++j) {
    double acc = 0.0;
    for (Index k = csc_.col_ptr[j]; k < csc_.col_ptr[j + 1]; ++k) acc += csc_.values[k] * csc_.values[k];
    out[j] = acc;
  }
  return out;
}

Eigen::MatrixXd SparseColMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(csc_.n, csc_.n);
  for (Index j = 0; j < csc_.n; ++j) {
    for (Index k = csc_.col_ptr[j]; k < csc_.col_ptr[j + 1]; ++k) out(csc_.row_idx[k], j) = csc_.values[k];
  }
  return out;
}

SparseColMatrix column_normalize(const AdjacencyMatrix& a) {
  CscStorage csc = a.storage();
  for (Index j = 0; j < csc.n; ++j) {
    const auto b = csc.col_ptr[j], e = csc.col_ptr[j + 1];
    double sum = 0.0;
    for (Index k = b; k < e; ++k) sum += csc.values[k];
    for (Index k = b; k < e; ++k) csc.values[k] /= sum;
  }
  return SparseColMatrix(std::move(csc), true);
}

Index VertexLabels::intern(std::string_view label) {
  std::string key(label);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const Index id = size();
  names_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<Index> VertexLabels::find(std::string_view label) const {
  if (auto it = ids_.find(std::string(label)); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& VertexLabels::label(Index id) const {
  if (id < 0 || id >= size()) throw UsageError("no label for vertex " + std::to_string(id));
  return names_[static_cast<std::size_t>(id)];
}

std::vector<std::string> VertexLabels::nearest_by_prefix(std::string_view prefix, std::size_t limit) const {
  std::vector<std::string> out;
  if (limit == 0) return out;
  for (std::size_t len = prefix.size() + 1; len-- > 0 && out.empty();) {
    const std::string_view p = prefix.substr(0, len);
    for (const auto& name : names_) {
      if (std::string_view(name).substr(0, p.size()) == p) out.push_back(name);
    }
  }
  std::sort(out.begin(), out.end());
  if (out.size() > limit) out.resize(limit);
  return out;
}

ParsedGraph parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  ParsedGraph result;
  VertexLabels labels;
  std::vector<Edge> edges;
  Index max_index = -1;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError("expected 'src dst [weight]', got " + std::to_string(tokens.size()) + " fields", line_no);
    }
    Edge e;
    if (options.labeled) {
      e.src = labels.intern(tokens[0]);
      e.dst = labels.intern(tokens[1]);
      if (labels.size() > kMaxVertices) throw ParseError("index overflow: too many labels", line_no);
    } else {
      e.src = parse_index(tokens[0], line_no);
      e.dst = parse_index(tokens[1], line_no);
      if (options.indexing == Indexing::one_based) {
        if (e.src == 0 || e.dst == 0) throw ParseError("index 0 in one-based input (negative index)", line_no);
        --e.src;
        --e.dst;
      }
      max_index = std::max({max_index, e.src, e.dst});
    }
    if (tokens.size() == 3) e.weight = parse_weight(tokens[2], line_no);
    edges.push_back(e);
  }
  if (in.bad()) throw IoError("read error");
  if (edges.empty()) throw ParseError("no edges", 0);

  const Index n = options.labeled ? labels.size() : max_index + 1;
  result.adjacency = AdjacencyMatrix::from_edges(n, edges);
  if (options.labeled) result.labels = std::move(labels);
  return result;
}

AdjacencyMatrix parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market input", 0);
  ++line_no;

  const auto header = split_ws(line);
  if (header.size() != 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix") {
    throw ParseError("malformed Matrix Market header", line_no);
  }
  const std::string kind = lower(header[2]);
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (kind != "coordinate") throw ParseError("unsupported Matrix Market kind '" + kind + "'", line_no);
  if (field != "pattern" && field != "real" && field != "integer") {
    throw ParseError("unsupported Matrix Market field '" + field + "'", line_no);
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError("unsupported Matrix Market symmetry '" + symmetry + "'", line_no);
  }
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError("missing size line", line_no);
  const auto size_tokens = split_ws(line);
  if (size_tokens.size() != 3) throw ParseError("size line must be 'rows cols entries'", line_no);
  const Index rows = parse_index(size_tokens[0], line_no);
  const Index cols = parse_index(size_tokens[1], line_no);
  const Index declared = parse_index(size_tokens[2], line_no);
  if (rows != cols) {
    throw ParseError("non-square matrix " + std::to_string(rows) + "x" + std::to_string(cols), line_no);
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));
  for (Index k = 0; k < declared; ++k) {
    if (!next_content_line()) {
      throw ParseError("expected " + std::to_string(declared) + " entries, found " + std::to_string(k), line_no);
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != (pattern ? 2u : 3u)) throw ParseError("malformed entry", line_no);
    const Index i = parse_index(tokens[0], line_no);
    const Index j = parse_index(tokens[1], line_no);
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError("index (" + std::string(tokens[0]) + ", " + std::string(tokens[1]) +
                           ") out of declared bounds " + std::to_string(rows) + "x" + std::to_string(cols),
                       line_no);
    }
    const double w = pattern ? 1.0 : parse_weight(tokens[2], line_no);
    edges.push_back({i - 1, j - 1, w});
    if (symmetric && i != j) edges.push_back({j - 1, i - 1, w});
  }
  if (next_content_line()) throw ParseError("more entries than the declared " + std::to_string(declared), line_no);
  return AdjacencyMatrix::from_edges(rows, edges);
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& a, const VertexLabels* labels) {
  const auto old_precision = out.precision(17);
  for (const Edge& e : a.edges()) {
    if (labels) {
      out << labels->label(e.src) << ' ' << labels->label(e.dst);
    } else {
      out << e.src << ' ' << e.dst;
    }
    if (e.weight != 1.0) out << ' ' << e.weight;
    out << '\n';
  }
  out.precision(old_precision);
}

void write_matrix_market(std::ostream& out, const AdjacencyMatrix& a) {
  const auto old_precision = out.precision(17);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.size() << ' ' << a.size() << ' ' << a.nnz() << '\n';
  for (const Edge& e : a.edges()) out << e.src + 1 << ' ' << e.dst + 1 << ' ' << e.weight << '\n';
  out.precision(old_precision);
}

GraphFormat parse_graph_format(std::string_view text) {
  const std::string t = lower(text);
  if (t == "edgelist" || t == "edges") return GraphFormat::edgelist;
  if (t == "mtx" || t == "matrixmarket") return GraphFormat::mtx;
  throw UsageError("unknown graph format '" + std::string(text) + "' (expected edgelist or mtx)");
}

ParsedGraph load_graph(const std::filesystem::path& path, GraphFormat format, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path.string() + "'");
  if (format == GraphFormat::mtx) return {parse_matrix_market(in), std::nullopt};
  return parse_edge_list(in, options);
}

}  // namespace simrank
