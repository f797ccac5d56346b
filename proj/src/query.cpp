#include "simrank/query.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "simrank/error.hpp"

namespace simrank {

namespace {

void check_vertex(Index v, Index n) {
  if (v < 0 || v >= n) throw UsageError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
}

std::string format_score(double score, int digits) {
  std::ostringstream s;
  s << std::setprecision(digits) << score;
  return s.str();
}

}  // namespace

double score_pair(const LowRankFactor& f, Index a, Index b) {
  check_vertex(a, f.n);
  check_vertex(b, f.n);
  double score = a == b ? 1.0 : 0.0;
  for (Index j = 0; j < f.rank(); ++j) score += f.D[j] * f.U(a, j) * f.U(b, j);
  return score;
}

Eigen::VectorXd factor_row(const LowRankFactor& f, Index a) {
  check_vertex(a, f.n);
  f.check_shape();
  const Eigen::VectorXd weighted = f.D.cwiseProduct(f.U.row(a).transpose());
  Eigen::VectorXd row = f.U * weighted;
  row[a] += 1.0;
  return row;
}

std::vector<QueryHit> rank_scores(const Eigen::VectorXd& scores, Index exclude, std::size_t k) {
  std::vector<Index> ids;
  ids.reserve(static_cast<std::size_t>(scores.size()));
  for (Index v = 0; v < scores.size(); ++v) {
    if (v != exclude) ids.push_back(v);
  }
  const auto key = [&](Index v) {
    const double s = scores[v];
    return std::isnan(s) ? -std::numeric_limits<double>::infinity() : s;
  };
  const auto better = [&](Index x, Index y) {
    const double sx = key(x), sy = key(y);
    return sx != sy ? sx > sy : x < y;
  };
  const std::size_t take = std::min(k, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(), better);

  std::vector<QueryHit> hits;
  hits.reserve(take);
  for (std::size_t i = 0; i < take; ++i) hits.push_back({ids[i], std::nullopt, scores[ids[i]]});
  return hits;
}

QueryResult top_k(const LowRankFactor& f, Index a, std::size_t k, QueryMode mode, const SparseColMatrix* w,
                  RefineForm form) {
  check_vertex(a, f.n);
  QueryResult result;
  result.query = a;
  result.mode = mode;
  if (mode == QueryMode::refined && w == nullptr) throw UsageError("refined queries need the graph");
  if (k == 0) return result;

  const Eigen::VectorXd scores = mode == QueryMode::refined ? RowRefiner(*w, f, form).row(a) : factor_row(f, a);
  result.hits = rank_scores(scores, a, k);
  return result;
}

QueryResult top_k_by_label(const LowRankFactor& f, const VertexLabels& labels, std::string_view label,
                           std::size_t k, QueryMode mode, const SparseColMatrix* w, RefineForm form) {
  const auto id = labels.find(label);
  if (!id) throw UnknownLabelError(std::string(label), labels.nearest_by_prefix(label, 5));
  QueryResult result = top_k(f, *id, k, mode, w, form);
  attach_labels(result, labels);
  return result;
}

void attach_labels(QueryResult& result, const VertexLabels& labels) {
  if (result.query < labels.size()) result.query_label = labels.label(result.query);
  for (QueryHit& hit : result.hits) {
    if (hit.vertex < labels.size()) hit.label = labels.label(hit.vertex);
  }
}

void write_query_table(std::ostream& out, const QueryResult& result, int digits) {
  std::size_t id_width = 2, label_width = 5;
  for (const QueryHit& hit : result.hits) {
    id_width = std::max(id_width, std::to_string(hit.vertex).size());
    label_width = std::max(label_width, hit.label ? hit.label->size() : 1);
  }
  const std::size_t rank_width = std::max<std::size_t>(4, std::to_string(result.hits.size()).size());

  out << "query " << result.query;
  if (result.query_label) out << " (" << *result.query_label << ")";
  out << ", mode " << (result.mode == QueryMode::refined ? "refined" : "factor") << '\n';
  out << std::left << std::setw(static_cast<int>(rank_width)) << "rank" << "  " << std::right
      << std::setw(static_cast<int>(id_width)) << "id" << "  " << std::left
      << std::setw(static_cast<int>(label_width)) << "label" << "  " << "score" << '\n';
  for (std::size_t i = 0; i < result.hits.size(); ++i) {
    const QueryHit& hit = result.hits[i];
    out << std::left << std::setw(static_cast<int>(rank_width)) << i + 1 << "  " << std::right
        << std::setw(static_cast<int>(id_width)) << hit.vertex << "  " << std::left
        << std::setw(static_cast<int>(label_width)) << (hit.label ? *hit.label : "-") << "  "
        << format_score(hit.score, digits) << '\n';
  }
  out << std::right;
}

void write_query_records(std::ostream& out, const QueryResult& result, int digits) {
  for (std::size_t i = 0; i < result.hits.size(); ++i) {
    const QueryHit& hit = result.hits[i];
    out << i + 1 << '\t' << hit.vertex << '\t' << hit.label.value_or("") << '\t' << format_score(hit.score, digits)
        << '\n';
  }
}

}  // namespace simrank
