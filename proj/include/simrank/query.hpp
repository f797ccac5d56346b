#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simrank/graph.hpp"
#include "simrank/lowrank.hpp"

namespace simrank {

enum class QueryMode { factor, refined };

struct QueryHit {
  Index vertex = 0;
  std::optional<std::string> label;
  double score = 0.0;
};

/// Hits in non-increasing score order (ties by ascending vertex id), never
/// containing the query vertex.
struct QueryResult {
  Index query = 0;
  std::optional<std::string> query_label;
  QueryMode mode = QueryMode::factor;
  std::vector<QueryHit> hits;
};

/// [a == b] + sum_j D_j U(a, j) U(b, j), O(r).
double score_pair(const LowRankFactor& f, Index a, Index b);

/// All scores of row a from the factor, O(n r).
Eigen::VectorXd factor_row(const LowRankFactor& f, Index a);

/// The k best entries of `scores` other than `exclude`, best first, ties by id.
std::vector<QueryHit> rank_scores(const Eigen::VectorXd& scores, Index exclude, std::size_t k);

/// k most similar vertices to a. Refined mode evaluates the one-step refined
/// row and needs W; k = 0 yields an empty result.
QueryResult top_k(const LowRankFactor& f, Index a, std::size_t k, QueryMode mode = QueryMode::factor,
                  const SparseColMatrix* w = nullptr, RefineForm form = RefineForm::one_step);

/// top_k on the vertex carrying `label`, with labels attached to every hit.
/// Unknown labels raise UnknownLabelError with up to 5 prefix suggestions.
QueryResult top_k_by_label(const LowRankFactor& f, const VertexLabels& labels, std::string_view label,
                           std::size_t k, QueryMode mode = QueryMode::factor, const SparseColMatrix* w = nullptr,
                           RefineForm form = RefineForm::one_step);

void attach_labels(QueryResult& result, const VertexLabels& labels);

/// Aligned table with a header row; scores shown with `digits` significant digits.
void write_query_table(std::ostream& out, const QueryResult& result, int digits = 6);

/// One `rank<TAB>id<TAB>label<TAB>score` line per hit, rank starting at 1.
void write_query_records(std::ostream& out, const QueryResult& result, int digits = 6);

}  // namespace simrank
