#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "simrank/graph.hpp"

namespace simrank {

enum class EigOrder {
  algebraic_desc,  // largest eigenvalues first
  magnitude_desc,  // largest |eigenvalue| first
};

EigOrder parse_eig_order(std::string_view text);
std::string_view to_string(EigOrder order);

/// Parameters shared by the exact and low-rank solvers.
struct SolveConfig {
  double c = 0.6;
  int iterations = 10;
  Index rank = 10;
  Index oversampling = 0;
  std::uint64_t seed = 42;
  EigOrder order = EigOrder::algebraic_desc;
  /// Largest n for which an n x n dense matrix may be allocated.
  Index dense_limit = 8192;
  /// Exact iteration only: stop once the max entrywise change drops below this.
  std::optional<double> early_stop_tol;

  /// Throws UsageError unless 0 < c < 1, iterations >= 1, rank >= 1,
  /// oversampling >= 0 and dense_limit >= 1.
  void validate() const;

  /// validate() plus rank + oversampling <= n.
  void validate_for(Index n) const;

  /// Throws UsageError when n exceeds dense_limit.
  void require_dense(Index n) const;
};

}  // namespace simrank
