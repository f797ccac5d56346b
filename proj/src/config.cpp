#include "simrank/config.hpp"

#include <string>

#include "simrank/error.hpp"

namespace simrank {

EigOrder parse_eig_order(std::string_view text) {
  if (text == "algebraic_desc" || text == "algebraic") return EigOrder::algebraic_desc;
  if (text == "magnitude_desc" || text == "magnitude") return EigOrder::magnitude_desc;
  throw UsageError("unknown eigenvalue order '" + std::string(text) + "' (expected algebraic_desc or magnitude_desc)");
}

std::string_view to_string(EigOrder order) {
  return order == EigOrder::algebraic_desc ? "algebraic_desc" : "magnitude_desc";
}

void SolveConfig::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw UsageError("decay c must lie in (0, 1), got " + std::to_string(c));
  if (iterations < 1) throw UsageError("iterations must be >= 1, got " + std::to_string(iterations));
  if (rank < 1) throw UsageError("rank must be >= 1, got " + std::to_string(rank));
  if (oversampling < 0) throw UsageError("oversampling must be >= 0, got " + std::to_string(oversampling));
  if (dense_limit < 1) throw UsageError("dense limit must be >= 1");
  if (early_stop_tol && !(*early_stop_tol > 0.0)) throw UsageError("early-stop tolerance must be positive");
}

void SolveConfig::validate_for(Index n) const {
  validate();
  if (rank + oversampling > n) {
    throw UsageError("rank + oversampling (" + std::to_string(rank + oversampling) + ") exceeds vertex count " +
                     std::to_string(n));
  }
}

void SolveConfig::require_dense(Index n) const {
  if (n > dense_limit) {
    throw UsageError("graph has " + std::to_string(n) + " vertices, above the dense limit of " +
                     std::to_string(dense_limit) + "; an n x n matrix would be required (raise --dense-limit)");
  }
}

}  // namespace simrank
