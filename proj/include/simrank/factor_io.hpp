#pragma once

#include <filesystem>
#include <iosfwd>

#include "simrank/lowrank.hpp"

namespace simrank {

/// Text layout:
///   simrank-factor v1
///   n r c iterations seed
///   D_1 ... D_r
///   n lines of r values (row i of U)
/// Values are written with 17 significant digits.
void write_factor_text(std::ostream& out, const LowRankFactor& f);

/// Binary layout: magic "SRLR", little-endian u64 n, u64 r, f64 c, then D
/// (r f64) and U column-major (n*r f64). Iterations and seed are not stored.
void write_factor_binary(std::ostream& out, const LowRankFactor& f);

/// Reads either layout, detected by the leading bytes.
LowRankFactor read_factor(std::istream& in);

/// Binary layout when `binary` is set or the extension is `.srlr`, text otherwise.
void save_factor(const std::filesystem::path& path, const LowRankFactor& f, bool binary = false);
LowRankFactor load_factor(const std::filesystem::path& path);

}  // namespace simrank
