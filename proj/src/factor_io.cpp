#include "simrank/factor_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "binary_io.hpp"
#include "simrank/error.hpp"

namespace simrank {

namespace {
constexpr char kFactorMagic[] = "SRLR";
constexpr char kFactorHeader[] = "simrank-factor v1";

void check_sizes(std::uint64_t n, std::uint64_t r) {
  if (n == 0 || n > static_cast<std::uint64_t>(kMaxVertices) || r > n) {
    throw ParseError("factor header has invalid sizes n = " + std::to_string(n) + ", r = " + std::to_string(r), 0);
  }
}

void finish(LowRankFactor& f) {
  if (!f.U.allFinite() || !f.D.allFinite()) throw NumericError("factor contains non-finite values");
  if (!(f.c > 0.0 && f.c < 1.0)) throw ParseError("factor decay c outside (0, 1)", 0);
}
}  // namespace

void write_factor_text(std::ostream& out, const LowRankFactor& f) {
  f.check_shape();
  const auto old_precision = out.precision(17);
  out << kFactorHeader << '\n';
  out << f.n << ' ' << f.rank() << ' ' << f.c << ' ' << f.iterations_done << ' ' << f.seed << '\n';
  for (Index j = 0; j < f.rank(); ++j) out << (j ? " " : "") << f.D[j];
  out << '\n';
  for (Index i = 0; i < f.n; ++i) {
    for (Index j = 0; j < f.rank(); ++j) out << (j ? " " : "") << f.U(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_factor_binary(std::ostream& out, const LowRankFactor& f) {
  f.check_shape();
  out.write(kFactorMagic, 4);
  detail::write_u64_le(out, static_cast<std::uint64_t>(f.n));
  detail::write_u64_le(out, static_cast<std::uint64_t>(f.rank()));
  detail::write_f64_le(out, f.c);
  for (Index j = 0; j < f.rank(); ++j) detail::write_f64_le(out, f.D[j]);
  for (Index j = 0; j < f.rank(); ++j) {
    for (Index i = 0; i < f.n; ++i) detail::write_f64_le(out, f.U(i, j));
  }
}

LowRankFactor read_factor(std::istream& in) {
  LowRankFactor f;
  if (detail::peek_magic(in) == kFactorMagic) {
    in.ignore(4);
    const auto n = detail::read_u64_le(in);
    const auto r = detail::read_u64_le(in);
    check_sizes(n, r);
    f.n = static_cast<Index>(n);
    f.c = detail::read_f64_le(in);
    f.D.resize(static_cast<Index>(r));
    for (Index j = 0; j < f.D.size(); ++j) f.D[j] = detail::read_f64_le(in);
    f.U.resize(f.n, static_cast<Index>(r));
    for (Index j = 0; j < f.U.cols(); ++j) {
      for (Index i = 0; i < f.n; ++i) f.U(i, j) = detail::read_f64_le(in);
    }
    finish(f);
    return f;
  }

  std::string line;
  if (!std::getline(in, line) || line != kFactorHeader) throw ParseError("missing 'simrank-factor v1' header", 1);
  if (!std::getline(in, line)) throw ParseError("missing size line", 2);
  std::istringstream sizes(line);
  std::uint64_t n = 0, r = 0;
  if (!(sizes >> n >> r >> f.c >> f.iterations_done >> f.seed)) {
    throw ParseError("size line must be 'n r c iterations seed'", 2);
  }
  check_sizes(n, r);
  f.n = static_cast<Index>(n);
  f.D.resize(static_cast<Index>(r));
  f.U.resize(f.n, static_cast<Index>(r));
  for (Index j = 0; j < f.D.size(); ++j) {
    if (!(in >> f.D[j])) throw ParseError("missing diagonal value", 3);
  }
  for (Index i = 0; i < f.n; ++i) {
    for (Index j = 0; j < f.U.cols(); ++j) {
      if (!(in >> f.U(i, j))) throw ParseError("missing U value", static_cast<std::size_t>(i + 4));
    }
  }
  finish(f);
  return f;
}

void save_factor(const std::filesystem::path& path, const LowRankFactor& f, bool binary) {
  binary = binary || path.extension() == ".srlr";
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open output file '" + path.string() + "'");
  if (binary) {
    write_factor_binary(out, f);
  } else {
    write_factor_text(out, f);
  }
  if (!out.flush()) throw IoError("write failed for '" + path.string() + "'");
}

LowRankFactor load_factor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open factor file '" + path.string() + "'");
  return read_factor(in);
}

}  // namespace simrank
