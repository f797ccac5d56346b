#pragma once

// Little-endian helpers for the binary matrix and factor layouts.

#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "simrank/error.hpp"

namespace simrank::detail {

inline void write_u64_le(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

inline void write_f64_le(std::ostream& out, double v) { write_u64_le(out, std::bit_cast<std::uint64_t>(v)); }

inline std::uint64_t read_u64_le(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw ParseError("truncated binary input", 0);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= std::uint64_t{bytes[i]} << (8 * i);
  return v;
}

inline double read_f64_le(std::istream& in) { return std::bit_cast<double>(read_u64_le(in)); }

/// Reads the next 4 bytes and puts them back; empty string if fewer remain.
inline std::string peek_magic(std::istream& in) {
  std::string magic(4, '\0');
  const auto start = in.tellg();
  if (!in.read(magic.data(), 4)) {
    in.clear();
    in.seekg(start);
    return {};
  }
  in.seekg(start);
  return magic;
}

}  // namespace simrank::detail
