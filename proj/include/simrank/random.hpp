#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace simrank {

/// Seeded standard-normal stream.
///
/// Engine: std::mt19937_64 seeded with the 64-bit seed (its output sequence is
/// fixed by the C++ standard). Each 64-bit draw x becomes a uniform in (0, 1]
/// as ((x >> 11) + 1) * 2^-53. Normals come in pairs from the Box-Muller
/// transform of two consecutive uniforms u1, u2:
///   z0 = sqrt(-2 ln u1) * cos(2 pi u2),  z1 = sqrt(-2 ln u1) * sin(2 pi u2),
/// returned in the order z0, z1.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next();

  /// rows x cols matrix filled column-major (column 0 top to bottom first).
  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace simrank
