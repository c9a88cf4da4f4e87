#pragma once

#include <cstdint>
#include <vector>

#include "kclust/vecops.hpp"

namespace kclust {

/// Seedable, splittable random stream. Substreams are derived by hashing
/// (seed, tag, index), so results do not depend on the order in which
/// independent pieces of work are executed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Independent stream keyed by (seed, tag, index).
  static RandomStream keyed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in the open interval (0, 1).
  double uniform01();

  /// Standard normal (Box-Muller on the raw 64-bit stream, so the sequence
  /// is identical on every platform for a fixed seed).
  double gaussian();

  Vec gaussian_vector(int dim);

  /// Uniform on the unit sphere in R^dim.
  Vec unit_vector(int dim);

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kclust
