#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "kclust/matrix.hpp"
#include "kclust/rng.hpp"
#include "kclust/sdp.hpp"

namespace kclust {

/// Label map {0..n-1} -> {0..k-1} together with its objective value
/// sum_ij a_ij b_{sigma(i) sigma(j)}.
struct Assignment {
  std::vector<int> labels;
  double value = 0.0;
};

/// Which label subsets the Gaussian rounding may use: the diameter pair for
/// s = 2, the best-spread triple for s = 3 (when k >= 3), and any extra
/// subsets for s >= 4.
struct RoundingPlan {
  std::array<int, 2> pair{0, 1};
  std::optional<std::array<int, 3>> triple;
  std::vector<std::vector<int>> extra_subsets;
};

/// Per-s empirical statistics across trials.
struct ArmStats {
  int s = 0;
  std::vector<int> label_set;
  double mean = 0.0;
  double std_error = 0.0;
  double best_value = 0.0;
  int trials = 0;
};

struct RoundReport {
  Assignment best;
  std::vector<ArmStats> arms;
  /// Mean/SE over trials of the per-trial best across arms (the value the
  /// single-round guarantees bound).
  double round_mean = 0.0;
  double round_std_error = 0.0;
  int trials = 0;
};

/// One Gaussian rounding: draws one standard Gaussian per label in
/// `label_set` (ambient dimension of x_stars) and assigns each r the label
/// whose Gaussian has the largest inner product with x_r. Floating-point
/// ties go to the smallest label.
std::vector<int> gaussian_round(const std::vector<Vec>& x_stars, const std::vector<int>& label_set,
                                RandomStream& rng);

/// Exact double-precision objective in fixed row-major summation order.
double assignment_value(const SymMatrix& a, const SymMatrix& b, const std::vector<int>& labels);

/// Runs `trials` independent rounds per arm of the plan; each trial draws an
/// independent stream keyed by (seed, s, trial), so results do not depend on
/// evaluation order. Returns the best assignment seen plus per-arm and
/// per-trial-best statistics.
RoundReport round_best_of(const SymMatrix& a, const GramFactor& b_factor, const SdpSolution& sdp,
                          const RoundingPlan& plan, int trials, std::uint64_t seed);

}  // namespace kclust
