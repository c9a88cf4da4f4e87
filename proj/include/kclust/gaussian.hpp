#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kclust/matrix.hpp"
#include "kclust/rng.hpp"
#include "kclust/vecops.hpp"

namespace kclust {

/// E[max of k i.i.d. standard Gaussians], by adaptive Gauss-Kronrod
/// quadrature of k x phi(x) Phi(x)^(k-1) over [-12, 12] to absolute error
/// well below 1e-10. Phi is evaluated through erfc to stay accurate in the
/// left tail.
double expected_max_gaussian(int k);

/// R(k) = (E[max of k i.i.d. standard Gaussians])^2 / (k - 1).
/// R(2) = 1/pi, R(3) = 9/(8 pi), and R(k) < R(3) for all k >= 4.
double r_constant(int k);

/// R(2), R(3), ..., R(kmax).
std::vector<double> geometry_table(int kmax);

/// Sum of squared Gaussian moments of the planar partition into three cones
/// of angles (a1, a2, a3), a1 + a2 + a3 = 2 pi: sum sin^2(a_i / 2) / (2 pi).
/// Maximized at the 120-degree propeller, where it equals 9/(8 pi).
double propeller_value(const std::array<double, 3>& angles);

/// Simplicial conical partition of R^d induced by m distinct generator
/// vectors: cell j is {x : <x, z_j> = max_i <x, z_i>}.
struct ConicalPartition {
  std::vector<Vec> generators;

  static ConicalPartition make(std::vector<Vec> generators);
  int dim() const { return generators.empty() ? 0 : static_cast<int>(generators[0].size()); }
};

/// Monte Carlo Gaussian moments of a conical partition.
struct MomentReport {
  std::vector<Vec> moments;  // estimate of the Gaussian moment of each cell
  double total = 0.0;        // sum of squared moment norms
  double std_error = 0.0;    // first-order (delta method) SE of `total`
  long long samples = 0;
};

/// Samples standard Gaussians, assigns each to its argmax cell (ties to the
/// lowest index) and accumulates per-cell moment estimates. samples >= 10^4.
MomentReport partition_moment_mc(const ConicalPartition& partition, long long samples,
                                 RandomStream& rng);

/// Unit vectors v_1..v_k in R^(k-1) with pairwise inner products -1/(k-1)
/// (vertices of the regular simplex).
std::vector<Vec> regular_simplex_vectors(int k);

struct RatioEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
};

/// Monte Carlo estimate of (E[max_j g_j])^2 / sum_j E[g_j^2] for the mean
/// zero Gaussian vector with the given covariance, sampled through its Gram
/// factor. Never exceeds the partition supremum for the same k.
RatioEstimate gaussian_ratio_estimate(const SymMatrix& covariance, long long samples,
                                      RandomStream& rng);
double gaussian_ratio(const SymMatrix& covariance, long long samples, RandomStream& rng);

struct PropellerResult {
  ConicalPartition best;
  double best_total = 0.0;  // unbiased final Monte Carlo evaluation
  double std_error = 0.0;
  long long samples = 0;
  int restarts = 0;
  double search_total = 0.0;  // in-search (common random numbers) value
};

/// Heuristic maximization of the sum of squared Gaussian moments over
/// simplicial conical partitions of R^(k-1): random restarts, a monotone
/// moment fixed-point iteration on a common-random-numbers sample pool, and a
/// coordinate-perturbation polish. The best candidate is re-evaluated on
/// fresh samples, so the reported total is free of selection bias. Evidence
/// only, not a certificate.
PropellerResult propeller_search(int k, int restarts, long long samples, std::uint64_t seed);

}  // namespace kclust
