#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kclust/ball.hpp"
#include "kclust/matrix.hpp"
#include "kclust/rounding.hpp"
#include "kclust/sdp.hpp"

namespace kclust {

/// Validated problem instance: n x n PSD matrix A scored against a k x k PSD
/// comparison matrix B.
struct KernelInstance {
  SymMatrix a;
  SymMatrix b;
  bool centered_a = false;
  bool centered_b = false;
  bool spherical_b = false;

  /// Checks PSD-ness of both matrices (throws NotPsdError) and derives the
  /// centered/spherical flags at the dispatch tolerance.
  static KernelInstance make(SymMatrix a, SymMatrix b, double tol = 1e-8);
};

struct PipelineParams {
  SolverParams solver;
  int trials = 1000;
  /// Extra rounding subset sizes (s >= 4). s = 2 and s = 3 are always on.
  std::vector<int> extra_s;
};

struct SolveReport {
  int n = 0;
  int k = 0;
  std::string variant;  // "centered" or "noncentered"
  Assignment assignment;
  double sdp_primal = 0.0;
  std::optional<double> sdp_dual;
  double apriori_ratio = 1.0;
  double empirical_ratio = 1.0;
  double radius = 0.0;
  double w_norm = 0.0;
  std::optional<DiameterPair> diameter;
  std::optional<SubsetStats> triple;
  RoundReport rounds;
  std::optional<double> analytic_bound;  // (||P|| + ||Q||)^2, noncentered path
  SdpSolution sdp;
};

/// Full algorithm for centered A: Gram-factor B, enclosing ball (w, R),
/// relaxation solve, diameter-pair and best-triple Gaussian rounding, best of
/// `trials` rounds. Throws NotCenteredError when A is not centered.
SolveReport approximate_clust(const KernelInstance& instance, const PipelineParams& params = {});

/// Variant for general A: recenters the relaxation at the midpoint of the
/// diameter pair and rounds with s = 2 only. The a-priori ratio is
/// 1 + 2 pi R'(B)^2 / D^2 <= 1 + 3 pi / 2.
SolveReport approximate_clust_noncentered(const KernelInstance& instance,
                                          const PipelineParams& params = {});

/// Dispatches on is_centered(A) at tolerance 1e-8.
SolveReport approximate_clust_auto(const KernelInstance& instance,
                                   const PipelineParams& params = {});

/// Exact optimum by enumerating all k^n assignments (k^n <= limit, else
/// TooLargeError); returns the lexicographically smallest optimal labeling.
Assignment brute_force_clust(const SymMatrix& a, const SymMatrix& b,
                             long long limit = 10'000'000);
Assignment brute_force_clust(const KernelInstance& instance, long long limit = 10'000'000);

/// The spherical centered k x k matrix C with unit diagonal and -1/(k-1) off
/// the diagonal. For centered A every assignment satisfies
/// value(A, I_k, sigma) = ((k-1)/k) * value(A, C, sigma).
SymMatrix identity_reduction(int k);

struct GrothendieckCheck {
  double lhs = 0.0;         // max over unit vectors of sum a_ij <x_i, x_j>
  double clust_opt = 0.0;   // brute-force max over assignments into the v's
  double factor = 0.0;      // (8 pi / 9)(1 - 1/k)
  double bound = 0.0;       // factor * clust_opt
  bool holds = false;
  double round_mean = 0.0;
  double round_std_error = 0.0;
};

/// Checks  max_x sum a_ij <x_i,x_j>  <=  (8 pi/9)(1-1/k) max_sigma sum a_ij
/// <v_sigma(i), v_sigma(j)>  for centered PSD A and unit vectors v_1..v_k,
/// with the right side computed by brute force.
GrothendieckCheck grothendieck_inequality_check(const SymMatrix& a, const GramFactor& b_factor,
                                                int trials, const SolverParams& solver = {});

}  // namespace kclust
