#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kclust/matrix.hpp"
#include "kclust/vecops.hpp"

namespace kclust {

struct SolverParams {
  std::uint64_t seed = 12345;
  int restarts = 5;
  int max_sweeps = 20000;
  double rel_tol = 1e-11;
};

/// Solution of the vector relaxation
///   max sum_ij a_ij <|w| u + R x_i, |w| u + R x_j>,  ||u|| = 1, ||x_i|| = 1,
/// in ambient dimension n+1. dual_value is filled by callers that hold a
/// certificate (centered instances only).
struct SdpSolution {
  Vec u_star;
  std::vector<Vec> x_stars;
  double primal_value = 0.0;
  std::optional<double> dual_value;
  int iterations = 0;
  bool converged = false;
};

/// Block-coordinate ascent over the unit spheres: each x_r moves to the
/// normalization of R^2 (A x)_r + |w| R c_r u (c_r = r-th row sum), u to the
/// normalization of sum_j c_j x_j. The objective is nondecreasing sweep to
/// sweep; the best of `restarts` seeded starts is returned. Throws
/// SolverError when a start fails to reach rel_tol within max_sweeps.
SdpSolution solve_relaxation(const GramFactor& a_factor, const Vec& w, double radius,
                             const SolverParams& params = {});

/// Same ascent specialized to w = 0, R = 1:
///   max sum_ij a_ij <x_i, x_j> over unit vectors.
SdpSolution grothendieck_max(const SymMatrix& a, const SolverParams& params = {});

/// Upper bound min{sum_i y_i : Diag(y) >= A} on grothendieck_max, built from
/// a converged ascent via y_r = <x_r, (A x)_r> plus the uniform eigenvalue
/// shift that makes Diag(y) - A positive semidefinite. Valid by weak duality
/// for any input; tight when the ascent found the optimum.
double dual_upper_bound(const SymMatrix& a, const SolverParams& params = {});

/// Certificate for a caller-provided set of unit vectors.
double dual_bound_from_solution(const SymMatrix& a, const std::vector<Vec>& x_stars);

/// Objective value of the relaxation at an arbitrary feasible point.
double relaxation_objective(const SymMatrix& a, double w_norm, double radius, const Vec& u,
                            const std::vector<Vec>& xs);

/// sum_ij a_ij <x_i, x_j>.
double gram_quadratic(const SymMatrix& a, const std::vector<Vec>& xs);

/// || sum_i u_i (outer) (|w| u + R x_i) ||_F^2 computed from the Gram factor
/// of A; equals the relaxation objective and serves as an independent route
/// to it.
double rank_identity_value(const GramFactor& a_factor, double w_norm, double radius, const Vec& u,
                           const std::vector<Vec>& xs);

}  // namespace kclust
