#pragma once

#include <vector>

#include "kclust/matrix.hpp"
#include "kclust/vecops.hpp"

namespace kclust {

/// Smallest enclosing Euclidean ball of a finite point set.
struct EnclosingBall {
  Vec center;
  double radius = 0.0;
};

/// Diameter pair of a point set: indices are 0-based, ties resolved to the
/// lexicographically smallest (p, q).
struct DiameterPair {
  int p = 0;
  int q = 0;
  double distance = 0.0;
};

/// Statistics of a subset S of the comparison matrix's Gram vectors:
///   phi    = (1/s)   sum_{l in S} b_ll
///   psi    = (1/(s(s-1))) sum_{l != t in S} b_lt
///   spread = sum_{l in S} ||v_l - centroid||^2
/// They satisfy psi + (phi - psi)/s == ||centroid||^2 and
/// (s-1)(phi - psi) == spread.
struct SubsetStats {
  std::vector<int> subset;  // 0-based, ascending
  double phi = 0.0;
  double psi = 0.0;
  Vec centroid;
  double spread = 0.0;
};

/// Badoiu-Clarkson center iteration followed by a support-set circumcenter
/// polish. The returned radius is exactly max_i ||p_i - center||, so the
/// coverage invariant holds with no slack; minimality holds within
/// tol * (1 + max point norm).
EnclosingBall min_enclosing_ball(const std::vector<Vec>& points, double tol = 1e-9);

DiameterPair diameter_pair(const std::vector<Vec>& points);

/// Exhaustive search over C(k, s) subsets for the subset maximizing the
/// spread; ties go to the lexicographically smallest subset. k is capped at
/// 30 to keep the enumeration trivial.
SubsetStats best_subset(const GramFactor& b_factor, int s);

SubsetStats subset_stats(const GramFactor& b_factor, const std::vector<int>& subset);

/// R <= D * sqrt((k-1)/(2k)) + tol.
bool jung_bound_holds(const EnclosingBall& ball, double diameter, int k, double tol = 1e-9);

}  // namespace kclust
