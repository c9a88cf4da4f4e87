#include "kclust/ball.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kclust/errors.hpp"

namespace kclust {
namespace {

int farthest_index(const std::vector<Vec>& points, const Vec& center) {
  int best = 0;
  double best_d = -1.0;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    const double d = dist_sq(points[i], center);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double max_dist(const std::vector<Vec>& points, const Vec& center) {
  double m = 0.0;
  for (const Vec& p : points) m = std::max(m, dist_sq(p, center));
  return std::sqrt(m);
}

// Least-squares solve of the (possibly singular) SPD system G x = rhs via
// eigendecomposition, dropping modes below a relative cutoff.
Vec pinv_solve(const SymMatrix& g, const Vec& rhs) {
  const Spectrum spec = symmetric_eig(g);
  const double lmax = std::max(std::abs(spec.eigenvalues.back()), 1e-300);
  Vec x(rhs.size(), 0.0);
  for (std::size_t m = 0; m < spec.eigenvalues.size(); ++m) {
    const double lambda = spec.eigenvalues[m];
    if (lambda <= 1e-12 * lmax) continue;
    axpy(dot(spec.eigenvectors[m], rhs) / lambda, spec.eigenvectors[m], x);
  }
  return x;
}

// Point of the affine hull of {points[i] : i in support} equidistant from all
// of them (the circumcenter restricted to that hull).
Vec circumcenter(const std::vector<Vec>& points, const std::vector<int>& support) {
  const Vec& base = points[support[0]];
  const int m = static_cast<int>(support.size()) - 1;
  if (m == 0) return base;
  std::vector<Vec> q(m);
  for (int j = 0; j < m; ++j) q[j] = sub(points[support[j + 1]], base);
  SymMatrix g(m);
  Vec rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs[i] = norm_sq(q[i]);
    for (int j = 0; j <= i; ++j) g.set(i, j, 2.0 * dot(q[i], q[j]));
  }
  const Vec mu = pinv_solve(g, rhs);
  Vec c = base;
  for (int j = 0; j < m; ++j) axpy(mu[j], q[j], c);
  return c;
}

}  // namespace

EnclosingBall min_enclosing_ball(const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw EmptyInputError("min_enclosing_ball: no points");
  const std::size_t d = points[0].size();
  for (const Vec& p : points)
    if (p.size() != d)
      throw InvalidArgumentError("min_enclosing_ball: points of mixed dimension");

  EnclosingBall ball;
  if (points.size() == 1 || d == 0) {
    ball.center = points[0];
    ball.radius = max_dist(points, ball.center);
    return ball;
  }

  double max_norm = 0.0;
  for (const Vec& p : points) max_norm = std::max(max_norm, norm(p));
  const double scale = 1.0 + max_norm;

  // Badoiu-Clarkson: walk towards the farthest point with step 1/(i+1).
  Vec center = points[0];
  constexpr int kBcIterations = 2000;
  for (int i = 1; i <= kBcIterations; ++i) {
    const Vec& far = points[farthest_index(points, center)];
    const double step = 1.0 / (i + 1);
    for (std::size_t c = 0; c < d; ++c) center[c] += step * (far[c] - center[c]);
  }

  // Polish: repeatedly solve the circumcenter of the near-farthest support
  // set, tightening the membership gap, and keep any center that reduces the
  // true radius. The diminishing-step walk alone stalls around 1e-3 relative
  // accuracy, which is not enough to certify minimality at tol.
  double radius = max_dist(points, center);
  double gap = 0.05;
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<int> support;
    const double cut = radius * (1.0 - gap) - tol * scale;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
      if (dist(points[i], center) >= cut) support.push_back(i);
    if (support.size() >= 2) {
      const Vec candidate = circumcenter(points, support);
      bool finite = true;
      for (double v : candidate)
        if (!std::isfinite(v)) finite = false;
      if (finite) {
        const double cand_radius = max_dist(points, candidate);
        if (cand_radius < radius) {
          center = candidate;
          radius = cand_radius;
        }
      }
    }
    gap = std::max(gap * 0.5, 1e-12);
  }

  ball.center = std::move(center);
  ball.radius = max_dist(points, ball.center);
  return ball;
}

DiameterPair diameter_pair(const std::vector<Vec>& points) {
  if (points.size() < 2) throw EmptyInputError("diameter_pair: need at least two points");
  DiameterPair best{0, 1, dist(points[0], points[1])};
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(points.size()); ++j) {
      const double dij = dist(points[i], points[j]);
      if (dij > best.distance) best = DiameterPair{i, j, dij};
    }
  return best;
}

SubsetStats subset_stats(const GramFactor& b_factor, const std::vector<int>& subset) {
  const int s = static_cast<int>(subset.size());
  if (s < 2) throw InvalidArgumentError("subset_stats: subset size must be >= 2");
  SubsetStats st;
  st.subset = subset;
  st.centroid.assign(b_factor.vectors[subset[0]].size(), 0.0);
  for (int idx : subset) axpy(1.0 / s, b_factor.vectors[idx], st.centroid);
  double phi = 0.0;
  double psi = 0.0;
  for (int l : subset) {
    phi += norm_sq(b_factor.vectors[l]);
    for (int t : subset)
      if (t != l) psi += dot(b_factor.vectors[l], b_factor.vectors[t]);
  }
  st.phi = phi / s;
  st.psi = (s > 1) ? psi / (static_cast<double>(s) * (s - 1)) : 0.0;
  st.spread = 0.0;
  for (int l : subset) st.spread += dist_sq(b_factor.vectors[l], st.centroid);
  return st;
}

SubsetStats best_subset(const GramFactor& b_factor, int s) {
  const int k = b_factor.count;
  if (s < 2 || s > k) throw InvalidArgumentError("best_subset: s out of range [2, k]");
  if (k > 30) throw TooLargeError("best_subset: exhaustive search capped at k = 30");

  std::vector<int> subset(s);
  std::iota(subset.begin(), subset.end(), 0);
  SubsetStats best = subset_stats(b_factor, subset);
  // Ascending-index odometer enumerates subsets lexicographically, so strict
  // improvement keeps the lexicographically smallest maximizer.
  for (;;) {
    int pos = s - 1;
    while (pos >= 0 && subset[pos] == k - s + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int t = pos + 1; t < s; ++t) subset[t] = subset[t - 1] + 1;
    SubsetStats st = subset_stats(b_factor, subset);
    if (st.spread > best.spread) best = std::move(st);
  }
  return best;
}

bool jung_bound_holds(const EnclosingBall& ball, double diameter, int k, double tol) {
  const double bound = diameter * std::sqrt((k - 1.0) / (2.0 * k));
  return ball.radius <= bound + tol;
}

}  // namespace kclust
