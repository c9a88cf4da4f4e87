#include "kclust/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kclust/errors.hpp"
#include "kclust/rng.hpp"

namespace kclust {
namespace {

constexpr std::uint64_t kSdpStreamTag = 0x5D9A11CE;

Vec row_sums(const SymMatrix& a) {
  const int n = a.dim();
  Vec c(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i] += a(i, j);
  return c;
}

Vec weighted_sum(const std::vector<Vec>& xs, const Vec& coeff) {
  Vec m(xs[0].size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) axpy(coeff[i], xs[i], m);
  return m;
}

struct Ascent {
  Vec u;
  std::vector<Vec> xs;
  double value = 0.0;
  int sweeps = 0;
};

double objective(const SymMatrix& a, const Vec& c, double w_norm, double radius, const Vec& u,
                 const std::vector<Vec>& xs) {
  double f = w_norm * w_norm * std::accumulate(c.begin(), c.end(), 0.0);
  if (w_norm > 0.0) f += 2.0 * w_norm * radius * dot(u, weighted_sum(xs, c));
  f += radius * radius * gram_quadratic(a, xs);
  return f;
}

Ascent run_ascent(const SymMatrix& a, const Vec& c, double w_norm, double radius,
                  const SolverParams& params, RandomStream& rng) {
  const int n = a.dim();
  const int d = n + 1;
  Ascent st;
  st.u = rng.unit_vector(d);
  st.xs.reserve(n);
  for (int i = 0; i < n; ++i) st.xs.push_back(rng.unit_vector(d));
  st.value = objective(a, c, w_norm, radius, st.u, st.xs);

  const double r2 = radius * radius;
  const double wr = w_norm * radius;
  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    for (int r = 0; r < n; ++r) {
      Vec g(d, 0.0);
      for (int j = 0; j < n; ++j) axpy(r2 * a(r, j), st.xs[j], g);
      if (wr > 0.0) axpy(wr * c[r], st.u, g);
      // Zero update direction (isolated zero row): keep the previous iterate.
      if (normalize(g) >= 1e-14) st.xs[r] = std::move(g);
    }
    if (wr > 0.0) {
      Vec gu = weighted_sum(st.xs, c);
      if (normalize(gu) >= 1e-14) st.u = std::move(gu);
    }
    const double next = objective(a, c, w_norm, radius, st.u, st.xs);
    if (next < st.value - 1e-9 * std::max(1.0, std::abs(st.value)))
      throw SolverError("sdp ascent: objective decreased across a sweep");
    const double change = std::abs(next - st.value);
    st.value = next;
    st.sweeps = sweep;
    if (change < params.rel_tol * std::max(1.0, std::abs(next))) return st;
  }
  throw SolverError("sdp ascent: no convergence within max_sweeps");
}

SdpSolution best_of_restarts(const SymMatrix& a, double w_norm, double radius,
                             const SolverParams& params) {
  const Vec c = row_sums(a);
  SdpSolution best;
  for (int restart = 0; restart < std::max(1, params.restarts); ++restart) {
    RandomStream rng = RandomStream::keyed(params.seed, kSdpStreamTag, restart);
    Ascent st = run_ascent(a, c, w_norm, radius, params, rng);
    if (restart == 0 || st.value > best.primal_value) {
      best.u_star = std::move(st.u);
      best.x_stars = std::move(st.xs);
      best.primal_value = st.value;
      best.iterations = st.sweeps;
      best.converged = true;
    }
  }
  return best;
}

}  // namespace

double gram_quadratic(const SymMatrix& a, const std::vector<Vec>& xs) {
  const int n = a.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec h(xs[0].size(), 0.0);
    for (int j = 0; j < n; ++j) axpy(a(i, j), xs[j], h);
    s += dot(xs[i], h);
  }
  return s;
}

double relaxation_objective(const SymMatrix& a, double w_norm, double radius, const Vec& u,
                            const std::vector<Vec>& xs) {
  return objective(a, row_sums(a), w_norm, radius, u, xs);
}

SdpSolution solve_relaxation(const GramFactor& a_factor, const Vec& w, double radius,
                             const SolverParams& params) {
  if (radius < 0.0) throw InvalidArgumentError("solve_relaxation: radius must be >= 0");
  return best_of_restarts(a_factor.to_matrix(), norm(w), radius, params);
}

SdpSolution grothendieck_max(const SymMatrix& a, const SolverParams& params) {
  return best_of_restarts(a, 0.0, 1.0, params);
}

double dual_bound_from_solution(const SymMatrix& a, const std::vector<Vec>& x_stars) {
  const int n = a.dim();
  Vec y(n, 0.0);
  for (int r = 0; r < n; ++r) {
    Vec h(x_stars[0].size(), 0.0);
    for (int j = 0; j < n; ++j) axpy(a(r, j), x_stars[j], h);
    y[r] = dot(x_stars[r], h);
  }
  SymMatrix slack(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) slack.set(i, j, (i == j ? y[i] : 0.0) - a(i, j));
  const Spectrum spec = symmetric_eig(slack);
  const double lambda_min = spec.eigenvalues.front();
  const double safety = 1e-12 * std::max(1.0, slack.max_abs());
  const double shift = std::max(0.0, -lambda_min) + safety;
  return std::accumulate(y.begin(), y.end(), 0.0) + n * shift;
}

double dual_upper_bound(const SymMatrix& a, const SolverParams& params) {
  const SdpSolution sol = grothendieck_max(a, params);
  return dual_bound_from_solution(a, sol.x_stars);
}

double rank_identity_value(const GramFactor& a_factor, double w_norm, double radius, const Vec& u,
                           const std::vector<Vec>& xs) {
  const int n = a_factor.count;
  const std::size_t rows = a_factor.vectors[0].size();
  const std::size_t cols = u.size();
  std::vector<double> outer(rows * cols, 0.0);
  for (int i = 0; i < n; ++i) {
    Vec y(cols, 0.0);
    axpy(w_norm, u, y);
    axpy(radius, xs[i], y);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t s = 0; s < cols; ++s) outer[r * cols + s] += a_factor.vectors[i][r] * y[s];
  }
  double f = 0.0;
  for (double v : outer) f += v * v;
  return f;
}

}  // namespace kclust
