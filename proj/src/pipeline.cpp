#include "kclust/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kclust/errors.hpp"

namespace kclust {
namespace {

constexpr double kPi = std::numbers::pi;

double ratio_or_one(double numer, double denom) {
  if (std::abs(denom) > 1e-12 * std::max(1.0, std::abs(numer))) return numer / denom;
  return 1.0;
}

/// Report for instances whose comparison vectors all coincide (R(B) = 0) or
/// k = 1: every assignment has the same value b_11 * sum(A).
SolveReport trivial_report(const KernelInstance& instance, const std::string& variant) {
  SolveReport report;
  report.n = instance.a.dim();
  report.k = instance.b.dim();
  report.variant = variant;
  report.assignment.labels.assign(instance.a.dim(), 0);
  report.assignment.value = assignment_value(instance.a, instance.b, report.assignment.labels);
  report.sdp_primal = report.assignment.value;
  report.apriori_ratio = 1.0;
  report.empirical_ratio = 1.0;
  report.rounds.best = report.assignment;
  report.rounds.round_mean = report.assignment.value;
  return report;
}

RoundingPlan build_plan(const GramFactor& bf, const DiameterPair& dp,
                        const std::optional<SubsetStats>& triple, std::vector<int> extra_s) {
  RoundingPlan plan;
  plan.pair = {dp.p, dp.q};
  if (triple) plan.triple = {triple->subset[0], triple->subset[1], triple->subset[2]};
  // One arm per subset size; trial streams are keyed by s.
  std::sort(extra_s.begin(), extra_s.end());
  extra_s.erase(std::unique(extra_s.begin(), extra_s.end()), extra_s.end());
  for (int s : extra_s) {
    if (s < 4 || s > bf.count) continue;
    plan.extra_subsets.push_back(best_subset(bf, s).subset);
  }
  return plan;
}

}  // namespace

KernelInstance KernelInstance::make(SymMatrix a, SymMatrix b, double tol) {
  if (!is_psd(a)) throw NotPsdError("KernelInstance: A is not positive semidefinite");
  if (!is_psd(b)) throw NotPsdError("KernelInstance: B is not positive semidefinite");
  KernelInstance inst{std::move(a), std::move(b)};
  inst.centered_a = is_centered(inst.a, tol);
  inst.centered_b = is_centered(inst.b, tol);
  inst.spherical_b = true;
  for (int i = 0; i < inst.b.dim(); ++i)
    if (std::abs(inst.b(i, i) - 1.0) > 1e-9) inst.spherical_b = false;
  return inst;
}

SolveReport approximate_clust(const KernelInstance& instance, const PipelineParams& params) {
  if (!instance.centered_a)
    throw NotCenteredError("approximate_clust: A must be centered; use the noncentered variant");
  const int k = instance.b.dim();
  if (k == 1) return trivial_report(instance, "centered");

  const GramFactor bf = gram_factor(instance.b);
  const EnclosingBall ball = min_enclosing_ball(bf.vectors);
  double max_norm = 0.0;
  for (const Vec& v : bf.vectors) max_norm = std::max(max_norm, norm(v));
  if (ball.radius <= 1e-12 * (1.0 + max_norm)) return trivial_report(instance, "centered");

  SolveReport report;
  report.n = instance.a.dim();
  report.k = k;
  report.variant = "centered";
  report.radius = ball.radius;
  report.w_norm = norm(ball.center);

  const GramFactor af = gram_factor(instance.a);
  report.sdp = solve_relaxation(af, ball.center, ball.radius, params.solver);
  report.sdp_primal = report.sdp.primal_value;
  // For centered A the relaxation value is R^2 * max sum a_ij <x_i, x_j>, so
  // the diagonal-SDP dual certificate scales by R^2.
  report.sdp_dual =
      ball.radius * ball.radius * dual_bound_from_solution(instance.a, report.sdp.x_stars);
  report.sdp.dual_value = report.sdp_dual;

  const DiameterPair dp = diameter_pair(bf.vectors);
  report.diameter = dp;
  if (k >= 3) report.triple = best_subset(bf, 3);

  const RoundingPlan plan = build_plan(bf, dp, report.triple, params.extra_s);
  report.rounds =
      round_best_of(instance.a, bf, report.sdp, plan, params.trials, params.solver.seed);
  report.assignment = report.rounds.best;

  const double r_sq = ball.radius * ball.radius;
  double apriori = 2.0 * kPi * r_sq / (dp.distance * dp.distance);
  if (report.triple && report.triple->spread > 0.0)
    apriori = std::min(apriori, 16.0 * kPi * r_sq / (9.0 * report.triple->spread));
  report.apriori_ratio = apriori;
  report.empirical_ratio = ratio_or_one(report.sdp_primal, report.assignment.value);
  return report;
}

SolveReport approximate_clust_noncentered(const KernelInstance& instance,
                                          const PipelineParams& params) {
  const int k = instance.b.dim();
  if (k == 1) return trivial_report(instance, "noncentered");

  const GramFactor bf = gram_factor(instance.b);
  const DiameterPair dp = diameter_pair(bf.vectors);
  double max_norm = 0.0;
  for (const Vec& v : bf.vectors) max_norm = std::max(max_norm, norm(v));
  // All comparison vectors coincide: every assignment has the same value.
  if (dp.distance <= 1e-12 * (1.0 + max_norm)) return trivial_report(instance, "noncentered");

  Vec midpoint(bf.vectors[dp.p].size(), 0.0);
  axpy(0.5, bf.vectors[dp.p], midpoint);
  axpy(0.5, bf.vectors[dp.q], midpoint);
  double radius = 0.0;
  for (const Vec& v : bf.vectors) radius = std::max(radius, dist(v, midpoint));

  SolveReport report;
  report.n = instance.a.dim();
  report.k = k;
  report.variant = "noncentered";
  report.radius = radius;
  report.w_norm = norm(midpoint);
  report.diameter = dp;

  const GramFactor af = gram_factor(instance.a);
  report.sdp = solve_relaxation(af, midpoint, radius, params.solver);
  report.sdp_primal = report.sdp.primal_value;

  RoundingPlan plan;
  plan.pair = {dp.p, dp.q};
  report.rounds =
      round_best_of(instance.a, bf, report.sdp, plan, params.trials, params.solver.seed);
  report.assignment = report.rounds.best;

  report.apriori_ratio = 1.0 + 2.0 * kPi * radius * radius / (dp.distance * dp.distance);
  const double p_norm = report.w_norm * std::sqrt(std::max(0.0, instance.a.sum()));
  const double q_norm =
      radius * std::sqrt(std::max(0.0, gram_quadratic(instance.a, report.sdp.x_stars)));
  report.analytic_bound = (p_norm + q_norm) * (p_norm + q_norm);
  report.empirical_ratio = ratio_or_one(report.sdp_primal, report.assignment.value);
  return report;
}

SolveReport approximate_clust_auto(const KernelInstance& instance, const PipelineParams& params) {
  return instance.centered_a ? approximate_clust(instance, params)
                             : approximate_clust_noncentered(instance, params);
}

Assignment brute_force_clust(const SymMatrix& a, const SymMatrix& b, long long limit) {
  const int n = a.dim();
  const int k = b.dim();
  double combos = 1.0;
  for (int i = 0; i < n; ++i) {
    combos *= k;
    if (combos > static_cast<double>(limit))
      throw TooLargeError("brute_force_clust: k^n exceeds the enumeration limit");
  }

  Assignment best;
  best.labels.assign(n, 0);
  best.value = assignment_value(a, b, best.labels);
  std::vector<int> labels(n, 0);
  // Odometer with the last position fastest enumerates label vectors in
  // lexicographic order; strict improvement keeps the smallest optimum.
  for (;;) {
    int pos = n - 1;
    while (pos >= 0 && labels[pos] == k - 1) {
      labels[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++labels[pos];
    const double value = assignment_value(a, b, labels);
    if (value > best.value) {
      best.labels = labels;
      best.value = value;
    }
  }
  return best;
}

Assignment brute_force_clust(const KernelInstance& instance, long long limit) {
  return brute_force_clust(instance.a, instance.b, limit);
}

SymMatrix identity_reduction(int k) {
  if (k < 2) throw InvalidArgumentError("identity_reduction: k must be >= 2");
  SymMatrix c(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) c.set(i, j, i == j ? 1.0 : -1.0 / (k - 1));
  return c;
}

GrothendieckCheck grothendieck_inequality_check(const SymMatrix& a, const GramFactor& b_factor,
                                                int trials, const SolverParams& solver) {
  if (!is_centered(a, 1e-8))
    throw NotCenteredError("grothendieck_inequality_check: A must be centered");
  for (const Vec& v : b_factor.vectors)
    if (std::abs(norm_sq(v) - 1.0) > 1e-8)
      throw InvalidArgumentError("grothendieck_inequality_check: comparison vectors must be unit");

  const int k = b_factor.count;
  GrothendieckCheck check;
  const SdpSolution sol = grothendieck_max(a, solver);
  check.lhs = sol.primal_value;
  const SymMatrix b = b_factor.to_matrix();
  check.clust_opt = brute_force_clust(a, b).value;
  check.factor = (8.0 * kPi / 9.0) * (1.0 - 1.0 / k);
  check.bound = check.factor * check.clust_opt;
  const double cert_tol = 1e-6 + 1e-6 * std::abs(check.bound);
  check.holds = check.lhs <= check.bound + cert_tol;

  if (trials > 0 && k >= 2) {
    const DiameterPair dp = diameter_pair(b_factor.vectors);
    RoundingPlan plan;
    plan.pair = {dp.p, dp.q};
    if (k >= 3) {
      const SubsetStats st = best_subset(b_factor, 3);
      plan.triple = {st.subset[0], st.subset[1], st.subset[2]};
    }
    const RoundReport rounds = round_best_of(a, b_factor, sol, plan, trials, solver.seed);
    check.round_mean = rounds.round_mean;
    check.round_std_error = rounds.round_std_error;
  }
  return check;
}

}  // namespace kclust
