#include "kclust/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kclust/errors.hpp"

namespace kclust {
namespace {

constexpr double kPi = std::numbers::pi;

double gauss_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double gauss_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// 7-point Gauss / 15-point Kronrod pair (QUADPACK abscissae and weights).
constexpr double kKronrodNodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kKronrodWeights[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kGaussWeights[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <typename F>
void gauss_kronrod(const F& f, double a, double b, double& kronrod, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double gauss = kGaussWeights[3] * f(mid);
  kronrod = kKronrodWeights[7] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double offset = half * kKronrodNodes[i];
    const double pair = f(mid - offset) + f(mid + offset);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  err = std::abs(kronrod - gauss);
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol, int depth = 0) {
  double value = 0.0;
  double err = 0.0;
  gauss_kronrod(f, a, b, value, err);
  if (err <= abs_tol || depth >= 40) return value;
  const double mid = 0.5 * (a + b);
  return integrate_adaptive(f, a, mid, 0.5 * abs_tol, depth + 1) +
         integrate_adaptive(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double expected_max_gaussian(int k) {
  if (k < 2) throw InvalidArgumentError("expected_max_gaussian: k must be >= 2");
  const auto integrand = [k](double x) {
    return k * x * gauss_pdf(x) * std::pow(gauss_cdf(x), k - 1);
  };
  // Tail mass beyond |x| = 12 is below 1e-31.
  return integrate_adaptive(integrand, -12.0, 12.0, 1e-12);
}

double r_constant(int k) {
  const double m = expected_max_gaussian(k);
  return m * m / (k - 1);
}

std::vector<double> geometry_table(int kmax) {
  if (kmax < 2) throw InvalidArgumentError("geometry_table: kmax must be >= 2");
  std::vector<double> table;
  table.reserve(kmax - 1);
  for (int k = 2; k <= kmax; ++k) table.push_back(r_constant(k));
  return table;
}

double propeller_value(const std::array<double, 3>& angles) {
  double sum = 0.0;
  for (double a : angles) {
    if (a < -1e-12) throw InvalidArgumentError("propeller_value: angles must be nonnegative");
    sum += a;
  }
  if (std::abs(sum - 2.0 * kPi) > 1e-12)
    throw InvalidArgumentError("propeller_value: angles must sum to 2 pi");
  double total = 0.0;
  for (double a : angles) {
    const double s = std::sin(0.5 * a);
    total += s * s;
  }
  return total / (2.0 * kPi);
}

ConicalPartition ConicalPartition::make(std::vector<Vec> generators) {
  if (generators.empty())
    throw InvalidArgumentError("ConicalPartition: need at least one generator");
  const std::size_t d = generators[0].size();
  if (d == 0) throw InvalidArgumentError("ConicalPartition: dimension must be >= 1");
  for (const Vec& g : generators)
    if (g.size() != d)
      throw InvalidArgumentError("ConicalPartition: generators of mixed dimension");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (dist(generators[i], generators[j]) <= 1e-12)
        throw InvalidArgumentError("ConicalPartition: generators must be pairwise distinct");
  return ConicalPartition{std::move(generators)};
}

MomentReport partition_moment_mc(const ConicalPartition& partition, long long samples,
                                 RandomStream& rng) {
  if (samples < 10000)
    throw InvalidArgumentError("partition_moment_mc: need at least 10^4 samples");
  const int m = static_cast<int>(partition.generators.size());
  const int d = partition.dim();

  std::vector<Vec> sums(m, Vec(static_cast<std::size_t>(d), 0.0));
  // Per-cell second moments, for the delta-method standard error.
  std::vector<std::vector<double>> second(m, std::vector<double>(static_cast<std::size_t>(d) * d, 0.0));
  Vec x(static_cast<std::size_t>(d));
  for (long long it = 0; it < samples; ++it) {
    for (double& c : x) c = rng.gaussian();
    int cell = 0;
    double best = dot(x, partition.generators[0]);
    for (int j = 1; j < m; ++j) {
      const double score = dot(x, partition.generators[j]);
      if (score > best) {
        best = score;
        cell = j;
      }
    }
    for (int r = 0; r < d; ++r) {
      sums[cell][r] += x[r];
      for (int c = 0; c <= r; ++c) second[cell][static_cast<std::size_t>(r) * d + c] += x[r] * x[c];
    }
  }

  MomentReport report;
  report.samples = samples;
  report.moments.resize(m);
  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    report.moments[j] = sums[j];
    scale(report.moments[j], 1.0 / samples);
    total += norm_sq(report.moments[j]);
  }
  report.total = total;

  // Var(total) ~ (4/N) (sum_j z_j^T S_j z_j - total^2), S_j = E[x x^T 1_cell].
  double quad = 0.0;
  for (int j = 0; j < m; ++j) {
    const Vec& z = report.moments[j];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        const double s_rc = second[j][r >= c ? static_cast<std::size_t>(r) * d + c
                                             : static_cast<std::size_t>(c) * d + r] /
                            samples;
        quad += z[r] * s_rc * z[c];
      }
  }
  report.std_error = std::sqrt(std::max(0.0, 4.0 * (quad - total * total) / samples));
  return report;
}

std::vector<Vec> regular_simplex_vectors(int k) {
  if (k < 2) throw InvalidArgumentError("regular_simplex_vectors: k must be >= 2");
  SymMatrix gram(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) gram.set(i, j, i == j ? 1.0 : -1.0 / (k - 1));
  return gram_factor(gram).vectors;
}

RatioEstimate gaussian_ratio_estimate(const SymMatrix& covariance, long long samples,
                                      RandomStream& rng) {
  const double trace = covariance.trace();
  if (trace <= 0.0) throw InvalidArgumentError("gaussian_ratio: covariance trace must be positive");
  const GramFactor factor = gram_factor(covariance);
  const int k = factor.count;
  const int d = factor.ambient_dim;

  double sum = 0.0;
  double sum_sq = 0.0;
  Vec eta(static_cast<std::size_t>(d));
  for (long long it = 0; it < samples; ++it) {
    for (double& c : eta) c = rng.gaussian();
    double max_g = dot(factor.vectors[0], eta);
    for (int j = 1; j < k; ++j) max_g = std::max(max_g, dot(factor.vectors[j], eta));
    sum += max_g;
    sum_sq += max_g * max_g;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
  const double se_mean = std::sqrt(var / samples);

  RatioEstimate est;
  est.value = mean * mean / trace;
  est.std_error = 2.0 * std::abs(mean) * se_mean / trace;
  est.samples = samples;
  return est;
}

double gaussian_ratio(const SymMatrix& covariance, long long samples, RandomStream& rng) {
  return gaussian_ratio_estimate(covariance, samples, rng).value;
}

namespace {

constexpr std::uint64_t kSearchTag = 0x9E0A7E11;
constexpr std::uint64_t kFinalTag = 0xF1A15EED;

struct PoolEval {
  double total = 0.0;
  std::vector<Vec> moments;
};

PoolEval pool_total(const std::vector<double>& pool, long long count, int d,
                    const std::vector<Vec>& gens) {
  const int m = static_cast<int>(gens.size());
  PoolEval eval;
  eval.moments.assign(m, Vec(static_cast<std::size_t>(d), 0.0));
  for (long long i = 0; i < count; ++i) {
    const double* x = pool.data() + static_cast<std::size_t>(i) * d;
    int cell = 0;
    double best = 0.0;
    for (int c = 0; c < d; ++c) best += x[c] * gens[0][c];
    for (int j = 1; j < m; ++j) {
      double score = 0.0;
      for (int c = 0; c < d; ++c) score += x[c] * gens[j][c];
      if (score > best) {
        best = score;
        cell = j;
      }
    }
    for (int c = 0; c < d; ++c) eval.moments[cell][c] += x[c];
  }
  for (Vec& mom : eval.moments) {
    scale(mom, 1.0 / static_cast<double>(count));
    eval.total += norm_sq(mom);
  }
  return eval;
}

// Drop generators whose cells carry (numerically) no moment, merging
// near-duplicates, so the result satisfies the partition invariants.
std::vector<Vec> prune_generators(const std::vector<Vec>& gens) {
  std::vector<Vec> kept;
  for (const Vec& g : gens) {
    if (norm(g) <= 1e-9) continue;
    bool dup = false;
    for (const Vec& h : kept)
      if (dist(g, h) <= 1e-9) dup = true;
    if (!dup) kept.push_back(g);
  }
  return kept;
}

bool distinct_enough(const std::vector<Vec>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (dist(gens[i], gens[j]) <= 1e-9) return false;
  return true;
}

// Moment fixed point: replacing the generators by their cell moments never
// decreases the empirical total (Cauchy-Schwarz), so iterating it is a
// monotone ascent on the common sample pool. Returns the converged total.
double moment_descend(const std::vector<double>& pool, long long count, int d,
                      std::vector<Vec>& gens, int max_iters) {
  double current = pool_total(pool, count, d, gens).total;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<Vec> next = prune_generators(pool_total(pool, count, d, gens).moments);
    if (next.empty()) break;
    const double next_total = pool_total(pool, count, d, next).total;
    if (next_total < current) break;
    const bool settled = next_total <= current + 1e-14;
    gens = std::move(next);
    current = next_total;
    if (settled) break;
  }
  return current;
}

}  // namespace

PropellerResult propeller_search(int k, int restarts, long long samples, std::uint64_t seed) {
  if (k < 2 || k > 8) throw InvalidArgumentError("propeller_search: k must be in [2, 8]");
  if (restarts < 1) throw InvalidArgumentError("propeller_search: restarts must be >= 1");
  const int d = k - 1;  // the partition supremum over R^n is attained by n = k - 1
  const long long pool_count = 20000;

  std::vector<Vec> best_gens;
  double best_total = -1.0;
  for (int restart = 0; restart < restarts; ++restart) {
    RandomStream rng = RandomStream::keyed(seed, kSearchTag, restart);
    std::vector<double> pool(static_cast<std::size_t>(pool_count) * d);
    for (double& v : pool) v = rng.gaussian();

    std::vector<Vec> gens;
    do {
      gens.clear();
      for (int j = 0; j < k; ++j) gens.push_back(rng.unit_vector(d));
    } while (!distinct_enough(gens));

    double current = moment_descend(pool, pool_count, d, gens, 200);

    // Coordinate-perturbation polish on the same pool; each perturbed
    // candidate is re-descended through the fixed point before comparing.
    for (double delta : {0.1, 0.02}) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        for (int c = 0; c < d; ++c) {
          for (double sign : {1.0, -1.0}) {
            std::vector<Vec> cand = gens;
            cand[j][c] += sign * delta;
            if (!distinct_enough(cand)) continue;
            const double cand_total = moment_descend(pool, pool_count, d, cand, 40);
            if (cand_total > current) {
              gens = std::move(cand);
              current = cand_total;
            }
          }
        }
      }
    }

    if (current > best_total) {
      best_total = current;
      best_gens = gens;
    }
  }

  PropellerResult result;
  result.restarts = restarts;
  result.search_total = best_total;
  std::vector<Vec> pruned = prune_generators(best_gens);
  result.best = ConicalPartition::make(pruned.empty() ? std::move(best_gens) : std::move(pruned));
  // Fresh samples for the final value: the search maximizes over many noisy
  // evaluations, so re-evaluating independently removes the selection bias.
  RandomStream final_rng = RandomStream::keyed(seed, kFinalTag, 0);
  const MomentReport final_eval = partition_moment_mc(result.best, samples, final_rng);
  result.best_total = final_eval.total;
  result.std_error = final_eval.std_error;
  result.samples = final_eval.samples;
  return result;
}

}  // namespace kclust
