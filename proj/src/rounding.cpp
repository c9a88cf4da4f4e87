#include "kclust/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "kclust/errors.hpp"

namespace kclust {
namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double std_error() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1));
    return std::sqrt(var / count);
  }
};

}  // namespace

std::vector<int> gaussian_round(const std::vector<Vec>& x_stars, const std::vector<int>& label_set,
                                RandomStream& rng) {
  if (x_stars.empty()) throw EmptyInputError("gaussian_round: no vectors to round");
  if (label_set.size() < 2)
    throw InvalidArgumentError("gaussian_round: need at least two labels");
  const int dim = static_cast<int>(x_stars[0].size());
  std::vector<Vec> gaussians;
  gaussians.reserve(label_set.size());
  for (std::size_t j = 0; j < label_set.size(); ++j) gaussians.push_back(rng.gaussian_vector(dim));

  // label_set is scanned in ascending label order so that exact ties land on
  // the smallest label.
  std::vector<int> order(label_set.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return label_set[a] < label_set[b]; });

  std::vector<int> labels(x_stars.size());
  for (std::size_t r = 0; r < x_stars.size(); ++r) {
    int best = order[0];
    double best_score = dot(gaussians[best], x_stars[r]);
    for (std::size_t t = 1; t < order.size(); ++t) {
      const double score = dot(gaussians[order[t]], x_stars[r]);
      if (score > best_score) {
        best_score = score;
        best = order[t];
      }
    }
    labels[r] = label_set[best];
  }
  return labels;
}

double assignment_value(const SymMatrix& a, const SymMatrix& b, const std::vector<int>& labels) {
  const int n = a.dim();
  if (static_cast<int>(labels.size()) != n)
    throw InvalidArgumentError("assignment_value: label count does not match matrix");
  for (int l : labels)
    if (l < 0 || l >= b.dim())
      throw InvalidArgumentError("assignment_value: label out of range");
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += a(i, j) * b(labels[i], labels[j]);
  return s;
}

RoundReport round_best_of(const SymMatrix& a, const GramFactor& b_factor, const SdpSolution& sdp,
                          const RoundingPlan& plan, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgumentError("round_best_of: trials must be >= 1");
  const SymMatrix b = b_factor.to_matrix();

  std::vector<std::vector<int>> label_sets;
  label_sets.push_back({plan.pair[0], plan.pair[1]});
  if (plan.triple)
    label_sets.push_back({(*plan.triple)[0], (*plan.triple)[1], (*plan.triple)[2]});
  for (const auto& extra : plan.extra_subsets) label_sets.push_back(extra);

  RoundReport report;
  report.trials = trials;
  report.arms.resize(label_sets.size());
  for (std::size_t arm = 0; arm < label_sets.size(); ++arm) {
    report.arms[arm].s = static_cast<int>(label_sets[arm].size());
    report.arms[arm].label_set = label_sets[arm];
    report.arms[arm].trials = trials;
  }

  std::vector<Accumulator> arm_acc(label_sets.size());
  Accumulator round_acc;
  bool have_best = false;
  for (int trial = 0; trial < trials; ++trial) {
    double trial_best = 0.0;
    bool trial_has = false;
    for (std::size_t arm = 0; arm < label_sets.size(); ++arm) {
      RandomStream rng =
          RandomStream::keyed(seed, static_cast<std::uint64_t>(label_sets[arm].size()), trial);
      std::vector<int> labels = gaussian_round(sdp.x_stars, label_sets[arm], rng);
      const double value = assignment_value(a, b, labels);
      arm_acc[arm].add(value);
      if (value > report.arms[arm].best_value || arm_acc[arm].count == 1)
        report.arms[arm].best_value = value;
      if (!trial_has || value > trial_best) {
        trial_best = value;
        trial_has = true;
      }
      if (!have_best || value > report.best.value) {
        report.best.labels = std::move(labels);
        report.best.value = value;
        have_best = true;
      }
    }
    round_acc.add(trial_best);
  }

  for (std::size_t arm = 0; arm < label_sets.size(); ++arm) {
    report.arms[arm].mean = arm_acc[arm].mean();
    report.arms[arm].std_error = arm_acc[arm].std_error();
  }
  report.round_mean = round_acc.mean();
  report.round_std_error = round_acc.std_error();
  return report;
}

}  // namespace kclust
