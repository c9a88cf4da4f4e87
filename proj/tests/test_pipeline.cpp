#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "kclust/errors.hpp"
#include "kclust/graph.hpp"
#include "kclust/pipeline.hpp"
#include "kclust/rng.hpp"

using namespace kclust;

namespace {

constexpr double kPi = std::numbers::pi;

SymMatrix identity(int k) {
  SymMatrix m(k);
  for (int i = 0; i < k; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix sign_matrix() { return SymMatrix(2, {1, -1, -1, 1}); }

SymMatrix k3_laplacian() { return laplacian(Graph::make(3, {{0, 1}, {0, 2}, {1, 2}})); }

// Independent oracle: enumerate labelings through the clustered-matrix form.
double clustered_optimum(const SymMatrix& a, const SymMatrix& b) {
  const int n = a.dim();
  const int k = b.dim();
  std::vector<int> labels(n, 0);
  double best = -1e300;
  for (;;) {
    std::vector<double> clustered(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        clustered[static_cast<std::size_t>(labels[i]) * k + labels[j]] += a(i, j);
    double v = 0.0;
    for (int s = 0; s < k; ++s)
      for (int t = 0; t < k; ++t) v += clustered[static_cast<std::size_t>(s) * k + t] * b(s, t);
    best = std::max(best, v);
    int pos = n - 1;
    while (pos >= 0 && labels[pos] == k - 1) labels[pos--] = 0;
    if (pos < 0) break;
    ++labels[pos];
  }
  return best;
}

}  // namespace

TEST_CASE("instance flags") {
  const KernelInstance inst = KernelInstance::make(k3_laplacian(), identity(3));
  CHECK(inst.centered_a);
  CHECK_FALSE(inst.centered_b);
  CHECK(inst.spherical_b);
  CHECK_THROWS_AS(KernelInstance::make(SymMatrix(2, {0, 1, 1, 0}), identity(2)), NotPsdError);
}

TEST_CASE("centered pipeline on the sign kernel against the identity") {
  const KernelInstance inst = KernelInstance::make(sign_matrix(), identity(2));
  PipelineParams params;
  params.trials = 500;
  const SolveReport report = approximate_clust(inst, params);

  CHECK(report.variant == "centered");
  // R(B)^2 = 1/2 and the unconstrained vector maximum is 4, so the solved
  // value is 2, which the split labeling attains exactly.
  CHECK(report.sdp_primal == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(report.assignment.value == doctest::Approx(2.0));
  CHECK(report.empirical_ratio == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(report.apriori_ratio == doctest::Approx(kPi / 2.0).epsilon(1e-9));
  CHECK(report.apriori_ratio <= kPi / 2.0 + 1e-9);
  REQUIRE(report.sdp_dual.has_value());
  CHECK(report.sdp_primal <= *report.sdp_dual + 1e-9);
}

TEST_CASE("centered pipeline on K3 against the identity") {
  const KernelInstance inst = KernelInstance::make(k3_laplacian(), identity(3));
  PipelineParams params;
  params.trials = 2000;
  const SolveReport report = approximate_clust(inst, params);

  const double opt = clustered_optimum(inst.a, inst.b);
  REQUIRE(opt == doctest::Approx(6.0));
  CHECK(report.assignment.value == doctest::Approx(6.0));
  // R^2 = 2/3 against the vector maximum 9: the relaxation is tight here.
  CHECK(report.sdp_primal == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(report.apriori_ratio == doctest::Approx(16.0 * kPi / 27.0).epsilon(1e-8));
  // Single-round guarantee, tested against the empirical mean.
  CHECK(opt <= report.apriori_ratio *
                   (report.rounds.round_mean + 4.0 * report.rounds.round_std_error));
  CHECK(report.assignment.value <= opt + 1e-9);
  CHECK(report.sdp_primal >= report.assignment.value - 1e-6);
}

TEST_CASE("zero kernel reports unit ratios") {
  const KernelInstance inst = KernelInstance::make(SymMatrix(3), identity(2));
  const SolveReport report = approximate_clust(inst);
  CHECK(report.assignment.value == doctest::Approx(0.0));
  CHECK(report.empirical_ratio == doctest::Approx(1.0));
}

TEST_CASE("noncentered variant bounds") {
  RandomStream rng(4001);
  // A non-centered PSD kernel: Gram of shifted Gaussian vectors.
  const int n = 4;
  std::vector<Vec> u(n);
  for (Vec& v : u) {
    v = rng.gaussian_vector(3);
    v[0] += 2.0;
  }
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a.set(i, j, dot(u[i], u[j]));
  REQUIRE_FALSE(is_centered(a, 1e-8));

  SUBCASE("sign comparison gives ratio 1 + pi/2") {
    const KernelInstance inst = KernelInstance::make(a, sign_matrix());
    const SolveReport report = approximate_clust_noncentered(inst);
    // D = 2 and the farthest point from the midpoint is at distance 1.
    CHECK(report.apriori_ratio == doctest::Approx(1.0 + kPi / 2.0).epsilon(1e-9));
    CHECK(report.variant == "noncentered");
    CHECK_FALSE(report.sdp_dual.has_value());
    REQUIRE(report.analytic_bound.has_value());
    CHECK(*report.analytic_bound >= report.sdp_primal - 1e-6);
  }

  SUBCASE("identity comparison gives ratio 1 + pi/2") {
    const KernelInstance inst = KernelInstance::make(a, identity(2));
    const SolveReport report = approximate_clust_noncentered(inst);
    // D^2 = 2, max ||v - midpoint||^2 = 1/2.
    CHECK(report.apriori_ratio == doctest::Approx(1.0 + kPi / 2.0).epsilon(1e-9));
  }

  SUBCASE("ratio never exceeds 1 + 3 pi / 2 and bounds the optimum") {
    for (int trial = 0; trial < 5; ++trial) {
      const int k = 2 + static_cast<int>(rng.below(3));
      SymMatrix b(k);
      std::vector<Vec> vb(k);
      for (Vec& v : vb) v = rng.gaussian_vector(k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j <= i; ++j) b.set(i, j, dot(vb[i], vb[j]));
      const KernelInstance inst = KernelInstance::make(a, b);
      PipelineParams params;
      params.trials = 2000;
      const SolveReport report = approximate_clust_noncentered(inst, params);
      CHECK(report.apriori_ratio <= 1.0 + 1.5 * kPi + 1e-9);
      const double opt = clustered_optimum(a, b);
      CHECK(opt <= report.apriori_ratio *
                       (report.rounds.round_mean + 4.0 * report.rounds.round_std_error) +
                       1e-9);
      CHECK(report.assignment.value <= opt + 1e-9);
    }
  }
}

TEST_CASE("auto dispatch picks the variant by centering") {
  const KernelInstance centered = KernelInstance::make(sign_matrix(), identity(2));
  CHECK(approximate_clust_auto(centered).variant == "centered");
  SymMatrix shifted(2, {2.0, 1.0, 1.0, 2.0});
  const KernelInstance off = KernelInstance::make(shifted, identity(2));
  CHECK(approximate_clust_auto(off).variant == "noncentered");
}

TEST_CASE("brute force closed forms") {
  SymMatrix a1(1);
  a1.set(0, 0, 2.5);
  SymMatrix b(2, {0.5, 0.0, 0.0, 2.0});
  const Assignment one = brute_force_clust(a1, b);
  CHECK(one.value == doctest::Approx(2.5 * 2.0));
  CHECK(one.labels == std::vector<int>{1});

  CHECK(brute_force_clust(sign_matrix(), sign_matrix()).value == doctest::Approx(4.0));
  CHECK(brute_force_clust(k3_laplacian(), sign_matrix()).value == doctest::Approx(8.0));

  // Ties resolve to the lexicographically smallest labeling.
  CHECK(brute_force_clust(SymMatrix(2), identity(2)).labels == std::vector<int>{0, 0});
  CHECK_THROWS_AS(brute_force_clust(identity(30), identity(4), 1000), TooLargeError);
}

TEST_CASE("identity reduction matrix and scaling") {
  CHECK(identity_reduction(2) == sign_matrix());
  const SymMatrix c3 = identity_reduction(3);
  CHECK(c3(0, 0) == doctest::Approx(1.0));
  CHECK(c3(0, 1) == doctest::Approx(-0.5));
  CHECK(is_centered(c3));
  CHECK(is_psd(c3));

  RandomStream rng(515);
  for (int k : {2, 3, 4}) {
    const SymMatrix ck = identity_reduction(k);
    const SymMatrix eye = identity(k);
    const SymMatrix a = random_centered_psd(5, 3, rng);
    // Per-assignment equality value(A, I_k) = ((k-1)/k) value(A, C_k).
    std::vector<int> labels(5, 0);
    for (;;) {
      const double lhs = assignment_value(a, eye, labels);
      const double rhs = assignment_value(a, ck, labels) * (k - 1.0) / k;
      CHECK(std::abs(lhs - rhs) <= 1e-10);
      int pos = 4;
      while (pos >= 0 && labels[pos] == k - 1) labels[pos--] = 0;
      if (pos < 0) break;
      ++labels[pos];
    }
    const Assignment bi = brute_force_clust(a, eye);
    const Assignment bc = brute_force_clust(a, ck);
    CHECK(bi.value == doctest::Approx(bc.value * (k - 1.0) / k).epsilon(1e-12));
    CHECK(bi.labels == bc.labels);
  }
}

TEST_CASE("grothendieck inequality check") {
  SUBCASE("antipodal pair") {
    GramFactor bf;
    bf.count = 2;
    bf.ambient_dim = 1;
    bf.vectors = {{1.0}, {-1.0}};
    const GrothendieckCheck check = grothendieck_inequality_check(sign_matrix(), bf, 200);
    CHECK(check.lhs == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(check.clust_opt == doctest::Approx(4.0));
    CHECK(check.bound == doctest::Approx(16.0 * kPi / 9.0).epsilon(1e-8));
    CHECK(check.holds);
  }

  SUBCASE("zero kernel") {
    GramFactor bf;
    bf.count = 2;
    bf.ambient_dim = 1;
    bf.vectors = {{1.0}, {-1.0}};
    const GrothendieckCheck check = grothendieck_inequality_check(SymMatrix(3), bf, 10);
    CHECK(check.lhs == doctest::Approx(0.0));
    CHECK(check.holds);
  }

  SUBCASE("random Laplacians against the planar simplex") {
    RandomStream rng(616);
    GramFactor simplex;
    simplex.count = 3;
    simplex.ambient_dim = 2;
    simplex.vectors = {{1.0, 0.0}, {-0.5, std::sqrt(3.0) / 2.0}, {-0.5, -std::sqrt(3.0) / 2.0}};
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(5));
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.uniform01() < 0.6) edges.emplace_back(i, j);
      if (edges.empty()) edges.emplace_back(0, 1);
      const SymMatrix a = laplacian(Graph::make(n, edges));
      const GrothendieckCheck check = grothendieck_inequality_check(a, simplex, 100);
      CHECK(check.holds);
    }
  }
}

TEST_CASE("degenerate comparison matrices short-circuit") {
  // Rank-one B with identical rows: all Gram vectors coincide.
  SymMatrix b(2, {1.0, 1.0, 1.0, 1.0});
  const KernelInstance inst = KernelInstance::make(k3_laplacian(), b);
  const SolveReport centered = approximate_clust(inst);
  CHECK(centered.assignment.value == doctest::Approx(0.0));
  const SolveReport noncentered = approximate_clust_noncentered(inst);
  CHECK(noncentered.assignment.value == doctest::Approx(0.0));

  // k = 1 leaves a single labeling.
  SymMatrix b1(1);
  b1.set(0, 0, 2.0);
  const KernelInstance single = KernelInstance::make(k3_laplacian(), b1);
  const SolveReport rep = approximate_clust(single);
  CHECK(rep.assignment.labels == std::vector<int>{0, 0, 0});
}

TEST_CASE("centered pipeline requires centered input") {
  SymMatrix shifted(2, {2.0, 1.0, 1.0, 2.0});
  const KernelInstance inst = KernelInstance::make(shifted, identity(2));
  CHECK_THROWS_AS(approximate_clust(inst), NotCenteredError);
}
