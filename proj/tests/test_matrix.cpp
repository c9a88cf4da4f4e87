#include <cmath>
#include <sstream>

#include "doctest.h"
#include "kclust/errors.hpp"
#include "kclust/matrix.hpp"
#include "kclust/rng.hpp"

using namespace kclust;

namespace {

SymMatrix k3_laplacian() {
  return SymMatrix(3, {2, -1, -1, -1, 2, -1, -1, -1, 2});
}

double reconstruction_error(const SymMatrix& m, const Spectrum& spec) {
  double worst = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      double v = 0.0;
      for (int t = 0; t < m.dim(); ++t)
        v += spec.eigenvalues[t] * spec.eigenvectors[t][i] * spec.eigenvectors[t][j];
      worst = std::max(worst, std::abs(v - m(i, j)));
    }
  return worst;
}

}  // namespace

TEST_CASE("symmetry is enforced at construction") {
  const SymMatrix m(2, {1.0, 3.0, 5.0, 2.0});
  CHECK(m(0, 1) == m(1, 0));
  CHECK(m(0, 1) == doctest::Approx(4.0));
  CHECK(m.asymmetry_warning());

  const SymMatrix clean(2, {1.0, 3.0, 3.0, 2.0});
  CHECK_FALSE(clean.asymmetry_warning());
  CHECK_THROWS_AS(SymMatrix(0), InvalidArgumentError);
}

TEST_CASE("is_psd on small matrices") {
  CHECK(is_psd(SymMatrix(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}), 1e-9));
  CHECK(is_psd(SymMatrix(2, {1, -1, -1, 1}), 1e-9));
  CHECK_FALSE(is_psd(SymMatrix(2, {0, 1, 1, 0}), 1e-9));  // eigenvalue -1
}

TEST_CASE("is_centered") {
  CHECK(is_centered(k3_laplacian()));
  CHECK_FALSE(is_centered(SymMatrix(2, {1, 0, 0, 1})));
  CHECK(is_centered(SymMatrix(2, {1, -1, -1, 1})));
}

TEST_CASE("gram_factor of the identity gives orthonormal vectors") {
  const int k = 4;
  SymMatrix eye(k);
  for (int i = 0; i < k; ++i) eye.set(i, i, 1.0);
  const GramFactor f = gram_factor(eye);
  CHECK(f.ambient_dim == k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      CHECK(dot(f.vectors[i], f.vectors[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("gram_factor handles rank deficiency") {
  const GramFactor f = gram_factor(SymMatrix(2, {1, -1, -1, 1}));
  CHECK(f.ambient_dim == 1);
  CHECK(norm(f.vectors[0]) == doctest::Approx(1.0));
  CHECK(dot(f.vectors[0], f.vectors[1]) == doctest::Approx(-1.0));
}

TEST_CASE("gram_factor reconstructs a random low-rank Gram matrix") {
  RandomStream rng(77);
  // Oracle: build M = R R^T from an explicit 5x3 factor, then check the
  // factorization reproduces M entrywise.
  const int n = 5;
  const int r = 3;
  std::vector<Vec> rows(n);
  for (Vec& row : rows) row = rng.gaussian_vector(r);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m.set(i, j, dot(rows[i], rows[j]));

  const GramFactor f = gram_factor(m);
  CHECK(f.ambient_dim <= r);
  const double tol = 1e-8 * m.max_abs();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(dot(f.vectors[i], f.vectors[j]) - m(i, j)) <= tol);
}

TEST_CASE("gram_factor rejects indefinite input") {
  CHECK_THROWS_AS(gram_factor(SymMatrix(2, {0, 1, 1, 0})), NotPsdError);
  CHECK_THROWS_AS(gram_factor(SymMatrix(2, {-1, 0, 0, 1})), NotPsdError);
}

TEST_CASE("symmetric_eig on known spectra") {
  const Spectrum d = symmetric_eig(SymMatrix(3, {1, 0, 0, 0, 2, 0, 0, 0, 3}));
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(d.eigenvalues[2] == doctest::Approx(3.0));

  const Spectrum s = symmetric_eig(SymMatrix(2, {1, -1, -1, 1}));
  CHECK(s.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));

  // K3 Laplacian: rank-2 with the constant vector in the kernel, the other
  // two eigenvalues equal the vertex count.
  const Spectrum l = symmetric_eig(k3_laplacian());
  CHECK(l.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(l.eigenvalues[1] == doctest::Approx(3.0));
  CHECK(l.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("symmetric_eig reconstruction and trace on random matrices") {
  RandomStream rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m.set(i, j, 4.0 * rng.gaussian());
    const Spectrum spec = symmetric_eig(m);
    CHECK(reconstruction_error(m, spec) <= 1e-8 * std::max(1.0, m.max_abs()));
    double eig_sum = 0.0;
    for (double v : spec.eigenvalues) eig_sum += v;
    CHECK(eig_sum == doctest::Approx(m.trace()).epsilon(1e-10));
  }
}

TEST_CASE("is_centered agrees with the all-ones quadratic form") {
  RandomStream rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m.set(i, j, rng.gaussian());
    double ones_form = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ones_form += m(i, j);
    CHECK(is_centered(m) == (std::abs(ones_form) <= 1e-9 * std::max(1.0, m.abs_sum())));
  }
}

TEST_CASE("matrix text format round-trips") {
  const SymMatrix m(2, {1.5, -0.25, -0.25, 3.0});
  std::ostringstream out;
  write_matrix_text(out, m);
  std::istringstream in(out.str());
  const SymMatrix back = parse_matrix_text(in);
  CHECK(back == m);
}

TEST_CASE("matrix parsers reject bad input") {
  std::istringstream missing("3\n1 0 0\n0 1 0\n");
  CHECK_THROWS_AS(parse_matrix_text(missing), ParseError);
  std::istringstream nan_entry("1\nnan\n");
  CHECK_THROWS_AS(parse_matrix_text(nan_entry), ParseError);
  std::istringstream inf_entry("1\ninf\n");
  CHECK_THROWS_AS(parse_matrix_text(inf_entry), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("{\"dim\": 2, \"rows\": [[1, 0]]}"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("not json"), ParseError);

  const SymMatrix j = parse_matrix_json("{\"dim\": 2, \"rows\": [[1, -1], [-1, 1]]}");
  CHECK(j(0, 1) == doctest::Approx(-1.0));
}
