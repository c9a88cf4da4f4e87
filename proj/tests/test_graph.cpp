#include <sstream>

#include "doctest.h"
#include "kclust/errors.hpp"
#include "kclust/graph.hpp"
#include "kclust/matrix.hpp"
#include "kclust/rng.hpp"

using namespace kclust;

TEST_CASE("laplacians of small graphs") {
  const SymMatrix k2 = laplacian(Graph::make(2, {{0, 1}}));
  CHECK(k2 == SymMatrix(2, {1, -1, -1, 1}));

  const SymMatrix k3 = laplacian(Graph::make(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(k3 == SymMatrix(3, {2, -1, -1, -1, 2, -1, -1, -1, 2}));

  const SymMatrix p3 = laplacian(Graph::make(3, {{0, 1}, {1, 2}}));
  CHECK(p3 == SymMatrix(3, {1, -1, 0, -1, 2, -1, 0, -1, 1}));

  CHECK(is_psd(k3));
  CHECK(is_centered(k3));
  // The all-ones vector is in the kernel: exact zero row sums.
  for (int i = 0; i < 3; ++i) {
    double row = 0.0;
    for (int j = 0; j < 3; ++j) row += k3(i, j);
    CHECK(row == 0.0);
  }
}

TEST_CASE("exact MaxCut values") {
  CHECK(maxcut_exact(Graph::make(2, {{0, 1}})) == 1);
  CHECK(maxcut_exact(Graph::make(3, {{0, 1}, {0, 2}, {1, 2}})) == 2);
  // 5-cycle: odd cycle loses exactly one edge.
  CHECK(maxcut_exact(Graph::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})) == 4);
  CHECK(maxcut_exact(Graph::make(1, {})) == 0);
  CHECK_THROWS_AS(maxcut_exact(Graph{25, {}}), TooLargeError);
}

TEST_CASE("random centered PSD matrices are centered and PSD") {
  RandomStream rng(99);
  const SymMatrix one = random_centered_psd(1, 1, rng);
  CHECK(one(0, 0) == doctest::Approx(0.0));

  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const int rank = 1 + static_cast<int>(rng.below(n));
    const SymMatrix m = random_centered_psd(n, rank, rng);
    CHECK(is_psd(m));
    CHECK(is_centered(m));
  }
}

TEST_CASE("random centered PSD rank control") {
  RandomStream rng(101);
  const SymMatrix m = random_centered_psd(5, 3, rng);
  const Spectrum spec = symmetric_eig(m);
  int numerical_rank = 0;
  for (double v : spec.eigenvalues)
    if (v > 1e-8) ++numerical_rank;
  CHECK(numerical_rank <= 3);
}

TEST_CASE("edge list parsing normalizes and validates") {
  std::istringstream good("4 4\n2 1\n1 2\n3 4\n1 3\n");
  int dups = 0;
  const Graph g = parse_edge_list(good, &dups);
  CHECK(g.n == 4);
  CHECK(dups == 1);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {2, 3}});

  std::istringstream loop("2 1\n1 1\n");
  CHECK_THROWS_AS(parse_edge_list(loop), ParseError);
  std::istringstream range("2 1\n1 3\n");
  CHECK_THROWS_AS(parse_edge_list(range), ParseError);
  std::istringstream short_list("3 2\n1 2\n");
  CHECK_THROWS_AS(parse_edge_list(short_list), ParseError);
}
