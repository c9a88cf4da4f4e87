#include "kclust/graph.hpp"

#include <algorithm>
#include <istream>

#include "kclust/errors.hpp"

namespace kclust {

Graph Graph::make(int n, std::vector<std::pair<int, int>> edges, int* duplicates_removed) {
  if (n < 1) throw InvalidArgumentError("Graph: need at least one vertex");
  for (auto& [a, b] : edges) {
    if (a == b) throw InvalidArgumentError("Graph: self-loops are not allowed");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw InvalidArgumentError("Graph: edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  if (duplicates_removed) *duplicates_removed = static_cast<int>(edges.end() - last);
  edges.erase(last, edges.end());
  return Graph{n, std::move(edges)};
}

SymMatrix laplacian(const Graph& g) {
  SymMatrix m(g.n);
  for (const auto& [a, b] : g.edges) {
    m.set(a, b, -1.0);
    m.set(a, a, m(a, a) + 1.0);
    m.set(b, b, m(b, b) + 1.0);
  }
  return m;
}

long long maxcut_exact(const Graph& g) {
  if (g.n > 24) throw TooLargeError("maxcut_exact: enumeration capped at n = 24");
  // Vertex n-1 is pinned to one side; complements give the same cut.
  const std::uint64_t limit = 1ULL << (g.n > 1 ? g.n - 1 : 0);
  long long best = 0;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    long long cut = 0;
    for (const auto& [a, b] : g.edges)
      cut += (((mask >> a) ^ (mask >> b)) & 1ULL) ? 1 : 0;
    best = std::max(best, cut);
  }
  return best;
}

SymMatrix random_centered_psd(int n, int rank, RandomStream& rng) {
  if (rank < 1 || rank > n)
    throw InvalidArgumentError("random_centered_psd: rank must be in [1, n]");
  std::vector<Vec> u(n);
  Vec mean(static_cast<std::size_t>(rank), 0.0);
  for (Vec& v : u) {
    v = rng.gaussian_vector(rank);
    axpy(1.0 / n, v, mean);
  }
  for (Vec& v : u)
    for (int c = 0; c < rank; ++c) v[c] -= mean[c];
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m.set(i, j, dot(u[i], u[j]));
  return m;
}

Graph parse_edge_list(std::istream& in, int* duplicates_removed) {
  int n = 0;
  int m = 0;
  if (!(in >> n >> m)) throw ParseError("edge list: missing \"n m\" header");
  if (n < 1 || m < 0) throw ParseError("edge list: invalid header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int e = 0; e < m; ++e) {
    int a = 0;
    int b = 0;
    if (!(in >> a >> b)) throw ParseError("edge list: too few edges");
    if (a < 1 || b < 1 || a > n || b > n) throw ParseError("edge list: vertex index out of range");
    if (a == b) throw ParseError("edge list: self-loop");
    edges.emplace_back(a - 1, b - 1);
  }
  return Graph::make(n, std::move(edges), duplicates_removed);
}

}  // namespace kclust
