#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "kclust/matrix.hpp"
#include "kclust/rng.hpp"

namespace kclust {

/// Loop-free undirected graph. Edges are stored 0-based with i < j, sorted
/// and deduplicated; the file format is 1-based.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph make(int n, std::vector<std::pair<int, int>> edges, int* duplicates_removed = nullptr);
};

/// Graph Laplacian: degree on the diagonal, -1 across edges. Positive
/// semidefinite (diagonally dominant) and centered (zero row sums) exactly.
SymMatrix laplacian(const Graph& g);

/// Exact MaxCut by enumerating 2^(n-1) vertex bipartitions; n is capped at 24.
long long maxcut_exact(const Graph& g);

/// Gram matrix of `n` Gaussian vectors of dimension `rank` recentered to sum
/// to zero, so the output is centered PSD by construction.
SymMatrix random_centered_psd(int n, int rank, RandomStream& rng);

/// Edge-list format: first line "n m", then m lines "i j" (1-indexed).
/// Duplicate edges are dropped with a count reported through Graph::make.
Graph parse_edge_list(std::istream& in, int* duplicates_removed = nullptr);

}  // namespace kclust
