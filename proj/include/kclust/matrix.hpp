#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kclust/vecops.hpp"

namespace kclust {

/// Dense real symmetric matrix. Construction symmetrizes the input as
/// (M + M^T)/2 and records whether the asymmetry was large enough to matter,
/// so all stored matrices satisfy entries(i,j) == entries(j,i) exactly.
class SymMatrix {
 public:
  /// Zero matrix of the given dimension (dim >= 1).
  explicit SymMatrix(int dim);

  /// From row-major entries, length dim*dim.
  SymMatrix(int dim, const std::vector<double>& row_major);

  static SymMatrix from_rows(const std::vector<Vec>& rows);

  int dim() const { return dim_; }

  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  /// Sets both (i,j) and (j,i).
  void set(int i, int j, double value);

  double max_abs() const;
  double sum() const;
  double abs_sum() const;
  double trace() const;

  /// True when the construction input deviated from symmetry by more than
  /// 1e-8 * max(1, max|entry|).
  bool asymmetry_warning() const { return asym_warn_; }

  const std::vector<double>& data() const { return a_; }

  bool operator==(const SymMatrix& other) const {
    return dim_ == other.dim_ && a_ == other.a_;
  }

 private:
  int dim_;
  std::vector<double> a_;
  bool asym_warn_ = false;
};

/// Vectors whose pairwise inner products reproduce a PSD matrix.
/// ambient_dim equals the numerical rank found by the pivoted factorization.
struct GramFactor {
  int count = 0;
  int ambient_dim = 0;
  std::vector<Vec> vectors;

  SymMatrix to_matrix() const;
};

/// Eigendecomposition of a symmetric matrix; eigenvalues ascending,
/// eigenvectors[i] is the unit eigenvector for eigenvalues[i].
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Vec> eigenvectors;
};

/// True iff the smallest eigenvalue is >= -tol * max(1, max|entry|).
bool is_psd(const SymMatrix& m, double tol = 1e-9);

/// True iff |sum of all entries| <= tol * max(1, sum of |entries|).
bool is_centered(const SymMatrix& m, double tol = 1e-9);

/// Pivoted Cholesky factorization with diagonal pivoting. Rank-deficient PSD
/// inputs are handled by dropping trailing columns once the pivot falls below
/// tol * (max initial diagonal); a pivot below the negated threshold throws
/// NotPsdError.
GramFactor gram_factor(const SymMatrix& m, double tol = 1e-9);

/// Cyclic Jacobi eigendecomposition. Throws SolverError if the sweep cap is
/// reached before the off-diagonal mass vanishes.
Spectrum symmetric_eig(const SymMatrix& m);

// --- matrix file I/O -------------------------------------------------------
//
// Text format: first line is the dimension n, followed by n lines of n
// whitespace-separated reals (row-major). JSON format: {"dim": n, "rows":
// [[...], ...]}. Both reject NaN and infinity.

SymMatrix parse_matrix_text(std::istream& in);
SymMatrix parse_matrix_json(const std::string& text);

/// Reads a matrix file, auto-detecting JSON (leading '{') vs text.
SymMatrix load_matrix_file(const std::string& path);

void write_matrix_text(std::ostream& out, const SymMatrix& m);

}  // namespace kclust
