#include "kclust/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kclust/errors.hpp"

namespace kclust {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidArgumentError("SymMatrix: dimension must be >= 1");
  a_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SymMatrix::SymMatrix(int dim, const std::vector<double>& row_major) : SymMatrix(dim) {
  if (row_major.size() != a_.size())
    throw InvalidArgumentError("SymMatrix: entry count does not match dimension");
  double max_entry = 0.0;
  for (double v : row_major) max_entry = std::max(max_entry, std::abs(v));
  double max_asym = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double lo = row_major[static_cast<std::size_t>(i) * dim + j];
      const double hi = row_major[static_cast<std::size_t>(j) * dim + i];
      max_asym = std::max(max_asym, std::abs(lo - hi));
      const double v = (lo == hi) ? lo : 0.5 * (lo + hi);
      a_[static_cast<std::size_t>(i) * dim + j] = v;
      a_[static_cast<std::size_t>(j) * dim + i] = v;
    }
  }
  asym_warn_ = max_asym > 1e-8 * std::max(1.0, max_entry);
}

SymMatrix SymMatrix::from_rows(const std::vector<Vec>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw InvalidArgumentError("SymMatrix: dimension must be >= 1");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const Vec& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw InvalidArgumentError("SymMatrix: rows must form a square matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return SymMatrix(n, flat);
}

void SymMatrix::set(int i, int j, double value) {
  a_[static_cast<std::size_t>(i) * dim_ + j] = value;
  a_[static_cast<std::size_t>(j) * dim_ + i] = value;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::sum() const { return std::accumulate(a_.begin(), a_.end(), 0.0); }

double SymMatrix::abs_sum() const {
  double s = 0.0;
  for (double v : a_) s += std::abs(v);
  return s;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

SymMatrix GramFactor::to_matrix() const {
  SymMatrix m(count);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j <= i; ++j) m.set(i, j, dot(vectors[i], vectors[j]));
  return m;
}

bool is_psd(const SymMatrix& m, double tol) {
  if (tol < 0) throw InvalidArgumentError("is_psd: tol must be nonnegative");
  const Spectrum spec = symmetric_eig(m);
  return spec.eigenvalues.front() >= -tol * std::max(1.0, m.max_abs());
}

bool is_centered(const SymMatrix& m, double tol) {
  return std::abs(m.sum()) <= tol * std::max(1.0, m.abs_sum());
}

GramFactor gram_factor(const SymMatrix& m, double tol) {
  const int n = m.dim();
  std::vector<double> work(m.data());
  auto at = [&](int i, int j) -> double& { return work[static_cast<std::size_t>(i) * n + j]; };

  double max_diag0 = 0.0;
  for (int i = 0; i < n; ++i) max_diag0 = std::max(max_diag0, at(i, i));
  max_diag0 = std::max(max_diag0, 0.0);
  const double stop_tol = tol * max_diag0;
  const double neg_tol = -tol * std::max(max_diag0, 1.0);

  std::vector<Vec> coeffs(n, Vec(static_cast<std::size_t>(n), 0.0));
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);

  int rank = 0;
  while (!remaining.empty()) {
    int best_pos = 0;
    for (int t = 1; t < static_cast<int>(remaining.size()); ++t)
      if (at(remaining[t], remaining[t]) > at(remaining[best_pos], remaining[best_pos]))
        best_pos = t;
    const int p = remaining[best_pos];
    const double pivot = at(p, p);
    if (pivot <= stop_tol) {
      for (int idx : remaining)
        if (at(idx, idx) < neg_tol)
          throw NotPsdError("gram_factor: negative pivot, matrix is not PSD");
      break;
    }
    const double root = std::sqrt(pivot);
    coeffs[p][rank] = root;
    remaining.erase(remaining.begin() + best_pos);
    for (int idx : remaining) coeffs[idx][rank] = at(idx, p) / root;
    for (std::size_t a = 0; a < remaining.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b) {
        const int i = remaining[a];
        const int j = remaining[b];
        const double v = at(i, j) - coeffs[i][rank] * coeffs[j][rank];
        at(i, j) = v;
        at(j, i) = v;
      }
    ++rank;
  }

  GramFactor factor;
  factor.count = n;
  factor.ambient_dim = rank;
  factor.vectors.reserve(n);
  for (int i = 0; i < n; ++i) {
    coeffs[i].resize(static_cast<std::size_t>(rank));
    factor.vectors.push_back(std::move(coeffs[i]));
  }

  // A truncated factor of a genuinely non-PSD matrix can fail to reproduce
  // the input even when no pivot went negative (e.g. zero diagonal with
  // nonzero off-diagonal entries), so verify the reconstruction.
  const double gram_tol = 1e-8 * std::max(1.0, m.max_abs());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (std::abs(dot(factor.vectors[i], factor.vectors[j]) - m(i, j)) > gram_tol)
        throw NotPsdError("gram_factor: reconstruction failed, matrix is not PSD");
  return factor;
}

Spectrum symmetric_eig(const SymMatrix& m) {
  const int n = m.dim();
  std::vector<double> a(m.data());
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  std::vector<Vec> v(n, Vec(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;  // v[c] is column c of the rotation product

  double frob0 = 0.0;
  for (double x : a) frob0 += x * x;
  frob0 = std::sqrt(frob0);
  const double target = 1e-14 * std::max(frob0, 1e-300);

  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
    if (std::sqrt(off) <= target) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i);
          const double aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[p][i];
          const double viq = v[q][i];
          v[p][i] = c * vip - s * viq;
          v[q][i] = s * vip + c * viq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps)
    throw SolverError("symmetric_eig: Jacobi sweeps exhausted without convergence");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return at(i, i) < at(j, j); });

  Spectrum spec;
  spec.eigenvalues.reserve(n);
  spec.eigenvectors.reserve(n);
  for (int idx : order) {
    spec.eigenvalues.push_back(at(idx, idx));
    spec.eigenvectors.push_back(v[idx]);
  }
  return spec;
}

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) throw ParseError("matrix entry is not finite");
}

}  // namespace

SymMatrix parse_matrix_text(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw ParseError("matrix file: missing dimension");
  if (n < 1) throw ParseError("matrix file: dimension must be >= 1");
  std::vector<double> entries(static_cast<std::size_t>(n) * n);
  for (double& v : entries) {
    if (!(in >> v)) throw ParseError("matrix file: too few entries");
    require_finite(v);
  }
  return SymMatrix(n, entries);
}

SymMatrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("matrix json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
    throw ParseError("matrix json: expected {\"dim\": n, \"rows\": [[...], ...]}");
  const int n = j.at("dim").get<int>();
  if (n < 1) throw ParseError("matrix json: dimension must be >= 1");
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError("matrix json: row count does not match dim");
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("matrix json: row length does not match dim");
    for (const auto& cell : row) {
      if (!cell.is_number()) throw ParseError("matrix json: entries must be numbers");
      const double v = cell.get<double>();
      require_finite(v);
      entries.push_back(v);
    }
  }
  return SymMatrix(n, entries);
}

SymMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("matrix file is empty: " + path);
  if (text[first] == '{') return parse_matrix_json(text);
  std::istringstream stream(text);
  return parse_matrix_text(stream);
}

void write_matrix_text(std::ostream& out, const SymMatrix& m) {
  out << m.dim() << "\n";
  out.precision(17);
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m(i, j);
    out << "\n";
  }
}

}  // namespace kclust
