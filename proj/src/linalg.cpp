#include "recsets/linalg.hpp"

#include <stdexcept>

namespace recsets {

namespace {

void check_width(const Matrix& rows) {
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw std::invalid_argument("vectors have mixed ambient dimensions");
}

}  // namespace

Matrix rref(const FiniteField& f, Matrix rows) {
  if (rows.empty()) return rows;
  check_width(rows);
  const std::size_t width = rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < width && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[lead]);
    const Scalar s = f.inv(rows[lead][col]);
    for (auto& x : rows[lead]) x = f.mul(x, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const Scalar c = f.neg(rows[r][col]);
      for (std::size_t j = col; j < width; ++j)
        rows[r][j] = f.add(rows[r][j], f.mul(c, rows[lead][j]));
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

std::size_t rank(const FiniteField& f, const Matrix& rows) { return rref(f, rows).size(); }

FqVector canonical(const FiniteField& f, FqVector v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x != 1) {
      const Scalar s = f.inv(x);
      for (auto& y : v) y = f.mul(y, s);
    }
    break;
  }
  return v;
}

bool is_zero(const FqVector& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

Subspace::Subspace(const FiniteField& f, std::size_t ambient_dim, const Matrix& generators)
    : ambient_(ambient_dim) {
  for (const auto& g : generators)
    if (g.size() != ambient_dim) throw std::invalid_argument("generator length does not match ambient dimension");
  basis_ = rref(f, generators);
}

Subspace Subspace::coordinate(const FiniteField& f, std::size_t ambient_dim, const std::vector<std::size_t>& axes) {
  Matrix gens;
  for (auto a : axes) {
    if (a >= ambient_dim) throw std::invalid_argument("coordinate axis out of range");
    FqVector v(ambient_dim, 0);
    v[a] = 1;
    gens.push_back(std::move(v));
  }
  return Subspace(f, ambient_dim, gens);
}

bool Subspace::contains(const FiniteField& f, const FqVector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector length does not match ambient dimension");
  // Reduce v against the RREF basis; v lies in the span iff it reduces to zero.
  FqVector r = v;
  for (const auto& b : basis_) {
    std::size_t piv = 0;
    while (b[piv] == 0) ++piv;
    if (r[piv] == 0) continue;
    const Scalar c = f.neg(r[piv]);
    for (std::size_t j = piv; j < ambient_; ++j) r[j] = f.add(r[j], f.mul(c, b[j]));
  }
  return is_zero(r);
}

bool Subspace::disjoint(const FiniteField& f, const Subspace& o) const {
  if (o.ambient_ != ambient_) throw std::invalid_argument("subspaces live in different ambient spaces");
  Matrix all = basis_;
  all.insert(all.end(), o.basis_.begin(), o.basis_.end());
  return rank(f, all) == dim() + o.dim();
}

bool span_contains(const FiniteField& f, const Matrix& generators, const Subspace& target) {
  for (const auto& g : generators)
    if (g.size() != target.ambient_dim()) throw std::invalid_argument("generator length does not match target");
  if (target.dim() == 0) return true;
  Matrix gens = rref(f, generators);
  const std::size_t r = gens.size();
  gens.insert(gens.end(), target.basis().begin(), target.basis().end());
  return rank(f, gens) == r;
}

Matrix left_kernel(const FiniteField& f, const Matrix& rows) {
  if (rows.empty()) return {};
  check_width(rows);
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  // Row-reduce [M | I]; rows whose M part vanishes carry kernel vectors.
  Matrix aug(m, FqVector(n + m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
    aug[i][n + i] = 1;
  }
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < m; ++col) {
    std::size_t piv = lead;
    while (piv < m && aug[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(aug[piv], aug[lead]);
    const Scalar s = f.inv(aug[lead][col]);
    for (auto& x : aug[lead]) x = f.mul(x, s);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == lead || aug[r][col] == 0) continue;
      const Scalar c = f.neg(aug[r][col]);
      for (std::size_t j = 0; j < n + m; ++j) aug[r][j] = f.add(aug[r][j], f.mul(c, aug[lead][j]));
    }
    ++lead;
  }
  Matrix ker;
  for (std::size_t r = lead; r < m; ++r) ker.emplace_back(aug[r].begin() + static_cast<std::ptrdiff_t>(n), aug[r].end());
  return rref(f, ker);
}

bool solve_left(const FiniteField& f, const Matrix& a, const FqVector& b, FqVector& x) {
  const std::size_t n = a.size();
  // x A = b  <=>  A^T x^T = b^T; eliminate on the transposed augmented system.
  Matrix aug(n, FqVector(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("solve_left needs a square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[j][i] = a[i][j];
  }
  if (b.size() != n) throw std::invalid_argument("right-hand side length mismatch");
  for (std::size_t j = 0; j < n; ++j) aug[j][n] = b[j];
  auto red = rref(f, aug);
  if (red.size() < n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (red[i][i] != 1) return false;
  x.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) x[i] = red[i][n];
  return true;
}

Matrix inverse(const FiniteField& f, const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug(n, FqVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse needs a square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto red = rref(f, aug);
  if (red.size() < n) throw std::domain_error("matrix is singular");
  Matrix inv(n, FqVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (red[i][i] != 1) throw std::domain_error("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = red[i][n + j];
  }
  return inv;
}

FqVector row_times(const FiniteField& f, const FqVector& v, const Matrix& m) {
  if (v.size() != m.size()) throw std::invalid_argument("row_times dimension mismatch");
  FqVector out(m.empty() ? 0 : m.front().size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(v[i], m[i][j]));
  }
  return out;
}

FqVector add(const FiniteField& f, const FqVector& a, const FqVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  FqVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

FqVector scale(const FiniteField& f, Scalar c, const FqVector& v) {
  FqVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.mul(c, v[i]);
  return r;
}

}  // namespace recsets
