#pragma once

#include <cstddef>
#include <vector>

#include "recsets/field.hpp"

namespace recsets {

using FqVector = std::vector<Scalar>;
using Matrix = std::vector<FqVector>;

/// Reduced row echelon form, zero rows dropped. Throws std::invalid_argument
/// on rows of differing length.
Matrix rref(const FiniteField& f, Matrix rows);

std::size_t rank(const FiniteField& f, const Matrix& rows);

/// Scales v so its first nonzero coordinate is 1. Zero stays zero.
FqVector canonical(const FiniteField& f, FqVector v);

bool is_zero(const FqVector& v);

/// A subspace of F_q^n kept as its unique RREF basis.
class Subspace {
 public:
  Subspace(const FiniteField& f, std::size_t ambient_dim, const Matrix& generators);

  /// Span of the given coordinate unit vectors.
  static Subspace coordinate(const FiniteField& f, std::size_t ambient_dim, const std::vector<std::size_t>& axes);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const FiniteField& f, const FqVector& v) const;
  /// True iff the two subspaces meet only in zero.
  bool disjoint(const FiniteField& f, const Subspace& o) const;

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  std::size_t ambient_;
  Matrix basis_;
};

/// True iff target lies in the span of the generators.
bool span_contains(const FiniteField& f, const Matrix& generators, const Subspace& target);

/// RREF basis of {z : z^T M = 0}, where M has the given rows.
Matrix left_kernel(const FiniteField& f, const Matrix& rows);

/// Solves x * A = b for a row vector x when A is square and invertible.
/// Returns false if A is singular.
bool solve_left(const FiniteField& f, const Matrix& a, const FqVector& b, FqVector& x);

/// Matrix inverse; throws std::domain_error if singular.
Matrix inverse(const FiniteField& f, const Matrix& a);

/// Row vector times matrix.
FqVector row_times(const FiniteField& f, const FqVector& v, const Matrix& m);

FqVector add(const FiniteField& f, const FqVector& a, const FqVector& b);
FqVector scale(const FiniteField& f, Scalar c, const FqVector& v);

}  // namespace recsets
