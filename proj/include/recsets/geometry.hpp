#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "recsets/field.hpp"
#include "recsets/linalg.hpp"

namespace recsets {

/// Number of points of PG(k-1, q), i.e. (q^k - 1)/(q - 1).
std::uint64_t num_points(std::uint32_t q, unsigned k);

inline constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 22;

/// Bijection between canonical representatives of PG(k-1, q) and
/// 0..num_points-1 following lexicographic order of the representatives.
class PointCodec {
 public:
  PointCodec(FiniteField f, unsigned k);

  const FiniteField& field() const { return f_; }
  unsigned dim() const { return k_; }
  std::uint64_t size() const { return size_; }

  /// Index of the point spanned by v; v may be any nonzero representative.
  std::uint64_t index(const FqVector& v) const;
  FqVector point(std::uint64_t i) const;

 private:
  FiniteField f_;
  unsigned k_;
  std::uint64_t size_;
  std::vector<std::uint64_t> qpow_;
};

/// All canonical points of PG(k-1, q) in lexicographic order.
std::vector<FqVector> enumerate_points(const FiniteField& f, unsigned k);

/// Position of a point inside the array model.
struct TSlot {
  bool in_td = false;       // the point lies in U
  std::uint64_t row = 0;    // row index (binary case: row 0 is the zero row)
  std::uint64_t col = 0;    // column 0 is y = 0, column c >= 1 is alpha^(c-1)
  std::uint64_t td = 0;     // slot in T_d when in_td
};

/// The array model of all points of PG(k-1, q) relative to the target
/// U = span of the last d unit vectors. A point is written (x | y) with x in
/// F_q^(k-d) and y in F_q^d, and y is identified with F_{q^d} through the
/// coordinates of alpha^0..alpha^(d-1).
///
/// Binary case: rows are all of F_2^(k-d) with 0 first and entries T(x, y) = (x | y);
/// row 0 carries the points of U. q > 2: rows are the canonical points of
/// PG(k-d-1, q), and U is carried by T_d = {alpha^i : i < (q^d-1)/(q-1)}.
class TModel {
 public:
  TModel(FiniteField f, unsigned k, unsigned d);

  const FiniteField& field() const { return f_; }
  const ExtField& column_field() const { return col_field_; }
  unsigned k() const { return k_; }
  unsigned d() const { return d_; }
  bool binary() const { return f_.q() == 2; }

  std::uint64_t num_rows() const { return rows_.size(); }
  std::uint64_t num_cols() const { return col_field_.size(); }
  std::uint64_t td_size() const { return td_size_; }

  const FqVector& row(std::uint64_t r) const { return rows_.at(r); }
  const std::vector<FqVector>& rows() const { return rows_; }
  /// First row that is not the zero row.
  std::uint64_t first_nonzero_row() const { return binary() ? 1 : 0; }

  /// Coordinates of the column label: 0 for column 0, alpha^(c-1) otherwise.
  FqVector column_value(std::uint64_t col) const;
  /// Column holding alpha^i.
  std::uint64_t power_column(std::uint64_t i) const { return 1 + i % (num_cols() - 1); }

  FqVector entry(std::uint64_t row, std::uint64_t col) const;
  /// (0 | alpha^i); in the binary case this is entry(0, i + 1).
  FqVector td_entry(std::uint64_t i) const;

  /// Inverse of entry / td_entry on canonical points.
  TSlot locate(const FqVector& point) const;

  /// Joins a row vector and a U-vector into an ambient vector.
  FqVector join(const FqVector& x, const FqVector& y) const;

 private:
  FiniteField f_;
  unsigned k_, d_;
  ExtField col_field_;
  std::vector<FqVector> rows_;
  std::uint64_t td_size_;
  std::optional<PointCodec> row_codec_;
};

/// One part of a (partial) spread together with an F_q-linear isomorphism
/// F_q^t -> part, given as a t x n matrix: c maps to c * embedding.
struct SpreadPart {
  Subspace space;
  Matrix embedding;
};

struct PartialSpread {
  std::uint32_t q = 0;
  unsigned n = 0;
  unsigned t = 0;
  std::vector<SpreadPart> parts;
  std::optional<SpreadPart> residual;
};

/// The coset spread of F_q^n into t-subspaces alpha^i * F_{q^t}. Requires t | n.
PartialSpread full_spread(const FiniteField& f, unsigned n, unsigned t);

/// Lifted partial spread <[I_t | M_a]>, a in F_{q^(n-t)}, with residual the
/// vectors whose first t coordinates vanish. Requires t <= n - t.
PartialSpread lifted_partial_spread(const FiniteField& f, unsigned n, unsigned t);

/// Binary 2-subspaces covering F_2^n: a full line spread for even n, and for
/// odd n lines plus one residual 3-subspace.
PartialSpread binary_line_partition(unsigned n);

/// Embeds a part living in F_q^m into F_q^n (n >= m) by prepending zero coordinates.
SpreadPart pad_front(const FiniteField& f, const SpreadPart& part, unsigned n);

/// True iff parts (and residual) pairwise meet in zero and cover F_q^n.
bool check_partition(const FiniteField& f, const PartialSpread& s);

/// Hamming code of length 2^m - 1 and its partition into radius-1 balls.
/// Words are bitmasks, bit j = coordinate j.
struct PerfectCodePartition {
  unsigned m = 0;
  unsigned length = 0;
  std::vector<std::uint64_t> codewords;
  /// balls[i] = {c_i} followed by c_i + e_j for j = 0..length-1.
  std::vector<std::vector<std::uint64_t>> balls;
};

inline constexpr unsigned kMaxHammingM = 4;

PerfectCodePartition hamming_partition(unsigned m);

/// Converts between binary bitmasks (bit i = coordinate i) and vectors.
FqVector mask_to_vector(std::uint64_t mask, unsigned len);
std::uint64_t vector_to_mask(const FqVector& v);

}  // namespace recsets
