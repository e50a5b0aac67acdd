#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "recsets/family.hpp"
#include "recsets/geometry.hpp"

namespace recsets {

/// Which entries of a row stay unused by the row's own recovery sets.
/// The leftovers are column 0 when `zero` is set, plus the `count`
/// consecutive powers alpha^start, ..., alpha^(start+count-1).
/// zero + count must equal q^d - floor(q^d/(d+1)) (d+1).
struct LeftoverRun {
  bool zero = false;
  std::uint64_t start = 0;
  std::uint64_t count = 0;
};

/// Column sets and leftover columns of one row.
struct RowPartition {
  std::vector<std::vector<std::uint64_t>> sets;
  std::vector<std::uint64_t> leftovers;
};

/// Number of leftovers per nonzero row, q^d mod (d+1).
std::uint64_t row_leftover_count(const TModel& t);

/// Leftovers on the last powers of alpha, which makes the first set
/// {0, alpha^0, ..., alpha^(d-1)}.
LeftoverRun trailing_run(const TModel& t);

/// Splits the q^d columns of a row into floor(q^d/(d+1)) sets: one
/// {0} + d consecutive powers unless 0 is a leftover, the rest windows of
/// d+1 consecutive powers, all starting right after the leftover run.
RowPartition partition_row(const TModel& t, const LeftoverRun& run);

/// The row's recovery sets as points. Throws for the zero row of the binary model.
std::vector<RecoverySet> row_sets(const TModel& t, std::uint64_t row, const LeftoverRun& run);
std::vector<RecoverySet> row_sets(const TModel& t, std::uint64_t row);

/// floor((q^d-1)/(d(q-1))) sets of d consecutive powers inside U.
std::vector<RecoverySet> basic_sets_from_Td(const TModel& t);
/// T_d slots not used by basic_sets_from_Td.
std::vector<std::uint64_t> basic_leftover_slots(const TModel& t);

// Quintriples live in F_2^m as bitmasks, bit i = coordinate i.
using Quintriple = std::array<std::uint64_t, 5>;

/// True iff x1..x5 are distinct, nonzero and x1 = x2 + x3 = x4 + x5.
bool is_quintriple(const Quintriple& q);

/// Reorders five vectors so the common sum comes first; throws
/// std::invalid_argument if they do not form a quintriple.
Quintriple orient_quintriple(const std::array<std::uint64_t, 5>& pts);

struct QuintriplePartition {
  unsigned m = 0;
  std::vector<Quintriple> quintriples;
  /// Four vectors with zero sum (m = 1, 3 mod 4).
  std::optional<std::array<std::uint64_t, 4>> dependent_four;
  /// Remaining vectors; for m = 2 mod 4 these are the nonzero vectors of a 2-subspace.
  std::vector<std::uint64_t> spare;
};

/// Partition of F_2^m \ {0} into quintriples and a small remainder, m >= 4.
QuintriplePartition quintriple_partition(unsigned m);

/// Backtracking search for the m = 7 base case: 24 quintriples on the
/// complement of the 3-subspace spanned by e0, e1, e2. Deterministic.
QuintriplePartition search_quintriples_m7();

/// Exact-partition and remainder-structure check for any m >= 4.
bool check_quintriple_partition(const QuintriplePartition& p);

/// Families for the default target. Each sets `formula_lower` to the count
/// the construction is designed to reach.
RecoveryFamily construct_basic(const FiniteField& f, unsigned k);
RecoveryFamily construct_d2(unsigned k);
RecoveryFamily construct_d4(unsigned k);
RecoveryFamily construct_d5(unsigned k);
RecoveryFamily construct_perfect(unsigned k, unsigned d);
/// Basic sets plus row sets, with leftover sets over a line spread when
/// d+2 divides q+1, k-d is even and rows have leftovers. Any q.
RecoveryFamily construct_general(const FiniteField& f, unsigned k, unsigned d);
/// construct_general restricted to q > 2.
RecoveryFamily construct_general_q(std::uint32_t q, unsigned k, unsigned d);

/// Picks the best construction for (q, k, d).
RecoveryFamily construct(std::uint32_t q, unsigned k, unsigned d);

}  // namespace recsets
