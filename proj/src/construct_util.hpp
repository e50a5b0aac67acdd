#pragma once

// Shared plumbing for the construction files.

#include <string>
#include <vector>

#include "recsets/constructions.hpp"

namespace recsets::detail {

/// Formula helpers shared with the dispatcher.
std::uint64_t basic_count(std::uint32_t q, unsigned d);

/// Builds a family on the array model for the default target.
class FamilyBuilder {
 public:
  FamilyBuilder(FiniteField f, unsigned k, unsigned d, std::string method);

  const TModel& model() const { return t_; }
  RecoveryFamily& family() { return fam_; }

  void add(std::vector<FqVector> pts);
  void add(std::vector<RecoverySet> sets);

  /// (x | alpha^i).
  FqVector power_point(const FqVector& x, std::uint64_t i) const;
  /// (x | 0).
  FqVector zero_point(const FqVector& x) const;

  /// Emits the row sets of x under `run` and remembers its leftover columns
  /// so leftover sets can be checked against them.
  void add_row(const FqVector& x, const LeftoverRun& run);

  /// Throws std::logic_error unless (x | column) is a recorded leftover.
  void require_leftover(const FqVector& x, std::uint64_t col) const;

  RecoveryFamily finish(std::uint64_t formula_lower);

 private:
  TModel t_;
  RecoveryFamily fam_;
  std::vector<std::vector<std::uint64_t>> leftovers_;  // by row index
};

/// Binary rows of F_2^m as bitmasks.
FqVector row_vec(std::uint64_t mask, unsigned m);

/// Run with a single leftover: column 0 when value is absent, else alpha^value.
LeftoverRun single_leftover(std::optional<std::uint64_t> power);

}  // namespace recsets::detail
