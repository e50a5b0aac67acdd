#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recsets/field.hpp"
#include "recsets/linalg.hpp"

namespace recsets {

/// Points are stored as representatives; they need not be canonical.
struct RecoverySet {
  std::vector<FqVector> points;
};

struct RecoveryFamily {
  FiniteField field;
  unsigned k = 0;
  unsigned d = 0;
  Subspace target;
  std::vector<RecoverySet> sets;
  std::string method;
  /// Lower-bound formula value the construction is meant to reach.
  std::uint64_t formula_lower = 0;
  std::vector<std::string> notes;

  RecoveryFamily(FiniteField f, unsigned k_, unsigned d_, Subspace u)
      : field(std::move(f)), k(k_), d(d_), target(std::move(u)) {}
};

/// The target span of the last d unit vectors of F_q^k.
Subspace default_target(const FiniteField& f, unsigned k, unsigned d);

/// Rewrites a family built for the default target so it recovers `target`
/// instead, by a change of basis of F_q^k that maps the default target onto it.
RecoveryFamily transport(const RecoveryFamily& family, const Subspace& target);

}  // namespace recsets
