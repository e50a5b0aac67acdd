#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recsets/family.hpp"

namespace recsets {

struct Certificate {
  std::uint32_t q = 0;
  unsigned k = 0;
  unsigned d = 0;
  std::size_t family_size = 0;
  bool disjoint_ok = false;
  bool spanning_ok = false;
  bool universe_ok = false;
  std::uint64_t points_used = 0;
  std::uint64_t points_total = 0;
  std::string method;
  /// set size -> number of sets of that size
  std::map<std::size_t, std::size_t> size_histogram;
  /// Human-readable descriptions of the first few failures.
  std::vector<std::string> problems;

  bool valid() const { return disjoint_ok && spanning_ok && universe_ok; }
};

/// True iff the points span a space containing the target. Throws
/// std::invalid_argument if a point is not a point of PG(k-1, q).
bool verify_recovery_set(const FiniteField& f, unsigned k, const Subspace& target,
                         const std::vector<FqVector>& points);

/// Recomputes everything from the raw representatives. Never throws on bad
/// families; failures are recorded in the certificate.
Certificate verify_family(const RecoveryFamily& family);

}  // namespace recsets
