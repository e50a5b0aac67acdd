#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recsets/family.hpp"

namespace recsets {

/// Instances past this many points are rejected outright.
inline constexpr std::uint64_t kOracleMaxPoints = 4096;

struct SearchConfig {
  /// Largest recovery set explored; 0 means k. Minimal recovery sets are
  /// linearly independent, so a cap of k loses nothing.
  unsigned max_set_size = 0;
  /// Wall-clock limit in seconds; 0 disables it.
  double time_limit = 0;
  /// Search nodes across enumeration and packing; 0 disables it.
  std::uint64_t node_limit = 0;
  /// Prune packing branches whose point-count bound cannot beat the incumbent.
  bool bound_pruning = true;
  /// Count size-d sets separately in the bound: they can only use points of U.
  bool split_bound = true;
  unsigned threads = 1;
};

enum class OracleStatus { Exact, LowerBoundOnly };

const char* to_string(OracleStatus s);

struct OracleResult {
  OracleStatus status = OracleStatus::LowerBoundOnly;
  /// Exact value, or the best packing found when status is LowerBoundOnly.
  std::uint64_t value = 0;
  RecoveryFamily witness;
  std::uint64_t nodes = 0;
  std::uint64_t candidate_sets = 0;
  /// Why the result is not exact; empty when it is.
  std::string reason;

  explicit OracleResult(RecoveryFamily w) : witness(std::move(w)) {}
};

/// Point indices (PointCodec order) of one minimal recovery set.
using PointSet = std::vector<std::uint32_t>;

/// Streams every inclusion-minimal set of points spanning the default target,
/// of size at most size_cap, ordered by size and then lexicographically by
/// point index. The visitor returns false to stop early; the function returns
/// false if it stopped early or the node budget ran out (node_budget 0 means
/// unlimited; nodes receives the count). Throws std::invalid_argument when
/// size_cap < d, and std::logic_error if an emitted set breaks one of the
/// size-structure guarantees.
bool minimal_recovery_sets(std::uint32_t q, unsigned k, unsigned d, unsigned size_cap,
                           const std::function<bool(const PointSet&)>& visit, std::uint64_t node_budget = 0,
                           std::uint64_t* nodes = nullptr);

/// Collecting form of the above without a budget.
std::vector<PointSet> minimal_recovery_sets(std::uint32_t q, unsigned k, unsigned d, unsigned size_cap);

/// Maximum number of pairwise disjoint recovery sets for the default target,
/// by exhaustive packing. The witness always passes verify_family; the value is
/// marked exact only when the search ran to completion with a cap of at least k.
OracleResult exact_N(std::uint32_t q, unsigned k, unsigned d, const SearchConfig& cfg = {});

}  // namespace recsets
