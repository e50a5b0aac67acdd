#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace recsets {

enum class BoundKind { Lower, Upper, Exact };

const char* to_string(BoundKind k);

/// One applicable bound on N_q(k, d) with the result it comes from.
struct BoundTerm {
  std::string tag;
  BoundKind kind;
  std::uint64_t value;
};

struct BoundsRecord {
  std::uint32_t q = 0;
  unsigned k = 0;
  unsigned d = 0;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::optional<std::uint64_t> exact;
  std::vector<BoundTerm> provenance;
  /// Known discrepancies worth surfacing next to the numbers.
  std::vector<std::string> remarks;

  /// Value of the first term with the given tag, if present.
  std::optional<std::uint64_t> term(const std::string& tag) const;
};

struct BoundsOptions {
  /// Use q^k instead of q^d in the middle term of the refined upper bound,
  /// as the formula is printed. The q^d form is the default.
  bool verbatim_refined_upper = false;
};

/// All applicable closed-form bounds. Throws std::invalid_argument unless
/// q is a prime power and 1 <= d <= k; std::overflow_error past 64 bits.
BoundsRecord bound(std::uint32_t q, unsigned k, unsigned d, const BoundsOptions& opt = {});

/// Records for k in [k_lo, k_hi] and d in [d_lo, d_hi] with d <= k, ordered by k then d.
std::vector<BoundsRecord> bound_table(std::uint32_t q, unsigned k_lo, unsigned k_hi, unsigned d_lo, unsigned d_hi,
                                      const BoundsOptions& opt = {});

}  // namespace recsets
