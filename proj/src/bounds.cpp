#include "recsets/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "recsets/field.hpp"

namespace recsets {

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Lower:
      return "lower";
    case BoundKind::Upper:
      return "upper";
    default:
      return "exact";
  }
}

std::optional<std::uint64_t> BoundsRecord::term(const std::string& tag) const {
  for (const auto& t : provenance)
    if (t.tag == tag) return t.value;
  return std::nullopt;
}

namespace {

struct PinnedValue {
  unsigned k, d;
  std::uint64_t value;
};

// Small binary values stated outright in the literature.
constexpr PinnedValue kPinned[] = {{2, 2, 1}, {3, 2, 2}, {4, 2, 5}, {5, 2, 9}, {4, 4, 3}, {5, 4, 6}, {6, 4, 13}};

std::uint64_t pow2(unsigned e) { return checked_pow(2, e); }

}  // namespace

BoundsRecord bound(std::uint32_t q, unsigned k, unsigned d, const BoundsOptions& opt) {
  prime_power(q);
  if (d == 0 || d > k) throw std::invalid_argument("need 1 <= d <= k, got d=" + std::to_string(d) + " k=" + std::to_string(k));
  // Keep every intermediate comfortably inside 64 bits.
  if (static_cast<double>(k) * std::log2(static_cast<double>(q)) > 56)
    throw std::overflow_error("q^k too large for exact bound arithmetic");

  BoundsRecord r;
  r.q = q;
  r.k = k;
  r.d = d;
  auto add = [&](std::string tag, BoundKind kind, std::uint64_t v) { r.provenance.push_back({std::move(tag), kind, v}); };

  const std::uint64_t qd = checked_pow(q, d);
  const std::uint64_t qk = checked_pow(q, k);
  const std::uint64_t in_u = (qd - 1) / (q - 1);       // points of U
  const std::uint64_t basic = in_u / d;                 // size-d sets inside U
  const std::uint64_t ell = in_u % d;                   // points of U left over
  const std::uint64_t rows = (checked_pow(q, k - d) - 1) / (q - 1);
  const std::uint64_t per_row = qd / (d + 1);
  const std::uint64_t t = qd % (d + 1);                 // leftovers per row

  // Lower bounds.
  add("row-packing-lower", BoundKind::Lower, basic + rows * per_row);
  if (q == 2 && d == 2) add("binary-d2-lower", BoundKind::Lower, (3 * pow2(k - 1) + 1) / 5);
  if (q == 2 && d == 4 && k >= 7) add("binary-d4-lower", BoundKind::Lower, (11 * pow2(k - 3) - 1) / 7);
  if (q == 2 && d == 5 && k >= 7) add("binary-d5-lower", BoundKind::Lower, 21 * pow2(k - 7) + 1);
  if (q == 2 && d == 6 && k >= 7) add("binary-d6-lower", BoundKind::Lower, (91 * pow2(k - 6) + 12) / 10);
  const bool line_regime = q > 2 && d > 1 && k > d && (k - d) % 2 == 0 && (q + 1) % (d + 2) == 0;
  if (line_regime) add("line-leftover-lower", BoundKind::Lower, basic + rows * per_row + rows * t / (d + 2));

  // Upper bounds.
  add("general-upper", BoundKind::Upper, basic + (ell * (q - 1) + qk - qd) / ((d + 1) * (q - 1)));
  {
    const std::uint64_t middle = opt.verbatim_refined_upper ? qk / (d + 1) : per_row;
    add(opt.verbatim_refined_upper ? "refined-upper-verbatim" : "refined-upper", BoundKind::Upper,
        basic + rows * middle + (2 * ell + rows * t) / (d + 2));
  }
  if (q == 2 && d == 2) add("binary-d2-ilp-upper", BoundKind::Upper, (3 * pow2(k) + 3) / 10);
  if (q == 2 && d == 4 && k >= 7) add("binary-d4-upper", BoundKind::Upper, (11 * pow2(k - 3) - 1) / 7);
  if (q == 2 && d == 5 && k >= 7) add("binary-d5-upper", BoundKind::Upper, 21 * pow2(k - 7) + 2);
  if (q == 2 && d == 6 && k >= 7) add("binary-d6-upper", BoundKind::Upper, (91 * pow2(k - 6) + 35) / 10);

  // Exact values.
  if (d == k) add("full-subspace-exact", BoundKind::Exact, basic);
  if (d == 1) {
    const std::uint64_t v = q % 2 == 0 ? 1 + (qk - q) / (2 * (q - 1))
                                       : 1 + (qk / q - 1) / 2 + (qk / q - 1) / (3 * (q - 1));
    add("one-dimensional-exact", BoundKind::Exact, v);
  }
  if (q == 2 && d == 2) add("binary-d2-exact", BoundKind::Exact, (3 * pow2(k - 1) + 1) / 5);
  if (q == 2 && d == 4 && k >= 7) add("binary-d4-exact", BoundKind::Exact, (11 * pow2(k - 3) - 1) / 7);
  if (q == 2 && d >= 3 && ((d + 1) & d) == 0) add("perfect-code-exact", BoundKind::Exact, basic + (qk - qd) / (d + 1));
  if (t == 0) add("divisible-exact", BoundKind::Exact, basic + rows * per_row);
  if (line_regime) add("line-leftover-exact", BoundKind::Exact, basic + rows * per_row + rows * t / (d + 2));
  if (q == 2)
    for (const auto& p : kPinned)
      if (p.k == k && p.d == d) add("pinned-small-value", BoundKind::Exact, p.value);

  r.lower = 0;
  r.upper = UINT64_MAX;
  for (const auto& term : r.provenance) {
    if (term.kind != BoundKind::Upper) r.lower = std::max(r.lower, term.value);
    if (term.kind != BoundKind::Lower) r.upper = std::min(r.upper, term.value);
  }
  if (r.lower > r.upper)
    throw std::logic_error("inconsistent bounds for (" + std::to_string(q) + "," + std::to_string(k) + "," +
                           std::to_string(d) + ")");
  for (const auto& term : r.provenance)
    if (term.kind == BoundKind::Exact) r.exact = term.value;
  if (!r.exact && r.lower == r.upper) {
    r.exact = r.lower;
    add("bounds-coincide", BoundKind::Exact, r.lower);
  }

  if (opt.verbatim_refined_upper) {
    r.remarks.push_back("refined upper bound uses q^k in its middle term as printed; the q^d form matches the row packing");
  } else if (rows > 0) {
    const std::uint64_t verbatim = basic + rows * (qk / (d + 1)) + (2 * ell + rows * t) / (d + 2);
    r.remarks.push_back("refined upper bound with q^k in its middle term, as printed, would give " +
                        std::to_string(verbatim));
  }
  if (q == 2 && d == 6 && k >= 7)
    r.remarks.push_back("d = 6 bounds are formula values only; no construction or derivation backs them here");
  return r;
}

std::vector<BoundsRecord> bound_table(std::uint32_t q, unsigned k_lo, unsigned k_hi, unsigned d_lo, unsigned d_hi,
                                      const BoundsOptions& opt) {
  if (k_lo > k_hi || d_lo > d_hi || d_lo == 0) throw std::invalid_argument("invalid k or d range");
  std::vector<BoundsRecord> out;
  for (unsigned k = k_lo; k <= k_hi; ++k)
    for (unsigned d = d_lo; d <= std::min(d_hi, k); ++d) out.push_back(bound(q, k, d, opt));
  return out;
}

}  // namespace recsets
