#include <doctest.h>

#include "recsets/bounds.hpp"
#include "recsets/field.hpp"

using namespace recsets;

TEST_CASE("bounds are consistent across a grid") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 16u})
    for (unsigned k = 1; k <= 12; ++k)
      for (unsigned d = 1; d <= k; ++d) {
        CAPTURE(q);
        CAPTURE(k);
        CAPTURE(d);
        const BoundsRecord r = bound(q, k, d);
        REQUIRE(r.lower <= r.upper);
        for (const auto& t : r.provenance) {
          if (t.kind == BoundKind::Lower) CHECK(t.value <= r.upper);
          if (t.kind == BoundKind::Upper) CHECK(t.value >= r.lower);
          if (t.kind == BoundKind::Exact) CHECK(t.value == *r.exact);
        }
        if (r.exact) {
          CHECK(*r.exact == r.lower);
          CHECK(*r.exact == r.upper);
        }
      }
}

TEST_CASE("row packing and general upper bound by direct evaluation") {
  for (std::uint32_t q : {2u, 3u, 5u})
    for (unsigned k = 2; k <= 8; ++k)
      for (unsigned d = 1; d <= k; ++d) {
        const std::uint64_t qk = checked_pow(q, k), qd = checked_pow(q, d);
        const std::uint64_t u = (qd - 1) / (q - 1);
        const std::uint64_t rows = (qk / qd - 1) / (q - 1);
        const BoundsRecord r = bound(q, k, d);
        CHECK(*r.term("row-packing-lower") == u / d + rows * (qd / (d + 1)));
        CHECK(*r.term("general-upper") == u / d + ((u % d) * (q - 1) + qk - qd) / ((d + 1) * (q - 1)));
      }
}

TEST_CASE("refined upper bound is only weaker when the target has leftovers") {
  // The leftover term of the refined bound is divided by d+2 rather than
  // d+1, so it can exceed the general bound; that only happens when points
  // of U are left over.
  for (unsigned k = 2; k <= 14; ++k)
    for (unsigned d = 1; d <= k; ++d) {
      const BoundsRecord r = bound(2, k, d);
      const auto refined = *r.term("refined-upper"), general = *r.term("general-upper");
      if (refined > general) CHECK(((std::uint64_t{1} << d) - 1) % d != 0);
    }
  CHECK(*bound(2, 4, 4).term("refined-upper") > *bound(2, 4, 4).term("general-upper"));
}

TEST_CASE("verbatim refined bound uses q^k in the middle term") {
  BoundsOptions opt;
  opt.verbatim_refined_upper = true;
  const BoundsRecord r = bound(2, 6, 2, opt);
  CHECK_FALSE(r.term("refined-upper"));
  // 1 + 15 * 21 + (2*1 + 15*1)/4
  CHECK(*r.term("refined-upper-verbatim") == 1 + 15 * 21 + 4);
  CHECK(r.upper == 19);
}

TEST_CASE("binary closed forms") {
  for (unsigned k = 2; k <= 20; ++k) {
    const BoundsRecord r = bound(2, k, 2);
    CHECK(*r.exact == (3 * (std::uint64_t{1} << (k - 1)) + 1) / 5);
    CHECK(*r.term("binary-d2-ilp-upper") == (3 * (std::uint64_t{1} << k) + 3) / 10);
  }
  for (unsigned k = 7; k <= 20; ++k) {
    const BoundsRecord r4 = bound(2, k, 4);
    CHECK(*r4.exact == (11 * (std::uint64_t{1} << (k - 3)) - 1) / 7);
    const BoundsRecord r5 = bound(2, k, 5);
    CHECK(*r5.term("binary-d5-lower") == 21 * (std::uint64_t{1} << (k - 7)) + 1);
    CHECK(*r5.term("binary-d5-upper") == *r5.term("binary-d5-lower") + 1);
  }
  const BoundsRecord r6 = bound(2, 7, 6);
  CHECK(*r6.term("binary-d6-lower") == 19);
  CHECK(*r6.term("binary-d6-upper") == 21);
  CHECK(bound(2, 4, 4).exact == 3u);
  CHECK(bound(2, 5, 4).exact == 6u);
  CHECK(bound(2, 6, 4).exact == 13u);
  CHECK(bound(2, 3, 3).exact == 2u);
}

TEST_CASE("q > 2 exact regimes") {
  const BoundsRecord a = bound(3, 4, 2);
  CHECK(a.exact == 14u);
  CHECK(a.term("line-leftover-exact") == 14u);
  const BoundsRecord b = bound(5, 5, 4);
  CHECK(b.exact == 164u);
  const BoundsRecord c = bound(7, 4, 2);
  CHECK(c.exact == 134u);
  CHECK(c.term("line-leftover-exact") == 134u);
}

TEST_CASE("one-dimensional targets") {
  // Even q: 1 + (q^k - q)/(2(q-1)).
  CHECK(bound(2, 3, 1).exact == 4u);
  CHECK(bound(4, 3, 1).exact == 11u);
  // Odd q adds the triangles of the next layer.
  CHECK(bound(3, 3, 1).exact == 6u);
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(bound(6, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(bound(2, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(bound(2, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound(2, 60, 2), std::overflow_error);
  CHECK_THROWS_AS(bound_table(2, 5, 4, 1, 2), std::invalid_argument);
  CHECK(bound_table(2, 3, 4, 1, 9).size() == 3 + 4);
}
