#include <doctest.h>

#include <set>

#include "recsets/constructions.hpp"
#include "recsets/verifier.hpp"

using namespace recsets;

namespace {

// Test-side certificate: canonical points never repeat, every set's span
// contains the target, and every point is a valid projective point.
void independent_check(const RecoveryFamily& fam) {
  std::set<FqVector> used;
  Matrix target = fam.target.basis();
  for (const auto& s : fam.sets) {
    Matrix gens;
    for (const auto& p : s.points) {
      REQUIRE(p.size() == fam.k);
      REQUIRE_FALSE(is_zero(p));
      REQUIRE(used.insert(canonical(fam.field, p)).second);
      gens.push_back(p);
    }
    Matrix both = gens;
    both.insert(both.end(), target.begin(), target.end());
    REQUIRE(rank(fam.field, both) == rank(fam.field, gens));
  }
}

void check_family(const RecoveryFamily& fam, std::uint64_t expected) {
  CAPTURE(fam.method);
  CHECK(fam.sets.size() == expected);
  CHECK(fam.formula_lower == expected);
  const Certificate c = verify_family(fam);
  CHECK(c.valid());
  independent_check(fam);
}

std::uint64_t p2(unsigned e) { return std::uint64_t{1} << e; }

}  // namespace

TEST_CASE("row partitions split each row into windows plus leftovers") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    for (unsigned d = 1; d <= 4; ++d) {
      if (checked_pow(q, d) > 700) continue;
      const FiniteField f = FiniteField::make(q);
      const TModel t(f, d + 1, d);
      const std::uint64_t qd = checked_pow(q, d);
      CHECK(row_leftover_count(t) == qd % (d + 1));
      const RowPartition part = partition_row(t, trailing_run(t));
      CHECK(part.sets.size() == qd / (d + 1));
      std::set<std::uint64_t> cols(part.leftovers.begin(), part.leftovers.end());
      for (const auto& s : part.sets) {
        CHECK(s.size() == d + 1);
        for (auto c : s) CHECK(cols.insert(c).second);
      }
      CHECK(cols.size() == qd);
      for (const auto& rs : row_sets(t, t.first_nonzero_row()))
        CHECK(verify_recovery_set(f, t.k(), default_target(f, t.k(), d), rs.points));
    }
  }
}

TEST_CASE("leftover runs may start anywhere and may include column 0") {
  const FiniteField f2 = FiniteField::make(2);
  const TModel t(f2, 4, 2);  // four columns per row, one leftover
  for (std::uint64_t start = 0; start < 3; ++start) {
    const RowPartition p = partition_row(t, LeftoverRun{false, start, 1});
    REQUIRE(p.leftovers.size() == 1);
    CHECK(p.leftovers[0] == t.power_column(start));
  }
  const RowPartition z = partition_row(t, LeftoverRun{true, 0, 0});
  CHECK(z.leftovers == std::vector<std::uint64_t>{0});
  CHECK_THROWS(partition_row(t, LeftoverRun{true, 0, 1}));
}

TEST_CASE("basic sets inside the target") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    for (unsigned d = 1; d <= 5; ++d) {
      const FiniteField f = FiniteField::make(q);
      const TModel t(f, d, d);
      const std::uint64_t in_u = (checked_pow(q, d) - 1) / (q - 1);
      const auto sets = basic_sets_from_Td(t);
      CHECK(sets.size() == in_u / d);
      CHECK(basic_leftover_slots(t).size() == in_u % d);
      check_family(construct_basic(f, d), in_u / d);
    }
  }
}

TEST_CASE("quintriple partitions") {
  for (unsigned m = 4; m <= 11; ++m) {
    CAPTURE(m);
    const QuintriplePartition p = quintriple_partition(m);
    REQUIRE(check_quintriple_partition(p));
    std::vector<int> hit(std::size_t{1} << m, 0);
    for (const auto& qt : p.quintriples) {
      REQUIRE((qt[0] == (qt[1] ^ qt[2])));
      REQUIRE((qt[0] == (qt[3] ^ qt[4])));
      REQUIRE(is_quintriple(qt));
      for (auto x : qt) ++hit[x];
    }
    if (p.dependent_four) {
      const auto& f = *p.dependent_four;
      CHECK((f[0] ^ f[1] ^ f[2] ^ f[3]) == 0);
      for (auto x : f) ++hit[x];
    }
    for (auto x : p.spare) ++hit[x];
    CHECK(hit[0] == 0);
    for (std::size_t v = 1; v < hit.size(); ++v) REQUIRE(hit[v] == 1);
    // Remainder shape by m mod 4.
    switch (m % 4) {
      case 0:
        CHECK_FALSE(p.dependent_four);
        CHECK(p.spare.empty());
        break;
      case 1:
        CHECK(p.dependent_four);
        CHECK(p.spare.size() == 2);
        break;
      case 2:
        CHECK_FALSE(p.dependent_four);
        REQUIRE(p.spare.size() == 3);
        CHECK((p.spare[0] ^ p.spare[1]) == p.spare[2]);
        break;
      default:
        CHECK(p.dependent_four);
        CHECK(p.spare.size() == 3);
        break;
    }
  }
  CHECK_THROWS(quintriple_partition(3));
}

TEST_CASE("m = 7 search is deterministic and valid") {
  const auto a = search_quintriples_m7();
  const auto b = search_quintriples_m7();
  CHECK(a.quintriples.size() == 24);
  CHECK(a.quintriples == b.quintriples);
  CHECK(check_quintriple_partition(a));
  auto bad = a;
  std::swap(bad.quintriples[0][1], bad.quintriples[1][1]);
  CHECK_FALSE(check_quintriple_partition(bad));
}

TEST_CASE("orient_quintriple puts the common sum first") {
  const Quintriple q = orient_quintriple({1, 2, 3, 4, 7});
  CHECK(q[0] == 3);
  CHECK(is_quintriple(q));
  CHECK_THROWS_AS(orient_quintriple({1, 2, 4, 8, 16}), std::invalid_argument);
}

TEST_CASE("binary d = 2 families") {
  for (unsigned k = 2; k <= 11; ++k) check_family(construct_d2(k), (3 * p2(k - 1) + 1) / 5);
}

TEST_CASE("binary d = 4 families") {
  check_family(construct_d4(4), 3);
  check_family(construct_d4(5), 6);
  check_family(construct_d4(6), 13);
  for (unsigned k = 7; k <= 10; ++k) check_family(construct_d4(k), (11 * p2(k - 3) - 1) / 7);
}

TEST_CASE("binary d = 5 families") {
  for (unsigned k = 7; k <= 10; ++k) check_family(construct_d5(k), 21 * p2(k - 7) + 1);
  CHECK_THROWS(construct_d5(6));
}

TEST_CASE("perfect-code families") {
  for (unsigned d : {3u, 7u})
    for (unsigned k = d; k <= d + 3; ++k) check_family(construct_perfect(k, d), (p2(d) - 1) / d + (p2(k) - p2(d)) / (d + 1));
  CHECK_THROWS(construct_perfect(6, 4));
}

TEST_CASE("general constructions for q > 2") {
  // Row packing plus basic sets, with leftover sets when d+2 divides q+1.
  check_family(construct_general_q(3, 4, 2), 14);
  check_family(construct_general_q(7, 4, 2), 134);
  check_family(construct_general_q(5, 5, 4), 164);
  check_family(construct_general_q(3, 3, 2), 5);
  check_family(construct_general_q(4, 4, 2), 27);
  check_family(construct_general_q(5, 3, 1), 15);
  CHECK_THROWS(construct_general_q(2, 4, 2));
}

TEST_CASE("dispatcher picks a certified family") {
  for (std::uint32_t q : {2u, 3u, 4u})
    for (unsigned k = 1; k <= (q == 2 ? 7u : 4u); ++k)
      for (unsigned d = 1; d <= k; ++d) {
        const RecoveryFamily fam = construct(q, k, d);
        CHECK(verify_family(fam).valid());
        CHECK(fam.sets.size() >= fam.formula_lower);
      }
  CHECK_THROWS_AS(construct(6, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(construct(2, 3, 4), std::invalid_argument);
}
