#include <doctest.h>

#include <map>
#include <set>

#include "recsets/geometry.hpp"

using namespace recsets;

namespace {

// All q^n vectors, in base-q counting order with coordinate 0 least significant.
std::vector<FqVector> all_vectors(std::uint32_t q, unsigned n) {
  std::vector<FqVector> out;
  FqVector v(n, 0);
  for (std::uint64_t c = 0; c < checked_pow(q, n); ++c) {
    std::uint64_t x = c;
    for (auto& s : v) {
      s = static_cast<Scalar>(x % q);
      x /= q;
    }
    out.push_back(v);
  }
  return out;
}

std::set<FqVector> brute_points(std::uint32_t q, unsigned n) {
  std::set<FqVector> pts;
  for (const auto& v : all_vectors(q, n)) {
    std::size_t i = 0;
    while (i < n && v[i] == 0) ++i;
    if (i < n && v[i] == 1) pts.insert(v);
  }
  return pts;
}

// Every nonzero vector lies in exactly one part, by enumerating each part's span.
void check_cover(const FiniteField& f, const PartialSpread& s) {
  std::map<FqVector, int> hits;
  auto mark = [&](const SpreadPart& part) {
    const std::size_t t = part.embedding.size();
    REQUIRE(rank(f, part.embedding) == t);
    for (const auto& c : all_vectors(f.q(), static_cast<unsigned>(t))) {
      if (is_zero(c)) continue;
      const FqVector v = row_times(f, c, part.embedding);
      REQUIRE(part.space.contains(f, v));
      ++hits[v];
    }
  };
  for (const auto& p : s.parts) mark(p);
  if (s.residual) mark(*s.residual);
  REQUIRE(hits.size() == checked_pow(f.q(), s.n) - 1);
  for (const auto& [v, n] : hits) REQUIRE(n == 1);
}

}  // namespace

TEST_CASE("point codec is a bijection in lexicographic order") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    for (unsigned k = 1; k <= (q == 2 ? 6u : 4u); ++k) {
      const FiniteField f = FiniteField::make(q);
      const PointCodec codec(f, k);
      const auto brute = brute_points(q, k);
      REQUIRE(codec.size() == brute.size());
      REQUIRE(num_points(q, k) == brute.size());
      std::set<FqVector> seen;
      for (std::uint64_t i = 0; i < codec.size(); ++i) {
        const FqVector p = codec.point(i);
        REQUIRE(brute.count(p) == 1);
        REQUIRE(codec.index(p) == i);
        // Any nonzero multiple names the same point.
        REQUIRE(codec.index(scale(f, f.primitive(), p)) == i);
        seen.insert(p);
      }
      CHECK(seen.size() == brute.size());
      const auto listed = enumerate_points(f, k);
      CHECK(std::is_sorted(listed.begin(), listed.end()));
    }
  }
}

TEST_CASE("array model covers every point exactly once") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    const unsigned kmax = q == 2 ? 6 : (q <= 4 ? 4 : 3);
    for (unsigned k = 1; k <= kmax; ++k)
      for (unsigned d = 1; d <= k; ++d) {
        CAPTURE(q);
        CAPTURE(k);
        CAPTURE(d);
        const FiniteField f = FiniteField::make(q);
        const TModel t(f, k, d);
        std::map<FqVector, int> hits;
        for (std::uint64_t i = 0; i < t.td_size(); ++i) {
          const FqVector p = canonical(f, t.td_entry(i));
          ++hits[p];
          const TSlot s = t.locate(p);
          REQUIRE(s.in_td);
          REQUIRE(s.td == i);
        }
        for (std::uint64_t r = t.first_nonzero_row(); r < t.num_rows(); ++r)
          for (std::uint64_t c = 0; c < t.num_cols(); ++c) {
            const FqVector p = canonical(f, t.entry(r, c));
            ++hits[p];
            const TSlot s = t.locate(p);
            REQUIRE_FALSE(s.in_td);
            REQUIRE(s.row == r);
            REQUIRE(s.col == c);
          }
        REQUIRE(hits.size() == num_points(q, k));
        for (const auto& [p, n] : hits) REQUIRE(n == 1);
        CHECK(t.td_size() == (checked_pow(q, d) - 1) / (q - 1));
      }
  }
}

TEST_CASE("spreads and partial spreads partition the space") {
  const FiniteField f2 = FiniteField::make(2);
  for (unsigned n = 2; n <= 12; n += 2) check_cover(f2, full_spread(f2, n, 2));
  check_cover(f2, full_spread(f2, 6, 3));
  check_cover(f2, full_spread(f2, 8, 4));
  for (unsigned n = 8; n <= 12; ++n) check_cover(f2, lifted_partial_spread(f2, n, 4));
  for (unsigned n = 6; n <= 11; ++n) check_cover(f2, lifted_partial_spread(f2, n, 3));
  for (unsigned n = 2; n <= 11; ++n) {
    const auto s = binary_line_partition(n);
    check_cover(f2, s);
    CHECK(s.residual.has_value() == (n % 2 == 1));
    CHECK(check_partition(f2, s));
  }
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    const FiniteField f = FiniteField::make(q);
    check_cover(f, full_spread(f, 2, 2));
    check_cover(f, full_spread(f, 4, 2));
    check_cover(f, lifted_partial_spread(f, 4, 2));
    CHECK(check_partition(f, full_spread(f, 4, 2)));
  }
  CHECK_THROWS(full_spread(f2, 5, 2));
  CHECK_THROWS(lifted_partial_spread(f2, 5, 3));
}

TEST_CASE("check_partition rejects overlaps and gaps") {
  const FiniteField f2 = FiniteField::make(2);
  auto s = full_spread(f2, 4, 2);
  auto dup = s;
  dup.parts.push_back(dup.parts.front());
  CHECK_FALSE(check_partition(f2, dup));
  auto gap = s;
  gap.parts.pop_back();
  CHECK_FALSE(check_partition(f2, gap));
}

TEST_CASE("pad_front keeps a part inside the trailing coordinates") {
  const FiniteField f2 = FiniteField::make(2);
  const auto s = binary_line_partition(3);
  REQUIRE(s.residual);
  const SpreadPart p = pad_front(f2, *s.residual, 6);
  CHECK(p.space.dim() == 3);
  for (const auto& row : p.embedding) {
    REQUIRE(row.size() == 6);
    CHECK(row[0] == 0);
    CHECK(row[1] == 0);
    CHECK(row[2] == 0);
  }
}

TEST_CASE("Hamming balls tile the cube") {
  for (unsigned m = 2; m <= kMaxHammingM; ++m) {
    const auto h = hamming_partition(m);
    CHECK(h.length == (1u << m) - 1);
    std::vector<int> hit(std::size_t{1} << h.length, 0);
    for (const auto& ball : h.balls) {
      REQUIRE(ball.size() == h.length + 1);
      for (auto w : ball) ++hit[w];
    }
    for (auto n : hit) REQUIRE(n == 1);
    for (std::size_t i = 0; i < h.codewords.size(); ++i)
      for (std::size_t j = i + 1; j < h.codewords.size(); ++j)
        REQUIRE(__builtin_popcountll(h.codewords[i] ^ h.codewords[j]) >= 3);
  }
  CHECK(vector_to_mask(mask_to_vector(0b1011, 5)) == 0b1011);
  CHECK(mask_to_vector(0b10, 3) == FqVector{0, 1, 0});
}
