#include <algorithm>
#include <bitset>
#include <stdexcept>
#include <string>

#include "recsets/constructions.hpp"

namespace recsets {

bool is_quintriple(const Quintriple& q) {
  for (std::size_t i = 0; i < 5; ++i) {
    if (q[i] == 0) return false;
    for (std::size_t j = i + 1; j < 5; ++j)
      if (q[i] == q[j]) return false;
  }
  return q[0] == (q[1] ^ q[2]) && q[0] == (q[3] ^ q[4]);
}

Quintriple orient_quintriple(const std::array<std::uint64_t, 5>& pts) {
  for (std::size_t c = 0; c < 5; ++c) {
    std::array<std::uint64_t, 4> rest{};
    std::size_t r = 0;
    for (std::size_t i = 0; i < 5; ++i)
      if (i != c) rest[r++] = pts[i];
    // Pair rest[0] with each of the others; the remaining two form the second pair.
    for (std::size_t j = 1; j < 4; ++j) {
      std::array<std::uint64_t, 2> other{};
      std::size_t o = 0;
      for (std::size_t i = 1; i < 4; ++i)
        if (i != j) other[o++] = rest[i];
      Quintriple q{pts[c], rest[0], rest[j], other[0], other[1]};
      if (is_quintriple(q)) return q;
    }
  }
  throw std::invalid_argument("the five vectors do not form a quintriple");
}

namespace {

const FiniteField& gf2() {
  static const FiniteField f = FiniteField::make(2);
  return f;
}

// Multiplies every element of a set of alpha-exponents by alpha^shift and
// returns the masks.
Quintriple shifted(const ExtField& ext, const std::array<unsigned, 5>& exps, unsigned shift) {
  std::array<std::uint64_t, 5> pts{};
  for (std::size_t i = 0; i < 5; ++i) pts[i] = ext.alpha_pow(exps[i] + shift);
  return orient_quintriple(pts);
}

QuintriplePartition base_m4() {
  const ExtField ext(gf2(), 4, Poly{1, 1, 0, 0, 1});
  QuintriplePartition p;
  p.m = 4;
  const std::array<unsigned, 5> s{0, 1, 3, 4, 7};
  for (unsigned shift : {0u, 5u, 10u}) p.quintriples.push_back(shifted(ext, s, shift));
  return p;
}

QuintriplePartition base_m5() {
  const ExtField ext(gf2(), 5, Poly{1, 0, 1, 0, 0, 1});
  QuintriplePartition p;
  p.m = 5;
  const std::array<unsigned, 5> s1{5, 0, 2, 7, 10};
  for (unsigned shift : {0u, 1u, 12u, 13u}) p.quintriples.push_back(shifted(ext, s1, shift));
  p.quintriples.push_back(shifted(ext, {16, 4, 27, 29, 30}, 0));
  p.dependent_four = std::array<std::uint64_t, 4>{ext.alpha_pow(21), ext.alpha_pow(25), ext.alpha_pow(26),
                                                  ext.alpha_pow(28)};
  p.spare = {ext.alpha_pow(9), ext.alpha_pow(24)};
  return p;
}

QuintriplePartition base_m6() {
  const ExtField ext(gf2(), 6, Poly{1, 1, 0, 0, 0, 0, 1});
  QuintriplePartition p;
  p.m = 6;
  const std::array<unsigned, 5> s1{0, 1, 6, 13, 35};
  const std::array<unsigned, 5> s4{7, 9, 12, 19, 41};
  for (unsigned outer : {0u, 21u, 42u}) {
    for (unsigned shift : {0u, 2u, 4u}) p.quintriples.push_back(shifted(ext, s1, outer + shift));
    p.quintriples.push_back(shifted(ext, s4, outer));
  }
  p.spare = {ext.alpha_pow(11), ext.alpha_pow(32), ext.alpha_pow(53)};
  return p;
}

// The m = 7 base case as found by search_quintriples_m7, stored so that the
// recursion does not pay for the search. Re-verified whenever it is loaded.
const std::vector<Quintriple>& pinned_m7() {
  static const std::vector<Quintriple> q = {
#include "quintriples_m7.inc"
  };
  return q;
}

QuintriplePartition remainder_m7(std::vector<Quintriple> quintriples) {
  QuintriplePartition p;
  p.m = 7;
  p.quintriples = std::move(quintriples);
  p.dependent_four = std::array<std::uint64_t, 4>{1, 2, 4, 7};
  p.spare = {3, 5, 6};
  return p;
}

using PointSet = std::bitset<128>;

bool search_m7(PointSet& avail, std::vector<Quintriple>& out) {
  if (avail.none()) return true;
  std::uint64_t p = 0;
  while (!avail.test(p)) ++p;
  auto take = [&](const Quintriple& q) {
    for (auto x : q) avail.reset(x);
    out.push_back(q);
  };
  auto undo = [&](const Quintriple& q) {
    for (auto x : q) avail.set(x);
    out.pop_back();
  };
  // p as the common sum of two disjoint pairs.
  for (std::uint64_t a = 1; a < 128; ++a) {
    const std::uint64_t a2 = a ^ p;
    if (a > a2 || a == p || !avail.test(a) || !avail.test(a2)) continue;
    for (std::uint64_t b = a + 1; b < 128; ++b) {
      const std::uint64_t b2 = b ^ p;
      if (b > b2 || b == p || b == a2 || !avail.test(b) || !avail.test(b2)) continue;
      const Quintriple q{p, a, a2, b, b2};
      take(q);
      if (search_m7(avail, out)) return true;
      undo(q);
    }
  }
  // p inside a pair {p, b} whose sum c is the common sum.
  for (std::uint64_t b = 1; b < 128; ++b) {
    const std::uint64_t c = p ^ b;
    if (b == p || !avail.test(b) || !avail.test(c)) continue;
    for (std::uint64_t e = 1; e < 128; ++e) {
      const std::uint64_t e2 = e ^ c;
      if (e > e2 || e == p || e == b || e == c || e2 == p || e2 == b) continue;
      if (!avail.test(e) || !avail.test(e2)) continue;
      const Quintriple q{c, p, b, e, e2};
      take(q);
      if (search_m7(avail, out)) return true;
      undo(q);
    }
  }
  return false;
}

QuintriplePartition transport_recursive(unsigned m) {
  // F_2^m = 2^(m-4) lifted 4-subspaces + a residual F_2^(m-4) on the high coordinates.
  const auto spread = lifted_partial_spread(gf2(), m, 4);
  const auto basic = base_m4();
  QuintriplePartition p;
  p.m = m;
  for (const auto& part : spread.parts) {
    for (const auto& q : basic.quintriples) {
      Quintriple img{};
      for (std::size_t i = 0; i < 5; ++i)
        img[i] = vector_to_mask(row_times(gf2(), mask_to_vector(q[i], 4), part.embedding));
      p.quintriples.push_back(img);
    }
  }
  const auto sub = quintriple_partition(m - 4);
  for (const auto& q : sub.quintriples) {
    Quintriple img{};
    for (std::size_t i = 0; i < 5; ++i) img[i] = q[i] << 4;
    p.quintriples.push_back(img);
  }
  if (sub.dependent_four) {
    std::array<std::uint64_t, 4> df{};
    for (std::size_t i = 0; i < 4; ++i) df[i] = (*sub.dependent_four)[i] << 4;
    p.dependent_four = df;
  }
  for (auto s : sub.spare) p.spare.push_back(s << 4);
  return p;
}

}  // namespace

QuintriplePartition search_quintriples_m7() {
  PointSet avail;
  for (std::uint64_t x = 8; x < 128; ++x) avail.set(x);
  std::vector<Quintriple> out;
  if (!search_m7(avail, out)) throw std::logic_error("no quintriple partition found for m = 7");
  return remainder_m7(std::move(out));
}

bool check_quintriple_partition(const QuintriplePartition& p) {
  if (p.m < 4 || p.m > 40) return false;
  const std::uint64_t total = (std::uint64_t{1} << p.m) - 1;
  std::vector<bool> seen(total + 1, false);
  std::uint64_t covered = 0;
  auto mark = [&](std::uint64_t x) {
    if (x == 0 || x > total || seen[x]) return false;
    seen[x] = true;
    ++covered;
    return true;
  };
  for (const auto& q : p.quintriples) {
    if (!is_quintriple(q)) return false;
    for (auto x : q)
      if (!mark(x)) return false;
  }
  if (p.dependent_four) {
    std::uint64_t sum = 0;
    for (auto x : *p.dependent_four) {
      if (!mark(x)) return false;
      sum ^= x;
    }
    if (sum != 0) return false;
  }
  for (auto x : p.spare)
    if (!mark(x)) return false;
  if (covered != total) return false;

  const std::uint64_t n = p.quintriples.size();
  switch (p.m % 4) {
    case 0:
      return !p.dependent_four && p.spare.empty() && 5 * n == total;
    case 1:
      return p.dependent_four && p.spare.size() == 2 && 5 * n == total - 6;
    case 2:
      return !p.dependent_four && p.spare.size() == 3 && (p.spare[0] ^ p.spare[1]) == p.spare[2] &&
             5 * n == total - 3;
    default:
      return p.dependent_four && p.spare.size() == 3 && 5 * n == total - 7;
  }
}

QuintriplePartition quintriple_partition(unsigned m) {
  if (m < 4) throw std::invalid_argument("quintriple partitions need m >= 4, got " + std::to_string(m));
  if (m > 30) throw std::invalid_argument("quintriple partitions limited to m <= 30");
  QuintriplePartition p;
  switch (m) {
    case 4:
      p = base_m4();
      break;
    case 5:
      p = base_m5();
      break;
    case 6:
      p = base_m6();
      break;
    case 7:
      p = remainder_m7(pinned_m7());
      if (!check_quintriple_partition(p)) throw std::logic_error("stored m = 7 quintriple partition is corrupt");
      return p;
    default:
      p = transport_recursive(m);
  }
  return p;
}

}  // namespace recsets
