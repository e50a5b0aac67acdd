// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recsets/bounds.hpp"
#include "recsets/constructions.hpp"
#include "recsets/geometry.hpp"
#include "recsets/ilp.hpp"
#include "recsets/oracle.hpp"
#include "recsets/verifier.hpp"

using namespace recsets;

namespace {

// Wall-clock budgets per criterion, in seconds.
constexpr double kBudgetSmallValues = 60;
constexpr double kBudgetTwoDim = 120;
constexpr double kBudgetPerfect = 120;
constexpr double kBudgetFourDim = 120;
constexpr double kBudgetFiveDim = 120;
constexpr double kBudgetQuintriples = 60;
constexpr double kBudgetLargeField = 120;
constexpr double kBudgetStructure = 120;
constexpr double kBudgetConsistency = 120;

// Collects the first few failure messages of one criterion.
struct Report {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string tag(std::uint32_t q, unsigned k, unsigned d) {
  std::ostringstream os;
  os << "(" << q << "," << k << "," << d << ")";
  return os.str();
}

std::uint64_t p2(unsigned e) { return std::uint64_t{1} << e; }

int failed = 0;

void criterion(int id, const char* title, double budget, const std::function<void(Report&)>& body) {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget) r.failures.push_back("took " + std::to_string(secs) + " s, budget " + std::to_string(budget) + " s");
  const bool ok = r.failures.empty();
  if (!ok) ++failed;
  std::printf("[%s] %d. %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, title, secs);
  for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) std::printf("       %s\n", r.failures[i].c_str());
  std::fflush(stdout);
}

void certify(Report& r, const RecoveryFamily& fam, std::uint64_t expected, const std::string& name) {
  const Certificate c = verify_family(fam);
  r.expect(c.valid(), name + ": certificate invalid");
  r.expect(c.disjoint_ok && c.spanning_ok, name + ": not disjoint and spanning");
  r.expect(fam.sets.size() == expected,
           name + ": size " + std::to_string(fam.sets.size()) + ", expected " + std::to_string(expected));
}

// Exact cover of F_2^m \ {0} checked here, independently of the library check.
void check_quintriples(Report& r, const QuintriplePartition& p, unsigned m) {
  const std::string name = "m=" + std::to_string(m);
  std::vector<int> hit(std::size_t{1} << m, 0);
  for (const auto& qt : p.quintriples) {
    r.expect(qt[0] == (qt[1] ^ qt[2]) && qt[0] == (qt[3] ^ qt[4]), name + ": quintriple sum condition fails");
    for (auto x : qt) {
      if (x == 0 || x >= hit.size()) r.expect(false, name + ": vector out of range");
      else ++hit[x];
    }
  }
  if (p.dependent_four) {
    const auto& f = *p.dependent_four;
    r.expect((f[0] ^ f[1] ^ f[2] ^ f[3]) == 0, name + ": dependent four does not sum to zero");
    for (auto x : f) ++hit[x];
  }
  for (auto x : p.spare) ++hit[x];
  for (std::size_t v = 1; v < hit.size(); ++v)
    if (hit[v] != 1) {
      r.expect(false, name + ": vector " + std::to_string(v) + " covered " + std::to_string(hit[v]) + " times");
      break;
    }
  // Remainder shape by m mod 4: none; four plus two; a 2-subspace; four plus a 2-subspace.
  const unsigned rem = m % 4;
  r.expect(p.dependent_four.has_value() == (rem == 1 || rem == 3), name + ": dependent four presence");
  const std::size_t spare = rem == 0 ? 0 : rem == 1 ? 2 : 3;
  r.expect(p.spare.size() == spare, name + ": spare count");
  if (spare == 3) r.expect((p.spare[0] ^ p.spare[1]) == p.spare[2], name + ": spare vectors are not a 2-subspace");
  r.expect(p.quintriples.size() == ((std::size_t{1} << m) - 1 - spare - (p.dependent_four ? 4 : 0)) / 5,
           name + ": quintriple count");
}

// Enumerates every part's span and checks that the nonzero vectors are hit once.
bool covers_once(const FiniteField& f, const PartialSpread& s) {
  std::map<FqVector, int> hits;
  auto mark = [&](const SpreadPart& part) {
    const unsigned t = static_cast<unsigned>(part.embedding.size());
    FqVector c(t, 0);
    for (std::uint64_t code = 1; code < checked_pow(f.q(), t); ++code) {
      std::uint64_t x = code;
      for (auto& v : c) {
        v = static_cast<Scalar>(x % f.q());
        x /= f.q();
      }
      ++hits[row_times(f, c, part.embedding)];
    }
  };
  for (const auto& p : s.parts) mark(p);
  if (s.residual) mark(*s.residual);
  if (hits.size() != checked_pow(f.q(), s.n) - 1) return false;
  for (const auto& [v, n] : hits)
    if (n != 1) return false;
  return true;
}

bool model_is_bijection(std::uint32_t q, unsigned k, unsigned d) {
  const FiniteField f = FiniteField::make(q);
  const TModel t(f, k, d);
  const PointCodec codec(f, k);
  std::vector<char> seen(codec.size(), 0);
  auto take = [&](const FqVector& v, const TSlot& want) {
    const std::uint64_t i = codec.index(v);
    if (seen[i]) return false;
    seen[i] = 1;
    const TSlot s = t.locate(canonical(f, v));
    if (s.in_td != want.in_td) return false;
    return want.in_td ? s.td == want.td : s.row == want.row && s.col == want.col;
  };
  for (std::uint64_t i = 0; i < t.td_size(); ++i)
    if (!take(t.td_entry(i), TSlot{true, 0, 0, i})) return false;
  for (std::uint64_t r = t.first_nonzero_row(); r < t.num_rows(); ++r)
    for (std::uint64_t c = 0; c < t.num_cols(); ++c)
      if (!take(t.entry(r, c), TSlot{false, r, c, 0})) return false;
  for (char s : seen)
    if (!s) return false;
  return true;
}

}  // namespace

int main() {
  criterion(1, "exact small values from oracle and construction", kBudgetSmallValues, [](Report& r) {
    struct Case {
      unsigned k, d;
      std::uint64_t value;
    };
    for (const Case c : {Case{2, 2, 1}, Case{3, 2, 2}, Case{4, 2, 5}, Case{4, 4, 3}}) {
      const OracleResult o = exact_N(2, c.k, c.d);
      r.expect(o.status == OracleStatus::Exact, tag(2, c.k, c.d) + ": oracle not exact");
      r.expect(o.value == c.value, tag(2, c.k, c.d) + ": oracle gives " + std::to_string(o.value));
      r.expect(verify_family(o.witness).valid(), tag(2, c.k, c.d) + ": oracle witness invalid");
      certify(r, construct(2, c.k, c.d), c.value, "construction " + tag(2, c.k, c.d));
    }
  });

  criterion(2, "binary d = 2: construction, integer program and dual", kBudgetTwoDim, [](Report& r) {
    std::map<unsigned, std::uint64_t> built;
    for (unsigned k = 2; k <= 14; ++k) {
      const RecoveryFamily fam = construct_d2(k);
      certify(r, fam, (3 * p2(k - 1) + 1) / 5, "d2 k=" + std::to_string(k));
      built[k] = fam.sets.size();
    }
    for (unsigned k = 2; k <= 16; ++k) {
      const IlpResult res = solve_ilp(build_ilp_d2(k));
      const std::int64_t want = static_cast<std::int64_t>((3 * p2(k) + 3) / 10);
      r.expect(res.status == IlpStatus::Optimal, "ilp k=" + std::to_string(k) + " not optimal");
      if (k >= 4) r.expect(res.optimum == want, "ilp k=" + std::to_string(k) + ": " + std::to_string(res.optimum));
      if (built.count(k))
        r.expect(static_cast<std::uint64_t>(res.optimum) == built[k], "ilp and construction differ at k=" + std::to_string(k));
    }
    const std::vector<Rational> z{Rational(1, 2), Rational(1, 5), Rational(1, 10)};
    for (unsigned k = 4; k <= 16; ++k) {
      const DualCheck dc = check_dual(z, k);
      r.expect(dc.feasible, "dual infeasible at k=" + std::to_string(k));
      const Rational want = Rational(3, 2) + Rational(3 * (static_cast<std::int64_t>(p2(k - 1)) - 2), 5);
      r.expect(dc.objective == want, "dual objective off at k=" + std::to_string(k));
    }
  });

  criterion(3, "perfect-code construction", kBudgetPerfect, [](Report& r) {
    for (auto [d, k] : {std::pair{3u, 6u}, std::pair{3u, 9u}, std::pair{7u, 14u}})
      certify(r, construct_perfect(k, d), (p2(d) - 1) / d + (p2(k) - p2(d)) / (d + 1), "perfect " + tag(2, k, d));
  });

  criterion(4, "binary d = 4 construction", kBudgetFourDim, [](Report& r) {
    for (unsigned k = 7; k <= 13; ++k) certify(r, construct_d4(k), (11 * p2(k - 3) - 1) / 7, "d4 k=" + std::to_string(k));
    certify(r, construct_d4(6), 13, "d4 k=6");
    certify(r, construct_d4(5), 6, "d4 k=5");
    certify(r, construct_d4(4), 3, "d4 k=4");
  });

  criterion(5, "binary d = 5 construction and bracketing bounds", kBudgetFiveDim, [](Report& r) {
    for (unsigned k = 7; k <= 12; ++k) {
      const std::uint64_t want = 21 * p2(k - 7) + 1;
      const RecoveryFamily fam = construct_d5(k);
      certify(r, fam, want, "d5 k=" + std::to_string(k));
      const BoundsRecord b = bound(2, k, 5);
      const auto lo = b.term("binary-d5-lower"), hi = b.term("binary-d5-upper");
      r.expect(lo && *lo == want, "d5 lower term off at k=" + std::to_string(k));
      r.expect(lo && hi && *hi == *lo + 1, "d5 upper term is not lower + 1 at k=" + std::to_string(k));
      r.expect(b.lower <= fam.sets.size() && fam.sets.size() <= b.upper, "d5 size outside bounds at k=" + std::to_string(k));
    }
  });

  criterion(6, "quintriple partitions", kBudgetQuintriples, [](Report& r) {
    for (unsigned m = 4; m <= 12; ++m) check_quintriples(r, quintriple_partition(m), m);
    const QuintriplePartition found = search_quintriples_m7();
    r.expect(found.quintriples.size() == 24, "m=7 search did not find 24 quintriples");
    r.expect(check_quintriple_partition(found), "m=7 search result fails the library check");
    check_quintriples(r, found, 7);
    const QuintriplePartition stored = quintriple_partition(7);
    r.expect(check_quintriple_partition(stored), "stored m=7 partition fails the library check");
    r.expect(stored.quintriples == found.quintriples, "stored m=7 partition differs from a fresh search");
  });

  criterion(7, "q > 2 regimes", kBudgetLargeField, [](Report& r) {
    struct Case {
      std::uint32_t q;
      unsigned k, d;
      std::uint64_t value;
    };
    for (const Case c : {Case{3, 4, 2, 14}, Case{5, 5, 4, 164}, Case{7, 4, 2, 134}}) {
      certify(r, construct_general_q(c.q, c.k, c.d), c.value, "general " + tag(c.q, c.k, c.d));
      const BoundsRecord b = bound(c.q, c.k, c.d);
      r.expect(b.exact && *b.exact == c.value, "bounds do not mark " + tag(c.q, c.k, c.d) + " exact");
    }
  });

  criterion(8, "spreads and the array-model bijection", kBudgetStructure, [](Report& r) {
    const FiniteField f2 = FiniteField::make(2);
    for (unsigned n = 2; n <= 12; ++n) {
      const PartialSpread s = binary_line_partition(n);
      r.expect(check_partition(f2, s) && covers_once(f2, s), "line partition n=" + std::to_string(n));
    }
    for (unsigned n = 2; n <= 12; n += 2)
      r.expect(covers_once(f2, full_spread(f2, n, 2)), "binary line spread n=" + std::to_string(n));
    for (unsigned n = 8; n <= 12; ++n) {
      const PartialSpread s = lifted_partial_spread(f2, n, 4);
      r.expect(check_partition(f2, s) && covers_once(f2, s), "lifted 4-spread n=" + std::to_string(n));
    }
    for (unsigned n = 6; n <= 13; ++n) {
      const PartialSpread s = lifted_partial_spread(f2, n, 3);
      r.expect(check_partition(f2, s) && covers_once(f2, s), "lifted 3-spread n=" + std::to_string(n));
    }
    for (std::uint32_t q : {3u, 5u, 7u}) {
      const FiniteField f = FiniteField::make(q);
      for (unsigned n : {2u, 4u}) {
        const PartialSpread s = full_spread(f, n, 2);
        r.expect(check_partition(f, s) && covers_once(f, s), "line spread q=" + std::to_string(q) + " n=" + std::to_string(n));
      }
    }
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u})
      for (unsigned k = 1; k <= 6; ++k)
        for (unsigned d = 1; d <= k; ++d)
          r.expect(model_is_bijection(q, k, d), "array model " + tag(q, k, d));
  });

  criterion(9, "bounds bracket every construction on the grid", kBudgetConsistency, [](Report& r) {
    std::vector<std::tuple<std::uint32_t, unsigned, unsigned>> grid{{2, 2, 2}, {2, 3, 2}, {2, 4, 2}, {2, 4, 4},
                                                                   {2, 6, 3}, {2, 9, 3}, {2, 14, 7}, {3, 4, 2},
                                                                   {5, 5, 4}, {7, 4, 2}};
    for (unsigned k = 2; k <= 14; ++k) grid.emplace_back(2, k, 2);
    for (unsigned k = 4; k <= 13; ++k) grid.emplace_back(2, k, 4);
    for (unsigned k = 7; k <= 12; ++k) grid.emplace_back(2, k, 5);
    std::set<std::tuple<std::uint32_t, unsigned, unsigned>> done;
    for (const auto& [q, k, d] : grid) {
      if (!done.insert({q, k, d}).second) continue;
      const BoundsRecord b = bound(q, k, d);
      const std::uint64_t size = construct(q, k, d).sets.size();
      r.expect(b.lower <= size && size <= b.upper,
               tag(q, k, d) + ": " + std::to_string(b.lower) + " <= " + std::to_string(size) + " <= " + std::to_string(b.upper));
    }
    const BoundsRecord six = bound(2, 7, 6);
    r.expect(six.term("binary-d6-lower") == 19u, "d6 lower formula at k=7 is not 19");
    r.expect(six.term("binary-d6-upper") == 21u, "d6 upper formula at k=7 is not 21");
  });

  std::printf("%d of 9 criteria failed\n", failed);
  return failed;
}
