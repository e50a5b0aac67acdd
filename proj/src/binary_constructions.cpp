// Constructions for q = 2 and d = 2, 4, 5, which place row leftovers so that
// rows from small subspaces of F_2^(k-d) combine into extra recovery sets.

#include <algorithm>
#include <stdexcept>
#include <string>

#include "construct_util.hpp"

namespace recsets {

using detail::FamilyBuilder;
using detail::row_vec;
using detail::single_leftover;

namespace {

const FiniteField& gf2() {
  static const FiniteField f = FiniteField::make(2);
  return f;
}

// A leftover set over rows given as masks: each entry is a row with the
// alpha-power it contributes, or no power for the zero column.
struct Entry {
  std::uint64_t row;
  std::optional<std::uint64_t> power;
};

class BinaryPlan {
 public:
  BinaryPlan(FamilyBuilder& b, unsigned m) : b_(b), m_(m), runs_(std::uint64_t{1} << m) {}

  void assign(std::uint64_t row, const LeftoverRun& run) {
    if (runs_.at(row)) throw std::logic_error("row leftover assigned twice");
    runs_[row] = run;
  }

  // Schedules a set made of the first-row (T_d) slots plus row entries.
  void add_set(std::vector<std::uint64_t> td_slots, std::vector<Entry> entries) {
    pending_.push_back({std::move(td_slots), std::move(entries)});
  }

  void emit() {
    const auto& t = b_.model();
    for (std::uint64_t r = 1; r < runs_.size(); ++r) b_.add_row(row_vec(r, m_), runs_[r].value_or(trailing_run(t)));
    for (const auto& [slots, entries] : pending_) {
      std::vector<FqVector> pts;
      for (auto s : slots) pts.push_back(t.td_entry(s));
      for (const auto& e : entries) {
        const auto x = row_vec(e.row, m_);
        const std::uint64_t col = e.power ? t.power_column(*e.power) : 0;
        b_.require_leftover(x, col);
        pts.push_back(e.power ? b_.power_point(x, *e.power) : b_.zero_point(x));
      }
      b_.add(std::move(pts));
    }
  }

 private:
  FamilyBuilder& b_;
  unsigned m_;
  std::vector<std::optional<LeftoverRun>> runs_;
  std::vector<std::pair<std::vector<std::uint64_t>, std::vector<Entry>>> pending_;
};

std::uint64_t d2_formula(unsigned k) { return (3 * (std::uint64_t{1} << (k - 1)) + 1) / 5; }

std::uint64_t d4_formula(unsigned k) {
  if (k == 4) return 3;
  if (k == 5) return 6;
  if (k == 6) return 13;
  return (11 * (std::uint64_t{1} << (k - 3)) - 1) / 7;
}

// Masks of a 2- or 3-subspace part, read off its embedding rows.
std::vector<std::uint64_t> basis_masks(const SpreadPart& p) {
  std::vector<std::uint64_t> out;
  for (const auto& r : p.embedding) out.push_back(vector_to_mask(r));
  return out;
}

}  // namespace

RecoveryFamily construct_d2(unsigned k) {
  if (k < 2) throw std::invalid_argument("construct_d2 needs k >= 2");
  if (k > 30) throw std::invalid_argument("construct_d2 limited to k <= 30");
  FamilyBuilder b(gf2(), k, 2, "binary-d2-quintriples");
  b.add(basic_sets_from_Td(b.model()));
  const unsigned m = k - 2;
  if (m == 0) return b.finish(d2_formula(k));

  // Columns: A = alpha^0, B = alpha^1, C = alpha^2 = A + B; the first row
  // leaves C over (T_d slot 2).
  constexpr std::uint64_t A = 0, B = 1, C = 2;
  BinaryPlan plan(b, m);

  auto two_subspace = [&](std::uint64_t s1, std::uint64_t s2) {
    const std::uint64_t s3 = s1 ^ s2;
    plan.assign(s1, single_leftover(std::nullopt));
    plan.assign(s2, single_leftover(std::nullopt));
    plan.assign(s3, single_leftover(A));
    plan.add_set({C}, {{s1, std::nullopt}, {s2, std::nullopt}, {s3, A}});
  };
  auto dependent_four = [&](const std::array<std::uint64_t, 4>& y) {
    plan.assign(y[0], single_leftover(A));
    for (std::size_t i = 1; i < 4; ++i) plan.assign(y[i], single_leftover(std::nullopt));
    plan.add_set({C}, {{y[0], A}, {y[1], std::nullopt}, {y[2], std::nullopt}, {y[3], std::nullopt}});
  };

  if (m == 2) {
    two_subspace(1, 2);
  } else if (m == 3) {
    dependent_four({1, 2, 4, 7});
  } else if (m >= 4) {
    const auto part = quintriple_partition(m);
    for (const auto& q : part.quintriples) {
      plan.assign(q[0], single_leftover(std::nullopt));
      plan.assign(q[1], single_leftover(A));
      plan.assign(q[2], single_leftover(C));
      plan.assign(q[3], single_leftover(B));
      plan.assign(q[4], single_leftover(C));
      plan.add_set({}, {{q[0], std::nullopt}, {q[1], A}, {q[2], C}, {q[3], B}, {q[4], C}});
    }
    if (part.dependent_four) dependent_four(*part.dependent_four);
    if (m % 4 == 2) two_subspace(part.spare[0], part.spare[1]);
  }
  plan.emit();
  return b.finish(d2_formula(k));
}

RecoveryFamily construct_d4(unsigned k) {
  if (k < 4) throw std::invalid_argument("construct_d4 needs k >= 4");
  if (k > 30) throw std::invalid_argument("construct_d4 limited to k <= 30");
  const unsigned m = k - 4;
  FamilyBuilder b(gf2(), k, 4, m == 2 ? "binary-d4-explicit-k6" : "binary-d4-model-sets");
  const auto& t = b.model();
  const ExtField& cf = t.column_field();

  if (m == 2) {
    // First-row sets moved so the first row leaves alpha^11..alpha^13 over,
    // next to the alpha^14 that every other row leaves over.
    for (std::uint64_t start : {3u, 7u, 14u}) {
      std::vector<FqVector> s;
      for (std::uint64_t j = 0; j < 4; ++j) s.push_back(t.td_entry((start + j) % 15));
      b.add(std::move(s));
    }
    BinaryPlan plan(b, m);
    plan.add_set({11, 12, 13}, {{1, 14}, {2, 14}, {3, 14}});
    plan.emit();
    return b.finish(d4_formula(k));
  }

  b.add(basic_sets_from_Td(t));
  if (m < 3) {
    BinaryPlan plan(b, m);
    plan.emit();
    return b.finish(d4_formula(k));
  }

  // u_i = alpha^(i-1); a value is recorded by its alpha-power, or nullopt for 0.
  auto power_of = [&](std::initializer_list<unsigned> us) -> std::optional<std::uint64_t> {
    ExtField::Element v = 0;
    for (auto u : us) v = cf.add(v, cf.alpha_pow(u - 1));
    if (v == 0) return std::nullopt;
    return cf.log(v);
  };
  BinaryPlan plan(b, m);

  // The (3,4) model: seven rows of a 3-subspace whose leftovers recover U.
  auto model_set = [&](std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) {
    const std::vector<Entry> entries{
        {x1, power_of({1})},           {x2, power_of({1, 2})},         {x3, power_of({1, 3})},
        {x1 ^ x2, std::nullopt},       {x1 ^ x3, std::nullopt},        {x2 ^ x3, power_of({2, 3, 4})},
        {x1 ^ x2 ^ x3, power_of({2, 3})}};
    for (const auto& e : entries) plan.assign(e.row, single_leftover(e.power));
    plan.add_set({}, entries);
  };

  // Descend through lifted partial spreads of 3-subspaces; `shift` maps the
  // current F_2^n onto the high coordinates of F_2^m.
  unsigned n = m, shift = 0;
  while (n >= 6) {
    const auto spread = lifted_partial_spread(gf2(), n, 3);
    for (const auto& p : spread.parts) {
      const auto bm = basis_masks(p);
      model_set(bm[0] << shift, bm[1] << shift, bm[2] << shift);
    }
    n -= 3;
    shift += 3;
  }
  auto r = [&](unsigned i) { return std::uint64_t{1} << (shift + i); };
  model_set(r(0), r(1), r(2));

  if (n >= 4) {
    // Four rows summing to zero recover one extra vector w; the three
    // first-row leftovers supply the rest of U.
    const auto slots = basic_leftover_slots(t);
    Matrix span_rows;
    for (auto s : slots) span_rows.push_back(cf.to_vector(cf.alpha_pow(s)));
    const Subspace lo(gf2(), 4, span_rows);
    std::uint64_t w = 0;
    while (lo.contains(gf2(), cf.to_vector(cf.alpha_pow(w)))) ++w;
    const std::vector<Entry> four{{r(3), w}, {r(3) ^ r(0), std::nullopt}, {r(3) ^ r(1), std::nullopt},
                                  {r(3) ^ r(0) ^ r(1), std::nullopt}};
    for (const auto& e : four) plan.assign(e.row, single_leftover(e.power));
    plan.add_set(slots, four);
  }
  if (n == 5) {
    // The 20 rows left in the terminal 5-space form two groups of ten. In
    // each group the RREF left kernel of the row vectors gives four
    // dependencies; the pivot row of dependency j carries u_j and every other
    // row carries 0, so dependency j sums to (0 | u_j).
    std::vector<std::uint64_t> used{r(0), r(1), r(2), r(0) ^ r(1), r(0) ^ r(2), r(1) ^ r(2), r(0) ^ r(1) ^ r(2),
                                    r(3), r(3) ^ r(0), r(3) ^ r(1), r(3) ^ r(0) ^ r(1)};
    std::vector<std::uint64_t> rest;
    for (std::uint64_t v = 1; v < 32; ++v) {
      const std::uint64_t row = v << shift;
      if (std::find(used.begin(), used.end(), row) == used.end()) rest.push_back(row);
    }
    for (std::size_t g = 0; g < 2; ++g) {
      std::vector<std::uint64_t> group(rest.begin() + static_cast<std::ptrdiff_t>(10 * g),
                                       rest.begin() + static_cast<std::ptrdiff_t>(10 * g + 10));
      Matrix xs;
      for (auto row : group) xs.push_back(row_vec(row, m));
      const auto ker = left_kernel(gf2(), xs);
      if (ker.size() < 4) throw std::logic_error("row group has too few dependencies");
      std::vector<std::optional<std::uint64_t>> val(group.size());
      for (std::size_t j = 0; j < 4; ++j) {
        std::size_t piv = 0;
        while (ker[j][piv] == 0) ++piv;
        val[piv] = j;
      }
      std::vector<Entry> entries;
      for (std::size_t i = 0; i < group.size(); ++i) {
        plan.assign(group[i], single_leftover(val[i]));
        entries.push_back({group[i], val[i]});
      }
      plan.add_set({}, entries);
    }
  }
  plan.emit();
  return b.finish(d4_formula(k));
}

RecoveryFamily construct_d5(unsigned k) {
  if (k < 7) throw std::invalid_argument("construct_d5 needs k >= 7");
  if (k > 30) throw std::invalid_argument("construct_d5 limited to k <= 30");
  const unsigned m = k - 5;
  FamilyBuilder b(gf2(), k, 5, "binary-d5-line-groups");
  b.add(basic_sets_from_Td(b.model()));
  BinaryPlan plan(b, m);

  // u1..u5 as alpha-powers; u4 = alpha u3 so the pair (u3, u4) is one run of
  // two consecutive leftovers.
  constexpr std::uint64_t u1 = 2, u2 = 3, u3 = 0, u4 = 1, u5 = 4;
  const std::uint64_t first_row_leftover = basic_leftover_slots(b.model()).at(0);

  auto zero_and = [](std::uint64_t p) { return LeftoverRun{true, p, 1}; };
  const LeftoverRun pair_run{false, u3, 2};

  // One of the three 8-sets built from a line {a, b, a+b} and one extra row c.
  auto eight_set = [&](std::uint64_t a, std::uint64_t bb, std::uint64_t c) {
    plan.assign(a, zero_and(u1));
    plan.assign(bb, zero_and(u2));
    plan.assign(a ^ bb, pair_run);
    plan.assign(c, zero_and(u5));
    plan.add_set({}, {{a, std::nullopt},
                      {bb, std::nullopt},
                      {a ^ bb, u3},
                      {c, std::nullopt},
                      {a, u1},
                      {bb, u2},
                      {a ^ bb, u4},
                      {c, u5}});
  };

  const auto lines = binary_line_partition(m);
  std::vector<std::vector<std::uint64_t>> ls;
  for (const auto& p : lines.parts) ls.push_back(basis_masks(p));
  std::size_t i = 0;
  for (; i + 4 <= ls.size(); i += 4) {
    const auto &l1 = ls[i], &l2 = ls[i + 1], &l3 = ls[i + 2], &l4 = ls[i + 3];
    eight_set(l1[0], l1[1], l4[0]);
    eight_set(l2[0], l2[1], l4[1]);
    eight_set(l3[0], l3[1], l4[0] ^ l4[1]);
  }
  if (m % 2 == 0) {
    if (ls.size() - i != 1) throw std::logic_error("line count does not leave exactly one spare line");
    const auto& l = ls[i];
    const std::uint64_t a = l[0], bb = l[1];
    plan.assign(a, zero_and(u1));
    plan.assign(bb, zero_and(u2));
    plan.assign(a ^ bb, pair_run);
    plan.add_set({first_row_leftover},
                 {{a, std::nullopt}, {a, u1}, {bb, std::nullopt}, {bb, u2}, {a ^ bb, u3}, {a ^ bb, u4}});
  } else {
    if (ls.size() != i || !lines.residual) throw std::logic_error("odd line partition must end in a 3-subspace");
    const auto x = basis_masks(*lines.residual);
    const std::uint64_t x12 = x[0] ^ x[1], x13 = x[0] ^ x[2], x23 = x[1] ^ x[2], x123 = x[0] ^ x[1] ^ x[2];
    plan.assign(x12, zero_and(u1));
    plan.assign(x13, zero_and(u2));
    plan.assign(x23, pair_run);
    plan.add_set({first_row_leftover}, {{x12, std::nullopt},
                                        {x12, u1},
                                        {x13, std::nullopt},
                                        {x13, u2},
                                        {x23, u3},
                                        {x23, u4}});
    plan.assign(x[0], zero_and(u1));
    plan.assign(x[1], zero_and(u2));
    plan.assign(x[2], zero_and(u5));
    plan.assign(x123, pair_run);
    plan.add_set({}, {{x[0], std::nullopt},
                      {x[0], u1},
                      {x[1], std::nullopt},
                      {x[1], u2},
                      {x[2], std::nullopt},
                      {x[2], u5},
                      {x123, u3},
                      {x123, u4}});
  }
  plan.emit();
  return b.finish(21 * (std::uint64_t{1} << (k - 7)) + 1);
}

}  // namespace recsets
