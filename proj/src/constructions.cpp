#include "recsets/constructions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "construct_util.hpp"

namespace recsets {

namespace detail {

std::uint64_t basic_count(std::uint32_t q, unsigned d) { return (checked_pow(q, d) - 1) / (d * (q - 1)); }

FamilyBuilder::FamilyBuilder(FiniteField f, unsigned k, unsigned d, std::string method)
    : t_(f, k, d), fam_(f, k, d, default_target(f, k, d)) {
  fam_.method = std::move(method);
  leftovers_.resize(t_.num_rows());
}

void FamilyBuilder::add(std::vector<FqVector> pts) { fam_.sets.push_back(RecoverySet{std::move(pts)}); }

void FamilyBuilder::add(std::vector<RecoverySet> sets) {
  for (auto& s : sets) fam_.sets.push_back(std::move(s));
}

FqVector FamilyBuilder::power_point(const FqVector& x, std::uint64_t i) const {
  return t_.join(x, t_.column_value(t_.power_column(i)));
}

FqVector FamilyBuilder::zero_point(const FqVector& x) const { return t_.join(x, FqVector(t_.d(), 0)); }

void FamilyBuilder::add_row(const FqVector& x, const LeftoverRun& run) {
  const auto slot = t_.locate(zero_point(x));
  if (slot.in_td) throw std::invalid_argument("row sets need a nonzero row");
  add(row_sets(t_, slot.row, run));
  leftovers_[slot.row] = partition_row(t_, run).leftovers;
}

void FamilyBuilder::require_leftover(const FqVector& x, std::uint64_t col) const {
  const auto slot = t_.locate(zero_point(x));
  const auto& lo = leftovers_.at(slot.row);
  if (std::find(lo.begin(), lo.end(), col) == lo.end())
    throw std::logic_error("leftover set uses an entry that its row does not leave over");
}

RecoveryFamily FamilyBuilder::finish(std::uint64_t formula_lower) {
  fam_.formula_lower = formula_lower;
  return std::move(fam_);
}

FqVector row_vec(std::uint64_t mask, unsigned m) { return mask_to_vector(mask, m); }

LeftoverRun single_leftover(std::optional<std::uint64_t> power) {
  if (!power) return LeftoverRun{true, 0, 0};
  return LeftoverRun{false, *power, 1};
}

}  // namespace detail

using detail::basic_count;
using detail::FamilyBuilder;

std::uint64_t row_leftover_count(const TModel& t) {
  const std::uint64_t cols = t.num_cols();
  return cols % (t.d() + 1);
}

LeftoverRun trailing_run(const TModel& t) {
  const std::uint64_t l = row_leftover_count(t);
  const std::uint64_t n = t.num_cols() - 1;
  return LeftoverRun{false, n - l, l};
}

RowPartition partition_row(const TModel& t, const LeftoverRun& run) {
  const std::uint64_t n_pow = t.num_cols() - 1;
  const unsigned d = t.d();
  const std::uint64_t nsets = t.num_cols() / (d + 1);
  const std::uint64_t l = row_leftover_count(t);
  if ((run.zero ? 1 : 0) + run.count != l)
    throw std::invalid_argument("leftover run must cover exactly " + std::to_string(l) + " entries");
  RowPartition out;
  if (run.zero) out.leftovers.push_back(0);
  for (std::uint64_t i = 0; i < run.count; ++i) out.leftovers.push_back(t.power_column(run.start + i));
  std::uint64_t s = (run.start % n_pow) + run.count;
  std::uint64_t windows = nsets;
  if (!run.zero) {
    std::vector<std::uint64_t> first{0};
    for (unsigned j = 0; j < d; ++j) first.push_back(t.power_column(s + j));
    out.sets.push_back(std::move(first));
    s += d;
    --windows;
  }
  for (std::uint64_t w = 0; w < windows; ++w) {
    std::vector<std::uint64_t> set;
    for (unsigned j = 0; j <= d; ++j) set.push_back(t.power_column(s + j));
    out.sets.push_back(std::move(set));
    s += d + 1;
  }
  return out;
}

std::vector<RecoverySet> row_sets(const TModel& t, std::uint64_t row, const LeftoverRun& run) {
  if (row >= t.num_rows()) throw std::out_of_range("row index out of range");
  if (t.binary() && row == 0) throw std::invalid_argument("the zero row holds U itself and has no row sets");
  std::vector<RecoverySet> out;
  for (const auto& cols : partition_row(t, run).sets) {
    RecoverySet s;
    for (auto c : cols) s.points.push_back(t.entry(row, c));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RecoverySet> row_sets(const TModel& t, std::uint64_t row) { return row_sets(t, row, trailing_run(t)); }

std::vector<RecoverySet> basic_sets_from_Td(const TModel& t) {
  const unsigned d = t.d();
  const std::uint64_t count = t.td_size() / d;
  std::vector<RecoverySet> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    RecoverySet s;
    for (unsigned j = 0; j < d; ++j) s.points.push_back(t.td_entry(i * d + j));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::uint64_t> basic_leftover_slots(const TModel& t) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = (t.td_size() / t.d()) * t.d(); i < t.td_size(); ++i) out.push_back(i);
  return out;
}

RecoveryFamily construct_basic(const FiniteField& f, unsigned k) {
  FamilyBuilder b(f, k, k, "basic");
  b.add(basic_sets_from_Td(b.model()));
  return b.finish(basic_count(f.q(), k));
}

RecoveryFamily construct_perfect(unsigned k, unsigned d) {
  unsigned m = 0;
  while (((1u << m) - 1) < d) ++m;
  if (m < 2 || ((1u << m) - 1) != d)
    throw std::invalid_argument("perfect-code construction needs d = 2^m - 1 with m >= 2");
  if (d > k) throw std::invalid_argument("need d <= k");
  const auto f2 = FiniteField::make(2);
  const auto code = hamming_partition(m);
  FamilyBuilder b(f2, k, d, "perfect-code");
  b.add(basic_sets_from_Td(b.model()));
  const auto& t = b.model();
  for (std::uint64_t r = 1; r < t.num_rows(); ++r) {
    for (const auto& ball : code.balls) {
      std::vector<FqVector> pts;
      for (auto w : ball) pts.push_back(t.join(t.row(r), mask_to_vector(w, d)));
      b.add(std::move(pts));
    }
  }
  const std::uint64_t formula = basic_count(2, d) + ((std::uint64_t{1} << k) - (std::uint64_t{1} << d)) / (d + 1);
  return b.finish(formula);
}

namespace {

// Canonical points of the subspace spanned by the rows of `emb`, sorted.
std::vector<FqVector> subspace_points(const FiniteField& f, const Matrix& emb) {
  std::set<FqVector> pts;
  const std::size_t t = emb.size();
  const std::uint64_t count = checked_pow(f.q(), static_cast<unsigned>(t));
  FqVector c(t);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < t; ++i) {
      c[i] = static_cast<Scalar>(v % f.q());
      v /= f.q();
    }
    pts.insert(canonical(f, row_times(f, c, emb)));
  }
  return {pts.begin(), pts.end()};
}

}  // namespace

RecoveryFamily construct_general(const FiniteField& f, unsigned k, unsigned d) {
  if (d == 0 || d > k) throw std::invalid_argument("need 1 <= d <= k");
  FamilyBuilder b(f, k, d, "row-packing");
  const auto& t = b.model();
  const std::uint32_t q = f.q();
  b.add(basic_sets_from_Td(t));

  const std::uint64_t l = row_leftover_count(t);
  const std::uint64_t rows = t.num_rows() - t.first_nonzero_row();
  const std::uint64_t per_row = t.num_cols() / (d + 1);
  std::uint64_t formula = basic_count(q, d) + rows * per_row;

  std::vector<std::optional<LeftoverRun>> runs(t.num_rows());
  std::vector<std::vector<FqVector>> extra;

  std::string skip;
  if (l == 0) skip = "rows have no leftovers";
  else if ((q + 1) % (d + 2) != 0) skip = "d+2 does not divide q+1";
  else if ((k - d) % 2 != 0 || k == d) skip = "k-d is not a positive even number";

  if (skip.empty()) {
    b.family().method = "row-packing+line-leftovers";
    const ExtField& cf = t.column_field();
    const auto lines = full_spread(f, k - d, 2);
    for (const auto& line : lines.parts) {
      const auto pts = subspace_points(f, line.embedding);
      for (std::size_t g = 0; g + d + 2 <= pts.size(); g += d + 2) {
        std::vector<FqVector> xs(pts.begin() + static_cast<std::ptrdiff_t>(g),
                                 pts.begin() + static_cast<std::ptrdiff_t>(g + d + 2));
        // Rows x_1..x_d carry alpha^(j-1), row x_{d+1} carries alpha^0 and
        // row x_{d+2} carries b alpha^0 for the first scalar b that makes the
        // layer span U. The unscaled choice b = 1 fails whenever x_1, x_{d+1},
        // x_{d+2} are affinely collinear as representatives.
        auto layer = [&](std::uint64_t i, std::uint64_t blog) {
          std::vector<FqVector> s;
          for (unsigned j = 0; j < d; ++j) s.push_back(b.power_point(xs[j], j + i));
          s.push_back(b.power_point(xs[d], i));
          s.push_back(b.power_point(xs[d + 1], blog + i));
          return s;
        };
        std::optional<std::uint64_t> blog;
        for (std::uint32_t sc = 1; sc < q && !blog; ++sc) {
          const auto lg = cf.log(sc);
          if (span_contains(f, layer(0, lg), b.family().target)) blog = lg;
        }
        if (!blog) throw std::logic_error("no scalar makes the line leftover set span U");
        for (unsigned j = 0; j < d; ++j) runs[t.locate(b.zero_point(xs[j])).row] = LeftoverRun{false, j, l};
        runs[t.locate(b.zero_point(xs[d])).row] = LeftoverRun{false, 0, l};
        runs[t.locate(b.zero_point(xs[d + 1])).row] = LeftoverRun{false, *blog, l};
        for (std::uint64_t i = 0; i < l; ++i) extra.push_back(layer(i, *blog));
      }
    }
    formula += rows * l / (d + 2);
  } else {
    b.family().notes.push_back("leftover enhancement not applied: " + skip);
  }

  for (std::uint64_t r = t.first_nonzero_row(); r < t.num_rows(); ++r)
    b.add_row(t.row(r), runs[r].value_or(trailing_run(t)));
  for (auto& s : extra) {
    for (const auto& p : s) {
      const auto slot = t.locate(p);
      b.require_leftover(t.row(slot.row), slot.col);
    }
    b.add(std::move(s));
  }
  return b.finish(formula);
}

RecoveryFamily construct_general_q(std::uint32_t q, unsigned k, unsigned d) {
  if (q <= 2) throw std::invalid_argument("construct_general_q needs q > 2");
  return construct_general(FiniteField::make(q), k, d);
}

RecoveryFamily construct(std::uint32_t q, unsigned k, unsigned d) {
  if (d == 0 || d > k) throw std::invalid_argument("need 1 <= d <= k");
  const auto f = FiniteField::make(q);
  if (d == k) return construct_basic(f, k);
  if (q == 2) {
    if (d == 2) return construct_d2(k);
    if (d == 4) return construct_d4(k);
    if (d == 5 && k >= 7) return construct_d5(k);
    if (d >= 3 && d <= (1u << kMaxHammingM) - 1 && ((d + 1) & d) == 0) return construct_perfect(k, d);
  }
  return construct_general(f, k, d);
}

}  // namespace recsets
