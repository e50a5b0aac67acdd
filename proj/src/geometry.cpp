#include "recsets/geometry.hpp"

#include <stdexcept>
#include <string>

namespace recsets {

std::uint64_t num_points(std::uint32_t q, unsigned k) {
  if (k == 0) return 0;
  return (checked_pow(q, k) - 1) / (q - 1);
}

PointCodec::PointCodec(FiniteField f, unsigned k) : f_(std::move(f)), k_(k) {
  size_ = num_points(f_.q(), k_);
  if (size_ > kMaxPoints) throw std::overflow_error("point count exceeds the configured ceiling");
  qpow_.resize(k_ + 1);
  qpow_[0] = 1;
  for (unsigned i = 1; i <= k_; ++i) qpow_[i] = qpow_[i - 1] * f_.q();
}

std::uint64_t PointCodec::index(const FqVector& v) const {
  if (v.size() != k_) throw std::invalid_argument("point has wrong length");
  std::size_t lead = 0;
  while (lead < k_ && v[lead] == 0) ++lead;
  if (lead == k_) throw std::invalid_argument("the zero vector is not a point");
  const Scalar s = f_.inv(v[lead]);
  const std::uint64_t tail_len = k_ - 1 - lead;
  // Points whose leading one sits further right come first.
  std::uint64_t idx = (qpow_[tail_len] - 1) / (f_.q() - 1);
  std::uint64_t tail = 0;
  for (std::size_t j = lead + 1; j < k_; ++j) tail = tail * f_.q() + f_.mul(s, v[j]);
  return idx + tail;
}

FqVector PointCodec::point(std::uint64_t i) const {
  if (i >= size_) throw std::out_of_range("point index out of range");
  std::uint64_t tail_len = 0;
  while ((qpow_[tail_len + 1] - 1) / (f_.q() - 1) <= i) ++tail_len;
  std::uint64_t tail = i - (qpow_[tail_len] - 1) / (f_.q() - 1);
  FqVector v(k_, 0);
  const std::size_t lead = k_ - 1 - tail_len;
  v[lead] = 1;
  for (std::size_t j = k_; j-- > lead + 1;) {
    v[j] = static_cast<Scalar>(tail % f_.q());
    tail /= f_.q();
  }
  return v;
}

std::vector<FqVector> enumerate_points(const FiniteField& f, unsigned k) {
  PointCodec codec(f, k);
  // Codec order is lexicographic order of the canonical representatives.
  std::vector<FqVector> out;
  out.reserve(codec.size());
  for (std::uint64_t i = 0; i < codec.size(); ++i) out.push_back(codec.point(i));
  return out;
}

TModel::TModel(FiniteField f, unsigned k, unsigned d)
    : f_(std::move(f)), k_(k), d_(d), col_field_(f_, d == 0 ? 1 : d) {
  if (d == 0 || d > k) throw std::invalid_argument("need 1 <= d <= k, got d=" + std::to_string(d) + " k=" + std::to_string(k));
  const unsigned r = k - d;
  const std::uint32_t q = f_.q();
  td_size_ = (col_field_.size() - 1) / (q - 1);
  if (binary()) {
    const std::uint64_t nrows = std::uint64_t{1} << r;
    if (nrows * col_field_.size() > kMaxPoints * 2) throw std::overflow_error("array model exceeds the configured ceiling");
    rows_.reserve(nrows);
    for (std::uint64_t v = 0; v < nrows; ++v) {
      FqVector x(r, 0);
      for (unsigned i = 0; i < r; ++i) x[i] = static_cast<Scalar>((v >> (r - 1 - i)) & 1);
      rows_.push_back(std::move(x));
    }
  } else if (r > 0) {
    row_codec_.emplace(f_, r);
    if (row_codec_->size() * col_field_.size() > kMaxPoints * 2)
      throw std::overflow_error("array model exceeds the configured ceiling");
    rows_ = enumerate_points(f_, r);
  }
}

FqVector TModel::column_value(std::uint64_t col) const {
  if (col >= num_cols()) throw std::out_of_range("column out of range");
  if (col == 0) return FqVector(d_, 0);
  return col_field_.to_vector(col_field_.alpha_pow(col - 1));
}

FqVector TModel::join(const FqVector& x, const FqVector& y) const {
  if (x.size() != k_ - d_ || y.size() != d_) throw std::invalid_argument("join: wrong block lengths");
  FqVector v(x);
  v.insert(v.end(), y.begin(), y.end());
  return v;
}

FqVector TModel::entry(std::uint64_t row, std::uint64_t col) const {
  return join(rows_.at(row), column_value(col));
}

FqVector TModel::td_entry(std::uint64_t i) const {
  if (i >= td_size_) throw std::out_of_range("T_d slot out of range");
  return join(FqVector(k_ - d_, 0), col_field_.to_vector(col_field_.alpha_pow(i)));
}

TSlot TModel::locate(const FqVector& point) const {
  if (point.size() != k_) throw std::invalid_argument("point has wrong length");
  const FqVector v = canonical(f_, point);
  if (is_zero(v)) throw std::invalid_argument("the zero vector is not a point");
  FqVector x(v.begin(), v.begin() + (k_ - d_));
  FqVector y(v.begin() + (k_ - d_), v.end());
  TSlot s;
  const std::uint64_t ylog = is_zero(y) ? 0 : col_field_.log(col_field_.from_vector(y));
  if (is_zero(x)) {
    s.in_td = true;
    s.td = ylog % td_size_;
    if (binary()) s.col = ylog + 1;
    return s;
  }
  if (binary()) {
    std::uint64_t r = 0;
    for (auto c : x) r = (r << 1) | c;
    s.row = r;
  } else {
    s.row = row_codec_->index(x);
  }
  s.col = is_zero(y) ? 0 : ylog + 1;
  return s;
}

namespace {

FqVector unit(unsigned n, unsigned i) {
  FqVector v(n, 0);
  v[i] = 1;
  return v;
}

SpreadPart make_part(const FiniteField& f, unsigned n, Matrix emb) {
  Subspace s(f, n, emb);
  return SpreadPart{std::move(s), std::move(emb)};
}

}  // namespace

PartialSpread full_spread(const FiniteField& f, unsigned n, unsigned t) {
  if (t == 0 || n == 0 || n % t != 0)
    throw std::invalid_argument("full spread needs t dividing n (n=" + std::to_string(n) + ", t=" + std::to_string(t) + ")");
  ExtField big(f, n);
  const std::uint64_t r = big.order() / (checked_pow(f.q(), t) - 1);
  const std::uint64_t count = r;  // number of cosets alpha^i F_{q^t}^*, i < r
  PartialSpread out;
  out.q = f.q();
  out.n = n;
  out.t = t;
  const auto beta = big.alpha_pow(r);
  for (std::uint64_t i = 0; i < count; ++i) {
    Matrix emb;
    auto cur = big.alpha_pow(i);
    for (unsigned j = 0; j < t; ++j) {
      emb.push_back(big.to_vector(cur));
      cur = big.mul(cur, beta);
    }
    out.parts.push_back(make_part(f, n, std::move(emb)));
  }
  return out;
}

PartialSpread lifted_partial_spread(const FiniteField& f, unsigned n, unsigned t) {
  if (t == 0 || 2 * t > n)
    throw std::invalid_argument("lifted partial spread needs 1 <= t <= n - t (n=" + std::to_string(n) + ", t=" + std::to_string(t) + ")");
  const unsigned w = n - t;
  ExtField ext(f, w);
  PartialSpread out;
  out.q = f.q();
  out.n = n;
  out.t = t;
  for (ExtField::Element a = 0; a < ext.size(); ++a) {
    Matrix emb;
    for (unsigned i = 0; i < t; ++i) {
      FqVector row = unit(t, i);
      const auto m = ext.to_vector(ext.mul(a, ext.alpha_pow(i)));
      row.insert(row.end(), m.begin(), m.end());
      emb.push_back(std::move(row));
    }
    out.parts.push_back(make_part(f, n, std::move(emb)));
  }
  Matrix res;
  for (unsigned i = t; i < n; ++i) res.push_back(unit(n, i));
  out.residual = make_part(f, n, std::move(res));
  return out;
}

SpreadPart pad_front(const FiniteField& f, const SpreadPart& part, unsigned n) {
  Matrix emb;
  for (const auto& r : part.embedding) {
    if (r.size() > n) throw std::invalid_argument("pad_front: target dimension too small");
    FqVector v(n - r.size(), 0);
    v.insert(v.end(), r.begin(), r.end());
    emb.push_back(std::move(v));
  }
  return make_part(f, n, std::move(emb));
}

PartialSpread binary_line_partition(unsigned n) {
  if (n < 2) throw std::invalid_argument("binary line partition needs n >= 2");
  const auto f2 = FiniteField::make(2);
  if (n % 2 == 0) return full_spread(f2, n, 2);
  PartialSpread out;
  out.q = 2;
  out.n = n;
  out.t = 2;
  if (n == 3) {
    Matrix all;
    for (unsigned i = 0; i < 3; ++i) all.push_back(unit(3, i));
    out.residual = make_part(f2, 3, std::move(all));
    return out;
  }
  auto top = lifted_partial_spread(f2, n, 2);
  out.parts = std::move(top.parts);
  auto rest = binary_line_partition(n - 2);
  for (const auto& p : rest.parts) out.parts.push_back(pad_front(f2, p, n));
  out.residual = pad_front(f2, *rest.residual, n);
  return out;
}

bool check_partition(const FiniteField& f, const PartialSpread& s) {
  const std::uint32_t q = f.q();
  const std::uint64_t total = checked_pow(q, s.n);
  if (total > kMaxExtensionSize) throw std::overflow_error("partition check exceeds the configured ceiling");
  std::vector<bool> hit(total, false);
  std::uint64_t covered = 0;
  auto mark = [&](const SpreadPart& p) {
    const std::size_t t = p.embedding.size();
    if (p.space.dim() != t) return false;
    for (const auto& r : p.embedding)
      if (r.size() != s.n || !p.space.contains(f, r)) return false;
    const std::uint64_t count = checked_pow(q, static_cast<unsigned>(t));
    FqVector c(t, 0);
    for (std::uint64_t idx = 1; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < t; ++i) {
        c[i] = static_cast<Scalar>(v % q);
        v /= q;
      }
      const auto img = row_times(f, c, p.embedding);
      std::uint64_t key = 0;
      for (auto x : img) key = key * q + x;
      if (key == 0 || hit[key]) return false;
      hit[key] = true;
      ++covered;
    }
    return true;
  };
  for (const auto& p : s.parts)
    if (!mark(p)) return false;
  if (s.residual && !mark(*s.residual)) return false;
  return covered == total - 1;
}

PerfectCodePartition hamming_partition(unsigned m) {
  if (m < 2) throw std::invalid_argument("Hamming partition needs m >= 2");
  if (m > kMaxHammingM) throw std::invalid_argument("Hamming partition limited to m <= " + std::to_string(kMaxHammingM));
  PerfectCodePartition out;
  out.m = m;
  out.length = (1u << m) - 1;
  const std::uint64_t words = std::uint64_t{1} << out.length;
  // Column j of the parity-check matrix is the m-vector with value j + 1,
  // which lists the nonzero columns in lexicographic order.
  for (std::uint64_t w = 0; w < words; ++w) {
    std::uint64_t syn = 0;
    for (unsigned j = 0; j < out.length; ++j)
      if ((w >> j) & 1) syn ^= j + 1;
    if (syn == 0) out.codewords.push_back(w);
  }
  for (auto c : out.codewords) {
    std::vector<std::uint64_t> ball{c};
    for (unsigned j = 0; j < out.length; ++j) ball.push_back(c ^ (std::uint64_t{1} << j));
    out.balls.push_back(std::move(ball));
  }
  return out;
}

FqVector mask_to_vector(std::uint64_t mask, unsigned len) {
  FqVector v(len, 0);
  for (unsigned i = 0; i < len; ++i) v[i] = static_cast<Scalar>((mask >> i) & 1);
  return v;
}

std::uint64_t vector_to_mask(const FqVector& v) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace recsets
