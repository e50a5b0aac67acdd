#include "recsets/field.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace recsets {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field size must be a prime power, got " + std::to_string(q));
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  unsigned e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1 || p > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("field size must be a prime power, got " + std::to_string(q));
  return {static_cast<std::uint32_t>(p), e};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n, std::uint64_t trial_limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (d > trial_limit)
      throw std::domain_error("factorization of " + std::to_string(n) + " exceeds the trial-division limit");
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// Coefficient arithmetic for polynomial routines, either a bare prime field
// (needed to bootstrap F_p itself) or a constructed FiniteField.
struct PrimeOps {
  std::uint32_t p;
  std::uint32_t size() const { return p; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % p; }
};

struct FieldOps {
  const FiniteField& f;
  std::uint32_t size() const { return f.q(); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return f.add(static_cast<Scalar>(a), static_cast<Scalar>(b));
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return f.sub(static_cast<Scalar>(a), static_cast<Scalar>(b));
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return f.mul(static_cast<Scalar>(a), static_cast<Scalar>(b));
  }
};

// a * b mod f, where f is monic of degree n and a, b have n coefficients.
template <class Ops>
Poly mulmod(const Ops& ops, const Poly& a, const Poly& b, const Poly& f) {
  const std::size_t n = f.size() - 1;
  Poly r(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) r[i + j] = ops.add(r[i + j], ops.mul(a[i], b[j]));
  }
  for (std::size_t i = 2 * n; i-- > n;) {
    const auto t = r[i];
    if (t == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) r[i - n + j] = ops.sub(r[i - n + j], ops.mul(t, f[j]));
  }
  r.resize(n);
  return r;
}

template <class Ops>
Poly x_pow_mod(const Ops& ops, std::uint64_t e, const Poly& f) {
  const std::size_t n = f.size() - 1;
  Poly result(n, 0);
  result[0] = 1;
  Poly base(n, 0);
  if (n == 1) {
    base[0] = ops.sub(0, f[0]);
  } else {
    base[1] = 1;
  }
  while (e > 0) {
    if (e & 1) result = mulmod(ops, result, base, f);
    base = mulmod(ops, base, base, f);
    e >>= 1;
  }
  return result;
}

template <class Ops>
bool primitive_with(const Ops& ops, const Poly& f, std::uint64_t trial_limit) {
  const std::size_t n = f.size() - 1;
  if (n == 0 || f.back() != 1 || f[0] == 0) return false;
  const std::uint64_t order = checked_pow(ops.size(), static_cast<unsigned>(n)) - 1;
  Poly one(n, 0);
  one[0] = 1;
  if (x_pow_mod(ops, order, f) != one) return false;
  for (auto r : prime_factors(order, trial_limit))
    if (x_pow_mod(ops, order / r, f) == one) return false;
  return true;
}

template <class Ops>
Poly search_primitive(const Ops& ops, unsigned n, std::uint64_t trial_limit) {
  if (n == 0) throw std::invalid_argument("primitive polynomial degree must be at least 1");
  const std::uint32_t q = ops.size();
  const std::uint64_t count = checked_pow(q, n);
  if (count > kMaxExtensionSize) throw std::domain_error("extension field exceeds the configured size ceiling");
  for (std::uint64_t c = 1; c < count; ++c) {
    if (c % q == 0) continue;
    Poly f(n + 1, 0);
    std::uint64_t v = c;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(v % q);
      v /= q;
    }
    f[n] = 1;
    if (primitive_with(ops, f, trial_limit)) return f;
  }
  throw std::domain_error("no primitive polynomial found");
}

}  // namespace

Poly find_primitive_poly_prime(std::uint32_t p, unsigned n) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  return search_primitive(PrimeOps{p}, n, kDefaultTrialLimit);
}

Poly find_primitive_poly(const FiniteField& base, unsigned n, std::uint64_t trial_limit) {
  return search_primitive(FieldOps{base}, n, trial_limit);
}

bool is_primitive(const FiniteField& base, const Poly& f, std::uint64_t trial_limit) {
  return primitive_with(FieldOps{base}, f, trial_limit);
}

FiniteField::FiniteField(std::uint32_t p, unsigned e, Poly modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic is not prime: " + std::to_string(p));
  if (e == 0) throw std::invalid_argument("field exponent must be at least 1");
  const std::uint64_t q64 = checked_pow(p, e);
  if (q64 > kMaxBaseField) throw std::invalid_argument("base field size " + std::to_string(q64) + " exceeds 256");
  if (modulus.size() != e + 1 || modulus.back() != 1)
    throw std::invalid_argument("field modulus must be monic of degree e");
  for (auto c : modulus)
    if (c >= p) throw std::invalid_argument("field modulus coefficient out of range");

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->e = e;
  t->q = static_cast<std::uint32_t>(q64);
  t->modulus = std::move(modulus);
  const std::uint32_t q = t->q;

  auto digits = [&](std::uint32_t v) {
    std::vector<std::uint32_t> d(e);
    for (unsigned i = 0; i < e; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t v = 0;
    for (unsigned i = e; i-- > 0;) v = v * p + d[i];
    return v;
  };

  t->add.resize(std::size_t{q} * q);
  t->neg.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    const auto da = digits(a);
    for (std::uint32_t b = 0; b < q; ++b) {
      const auto db = digits(b);
      std::vector<std::uint32_t> s(e);
      for (unsigned i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      t->add[std::size_t{a} * q + b] = static_cast<Scalar>(encode(s));
    }
    std::vector<std::uint32_t> n(e);
    for (unsigned i = 0; i < e; ++i) n[i] = (p - da[i]) % p;
    t->neg[a] = static_cast<Scalar>(encode(n));
  }

  // Powers of x: shift up one degree, then fold the top coefficient back
  // using x^e = -(m_0 + ... + m_{e-1} x^{e-1}).
  t->exp.assign(q - 1, 0);
  t->log.assign(q, 0);
  std::vector<std::uint32_t> cur(e, 0);
  cur[0] = 1;
  std::vector<bool> seen(q, false);
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    const auto v = encode(cur);
    if (seen[v]) throw std::invalid_argument("field modulus is not primitive");
    seen[v] = true;
    t->exp[i] = static_cast<Scalar>(v);
    t->log[v] = i;
    std::vector<std::uint32_t> nxt(e, 0);
    const std::uint32_t top = cur[e - 1];
    for (unsigned j = e; j-- > 1;) nxt[j] = cur[j - 1];
    for (unsigned j = 0; j < e; ++j) nxt[j] = (nxt[j] + (p - (top * t->modulus[j]) % p)) % p;
    cur = std::move(nxt);
  }
  if (encode(cur) != 1) throw std::invalid_argument("field modulus is not primitive");
  tables_ = std::move(t);
}

FiniteField FiniteField::make(std::uint32_t q) {
  auto [p, e] = prime_power(q);
  if (q > kMaxBaseField) throw std::invalid_argument("base field size exceeds 256");
  return FiniteField(p, e, find_primitive_poly_prime(p, e));
}

Scalar FiniteField::inv(Scalar a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t n = q() - 1;
  return tables_->exp[(n - tables_->log[a]) % n];
}

Scalar FiniteField::pow(Scalar a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  return exp(static_cast<std::uint64_t>(tables_->log[a]) * (n % (q() - 1)));
}

std::uint32_t FiniteField::log(Scalar a) const {
  if (a == 0) throw std::domain_error("logarithm of zero");
  return tables_->log[a];
}

ExtField::ExtField(FiniteField base, unsigned n) : ExtField(base, n, find_primitive_poly(base, n)) {}

ExtField::ExtField(FiniteField base, unsigned n, Poly modulus)
    : base_(std::move(base)), n_(n), modulus_(std::move(modulus)) {
  if (n_ == 0) throw std::invalid_argument("extension degree must be at least 1");
  if (modulus_.size() != n_ + 1 || modulus_.back() != 1)
    throw std::invalid_argument("extension modulus must be monic of degree n");
  const std::uint32_t q = base_.q();
  size_ = checked_pow(q, n_);
  if (size_ > kMaxExtensionSize) throw std::domain_error("extension field exceeds the configured size ceiling");

  antilog_.assign(size_ - 1, 0);
  log_.assign(size_, 0);
  std::vector<Scalar> cur(n_, 0);
  cur[0] = 1;
  std::vector<bool> seen(size_, false);
  for (std::uint64_t i = 0; i + 1 < size_; ++i) {
    const Element v = from_vector(cur);
    if (seen[v]) throw std::invalid_argument("extension modulus is not primitive");
    seen[v] = true;
    antilog_[i] = v;
    log_[v] = static_cast<std::uint32_t>(i);
    const Scalar top = cur[n_ - 1];
    for (unsigned j = n_; j-- > 1;) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (unsigned j = 0; j < n_; ++j)
      cur[j] = base_.sub(cur[j], base_.mul(top, static_cast<Scalar>(modulus_[j])));
  }
  if (from_vector(cur) != 1) throw std::invalid_argument("extension modulus is not primitive");
}

std::uint64_t ExtField::log(Element a) const {
  if (a == 0 || a >= size_) throw std::domain_error("logarithm of zero or foreign element");
  return log_[a];
}

ExtField::Element ExtField::add(Element a, Element b) const {
  const std::uint32_t q = base_.q();
  if (q == 2) return a ^ b;
  Element r = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += place * base_.add(static_cast<Scalar>(a % q), static_cast<Scalar>(b % q));
    a /= q;
    b /= q;
    place *= q;
  }
  return r;
}

ExtField::Element ExtField::sub(Element a, Element b) const {
  const std::uint32_t q = base_.q();
  if (q == 2) return a ^ b;
  Element r = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += place * base_.sub(static_cast<Scalar>(a % q), static_cast<Scalar>(b % q));
    a /= q;
    b /= q;
    place *= q;
  }
  return r;
}

ExtField::Element ExtField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return antilog_[(order() - log_[a]) % order()];
}

ExtField::Element ExtField::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return antilog_[(static_cast<unsigned __int128>(log_[a]) * e) % order()];
}

ExtField::Element ExtField::scale(Scalar c, Element a) const {
  // The constant polynomial c is encoded as the integer c.
  return mul(static_cast<Element>(c), a);
}

std::vector<Scalar> ExtField::to_vector(Element a) const {
  const std::uint32_t q = base_.q();
  std::vector<Scalar> v(n_);
  for (unsigned i = 0; i < n_; ++i) {
    v[i] = static_cast<Scalar>(a % q);
    a /= q;
  }
  return v;
}

ExtField::Element ExtField::from_vector(std::span<const Scalar> coords) const {
  if (coords.size() != n_) throw std::invalid_argument("coordinate vector length does not match extension degree");
  const std::uint32_t q = base_.q();
  Element v = 0;
  for (unsigned i = n_; i-- > 0;) v = v * q + coords[i];
  return v;
}

}  // namespace recsets
