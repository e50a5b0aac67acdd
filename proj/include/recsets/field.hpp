#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace recsets {

/// An element of F_q, q <= 256. The integer value is the coefficient vector
/// of the element in the polynomial basis over F_p, constant term in the
/// least significant base-p digit.
using Scalar = std::uint8_t;

/// Polynomial over some F_q, constant term first.
using Poly = std::vector<std::uint32_t>;

inline constexpr std::uint32_t kMaxBaseField = 256;
inline constexpr std::uint64_t kMaxExtensionSize = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultTrialLimit = std::uint64_t{1} << 26;

/// base^exp, throwing std::overflow_error past 64 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

bool is_prime(std::uint64_t n);

/// (p, e) with q = p^e, or throws std::invalid_argument if q is not a prime power.
std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q);

/// Distinct prime factors by trial division. Throws std::domain_error when
/// a cofactor cannot be certified prime below `trial_limit`.
std::vector<std::uint64_t> prime_factors(std::uint64_t n, std::uint64_t trial_limit = kDefaultTrialLimit);

/// F_q with q = p^e, presented as F_p[x]/(modulus) with a primitive modulus.
/// Copies share the read-only tables.
class FiniteField {
 public:
  FiniteField(std::uint32_t p, unsigned e, Poly modulus);

  /// F_q with the deterministic default modulus (see find_primitive_poly).
  static FiniteField make(std::uint32_t q);

  std::uint32_t q() const { return tables_->q; }
  std::uint32_t p() const { return tables_->p; }
  unsigned e() const { return tables_->e; }
  const Poly& modulus() const { return tables_->modulus; }

  Scalar add(Scalar a, Scalar b) const { return tables_->add[index(a, b)]; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, tables_->neg[b]); }
  Scalar neg(Scalar a) const { return tables_->neg[a]; }
  Scalar mul(Scalar a, Scalar b) const {
    if (a == 0 || b == 0) return 0;
    return tables_->exp[(tables_->log[a] + tables_->log[b]) % (q() - 1)];
  }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t n) const;

  /// Discrete log to the primitive element; a must be nonzero.
  std::uint32_t log(Scalar a) const;
  Scalar exp(std::uint64_t i) const { return tables_->exp[i % (q() - 1)]; }
  Scalar primitive() const { return exp(1); }

  bool operator==(const FiniteField& o) const {
    return q() == o.q() && modulus() == o.modulus();
  }

 private:
  struct Tables {
    std::uint32_t p = 0;
    unsigned e = 0;
    std::uint32_t q = 0;
    Poly modulus;
    std::vector<Scalar> add;
    std::vector<Scalar> neg;
    std::vector<std::uint32_t> log;
    std::vector<Scalar> exp;
  };

  std::size_t index(Scalar a, Scalar b) const { return std::size_t{a} * q() + b; }

  std::shared_ptr<const Tables> tables_;
};

/// Lexicographically smallest monic primitive polynomial of degree n over the
/// given field. Polynomials are ordered by their base-q encoding
/// sum c_i q^i, so x^4+x+1 precedes x^4+x^3+1 over F_2.
Poly find_primitive_poly(const FiniteField& base, unsigned n,
                         std::uint64_t trial_limit = kDefaultTrialLimit);

/// Primitive-polynomial search over a prime field, usable before the field
/// itself exists.
Poly find_primitive_poly_prime(std::uint32_t p, unsigned n);

/// True iff the monic polynomial f of degree n has x of order q^n - 1 modulo f.
bool is_primitive(const FiniteField& base, const Poly& f, std::uint64_t trial_limit = kDefaultTrialLimit);

/// F_{q^n} over F_q. Elements are encoded as sum c_i q^i where c_i are the
/// F_q coordinates in the basis 1, alpha, ..., alpha^{n-1}; alpha is the
/// class of y modulo the primitive polynomial `modulus`.
class ExtField {
 public:
  using Element = std::uint32_t;

  ExtField(FiniteField base, unsigned n, Poly modulus);
  /// Uses find_primitive_poly(base, n).
  ExtField(FiniteField base, unsigned n);

  const FiniteField& base() const { return base_; }
  unsigned degree() const { return n_; }
  const Poly& modulus() const { return modulus_; }
  std::uint64_t size() const { return size_; }
  /// q^n - 1, the order of alpha.
  std::uint64_t order() const { return size_ - 1; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element alpha_pow(std::uint64_t i) const { return antilog_[i % order()]; }
  /// Discrete log base alpha; throws on zero.
  std::uint64_t log(Element a) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[(log_[a] + log_[b]) % order()];
  }
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  /// Scalar multiple by an element of the base field.
  Element scale(Scalar c, Element a) const;

  std::vector<Scalar> to_vector(Element a) const;
  Element from_vector(std::span<const Scalar> coords) const;

 private:
  FiniteField base_;
  unsigned n_;
  Poly modulus_;
  std::uint64_t size_;
  std::vector<Element> antilog_;
  std::vector<std::uint32_t> log_;
};

}  // namespace recsets
