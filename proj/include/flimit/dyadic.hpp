#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "flimit/error.hpp"

namespace flimit {

using Int = mpz_class;

/// Exact rational p/q, always in lowest terms with q > 0.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den) : v_(num, den) {
    if (den == 0) fail(Errc::BadInput, "zero denominator");
    v_.canonicalize();
  }

  const Int num() const { return v_.get_num(); }
  const Int den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) fail(Errc::BadInput, "division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Multiply by 2^k (k may be negative); exact.
  Rational times_pow2(long k) const {
    mpq_class r;
    if (k >= 0)
      mpq_mul_2exp(r.get_mpq_t(), v_.get_mpq_t(), static_cast<unsigned long>(k));
    else
      mpq_div_2exp(r.get_mpq_t(), v_.get_mpq_t(), static_cast<unsigned long>(-k));
    return Rational(r);
  }

  std::string str() const;

private:
  explicit Rational(const mpq_class& q) : v_(q) {}  // assumed canonical
  mpq_class v_;
};

/// Exact dyadic rational num / 2^exp; canonical: exp == 0 or num odd.
class Dyadic {
public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long n) : num_(n), exp_(0) {}
  Dyadic(const Int& num, unsigned long exp) : num_(num), exp_(exp) { canonicalize(); }

  const Int& num() const { return num_; }
  unsigned long exp() const { return exp_; }

  bool is_zero() const { return num_ == 0; }

  Rational to_rational() const {
    Int den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
    return Rational(num_, den);
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned long e = std::max(a.exp_, b.exp_);
    return Dyadic(shifted(a.num_, e - a.exp_) + shifted(b.num_, e - b.exp_), e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    unsigned long e = std::max(a.exp_, b.exp_);
    return Dyadic(shifted(a.num_, e - a.exp_) - shifted(b.num_, e - b.exp_), e);
  }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }
  Dyadic operator-() const { return Dyadic(-num_, exp_); }

  /// Value times 2^k (k may be negative); exact, stays dyadic.
  Dyadic times_pow2(long k) const {
    if (k >= 0) {
      unsigned long up = static_cast<unsigned long>(k);
      if (exp_ >= up) return Dyadic(num_, exp_ - up);
      return Dyadic(shifted(num_, up - exp_), 0);
    }
    return Dyadic(num_, exp_ + static_cast<unsigned long>(-k));
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    unsigned long e = std::max(a.exp_, b.exp_);
    int c = cmp(shifted(a.num_, e - a.exp_), shifted(b.num_, e - b.exp_));
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const;

private:
  void canonicalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
    unsigned long drop = std::min(tz, exp_);
    if (drop > 0) {
      mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
      exp_ -= drop;
    }
  }
  static Int shifted(const Int& n, unsigned long k) {
    Int r;
    mpz_mul_2exp(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
  }

  Int num_;
  unsigned long exp_;
};

/// a/2^k literal helper.
inline Dyadic dy(long num, unsigned long exp = 0) { return Dyadic(Int(num), exp); }

/// Exact conversion; nullopt when q has an odd factor in its denominator.
std::optional<Dyadic> to_dyadic(const Rational& q);

/// Parses "p", "p/2^k", or "p/d" with d a positive power of two.
Dyadic parse_dyadic(const std::string& text);
/// Parses "p" or "p/q".
Rational parse_rational(const std::string& text);

}  // namespace flimit
