#pragma once

// Arbitrary-precision rational scalars: a thin value wrapper over GMP's
// mpq_class that guarantees canonical form (coprime, positive denominator)
// at every construction point and fixes the project string format:
// "p/q", or bare "p" when the denominator is 1.

#include <gmpxx.h>

#include <string>
#include <utility>

#include "errors.hpp"

namespace torec {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: integers embed implicitly
  Rational(long num, long den) {
    if (den == 0) throw arithmetic_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}

  // Accepts "p" or "p/q" in base 10; anything else is a usage error.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
      throw usage_error("cannot parse rational: '" + s + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw arithmetic_error("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw arithmetic_error("division of rational by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational inv() const {
    if (is_zero()) throw arithmetic_error("inverse of zero rational");
    return Rational(mpq_class(1 / v_));
  }

  // e may be negative; 0^negative is an arithmetic error.
  static Rational pow(const Rational& b, long e) {
    if (e == 0) return Rational(1);
    if (b.is_zero()) {
      if (e < 0) throw arithmetic_error("zero rational to negative power");
      return Rational(0);
    }
    const Rational base = e > 0 ? b : b.inv();
    unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(-e);
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.v_.get_mpq_t()), k);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.v_.get_mpq_t()), k);
    return Rational(std::move(r));  // canonical since base is canonical
  }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

// n choose k as an exact integer-valued rational; k < 0 or k > n gives 0.
inline Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

inline Rational factorial(long n) {
  if (n < 0) throw domain_error("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace torec
