#pragma once

// Rational functions in one variable over Q, always held in canonical form:
// numerator and denominator coprime, denominator monic, zero is 0/1.
//
// Every denominator the symbolic engine produces lies in the multiplicative
// set { f^a (f+1)^b }. Canonicalization recognizes that shape structurally
// (trailing zero coefficients for f^a, a binomial row for (f+1)^b) and
// reduces by divisibility strips, which is complete for such denominators:
// any common factor must itself be a product of f and f+1. Arbitrary
// denominators fall back to a monic Euclidean gcd.

#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace torec {

class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly(Rational(1))) {}
  explicit RatFunc(Rational c) : num_(Poly(std::move(c))), den_(Poly(Rational(1))) {}
  explicit RatFunc(Poly n) : num_(std::move(n)), den_(Poly(Rational(1))) {}
  RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw arithmetic_error("rational function with zero denominator");
    reduce();
  }

  static RatFunc var() { return RatFunc(Poly::var()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rational constant_value() const {
    if (!is_constant()) throw usage_error("rational function is not constant");
    return num_.coeff(0);
  }

  RatFunc operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    RatFunc r;
    const auto lx = recognize_local(x.den_);
    const auto ly = recognize_local(y.den_);
    if (lx && ly) {
      const int a = std::max(lx->a, ly->a);
      const int b = std::max(lx->b, ly->b);
      r.num_ = scale_up(x.num_, a - lx->a, b - lx->b) +
               scale_up(y.num_, a - ly->a, b - ly->b);
      r.den_ = local_den(a, b);
    } else {
      r.num_ = x.num_ * y.den_ + y.num_ * x.den_;
      r.den_ = x.den_ * y.den_;
    }
    r.reduce();
    return r;
  }

  friend RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }

  friend RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return RatFunc();
    RatFunc r;
    r.num_ = x.num_ * y.num_;
    const auto lx = recognize_local(x.den_);
    const auto ly = recognize_local(y.den_);
    if (lx && ly) {
      r.den_ = local_den(lx->a + ly->a, lx->b + ly->b);
    } else {
      r.den_ = x.den_ * y.den_;
    }
    r.reduce();
    return r;
  }

  friend RatFunc operator/(const RatFunc& x, const RatFunc& y) {
    if (y.is_zero()) throw arithmetic_error("division of rational function by zero");
    if (x.is_zero()) return RatFunc();
    RatFunc r;
    r.num_ = x.num_ * y.den_;
    r.den_ = x.den_ * y.num_;
    r.reduce();
    return r;
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  static RatFunc pow(const RatFunc& x, long e) {
    if (e == 0) return RatFunc(Rational(1));
    if (x.is_zero()) {
      if (e < 0) throw arithmetic_error("zero rational function to negative power");
      return RatFunc();
    }
    RatFunc base = e > 0 ? x : RatFunc(Rational(1)) / x;
    unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(-e);
    RatFunc r{Rational(1)};
    while (k > 0) {
      if (k & 1ul) r *= base;
      base *= base;
      k >>= 1ul;
    }
    return r;
  }

  RatFunc inv() const {
    if (is_zero()) throw arithmetic_error("inverse of the zero rational function");
    return RatFunc(den_, num_);
  }

  Rational eval(const Rational& x0) const {
    const Rational d = den_.eval(x0);
    if (d.is_zero()) throw evaluation_error("rational function evaluated at a pole of its denominator");
    return num_.eval(x0) / d;
  }

  // Substitute a polynomial for the variable, e.g. the reflection -1-f.
  RatFunc substitute(const Poly& g) const {
    return RatFunc(num_.compose(g), den_.compose(g));
  }

  // Integer-normalized text form: both parts are scaled to integer
  // coefficients with coprime contents and the denominator kept positive.
  // Constants render as plain rationals; a trivial denominator is omitted.
  std::string str(const std::string& var = "f") const {
    if (is_constant()) return num_.coeff(0).str();
    mpz_class lcm(1);
    const auto fold_lcm = [&lcm](const Poly& p) {
      for (int i = 0; i <= p.degree(); ++i) {
        const mpz_class d = p.coeff(i).denominator();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
      }
    };
    fold_lcm(num_);
    fold_lcm(den_);
    Poly a = num_.scaled(Rational(lcm));
    Poly b = den_.scaled(Rational(lcm));
    mpz_class content(0);
    const auto fold_gcd = [&content](const Poly& p) {
      for (int i = 0; i <= p.degree(); ++i) {
        const mpz_class n = p.coeff(i).numerator();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
      }
    };
    fold_gcd(a);
    fold_gcd(b);
    if (content > 1) {
      const Rational inv_content = Rational(content).inv();
      a = a.scaled(inv_content);
      b = b.scaled(inv_content);
    }
    if (b.is_one()) return a.str(var);
    return wrapped(a.str(var), var, false) + "/" + wrapped(b.str(var), var, true);
  }

 private:
  struct LocalForm {
    int a, b;
  };

  // Parenthesize a printed part only where the flat form would misread:
  // several terms, a leading sign, or a denominator that is not a plain
  // power of the variable.
  static std::string wrapped(const std::string& s, const std::string& var, bool is_den) {
    bool need = s.find(' ') != std::string::npos || (!s.empty() && s[0] == '-');
    if (!need && is_den) {
      const bool bare_power =
          s == var || (s.rfind(var + "^", 0) == 0 &&
                       s.find_first_not_of("0123456789", var.size() + 1) == std::string::npos);
      need = !bare_power && !(s.find_first_not_of("0123456789") == std::string::npos);
    }
    return need ? "(" + s + ")" : s;
  }

  // Recognize a monic denominator of the shape f^a (f+1)^b.
  static std::optional<LocalForm> recognize_local(const Poly& den) {
    const int a = den.low_zero_count();
    const int b = den.degree() - a;
    Rational bin(1);
    for (int i = 0; i <= b; ++i) {
      if (den.coeff(a + i) != bin) return std::nullopt;
      bin *= Rational(static_cast<long>(b - i));
      bin /= Rational(static_cast<long>(i + 1));
    }
    return LocalForm{a, b};
  }

  // Build f^a (f+1)^b directly from the binomial row.
  static Poly local_den(int a, int b) {
    std::vector<Rational> c(static_cast<size_t>(a + b) + 1, Rational(0));
    Rational bin(1);
    for (int i = 0; i <= b; ++i) {
      c[static_cast<size_t>(a + i)] = bin;
      bin *= Rational(static_cast<long>(b - i));
      bin /= Rational(static_cast<long>(i + 1));
    }
    return Poly(std::move(c));
  }

  static Poly scale_up(const Poly& p, int da, int db) {
    Poly r = da > 0 ? p.shifted(da) : p;
    if (db > 0) r *= local_den(0, db);
    return r;
  }

  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly(Rational(1));
      return;
    }
    if (den_.is_constant()) {
      num_ = num_.scaled(den_.coeff(0).inv());
      den_ = Poly(Rational(1));
      return;
    }
    if (!den_.leading().is_one()) {
      const Rational inv_lead = den_.leading().inv();
      num_ = num_.scaled(inv_lead);
      den_ = den_.scaled(inv_lead);
    }
    if (const auto lf = recognize_local(den_)) {
      int a = lf->a;
      int b = lf->b;
      const int strip_a = std::min(a, num_.low_zero_count());
      if (strip_a > 0) {
        num_ = num_.div_x(strip_a);
        a -= strip_a;
      }
      const Poly f_plus_1(std::vector<Rational>{Rational(1), Rational(1)});
      while (b > 0 && num_.eval(Rational(-1)).is_zero()) {
        num_ = Poly::div_exact(num_, f_plus_1);
        --b;
      }
      den_ = local_den(a, b);
      if (den_.is_constant()) den_ = Poly(Rational(1));
      return;
    }
    const Poly g = Poly::gcd(num_, den_);
    if (g.degree() >= 1) {
      num_ = Poly::div_exact(num_, g);
      den_ = Poly::div_exact(den_, g);
    }
    if (den_.is_constant()) {
      num_ = num_.scaled(den_.coeff(0).inv());
      den_ = Poly(Rational(1));
    } else if (!den_.leading().is_one()) {
      const Rational inv_lead = den_.leading().inv();
      num_ = num_.scaled(inv_lead);
      den_ = den_.scaled(inv_lead);
    }
  }

  Poly num_, den_;
};

}  // namespace torec
