#pragma once

// Dense univariate polynomials over the rationals. The variable is
// anonymous; a name is supplied only when rendering to text. Invariant:
// the coefficient vector carries no trailing zeros, so degree() is exact
// and the zero polynomial is the empty vector (degree -1).

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace torec {

class Poly {
 public:
  Poly() = default;
  explicit Poly(Rational c0) : c_{std::move(c0)} { trim(); }
  explicit Poly(std::vector<Rational> cs) : c_(std::move(cs)) { trim(); }

  static Poly var() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

  static Poly monomial(int k, Rational a) {
    if (k < 0) throw usage_error("polynomial monomial with negative exponent");
    if (a.is_zero()) return Poly();
    std::vector<Rational> c(static_cast<size_t>(k) + 1, Rational(0));
    c.back() = std::move(a);
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

  const Rational& coeff(int i) const {
    static const Rational kZero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(i)];
  }

  const Rational& leading() const {
    if (c_.empty()) throw usage_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rational eval(const Rational& x0) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x0 + c_[i];
    return acc;
  }

  // Multiplicity of the root 0; zero polynomial reports 0.
  int low_zero_count() const {
    int k = 0;
    while (k < static_cast<int>(c_.size()) && c_[static_cast<size_t>(k)].is_zero()) ++k;
    return c_.empty() ? 0 : k;
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(r));
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rational& s) const {
    if (s.is_zero()) return Poly();
    Poly r(*this);
    for (auto& c : r.c_) c *= s;
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
  }

  // Multiply by x^k.
  Poly shifted(int k) const {
    if (k < 0) throw usage_error("polynomial shift by negative exponent");
    if (is_zero() || k == 0) return *this;
    std::vector<Rational> r(c_.size() + static_cast<size_t>(k), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + static_cast<size_t>(k)] = c_[i];
    return Poly(std::move(r));
  }

  // Exact division by x^k; requires the low k coefficients to vanish.
  Poly div_x(int k) const {
    if (k < 0) throw usage_error("polynomial division by negative power of the variable");
    if (k == 0 || is_zero()) return *this;
    if (low_zero_count() < k) throw arithmetic_error("inexact division by power of the variable");
    return Poly(std::vector<Rational>(c_.begin() + k, c_.end()));
  }

  static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw arithmetic_error("polynomial division by zero");
    q = Poly();
    r = a;
    const Rational lead_inv = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const int k = r.degree() - b.degree();
      const Rational c = r.leading() * lead_inv;
      q += Poly::monomial(k, c);
      r -= (b * Poly::monomial(k, c));
    }
  }

  // Exact quotient; throws if the remainder is nonzero.
  static Poly div_exact(const Poly& a, const Poly& b) {
    Poly q, r;
    divrem(a, b, q, r);
    if (!r.is_zero()) throw arithmetic_error("inexact polynomial division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
  }

  // Monic gcd via the Euclidean algorithm; remainders are re-normalized to
  // monic form at each step to keep coefficient growth in check.
  static Poly gcd(Poly a, Poly b) {
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
      Poly q, r;
      divrem(a, b, q, r);
      a = std::move(b);
      b = r.monic();
    }
    return a;
  }

  Poly pow(unsigned e) const {
    Poly r{Rational(1)};
    Poly base = *this;
    while (e > 0) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  // Substitute another polynomial for the variable (Horner form).
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) {
      acc = acc * inner;
      acc += Poly(c_[i]);
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Terms in decreasing degree: "f^2 + f + 1", "-f^3 - 2f", "0".
  std::string str(const std::string& var = "f") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = coeff(k);
      if (c.is_zero()) continue;
      const bool first = out.empty();
      const bool neg = c.sign() < 0;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const Rational mag = c.abs();
      if (!(mag.is_one() && k >= 1)) out += mag.str();
      if (k >= 1) {
        out += var;
        if (k >= 2) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace torec
