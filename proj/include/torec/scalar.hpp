#pragma once

// The coefficient field used by all series and tensors. A computation is
// either numeric (framing fixed to a generic rational) or symbolic
// (coefficients are rational functions of the framing variable f). The two
// modes never mix inside one expression; doing so is a usage error, not a
// silent promotion, so mode bugs surface at the first bad operation.

#include <string>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "ratfunc.hpp"
#include "rational.hpp"

namespace torec {

enum class ScalarMode { rational, symbolic };

inline const char* mode_name(ScalarMode m) {
  return m == ScalarMode::rational ? "rational" : "symbolic";
}

// A framing choice: the symbolic variable itself, or a fixed rational
// value. The values 0 and -1 are excluded up front: there the curve's
// parametrization degenerates and nothing downstream is meaningful.
class Framing {
 public:
  static Framing symbolic() { return Framing(ScalarMode::symbolic, Rational(0)); }

  static Framing fixed(const Rational& v) {
    if (v.is_zero() || v == Rational(-1))
      throw genericity_error("framing value " + v.str() + " is not generic (0 and -1 are excluded)");
    return Framing(ScalarMode::rational, v);
  }

  ScalarMode mode() const { return mode_; }

  const Rational& value() const {
    if (mode_ != ScalarMode::rational)
      throw usage_error("symbolic framing has no fixed value");
    return value_;
  }

  std::string str() const {
    return mode_ == ScalarMode::symbolic ? "symbolic" : value_.str();
  }

 private:
  Framing(ScalarMode m, Rational v) : mode_(m), value_(std::move(v)) {}
  ScalarMode mode_;
  Rational value_;
};

class FieldScalar {
 public:
  FieldScalar() : v_(Rational(0)) {}
  explicit FieldScalar(Rational r) : v_(std::move(r)) {}
  explicit FieldScalar(RatFunc r) : v_(std::move(r)) {}

  static FieldScalar zero(ScalarMode m) { return of_rational(Rational(0), m); }
  static FieldScalar one(ScalarMode m) { return of_rational(Rational(1), m); }

  // Lift a plain rational constant into the requested mode.
  static FieldScalar of_rational(const Rational& r, ScalarMode m) {
    if (m == ScalarMode::rational) return FieldScalar(r);
    return FieldScalar(RatFunc(r));
  }

  static FieldScalar of_int(long n, ScalarMode m) {
    return of_rational(Rational(n), m);
  }

  // The framing scalar itself: f symbolically, or its fixed value.
  static FieldScalar framing_value(const Framing& fr) {
    if (fr.mode() == ScalarMode::rational) return FieldScalar(fr.value());
    return FieldScalar(RatFunc::var());
  }

  ScalarMode mode() const {
    return std::holds_alternative<Rational>(v_) ? ScalarMode::rational
                                                : ScalarMode::symbolic;
  }

  bool is_zero() const {
    return mode() == ScalarMode::rational ? rat().is_zero() : rf().is_zero();
  }
  bool is_one() const {
    return mode() == ScalarMode::rational ? rat().is_one() : rf().is_constant() && rf().constant_value().is_one();
  }

  const Rational& rat() const { return std::get<Rational>(v_); }
  const RatFunc& rf() const { return std::get<RatFunc>(v_); }

  FieldScalar operator-() const {
    if (mode() == ScalarMode::rational) return FieldScalar(-rat());
    return FieldScalar(-rf());
  }

  friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
    check_modes(a, b, "+");
    if (a.mode() == ScalarMode::rational) return FieldScalar(a.rat() + b.rat());
    return FieldScalar(a.rf() + b.rf());
  }
  friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
    check_modes(a, b, "-");
    if (a.mode() == ScalarMode::rational) return FieldScalar(a.rat() - b.rat());
    return FieldScalar(a.rf() - b.rf());
  }
  friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    check_modes(a, b, "*");
    if (a.mode() == ScalarMode::rational) return FieldScalar(a.rat() * b.rat());
    return FieldScalar(a.rf() * b.rf());
  }
  friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) {
    check_modes(a, b, "/");
    if (b.is_zero()) throw arithmetic_error("division of field scalar by exact zero");
    if (a.mode() == ScalarMode::rational) return FieldScalar(a.rat() / b.rat());
    return FieldScalar(a.rf() / b.rf());
  }

  FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
  FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
  FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }
  FieldScalar& operator/=(const FieldScalar& o) { return *this = *this / o; }

  FieldScalar inv() const {
    if (is_zero()) throw arithmetic_error("inverse of exact zero field scalar");
    if (mode() == ScalarMode::rational) return FieldScalar(rat().inv());
    return FieldScalar(RatFunc(Rational(1)) / rf());
  }

  // Cheap scaling by a small integer, mode preserved.
  FieldScalar scaled_int(long n) const {
    if (mode() == ScalarMode::rational) return FieldScalar(rat() * Rational(n));
    return FieldScalar(rf() * RatFunc(Rational(n)));
  }

  static FieldScalar pow(const FieldScalar& b, long e) {
    if (b.mode() == ScalarMode::rational) return FieldScalar(Rational::pow(b.rat(), e));
    return FieldScalar(RatFunc::pow(b.rf(), e));
  }

  friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
    check_modes(a, b, "==");
    if (a.mode() == ScalarMode::rational) return a.rat() == b.rat();
    return a.rf() == b.rf();
  }
  friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

  std::string str(const std::string& var = "f") const {
    if (mode() == ScalarMode::rational) return rat().str();
    return rf().str(var);
  }

 private:
  static void check_modes(const FieldScalar& a, const FieldScalar& b, const char* op) {
    if (a.mode() != b.mode())
      throw usage_error(std::string("scalar mode mismatch in '") + op + "': " +
                        mode_name(a.mode()) + " vs " + mode_name(b.mode()));
  }

  std::variant<Rational, RatFunc> v_;
};

// Specialize a scalar at a fixed generic framing value. Rational scalars
// pass through unchanged; symbolic scalars are evaluated, and evaluation
// at a pole of the stored denominator is reported rather than masked.
inline Rational evaluate_at_framing(const FieldScalar& s, const Rational& f0) {
  if (f0.is_zero() || f0 == Rational(-1))
    throw genericity_error("framing value " + f0.str() + " is not generic (0 and -1 are excluded)");
  if (s.mode() == ScalarMode::rational) return s.rat();
  return s.rf().eval(f0);
}

}  // namespace torec
