#pragma once

// Truncated Laurent series in one local variable over FieldScalar.
//
// Window semantics: a series knows its coefficients exactly for exponents
// in [min_exp, trunc_order). Queries below min_exp return exact zero;
// queries at or beyond trunc_order throw precision_error. Leading zeros
// are always trimmed, so min_exp is the valuation of a nonzero series;
// the zero series is the empty window with min_exp == trunc_order.
//
// Every operation propagates the tightest truncation its inputs justify:
//   add/sub:        trunc = min(ta, tb)
//   mul:            trunc = min(ta + val(b), tb + val(a))
//   inverse:        trunc = ta - 2 val(a)
//   differentiate:  trunc = ta - 1
//   antidifferentiate: trunc = ta + 1
//   compose/reversion: see the respective operations
// No operation ever claims a coefficient beyond what those rules allow.

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace torec {

class TruncatedSeries {
 public:
  // The zero series known through exponents < trunc.
  TruncatedSeries(ScalarMode mode, int trunc)
      : mode_(mode), min_exp_(trunc), trunc_(trunc) {}

  // Dense window constructor; coeffs[i] is the coefficient of u^(min_exp+i)
  // and coeffs.size() must equal trunc - min_exp.
  static TruncatedSeries from_window(ScalarMode mode, int min_exp, int trunc,
                                     std::vector<FieldScalar> coeffs) {
    if (static_cast<int>(coeffs.size()) != trunc - min_exp)
      throw usage_error("series window size does not match its exponent range");
    TruncatedSeries s(mode, trunc);
    s.min_exp_ = min_exp;
    s.c_ = std::move(coeffs);
    for (const auto& c : s.c_)
      if (c.mode() != mode) throw usage_error("series coefficient mode mismatch");
    s.normalize();
    return s;
  }

  static TruncatedSeries monomial(FieldScalar a, int k, int trunc) {
    if (k >= trunc) throw usage_error("monomial exponent at or beyond truncation order");
    const ScalarMode m = a.mode();
    std::vector<FieldScalar> c(static_cast<size_t>(trunc - k), FieldScalar::zero(m));
    c[0] = std::move(a);
    return from_window(m, k, trunc, std::move(c));
  }

  // The identity series u.
  static TruncatedSeries identity(ScalarMode mode, int trunc) {
    return monomial(FieldScalar::one(mode), 1, trunc);
  }

  ScalarMode mode() const { return mode_; }
  int min_exp() const { return min_exp_; }
  int trunc_order() const { return trunc_; }
  bool is_zero() const { return c_.empty(); }

  int valuation() const {
    if (is_zero()) throw usage_error("valuation of a series that is zero through its window");
    return min_exp_;
  }

  const FieldScalar& at(int k) const {
    if (k >= trunc_)
      throw precision_error("series coefficient at exponent " + std::to_string(k) +
                            " requested, but known only below " + std::to_string(trunc_));
    if (k < min_exp_) return zero_scalar(mode_);
    return c_[static_cast<size_t>(k - min_exp_)];
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_modes(a, b);
    const int trunc = std::min(a.trunc_, b.trunc_);
    const int lo = std::min(std::min(a.min_exp_, b.min_exp_), trunc);
    TruncatedSeries r(a.mode_, trunc);
    r.min_exp_ = lo;
    r.c_.assign(static_cast<size_t>(trunc - lo), zero_scalar(a.mode_));
    for (int e = lo; e < trunc; ++e) {
      FieldScalar v = zero_scalar(a.mode_);
      if (e >= a.min_exp_ && e < a.trunc_) v += a.c_[static_cast<size_t>(e - a.min_exp_)];
      if (e >= b.min_exp_ && e < b.trunc_) v += b.c_[static_cast<size_t>(e - b.min_exp_)];
      r.c_[static_cast<size_t>(e - lo)] = std::move(v);
    }
    r.normalize();
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_modes(a, b);
    const int trunc = std::min(a.trunc_ + b.min_exp_, b.trunc_ + a.min_exp_);
    const int lo = std::min(a.min_exp_ + b.min_exp_, trunc);
    TruncatedSeries r(a.mode_, trunc);
    if (a.is_zero() || b.is_zero() || lo >= trunc) return r;
    r.min_exp_ = lo;
    r.c_.assign(static_cast<size_t>(trunc - lo), zero_scalar(a.mode_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      const int ei = a.min_exp_ + static_cast<int>(i);
      for (size_t j = 0; j < b.c_.size(); ++j) {
        const int e = ei + b.min_exp_ + static_cast<int>(j);
        if (e >= trunc) break;
        if (b.c_[j].is_zero()) continue;
        r.c_[static_cast<size_t>(e - lo)] += a.c_[i] * b.c_[j];
      }
    }
    r.normalize();
    return r;
  }

  TruncatedSeries scaled(const FieldScalar& s) const {
    if (s.mode() != mode_) throw usage_error("series scaling with a scalar of the wrong mode");
    TruncatedSeries r(mode_, trunc_);
    if (s.is_zero() || is_zero()) return r;
    r.min_exp_ = min_exp_;
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(c * s);
    r.normalize();
    return r;
  }

  // Multiply by u^k.
  TruncatedSeries shifted(int k) const {
    TruncatedSeries r = *this;
    r.min_exp_ += k;
    r.trunc_ += k;
    return r;
  }

 private:
  struct RawTag {};
  TruncatedSeries(RawTag, ScalarMode mode, int min_exp, int trunc, std::vector<FieldScalar> c)
      : mode_(mode), min_exp_(min_exp), trunc_(trunc), c_(std::move(c)) {
    normalize();
  }

 public:
  // Multiplicative inverse; the input must be nonzero through its window.
  friend TruncatedSeries inverse(const TruncatedSeries& a) {
    if (a.is_zero())
      throw singular_series_error("inverse of a series that is zero through its window");
    const int v = a.min_exp_;
    const size_t len = a.c_.size();
    std::vector<FieldScalar> b(len, zero_scalar(a.mode_));
    const FieldScalar lead_inv = a.c_[0].inv();
    b[0] = lead_inv;
    for (size_t k = 1; k < len; ++k) {
      FieldScalar acc = zero_scalar(a.mode_);
      for (size_t j = 0; j < k; ++j) {
        if (b[j].is_zero() || a.c_[k - j].is_zero()) continue;
        acc += b[j] * a.c_[k - j];
      }
      b[k] = -(acc * lead_inv);
    }
    return TruncatedSeries(RawTag{}, a.mode_, -v, a.trunc_ - 2 * v, std::move(b));
  }

  friend TruncatedSeries differentiate(const TruncatedSeries& a) {
    TruncatedSeries r(a.mode_, a.trunc_ - 1);
    if (a.is_zero()) return r;
    r.min_exp_ = a.min_exp_ - 1;
    r.c_.reserve(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      const long e = a.min_exp_ + static_cast<long>(i);
      r.c_.push_back(a.c_[i].scaled_int(e));
    }
    r.normalize();
    return r;
  }

  // Antiderivative with zero constant term; a nonzero u^{-1} coefficient
  // has no Laurent antiderivative and is reported as such.
  friend TruncatedSeries antidifferentiate(const TruncatedSeries& a) {
    if (-1 >= a.min_exp_ && -1 < a.trunc_ && !a.at(-1).is_zero())
      throw logarithmic_term_error("antiderivative of a series with a nonzero u^{-1} coefficient");
    TruncatedSeries r(a.mode_, a.trunc_ + 1);
    if (a.is_zero()) return r;
    const int lo = std::min(a.min_exp_ + 1, 0);
    r.min_exp_ = lo;
    r.c_.assign(static_cast<size_t>(r.trunc_ - lo), zero_scalar(a.mode_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      const int e = a.min_exp_ + static_cast<int>(i);
      if (e == -1) continue;  // known zero
      r.c_[static_cast<size_t>(e + 1 - lo)] =
          a.c_[i] / FieldScalar::of_int(e + 1, a.mode_);
    }
    r.normalize();
    return r;
  }

  friend const FieldScalar& residue(const TruncatedSeries& a) { return a.at(-1); }

  // Substitute inner (valuation >= 1 required) into outer. The result is
  // known through
  //   min( To * vi , ti - (jmax + 1) * vi )
  // where To/ti are the operand truncations, vi = val(inner) and jmax is
  // the depth of outer's principal part (0 if none; the second bound is
  // then just ti, and To * vi alone if outer is supported at exponent 0).
  friend TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    check_modes(outer, inner);
    if (inner.is_zero())
      throw composition_error("composition with an inner series that is zero through its window");
    const int vi = inner.valuation();
    if (vi < 1)
      throw composition_error("composition requires an inner series of valuation >= 1, got " +
                              std::to_string(vi));
    const int jmax = outer.min_exp_ < 0 ? -outer.min_exp_ : 0;
    bool known_tail = false;  // a known nonzero coefficient at exponent >= 1
    for (size_t i = 0; i < outer.c_.size(); ++i) {
      if (outer.min_exp_ + static_cast<int>(i) >= 1 && !outer.c_[i].is_zero()) {
        known_tail = true;
        break;
      }
    }
    int t = outer.trunc_ * vi;
    if (jmax > 0)
      t = std::min(t, inner.trunc_ - (jmax + 1) * vi);
    else if (known_tail)
      t = std::min(t, inner.trunc_);
    const int lo = std::min(outer.min_exp_ * vi, t);
    TruncatedSeries r(outer.mode_, t);
    if (outer.is_zero() || lo >= t) return r;
    r.min_exp_ = lo;
    r.c_.assign(static_cast<size_t>(t - lo), zero_scalar(outer.mode_));
    const auto accumulate = [&r, lo, t](const FieldScalar& w, const TruncatedSeries& p) {
      if (w.is_zero() || p.is_zero()) return;
      const int hi = std::min(t, p.trunc_order());
      for (int e = std::max(lo, p.min_exp()); e < hi; ++e) {
        const FieldScalar& pc = p.at(e);
        if (pc.is_zero()) continue;
        r.c_[static_cast<size_t>(e - lo)] += w * pc;
      }
    };
    // constant term
    if (0 < outer.trunc_ && 0 >= lo && 0 < t) r.c_[static_cast<size_t>(-lo)] += outer.at(0);
    // positive powers
    if (known_tail) {
      TruncatedSeries p = inner;
      for (int k = 1; k < outer.trunc_ && k * vi < t; ++k) {
        if (k > 1) p = p * inner;
        accumulate(outer.at(k), p);
      }
    }
    // principal part
    if (jmax > 0) {
      const TruncatedSeries ii = inverse(inner);
      TruncatedSeries q = ii;
      for (int j = 1; j <= jmax; ++j) {
        if (j > 1) q = q * ii;
        accumulate(outer.at(-j), q);
      }
    }
    r.normalize();
    return r;
  }

  // Compositional inverse of a series of valuation exactly 1, by
  // order-by-order substitution: with b = sum_k beta_k u^k,
  //   beta_k = ( [k == 1] - [u^k] sum_{j < k} beta_j a^j ) / a_1^k.
  // The result is known through the same truncation as the input.
  friend TruncatedSeries reversion(const TruncatedSeries& a) {
    if (a.is_zero() || a.valuation() != 1)
      throw reversion_error("compositional inverse requires valuation exactly 1");
    const int t = a.trunc_;
    const FieldScalar& a1 = a.c_[0];
    std::vector<FieldScalar> beta(static_cast<size_t>(t - 1), zero_scalar(a.mode_));
    std::vector<TruncatedSeries> pow;  // pow[j] = a^(j+1)
    pow.reserve(static_cast<size_t>(t - 1));
    pow.push_back(a);
    for (int j = 2; j <= t - 1; ++j) pow.push_back(pow.back() * a);
    FieldScalar a1k = FieldScalar::one(a.mode_);
    for (int k = 1; k <= t - 1; ++k) {
      a1k *= a1;
      FieldScalar acc = k == 1 ? FieldScalar::one(a.mode_) : zero_scalar(a.mode_);
      for (int j = 1; j < k; ++j) {
        const FieldScalar& bj = beta[static_cast<size_t>(j - 1)];
        if (bj.is_zero()) continue;
        const FieldScalar& pc = pow[static_cast<size_t>(j - 1)].at(k);
        if (pc.is_zero()) continue;
        acc -= bj * pc;
      }
      beta[static_cast<size_t>(k - 1)] = acc / a1k;
    }
    return TruncatedSeries(RawTag{}, a.mode_, 1, t, std::move(beta));
  }

  // log(1 + a) for val(a) >= 1, via antidifferentiate(a' / (1 + a));
  // the result is known through the same truncation as the input.
  friend TruncatedSeries log1p_series(const TruncatedSeries& a) {
    if (!a.is_zero() && a.valuation() < 1)
      throw domain_error("log(1 + a) requires a series of valuation >= 1");
    const TruncatedSeries one_plus = one_plus_of(a);
    return antidifferentiate(differentiate(a) * inverse(one_plus));
  }

  // The square root of 1 + a with constant term 1, for val(a) >= 1:
  //   y_k = ( a_k - sum_{0 < i < k} y_i y_{k-i} ) / 2.
  friend TruncatedSeries sqrt1p_series(const TruncatedSeries& a) {
    if (!a.is_zero() && a.valuation() < 1)
      throw domain_error("sqrt(1 + a) requires a series of valuation >= 1");
    const int t = a.trunc_;
    if (t <= 0) throw precision_error("sqrt(1 + a) needs a window reaching exponent 0");
    std::vector<FieldScalar> y(static_cast<size_t>(t), zero_scalar(a.mode_));
    y[0] = FieldScalar::one(a.mode_);
    const FieldScalar half = FieldScalar::of_rational(Rational(1, 2), a.mode_);
    for (int k = 1; k < t; ++k) {
      FieldScalar acc = a.at(k);
      for (int i = 1; i < k; ++i) {
        if (y[static_cast<size_t>(i)].is_zero() || y[static_cast<size_t>(k - i)].is_zero()) continue;
        acc -= y[static_cast<size_t>(i)] * y[static_cast<size_t>(k - i)];
      }
      y[static_cast<size_t>(k)] = acc * half;
    }
    return TruncatedSeries(RawTag{}, a.mode_, 0, t, std::move(y));
  }

  friend TruncatedSeries pow_int(const TruncatedSeries& a, long e) {
    if (e < 0) return pow_int(inverse(a), -e);
    if (e == 0) return monomial(FieldScalar::one(a.mode_), 0, a.trunc_);
    TruncatedSeries r = a;
    for (long i = 1; i < e; ++i) r = r * a;
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.mode_ != b.mode_ || a.min_exp_ != b.min_exp_ || a.trunc_ != b.trunc_ ||
        a.c_.size() != b.c_.size())
      return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  // Equal coefficients everywhere both windows are informative.
  friend bool agree_on_overlap(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int hi = std::min(a.trunc_, b.trunc_);
    for (int e = std::min(a.min_exp_, b.min_exp_); e < hi; ++e)
      if (a.at(e) != b.at(e)) return false;
    return true;
  }

  std::string str(const std::string& var = "u") const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      const int e = min_exp_ + static_cast<int>(i);
      out += "(" + c_[i].str() + ")";
      if (e != 0) out += "*" + var + "^" + std::to_string(e);
    }
    if (out.empty()) out = "0";
    out += " + O(" + var + "^" + std::to_string(trunc_) + ")";
    return out;
  }

 private:
  static const FieldScalar& zero_scalar(ScalarMode m) {
    static const FieldScalar zr = FieldScalar(Rational(0));
    static const FieldScalar zs = FieldScalar(RatFunc());
    return m == ScalarMode::rational ? zr : zs;
  }

  static void check_modes(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.mode_ != b.mode_)
      throw usage_error(std::string("series mode mismatch: ") + mode_name(a.mode_) +
                        " vs " + mode_name(b.mode_));
  }

  static TruncatedSeries one_plus_of(const TruncatedSeries& a) {
    return monomial(FieldScalar::one(a.mode_), 0, a.trunc_) + a;
  }

  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      min_exp_ = trunc_;
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      min_exp_ += static_cast<int>(lead);
    }
  }

  ScalarMode mode_;
  int min_exp_;
  int trunc_;
  std::vector<FieldScalar> c_;
};

}  // namespace torec
