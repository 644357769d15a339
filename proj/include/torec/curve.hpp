#pragma once

// The framed mirror curve of C^3 in the local coordinate u = 1/t at its
// single ramification point, with the deck transformation, the logarithmic
// potential data, and the descending basis used to decompose correlators.
//
// Conventions (densities are against du; constants of integration are 0):
//   y(u)      = (u + f) / (f + 1)
//   G(u)      = f log1p(u/f) + log1p(-u)          (= log x(u) - log x(0))
//   phi_{-1}  = -log1p(u/f)                       (= -(log y - log y(0)))
//   omega     = (-phi_{-1}) * G'                  (valuation exactly 2)
//   Phi       = antiderivative of omega           (valuation 3)
//   s(u)      = the nontrivial local solution of G(s(u)) = G(u):
//               with G = c2 u^2 (1 + h) and r = u sqrt1p(h), s is the
//               reversion of r composed with -r, so s(u) = -u + O(u^2).
//   Delta     = (phi_{-1}(s) - phi_{-1}) * G'     (valuation exactly 2)

#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"
#include "series.hpp"

namespace torec {

// Polynomials in the global coordinate t over FieldScalar; used only for
// the finite basis family, so the operation set is minimal.
class TPoly {
 public:
  explicit TPoly(ScalarMode mode) : mode_(mode) {}

  static TPoly from_coeffs(ScalarMode mode, std::vector<FieldScalar> c) {
    TPoly p(mode);
    p.c_ = std::move(c);
    for (const auto& x : p.c_)
      if (x.mode() != mode) throw usage_error("t-polynomial coefficient mode mismatch");
    p.trim();
    return p;
  }

  ScalarMode mode() const { return mode_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const FieldScalar& coeff(int i) const {
    static const FieldScalar zr = FieldScalar(Rational(0));
    static const FieldScalar zs = FieldScalar(RatFunc());
    if (i < 0 || i >= static_cast<int>(c_.size()))
      return mode_ == ScalarMode::rational ? zr : zs;
    return c_[static_cast<size_t>(i)];
  }

  TPoly derivative() const {
    TPoly r(mode_);
    for (size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(c_[i].scaled_int(static_cast<long>(i)));
    r.trim();
    return r;
  }

  friend TPoly operator*(const TPoly& a, const TPoly& b) {
    if (a.mode_ != b.mode_) throw usage_error("t-polynomial mode mismatch");
    TPoly r(a.mode_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldScalar::zero(a.mode_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }

  friend TPoly operator-(const TPoly& a, const TPoly& b) {
    if (a.mode_ != b.mode_) throw usage_error("t-polynomial mode mismatch");
    TPoly r(a.mode_);
    const size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.assign(n, FieldScalar::zero(a.mode_));
    for (size_t i = 0; i < n; ++i) {
      FieldScalar v = FieldScalar::zero(a.mode_);
      if (i < a.c_.size()) v += a.c_[i];
      if (i < b.c_.size()) v -= b.c_[i];
      r.c_[i] = std::move(v);
    }
    r.trim();
    return r;
  }

  TPoly scaled(const FieldScalar& s) const {
    TPoly r(mode_);
    if (s.is_zero()) return r;
    for (const auto& x : c_) r.c_.push_back(x * s);
    r.trim();
    return r;
  }

  friend bool operator==(const TPoly& a, const TPoly& b) {
    if (a.mode_ != b.mode_ || a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  ScalarMode mode_;
  std::vector<FieldScalar> c_;
};

struct MirrorCurveC3 {
  Framing framing;
  ScalarMode mode;
  int order;          // base truncation of the u-window
  FieldScalar f;      // the framing scalar itself
  FieldScalar c2;     // G = c2 u^2 (1 + O(u))
  TruncatedSeries y, G, Gp, phi_m1, omega, Phi;
  TruncatedSeries r, s, sp, s_inv, Delta, inv_Delta;
};

// Assemble all curve data at the given truncation order.
inline MirrorCurveC3 build_curve(const Framing& framing, int order) {
  if (order < 8)
    throw usage_error("curve construction needs truncation order >= 8, got " + std::to_string(order));
  const ScalarMode mode = framing.mode();
  const FieldScalar f = FieldScalar::framing_value(framing);
  const FieldScalar one = FieldScalar::one(mode);

  const TruncatedSeries u_over_f = TruncatedSeries::monomial(f.inv(), 1, order);
  const TruncatedSeries minus_u = TruncatedSeries::monomial(-one, 1, order);

  TruncatedSeries y = TruncatedSeries::from_window(
      mode, 0, order, [&] {
        std::vector<FieldScalar> c(static_cast<size_t>(order), FieldScalar::zero(mode));
        const FieldScalar inv_fp1 = (f + one).inv();
        c[0] = f * inv_fp1;
        c[1] = inv_fp1;
        return c;
      }());

  const TruncatedSeries log_y_shift = log1p_series(u_over_f);  // log y - log y(0)
  TruncatedSeries G = log_y_shift.scaled(f) + log1p_series(minus_u);
  if (G.is_zero() || G.valuation() != 2)
    throw degenerate_ramification_error("branch potential does not vanish to order exactly 2");
  const FieldScalar c2 = G.at(2);

  TruncatedSeries Gp = differentiate(G);
  TruncatedSeries phi_m1 = -log_y_shift;
  if (phi_m1.is_zero() || phi_m1.valuation() != 1)
    throw internal_error("phi_{-1} must have valuation exactly 1");

  TruncatedSeries omega = (-phi_m1) * Gp;
  if (omega.is_zero() || omega.valuation() != 2)
    throw internal_error("the one-form density must have valuation exactly 2");
  TruncatedSeries Phi = antidifferentiate(omega);

  // Deck transformation via the square-root coordinate r = u sqrt1p(h).
  TruncatedSeries h = G.shifted(-2).scaled(c2.inv()) -
                      TruncatedSeries::monomial(one, 0, order - 2);
  TruncatedSeries r = sqrt1p_series(h).shifted(1);
  TruncatedSeries s = compose(reversion(r), -r);
  if (s.is_zero() || s.valuation() != 1 || s.at(1) != -one)
    throw degenerate_ramification_error("deck transformation does not start as -u");

  TruncatedSeries sp = differentiate(s);
  TruncatedSeries s_inv = inverse(s);

  TruncatedSeries Delta = (compose(phi_m1, s) - phi_m1) * Gp;
  if (Delta.is_zero() || Delta.valuation() != 2)
    throw internal_error("the recursion denominator must have valuation exactly 2");
  TruncatedSeries inv_Delta = inverse(Delta);

  return MirrorCurveC3{framing,
                       mode,
                       order,
                       f,
                       c2,
                       std::move(y),
                       std::move(G),
                       std::move(Gp),
                       std::move(phi_m1),
                       std::move(omega),
                       std::move(Phi),
                       std::move(r),
                       std::move(s),
                       std::move(sp),
                       std::move(s_inv),
                       std::move(Delta),
                       std::move(inv_Delta)};
}

// The family phi_b = T^b phi_0 with phi_0 = (t-1)/(f+1) and
// T = t(t-1)(ft+1)/(f+1) d/dt, together with the Laurent densities
// zeta_b = d(phi_b(1/u)): exponent -j-1 carries -j a_j for phi_b = sum a_j t^j.
// deg phi_b = 2b + 1, so zeta_b has pole order exactly 2b + 2 and no residue.
class PhiBasis {
 public:
  PhiBasis(const Framing& framing, int order)
      : mode_(framing.mode()),
        f_(FieldScalar::framing_value(framing)),
        order_(order),
        mult_(TPoly(mode_)) {
    const FieldScalar one = FieldScalar::one(mode_);
    const FieldScalar inv_fp1 = (f_ + one).inv();
    // t(t-1)(ft+1)/(f+1) = (f t^3 + (1-f) t^2 - t) / (f+1)
    mult_ = TPoly::from_coeffs(
        mode_, {FieldScalar::zero(mode_), -inv_fp1, (one - f_) * inv_fp1, f_ * inv_fp1});
    phi_.push_back(TPoly::from_coeffs(mode_, {-inv_fp1, inv_fp1}));
  }

  ScalarMode mode() const { return mode_; }

  TPoly apply_t_operator(const TPoly& p) const { return mult_ * p.derivative(); }

  const TPoly& phi(int b) {
    if (b < 0) throw domain_error("basis index must be >= 0");
    while (static_cast<int>(phi_.size()) <= b) phi_.push_back(apply_t_operator(phi_.back()));
    return phi_[static_cast<size_t>(b)];
  }

  const TruncatedSeries& zeta(int b) {
    while (static_cast<int>(zeta_.size()) <= b)
      zeta_.push_back(make_zeta(phi(static_cast<int>(zeta_.size()))));
    return zeta_[static_cast<size_t>(b)];
  }

 private:
  TruncatedSeries make_zeta(const TPoly& p) const {
    const int d = p.degree();
    if (d < 1) return TruncatedSeries(mode_, order_);
    std::vector<FieldScalar> c(static_cast<size_t>(order_ + d + 1), FieldScalar::zero(mode_));
    for (int j = 1; j <= d; ++j)
      c[static_cast<size_t>(d + 1 - j - 1)] = p.coeff(j).scaled_int(-j);
    return TruncatedSeries::from_window(mode_, -d - 1, order_, std::move(c));
  }

  ScalarMode mode_;
  FieldScalar f_;
  int order_;
  TPoly mult_;
  std::vector<TPoly> phi_;
  std::vector<TruncatedSeries> zeta_;
};

// Residue pairing of the potential against the basis:
//   index 0 pairs against d(phi_{-1}); index b >= 1 pairs against zeta_{b-1}.
// Exactly the index-1 pairing is nonzero, with value 1/(f(f+1)).
inline FieldScalar residue_pairing(const MirrorCurveC3& curve, PhiBasis& basis, int b) {
  if (b < 0) throw domain_error("pairing index must be >= 0");
  if (curve.order < 2 * b + 6)
    throw precision_error("pairing at index " + std::to_string(b) +
                          " needs truncation order >= " + std::to_string(2 * b + 6));
  const TruncatedSeries zeta = b == 0 ? differentiate(curve.phi_m1) : basis.zeta(b - 1);
  return residue(curve.phi_m1 * zeta);
}

}  // namespace torec
