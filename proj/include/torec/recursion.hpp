#pragma once

// The topological recursion engine on the framed mirror curve of C^3.
//
// All residues at the ramification point are taken in closed form through
// the family Q_r = s' s^r / Delta: for a bracket term u^alpha s(u)^beta
// with weight w, the residue against the recursion kernel contributes
//   w * (1/2) * ( Q_{beta+m}[-1-alpha] - Q_{beta}[-1-alpha-m] )
// to the coefficient of u_0^{-m-1} at the root slot, and both lookups sit
// below their series' valuation r-2 once m > 1 - alpha - beta, which
// bounds every loop structurally.
//
// Correlators are accumulated fully labeled, audited for symmetry in all
// slots (root included), canonicalized to sorted keys, and memoized.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "scalar.hpp"
#include "series.hpp"
#include "tensor.hpp"

namespace torec {

// The expansion weight of the fixed-leg pair correlation at pole exponent
// l + 2: B(u0, u) = sum_{l >= 0} (l+1) u^l u0^{-l-2} du du0.
inline FieldScalar bergman_coefficient(ScalarMode mode, int l) {
  if (l < 0) throw domain_error("pair correlation expansion index must be >= 0");
  return FieldScalar::of_int(l + 1, mode);
}

class RecursionContext {
 public:
  RecursionContext(const Framing& framing, int order)
      : curve_(build_curve(framing, order)),
        basis_(framing, order),
        mode_(framing.mode()),
        one_(FieldScalar::one(framing.mode())),
        half_(FieldScalar::of_rational(Rational(1, 2), framing.mode())) {}

  const MirrorCurveC3& curve() const { return curve_; }
  PhiBasis& basis() { return basis_; }
  ScalarMode mode() const { return mode_; }
  int order() const { return curve_.order; }

  // A_m = (1/2) (s^m - u^m) / Delta, the coefficient of u0^{-m-1} du0 in
  // the recursion kernel (up to the outer residue variable's measure).
  TruncatedSeries kernel_coefficient(int m) {
    if (m < 1) throw domain_error("kernel expansion index must be >= 1");
    return (pow_int(curve_.s, m) -
            TruncatedSeries::monomial(one_, m, curve_.order)) *
           curve_.inv_Delta * half_ser();
  }

  const CorrelatorTensor& correlator(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
      throw domain_error("correlator defined only for stable (g, n), got (" +
                         std::to_string(g) + ", " + std::to_string(n) + ")");
    const auto key = std::make_pair(g, n);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    CorrelatorTensor t = compute(g, n);
    return memo_.emplace(key, std::move(t)).first->second;
  }

  // F_g = ((-1)^g / (2 - 2g)) sum_k c[k] Phi[k] for g >= 2.
  FieldScalar free_energy(int g) {
    if (g < 2) throw domain_error("free energy defined for genus >= 2");
    const CorrelatorTensor& w = correlator(g, 1);
    FieldScalar acc = FieldScalar::zero(mode_);
    for (const auto& [k, c] : w.entries) acc += c * curve_.Phi.at(k[0]);
    const long sign = g % 2 == 0 ? 1 : -1;
    return acc * FieldScalar::of_rational(Rational(sign, 2 - 2 * g), mode_);
  }

  // Decompose a correlator in the descending basis (triangular elimination
  // slot by slot, strictly decreasing top exponent) and return the
  // normalized intersection-number table: value = (-1)^g (f(f+1))^{1-n} c.
  // A nonzero remainder, an unmatched top exponent, an exhausted basis, or
  // a non-polynomial normalized value all abort as decomposition errors.
  HodgeCoefficientTable decompose(const CorrelatorTensor& w) {
    const int b_cap = 3 * w.g - 3 + w.n;
    std::map<std::vector<int>, FieldScalar> work;
    for (const auto& [key, c] : w.entries) {
      std::vector<int> p = key;
      std::sort(p.begin(), p.end());
      do {
        work[p] = c;
      } while (std::next_permutation(p.begin(), p.end()));
    }
    auto labeled = decompose_labeled(std::move(work), w.n, b_cap);
    auto canon = audit_and_canonicalize(labeled, w.n, "basis decomposition of (" +
                                                          std::to_string(w.g) + ", " +
                                                          std::to_string(w.n) + ")");
    const FieldScalar pref = hodge_prefactor(w.g, w.n);
    HodgeCoefficientTable table{w.g, w.n, mode_, {}};
    for (auto& [bkey, c] : canon) {
      FieldScalar v = c * pref;
      if (v.is_zero()) continue;
      int bsum = 0;
      for (int b : bkey) bsum += b;
      if (bsum > b_cap)
        throw decomposition_error("basis weight " + std::to_string(bsum) +
                                  " exceeds the dimension bound " + std::to_string(b_cap));
      if (mode_ == ScalarMode::symbolic && !v.rf().den().is_one())
        throw decomposition_error("normalized coefficient is not polynomial in the framing: " +
                                  v.str());
      table.entries.emplace(bkey, std::move(v));
    }
    return table;
  }

  // Rebuild a correlator from its decomposition; used as the zero-remainder
  // witness: recompose(decompose(W)) must equal W exactly.
  CorrelatorTensor recompose(const HodgeCoefficientTable& t) {
    const FieldScalar pref_inv = hodge_prefactor(t.g, t.n).inv();
    std::map<std::vector<int>, FieldScalar> labeled;
    for (const auto& [bkey, v] : t.entries) {
      const FieldScalar raw = v * pref_inv;
      std::vector<int> p = bkey;
      std::sort(p.begin(), p.end());
      do {
        std::vector<std::pair<std::vector<int>, FieldScalar>> partial;
        partial.emplace_back(std::vector<int>{}, raw);
        for (const int b : p) {
          const TruncatedSeries& z = basis_.zeta(b);
          std::vector<std::pair<std::vector<int>, FieldScalar>> next;
          for (const auto& [kpref, c] : partial) {
            for (int k = 1; k <= 2 * b + 1; ++k) {
              const FieldScalar& zc = z.at(-k - 1);
              if (zc.is_zero()) continue;
              std::vector<int> kk = kpref;
              kk.push_back(k);
              next.emplace_back(std::move(kk), c * zc);
            }
          }
          partial = std::move(next);
        }
        for (auto& [kkey, c] : partial) {
          const auto it = labeled.find(kkey);
          if (it == labeled.end()) {
            labeled.emplace(std::move(kkey), std::move(c));
          } else {
            it->second += c;
            if (it->second.is_zero()) labeled.erase(it);
          }
        }
      } while (std::next_permutation(p.begin(), p.end()));
    }
    auto canon = audit_and_canonicalize(labeled, t.n, "recomposition");
    CorrelatorTensor w{t.g, t.n, mode_, {}};
    for (auto& [k, v] : canon) w.entries.emplace(k, std::move(v));
    return w;
  }

 private:
  using Key = std::vector<int>;
  using LabeledMap = std::map<Key, FieldScalar>;

  TruncatedSeries half_ser() const {
    return TruncatedSeries::monomial(half_, 0, curve_.order);
  }

  FieldScalar hodge_prefactor(int g, int n) const {
    const FieldScalar ff1 = curve_.f * (curve_.f + one_);
    FieldScalar pref = FieldScalar::pow(ff1, 1 - n);
    return g % 2 == 0 ? pref : -pref;
  }

  // Q_r = s' s^r / Delta, extended lazily in both directions from r = 0.
  // Valuation is exactly r - 2 with leading scalar (-1)^r f^2 / (2(f+1)).
  const TruncatedSeries& Q(int r) {
    if (const auto it = q_.find(r); it != q_.end()) return it->second;
    if (q_.empty()) q_.emplace(0, curve_.sp * curve_.inv_Delta);
    while (q_.rbegin()->first < r) {
      const int k = q_.rbegin()->first;
      q_.emplace(k + 1, q_.at(k) * curve_.s);
    }
    while (q_.begin()->first > r) {
      const int k = q_.begin()->first;
      q_.emplace(k - 1, q_.at(k) * curve_.s_inv);
    }
    const TruncatedSeries& qr = q_.at(r);
    if (qr.is_zero() || qr.valuation() != r - 2)
      throw internal_error("kernel family member " + std::to_string(r) +
                           " has wrong valuation");
    return qr;
  }

  // Window-checked coefficient lookup; below the valuation it is exact 0.
  const FieldScalar& Qc(int r, int j) { return Q(r).at(j); }

  // (1/2)(Q_{beta+m}[-1-alpha] - Q_{beta}[-1-alpha-m]), cached per
  // (alpha, beta, m) since many labeled contributions share it.
  const FieldScalar& bracket_residue(int alpha, int beta, int m) {
    const auto key = std::make_tuple(alpha, beta, m);
    if (const auto it = bracket_cache_.find(key); it != bracket_cache_.end())
      return it->second;
    FieldScalar v = (Qc(beta + m, -1 - alpha) - Qc(beta, -1 - alpha - m)) * half_;
    return bracket_cache_.emplace(key, std::move(v)).first->second;
  }

  static long distinct_permutations(const Key& sorted_key) {
    Rational cnt = factorial(static_cast<long>(sorted_key.size()));
    size_t i = 0;
    while (i < sorted_key.size()) {
      size_t j = i;
      while (j < sorted_key.size() && sorted_key[j] == sorted_key[i]) ++j;
      cnt /= factorial(static_cast<long>(j - i));
      i = j;
    }
    return cnt.numerator().get_si();
  }

  // Group a labeled map by sorted key, demanding that every distinct
  // relabeling is present with exactly equal value.
  std::map<Key, FieldScalar> audit_and_canonicalize(const LabeledMap& labeled, int n,
                                                    const std::string& what) const {
    std::map<Key, std::pair<FieldScalar, long>> groups;
    for (const auto& [key, v] : labeled) {
      if (static_cast<int>(key.size()) != n)
        throw internal_error(what + ": key arity mismatch");
      Key desc = key;
      std::sort(desc.begin(), desc.end(), std::greater<int>());
      const auto it = groups.find(desc);
      if (it == groups.end()) {
        groups.emplace(std::move(desc), std::make_pair(v, 1L));
      } else {
        if (it->second.first != v)
          throw internal_error(what + ": slot symmetry violated (unequal relabeled values)");
        ++it->second.second;
      }
    }
    std::map<Key, FieldScalar> canon;
    for (auto& [key, pv] : groups) {
      Key asc = key;
      std::sort(asc.begin(), asc.end());
      if (pv.second != distinct_permutations(asc))
        throw internal_error(what + ": slot symmetry violated (missing relabeling)");
      canon.emplace(key, std::move(pv.first));
    }
    return canon;
  }

  CorrelatorTensor compute(int g, int n) {
    const int spect = n - 1;
    LabeledMap acc;

    const auto add_contribution = [&acc](Key key, FieldScalar v) {
      if (v.is_zero()) return;
      const auto it = acc.find(key);
      if (it == acc.end()) {
        acc.emplace(std::move(key), std::move(v));
      } else {
        it->second += v;
        if (it->second.is_zero()) acc.erase(it);
      }
    };

    // One bracket term u^alpha s^beta with weight w and fixed spectator
    // exponents; m runs over the structurally nonzero window.
    const auto add_bracket = [&](int alpha, int beta, const FieldScalar& w, const Key& tail) {
      if (w.is_zero()) return;
      const int m_hi = 1 - alpha - beta;
      for (int m = 1; m <= m_hi; ++m) {
        const FieldScalar& base = bracket_residue(alpha, beta, m);
        if (base.is_zero()) continue;
        Key key;
        key.reserve(tail.size() + 1);
        key.push_back(m);
        key.insert(key.end(), tail.begin(), tail.end());
        add_contribution(std::move(key), base * w);
      }
    };

    // Genus-reduction term.
    if (g >= 1) {
      if (g == 1 && n == 1) {
        add_coincident_pair_term(add_contribution);
      } else {
        const CorrelatorTensor& w = correlator(g - 1, n + 1);
        for (const auto& [ckey, c] : w.entries) {
          Key p = ckey;
          std::sort(p.begin(), p.end());
          do {
            const Key tail(p.begin() + 2, p.end());
            add_bracket(-p[0] - 1, -p[1] - 1, c, tail);
          } while (std::next_permutation(p.begin(), p.end()));
        }
      }
    }

    // Splitting terms over ordered pairs of factors and spectator subsets.
    std::vector<int> in_I, in_J;
    for (int mask = 0; mask < (1 << spect); ++mask) {
      in_I.clear();
      in_J.clear();
      for (int i = 0; i < spect; ++i)
        ((mask >> i) & 1 ? in_I : in_J).push_back(i);
      const int n1 = static_cast<int>(in_I.size());
      const int n2 = static_cast<int>(in_J.size());
      for (int g1 = 0; g1 <= g; ++g1) {
        const int g2 = g - g1;
        if ((g1 == 0 && n1 == 0) || (g2 == 0 && n2 == 0)) continue;  // no W^0_1 factor
        const bool bergman_q = g1 == 0 && n1 == 1;
        const bool bergman_s = g2 == 0 && n2 == 1;
        if (bergman_q && bergman_s) {
          // Both factors are pair correlations; only m = 1, l = l' = 0 has
          // nonzero lookups (the window bound m <= 1 - l - l').
          Key tail(static_cast<size_t>(spect), 0);
          tail[static_cast<size_t>(in_I[0])] = 1;
          tail[static_cast<size_t>(in_J[0])] = 1;
          add_bracket(0, 0, one_, tail);
        } else if (bergman_q) {
          const CorrelatorTensor& w2 = correlator(g2, n2 + 1);
          for (const auto& [ckey, c2] : w2.entries) {
            Key p = ckey;
            std::sort(p.begin(), p.end());
            do {
              const int ks = p[0];
              Key tail(static_cast<size_t>(spect), 0);
              for (int j = 0; j < n2; ++j)
                tail[static_cast<size_t>(in_J[static_cast<size_t>(j)])] =
                    p[static_cast<size_t>(j + 1)];
              for (int l = 0; l <= ks + 1; ++l) {
                tail[static_cast<size_t>(in_I[0])] = l + 1;
                add_bracket(l, -ks - 1, c2.scaled_int(l + 1), tail);
              }
            } while (std::next_permutation(p.begin(), p.end()));
          }
        } else if (bergman_s) {
          const CorrelatorTensor& w1 = correlator(g1, n1 + 1);
          for (const auto& [ckey, c1] : w1.entries) {
            Key p = ckey;
            std::sort(p.begin(), p.end());
            do {
              const int kq = p[0];
              Key tail(static_cast<size_t>(spect), 0);
              for (int i = 0; i < n1; ++i)
                tail[static_cast<size_t>(in_I[static_cast<size_t>(i)])] =
                    p[static_cast<size_t>(i + 1)];
              for (int lp = 0; lp <= kq + 1; ++lp) {
                tail[static_cast<size_t>(in_J[0])] = lp + 1;
                add_bracket(-kq - 1, lp, c1.scaled_int(lp + 1), tail);
              }
            } while (std::next_permutation(p.begin(), p.end()));
          }
        } else {
          const CorrelatorTensor& w1 = correlator(g1, n1 + 1);
          const CorrelatorTensor& w2 = correlator(g2, n2 + 1);
          for (const auto& [ckey1, c1] : w1.entries) {
            for (const auto& [ckey2, c2] : w2.entries) {
              const FieldScalar c12 = c1 * c2;
              Key p1 = ckey1;
              std::sort(p1.begin(), p1.end());
              do {
                Key tail(static_cast<size_t>(spect), 0);
                for (int i = 0; i < n1; ++i)
                  tail[static_cast<size_t>(in_I[static_cast<size_t>(i)])] =
                      p1[static_cast<size_t>(i + 1)];
                Key p2 = ckey2;
                std::sort(p2.begin(), p2.end());
                do {
                  for (int j = 0; j < n2; ++j)
                    tail[static_cast<size_t>(in_J[static_cast<size_t>(j)])] =
                        p2[static_cast<size_t>(j + 1)];
                  add_bracket(-p1[0] - 1, -p2[0] - 1, c12, tail);
                } while (std::next_permutation(p2.begin(), p2.end()));
              } while (std::next_permutation(p1.begin(), p1.end()));
            }
          }
        }
      }
    }

    auto canon = audit_and_canonicalize(acc, n, "correlator (" + std::to_string(g) + ", " +
                                                    std::to_string(n) + ")");
    CorrelatorTensor t{g, n, mode_, {}};
    const int pole_cap = 6 * g - 4 + 2 * n;
    for (auto& [key, v] : canon) {
      if (key.front() + 1 > pole_cap)
        throw internal_error("correlator pole order exceeds the bound " +
                             std::to_string(pole_cap));
      if (key.back() < 1) throw internal_error("correlator key with exponent < 1");
      t.entries.emplace(key, std::move(v));
    }
    return t;
  }

  // The (1, 1) genus term pairs the two kernel arguments on the diagonal:
  // the factor is s'(u) / (u - s(u))^2, and only m <= 3 has a residue.
  template <typename Add>
  void add_coincident_pair_term(const Add& add_contribution) {
    const TruncatedSeries d =
        TruncatedSeries::identity(mode_, curve_.order) - curve_.s;
    const TruncatedSeries diag = curve_.sp * inverse(d * d);
    for (int m = 1; m <= 3; ++m) {
      FieldScalar c = residue(kernel_coefficient(m) * diag);
      add_contribution(Key{m}, std::move(c));
    }
  }

  MirrorCurveC3 curve_;
  PhiBasis basis_;
  ScalarMode mode_;
  FieldScalar one_, half_;
  std::map<int, TruncatedSeries> q_;
  std::map<std::tuple<int, int, int>, FieldScalar> bracket_cache_;
  std::map<std::pair<int, int>, CorrelatorTensor> memo_;

  // Triangular elimination of the leading slot: repeatedly take the top
  // exponent K (it must be odd, K = 2b + 1), divide the K-slice by the
  // leading density coefficient of zeta_b, subtract zeta_b tensor slice,
  // and recurse on the slice over the remaining slots.
  std::map<Key, FieldScalar> decompose_labeled(LabeledMap work, int slots, int b_cap) {
    std::map<Key, FieldScalar> out;
    if (work.empty()) return out;
    if (slots == 0) {
      out.emplace(Key{}, work.begin()->second);
      return out;
    }
    while (!work.empty()) {
      int top = 0;
      for (const auto& [k, v] : work) top = std::max(top, k[0]);
      if (top < 1 || top % 2 == 0)
        throw decomposition_error("top pole exponent " + std::to_string(top) +
                                  " is not matched by any basis element");
      const int b = (top - 1) / 2;
      if (b > b_cap)
        throw decomposition_error("basis exhausted: needed index " + std::to_string(b) +
                                  " beyond the cap " + std::to_string(b_cap));
      const TruncatedSeries& z = basis_.zeta(b);
      const FieldScalar lead_inv = z.at(-top - 1).inv();
      LabeledMap slice;
      for (const auto& [k, v] : work)
        if (k[0] == top) slice.emplace(Key(k.begin() + 1, k.end()), v * lead_inv);
      for (const auto& [rest, c] : slice) {
        for (int kp = 1; kp <= top; ++kp) {
          const FieldScalar& zc = z.at(-kp - 1);
          if (zc.is_zero()) continue;
          Key key;
          key.reserve(rest.size() + 1);
          key.push_back(kp);
          key.insert(key.end(), rest.begin(), rest.end());
          const FieldScalar delta = c * zc;
          auto it = work.find(key);
          if (it == work.end()) {
            work.emplace(std::move(key), -delta);
          } else {
            it->second -= delta;
            if (it->second.is_zero()) work.erase(it);
          }
        }
      }
      auto sub = decompose_labeled(std::move(slice), slots - 1, b_cap);
      for (auto& [bt, v] : sub) {
        Key key;
        key.reserve(bt.size() + 1);
        key.push_back(b);
        key.insert(key.end(), bt.begin(), bt.end());
        out.emplace(std::move(key), std::move(v));
      }
    }
    return out;
  }
};

}  // namespace torec
