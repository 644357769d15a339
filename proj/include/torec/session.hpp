#pragma once

// Order policy around the recursion engine. A session owns two contexts: the
// primary at order 6*g_max + 2*n_max + margin and a shadow at order +2; every
// result is computed in both and must agree exactly (truncation-stability
// gate). A precision failure rebuilds both contexts once at +4 and retries.

#include <memory>
#include <string>

#include <torec/errors.hpp>
#include <torec/recursion.hpp>
#include <torec/scalar.hpp>
#include <torec/tensor.hpp>

namespace torec {

struct ComputePolicy {
  int margin = 6;          // added to the 6g + 2n baseline
  bool stability = true;   // recompute at order +2 and compare exactly
};

inline int base_truncation_order(int g_max, int n_max, int margin) {
  return 6 * g_max + 2 * n_max + margin;
}

class CheckedSession {
 public:
  CheckedSession(const Framing& framing, int g_max, int n_max, ComputePolicy policy = {})
      : framing_(framing), policy_(policy) {
    if (g_max < 0 || n_max < 0) throw usage_error("session bounds must be non-negative");
    order_ = base_truncation_order(g_max, n_max, policy_.margin);
    rebuild();
  }

  const Framing& framing() const { return framing_; }
  int order() const { return order_; }
  RecursionContext& primary() { return *primary_; }

  FieldScalar free_energy(int g) {
    return checked<FieldScalar>("free energy", [g](RecursionContext& ctx) {
      return ctx.free_energy(g);
    });
  }

  CorrelatorTensor correlator(int g, int n) {
    return checked<CorrelatorTensor>("correlator", [g, n](RecursionContext& ctx) {
      return ctx.correlator(g, n);
    });
  }

  HodgeCoefficientTable hodge(int g, int n) {
    return checked<HodgeCoefficientTable>("coefficient table", [g, n](RecursionContext& ctx) {
      return ctx.decompose(ctx.correlator(g, n));
    });
  }

 private:
  void rebuild() {
    primary_ = std::make_unique<RecursionContext>(framing_, order_);
    shadow_ = policy_.stability
                  ? std::make_unique<RecursionContext>(framing_, order_ + 2)
                  : nullptr;
  }

  template <class T, class F>
  T checked(const char* what, F&& compute) {
    for (;;) {
      try {
        T value = compute(*primary_);
        if (shadow_) {
          T again = compute(*shadow_);
          if (!(value == again))
            throw internal_error(std::string(what) +
                                 " changed between truncation orders " + std::to_string(order_) +
                                 " and " + std::to_string(order_ + 2));
        }
        return value;
      } catch (const precision_error&) {
        if (retried_) throw;
        retried_ = true;
        order_ += 4;
        rebuild();
      }
    }
  }

  Framing framing_;
  ComputePolicy policy_;
  int order_ = 0;
  bool retried_ = false;
  std::unique_ptr<RecursionContext> primary_;
  std::unique_ptr<RecursionContext> shadow_;
};

}  // namespace torec
