#pragma once

// Canonical exact representations of the recursion's outputs.
//
// A correlator W^g_n = sum_k c[k] prod_i u_i^{-k_i-1} du_i with every
// k_i >= 1 is stored as a map from the multiset {k_1 >= k_2 >= ...} to the
// coefficient. The engine verifies full slot symmetry on labeled data
// before canonicalizing, so the stored value is the common coefficient of
// every relabeling. Values are always nonzero; absent keys mean exact 0.
//
// A Hodge coefficient table stores the normalized intersection numbers
// read off from the decomposition in the descending basis, keyed by the
// multiset of basis indices b_i >= 0.

#include <map>
#include <vector>

#include "scalar.hpp"

namespace torec {

struct CorrelatorTensor {
  int g = 0;
  int n = 0;
  ScalarMode mode = ScalarMode::rational;
  std::map<std::vector<int>, FieldScalar> entries;  // keys sorted descending

  bool empty() const { return entries.empty(); }

  int max_pole_exponent() const {
    int m = 0;
    for (const auto& [k, v] : entries)
      if (!k.empty() && k.front() > m) m = k.front();
    return m;
  }

  friend bool operator==(const CorrelatorTensor& a, const CorrelatorTensor& b) {
    return a.g == b.g && a.n == b.n && a.mode == b.mode && a.entries == b.entries;
  }
  friend bool operator!=(const CorrelatorTensor& a, const CorrelatorTensor& b) {
    return !(a == b);
  }
};

struct HodgeCoefficientTable {
  int g = 0;
  int n = 0;
  ScalarMode mode = ScalarMode::rational;
  std::map<std::vector<int>, FieldScalar> entries;  // keys sorted descending

  friend bool operator==(const HodgeCoefficientTable& a, const HodgeCoefficientTable& b) {
    return a.g == b.g && a.n == b.n && a.mode == b.mode && a.entries == b.entries;
  }
  friend bool operator!=(const HodgeCoefficientTable& a, const HodgeCoefficientTable& b) {
    return !(a == b);
  }
};

}  // namespace torec
