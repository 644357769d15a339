#pragma once

// Bernoulli numbers in the convention t/(e^t - 1) = sum_m B_m t^m / m!
// (so B_1 = -1/2), and the closed form for the constant-map free energies
// they determine. The memo table grows monotonically under a shared mutex;
// reads of already computed entries take the shared lock only.

#include <mutex>
#include <shared_mutex>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace torec {

namespace detail {
inline std::shared_mutex& bernoulli_mutex() {
  static std::shared_mutex m;
  return m;
}
inline std::vector<Rational>& bernoulli_table() {
  static std::vector<Rational> t{Rational(1)};  // B_0 = 1
  return t;
}
}  // namespace detail

// B_m exactly, memoized via sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
inline Rational bernoulli(int m) {
  if (m < 0) throw domain_error("Bernoulli number of negative index");
  {
    std::shared_lock lock(detail::bernoulli_mutex());
    const auto& table = detail::bernoulli_table();
    if (m < static_cast<int>(table.size())) return table[static_cast<size_t>(m)];
  }
  std::unique_lock lock(detail::bernoulli_mutex());
  auto& table = detail::bernoulli_table();
  for (int k = static_cast<int>(table.size()); k <= m; ++k) {
    Rational acc(0);
    for (int j = 0; j < k; ++j) acc += binomial(k + 1, j) * table[static_cast<size_t>(j)];
    table.push_back(-acc / Rational(k + 1));
  }
  return table[static_cast<size_t>(m)];
}

// Closed form for the genus-g free energy of the recursion on this curve,
// independent of the framing:
//   F_g = (-1)^g |B_{2g}| |B_{2g-2}| / ( 2 (2g) (2g-2) (2g-2)! ),  g >= 2.
inline Rational faber_pandharipande(int g) {
  if (g < 2) throw domain_error("closed-form free energy needs genus >= 2");
  const Rational b2g = bernoulli(2 * g).abs();
  const Rational b2g2 = bernoulli(2 * g - 2).abs();
  const Rational den = Rational(2) * Rational(2 * g) * Rational(2 * g - 2) *
                       factorial(2 * g - 2);
  const Rational mag = b2g * b2g2 / den;
  return g % 2 == 0 ? mag : -mag;
}

}  // namespace torec
