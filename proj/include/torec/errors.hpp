#pragma once

// Exception taxonomy shared by every module. Each deliberate failure mode
// maps to a distinct type so callers (and the command line tool's exit-code
// contract) can react without matching message strings.

#include <stdexcept>
#include <string>

namespace torec {

// Root of the hierarchy; never thrown directly.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input, invalid arguments, or scalars of mixed modes combined
// in one expression.
struct usage_error : error {
  explicit usage_error(const std::string& msg) : error(msg) {}
};

// Division by an exactly zero scalar, zero denominators, 0^negative.
struct arithmetic_error : error {
  explicit arithmetic_error(const std::string& msg) : error(msg) {}
};

// Arguments outside the mathematical domain of an operation
// (free energy at genus < 2, unstable (g, n), log of valuation-0 input).
struct domain_error : error {
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Framing value at one of the excluded points 0 or -1 where the
// parametrized curve degenerates.
struct genericity_error : error {
  explicit genericity_error(const std::string& msg) : error(msg) {}
};

// Evaluation of a symbolic scalar at a pole of its denominator.
struct evaluation_error : error {
  explicit evaluation_error(const std::string& msg) : error(msg) {}
};

// Multiplicative inverse of a series that is zero through its whole window.
struct singular_series_error : error {
  explicit singular_series_error(const std::string& msg) : error(msg) {}
};

// Substitution of an inner series whose valuation makes the composite
// ill-defined term by term.
struct composition_error : error {
  explicit composition_error(const std::string& msg) : error(msg) {}
};

// Compositional inverse requested for a series of valuation != 1.
struct reversion_error : error {
  explicit reversion_error(const std::string& msg) : error(msg) {}
};

// Antiderivative requested for a series with a nonzero u^{-1} coefficient.
struct logarithmic_term_error : error {
  explicit logarithmic_term_error(const std::string& msg) : error(msg) {}
};

// A coefficient at or beyond a truncation window was required. Retryable
// at a higher order.
struct precision_error : error {
  explicit precision_error(const std::string& msg) : error(msg) {}
};

// The quadratic part of the branch behaviour vanished; no local involution.
struct degenerate_ramification_error : error {
  explicit degenerate_ramification_error(const std::string& msg) : error(msg) {}
};

// A correlator failed to decompose in the finite descending basis with
// zero remainder, or the resulting coefficients violate a structural
// guarantee. This is a falsification signal and is never downgraded.
struct decomposition_error : error {
  explicit decomposition_error(const std::string& msg) : error(msg) {}
};

// An internal consistency assertion failed (symmetry, pole bounds,
// truncation-stability). Indicates a bug, not bad input.
struct internal_error : error {
  explicit internal_error(const std::string& msg) : error(msg) {}
};

}  // namespace torec
