#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <torec/recursion.hpp>

using namespace torec;

namespace {

FieldScalar fs(long n, long d = 1) { return FieldScalar(Rational(n, d)); }

using K = std::vector<int>;

}  // namespace

TEST_CASE("pair correlation expansion weights") {
  CHECK(bergman_coefficient(ScalarMode::rational, 0) == fs(1));
  CHECK(bergman_coefficient(ScalarMode::rational, 3) == fs(4));
  CHECK_THROWS_AS(bergman_coefficient(ScalarMode::rational, -1), domain_error);
}

TEST_CASE("kernel coefficients") {
  RecursionContext ctx(Framing::symbolic(), 14);
  const FieldScalar f = ctx.curve().f;
  const FieldScalar one = FieldScalar::one(ctx.mode());
  TruncatedSeries a1 = ctx.kernel_coefficient(1);
  CHECK(a1.valuation() == -1);
  CHECK(a1.at(-1) == (f * f) / (f + one).scaled_int(2));
  // Even index: s^m - u^m only cancels the leading term once, valuation m - 1.
  TruncatedSeries a2 = ctx.kernel_coefficient(2);
  CHECK(a2.valuation() == 1);
  CHECK(a2.at(1) == f * (one - f) / (f + one).scaled_int(3));
  CHECK(ctx.kernel_coefficient(3).valuation() == 1);
  CHECK_THROWS_AS(ctx.kernel_coefficient(0), domain_error);
}

TEST_CASE("correlator domain guards") {
  RecursionContext ctx(Framing::fixed(Rational(1)), 12);
  CHECK_THROWS_AS(ctx.correlator(0, 1), domain_error);
  CHECK_THROWS_AS(ctx.correlator(0, 2), domain_error);
  CHECK_THROWS_AS(ctx.correlator(-1, 3), domain_error);
  CHECK_THROWS_AS(ctx.correlator(1, 0), domain_error);
  CHECK_THROWS_AS(ctx.free_energy(1), domain_error);
  CHECK_NOTHROW(ctx.correlator(0, 3));
}

TEST_CASE("three-point genus-zero correlator") {
  RecursionContext ctx(Framing::symbolic(), 12);
  const FieldScalar f = ctx.curve().f;
  const FieldScalar one = FieldScalar::one(ctx.mode());
  const CorrelatorTensor& w = ctx.correlator(0, 3);
  REQUIRE(w.entries.size() == 1);
  CHECK(w.entries.at(K{1, 1, 1}) == -(f * f) / (f + one));

  RecursionContext fixed(Framing::fixed(Rational(1)), 12);
  CHECK(fixed.correlator(0, 3).entries.at(K{1, 1, 1}) == fs(-1, 2));
}

TEST_CASE("one-point genus-one correlator") {
  RecursionContext ctx(Framing::symbolic(), 14);
  const FieldScalar f = ctx.curve().f;
  const FieldScalar one = FieldScalar::one(ctx.mode());
  const CorrelatorTensor& w = ctx.correlator(1, 1);
  // -(f^2+f+1)/24 zeta_0 + f(f+1)/24 zeta_1 expanded into pole coefficients.
  REQUIRE(w.entries.size() == 3);
  CHECK(w.entries.at(K{1}) == (f + one) * FieldScalar::of_rational(Rational(1, 24), ctx.mode()));
  CHECK(w.entries.at(K{2}) == f * (f - one) / (f + one).scaled_int(12));
  CHECK(w.entries.at(K{3}) == -(f * f) / (f + one).scaled_int(8));

  // At f = 1 the middle coefficient vanishes and is not stored.
  RecursionContext fixed(Framing::fixed(Rational(1)), 14);
  const CorrelatorTensor& v = fixed.correlator(1, 1);
  REQUIRE(v.entries.size() == 2);
  CHECK(v.entries.at(K{1}) == fs(1, 12));
  CHECK(v.entries.at(K{3}) == fs(-1, 16));
}

TEST_CASE("decomposition of the base cases") {
  RecursionContext ctx(Framing::symbolic(), 14);
  const FieldScalar f = ctx.curve().f;
  const FieldScalar one = FieldScalar::one(ctx.mode());

  HodgeCoefficientTable t03 = ctx.decompose(ctx.correlator(0, 3));
  REQUIRE(t03.entries.size() == 1);
  CHECK(t03.entries.at(K{0, 0, 0}) == FieldScalar::one(ctx.mode()));

  HodgeCoefficientTable t11 = ctx.decompose(ctx.correlator(1, 1));
  REQUIRE(t11.entries.size() == 2);
  CHECK(t11.entries.at(K{0}) ==
        (f * f + f + one) * FieldScalar::of_rational(Rational(1, 24), ctx.mode()));
  CHECK(t11.entries.at(K{1}) ==
        -(f * (f + one)) * FieldScalar::of_rational(Rational(1, 24), ctx.mode()));
}

TEST_CASE("two-point genus-one table from string and dilaton equations") {
  // With lambda_1^2 = 0 in genus one, the Hodge factor is
  // -f(f+1) + (f^2+f+1) lambda_1, and the genus-one descendant integrals
  // <tau_2 tau_0> = <tau_1 tau_1> = <tau_1 tau_0 lambda_1> = 1/24 give the
  // full two-point table.
  RecursionContext ctx(Framing::symbolic(), 16);
  const FieldScalar f = ctx.curve().f;
  const FieldScalar one = FieldScalar::one(ctx.mode());
  const FieldScalar q24 = FieldScalar::of_rational(Rational(1, 24), ctx.mode());
  HodgeCoefficientTable t = ctx.decompose(ctx.correlator(1, 2));
  REQUIRE(t.entries.size() == 3);
  CHECK(t.entries.at(K{2, 0}) == -(f * (f + one)) * q24);
  CHECK(t.entries.at(K{1, 1}) == -(f * (f + one)) * q24);
  CHECK(t.entries.at(K{1, 0}) == (f * f + f + one) * q24);
}

TEST_CASE("one-point genus-two table spot values") {
  RecursionContext ctx(Framing::symbolic(), 20);
  const FieldScalar f = ctx.curve().f;
  const FieldScalar one = FieldScalar::one(ctx.mode());
  const FieldScalar ff1 = f * (f + one);
  HodgeCoefficientTable t = ctx.decompose(ctx.correlator(2, 1));
  // Top descendant pairs only with the lambda-free part (f(f+1))^2 <tau_4>,
  // and <tau_4> = 1/1152 in genus two.
  CHECK(t.entries.at(K{4}) == ff1 * ff1 * FieldScalar::of_rational(Rational(1, 1152), ctx.mode()));
  // The lambda-degree-3 part f(f+1)(lambda_1^3 - 3 lambda_1 lambda_2) pairs
  // with kappa_0 = 2: 2 f(f+1) (1/2880 - 3/5760) = -f(f+1)/2880.
  CHECK(t.entries.at(K{1}) == -ff1 * FieldScalar::of_rational(Rational(1, 2880), ctx.mode()));
  // A bare tau_0 integrates a pullback class over a fibered direction: zero.
  CHECK(t.entries.find(K{0}) == t.entries.end());
  // Normalized values are polynomial in the framing.
  for (const auto& [k, v] : t.entries) CHECK(v.rf().den().is_one());
}

TEST_CASE("free energies reproduce the constant-map values") {
  RecursionContext ctx(Framing::symbolic(), 20);
  CHECK(ctx.free_energy(2) == FieldScalar::of_rational(Rational(1, 5760), ctx.mode()));
  CHECK(ctx.free_energy(3) == FieldScalar::of_rational(Rational(-1, 1451520), ctx.mode()));

  RecursionContext f2(Framing::fixed(Rational(2)), 20);
  CHECK(f2.free_energy(2) == fs(1, 5760));
  CHECK(f2.free_energy(3) == fs(-1, 1451520));
}

TEST_CASE("pole orders meet the dimension bound exactly") {
  RecursionContext ctx(Framing::fixed(Rational(1)), 30);
  for (const auto [g, n] : {std::pair{0, 3}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    const CorrelatorTensor& w = ctx.correlator(g, n);
    CHECK(w.max_pole_exponent() + 1 == 6 * g - 4 + 2 * n);
    // Residue-freeness: no slot ever carries exponent 0.
    for (const auto& [k, v] : w.entries) CHECK(k.back() >= 1);
  }
}

TEST_CASE("free energy is independent of the potential base point") {
  RecursionContext ctx(Framing::fixed(Rational(3)), 20);
  const CorrelatorTensor& w = ctx.correlator(2, 1);
  const TruncatedSeries& phi = ctx.curve().Phi;
  const TruncatedSeries shifted_phi =
      phi + TruncatedSeries::monomial(FieldScalar::one(ctx.mode()), 0, phi.trunc_order());
  FieldScalar a = FieldScalar::zero(ctx.mode()), b = FieldScalar::zero(ctx.mode());
  for (const auto& [k, c] : w.entries) {
    a += c * phi.at(k[0]);
    b += c * shifted_phi.at(k[0]);
  }
  CHECK(a == b);
}

TEST_CASE("recomposition is a zero-remainder witness") {
  RecursionContext ctx(Framing::symbolic(), 18);
  for (const auto [g, n] : {std::pair{0, 3}, {1, 1}, {1, 2}, {2, 1}}) {
    const CorrelatorTensor& w = ctx.correlator(g, n);
    CHECK(ctx.recompose(ctx.decompose(w)) == w);
  }
}

TEST_CASE("extracted tables are invariant under framing reflection") {
  RecursionContext ctx(Framing::symbolic(), 20);
  const Poly reflect(std::vector<Rational>{Rational(-1), Rational(-1)});  // -1 - f
  for (const auto [g, n] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    HodgeCoefficientTable t = ctx.decompose(ctx.correlator(g, n));
    for (const auto& [k, v] : t.entries) CHECK(v.rf().substitute(reflect) == v.rf());
  }
}

TEST_CASE("memoization returns the identical tensor") {
  RecursionContext ctx(Framing::fixed(Rational(1)), 16);
  const CorrelatorTensor* first = &ctx.correlator(1, 2);
  const CorrelatorTensor* second = &ctx.correlator(1, 2);
  CHECK(first == second);
  // A fresh context reproduces the same exact tensor.
  RecursionContext again(Framing::fixed(Rational(1)), 16);
  CHECK(again.correlator(1, 2) == *first);
}

TEST_CASE("results are stable under a window increase") {
  RecursionContext a(Framing::symbolic(), 20);
  RecursionContext b(Framing::symbolic(), 22);
  CHECK(a.correlator(2, 1) == b.correlator(2, 1));
  CHECK(a.free_energy(2) == b.free_energy(2));
  CHECK(a.decompose(a.correlator(1, 2)) == b.decompose(b.correlator(1, 2)));
}

TEST_CASE("decomposition rejects tensors outside the basis span") {
  RecursionContext ctx(Framing::symbolic(), 14);
  const FieldScalar one = FieldScalar::one(ctx.mode());
  // Even top pole exponent: no basis element has it.
  CorrelatorTensor bad{0, 3, ctx.mode(), {}};
  bad.entries.emplace(K{2, 1, 1}, one);
  CHECK_THROWS_AS(ctx.decompose(bad), decomposition_error);
  // Odd top exponent that demands an index beyond the dimension cap.
  CorrelatorTensor deep{0, 3, ctx.mode(), {}};
  deep.entries.emplace(K{3, 1, 1}, one);
  CHECK_THROWS_AS(ctx.decompose(deep), decomposition_error);
}
