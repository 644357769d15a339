#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <torec/series.hpp>

using namespace torec;

namespace {

FieldScalar Q(long n, long d = 1) { return FieldScalar(Rational(n, d)); }

TruncatedSeries S(int min_exp, int trunc, const std::vector<long>& nums) {
  std::vector<FieldScalar> c;
  c.reserve(nums.size());
  for (long n : nums) c.push_back(Q(n));
  return TruncatedSeries::from_window(ScalarMode::rational, min_exp, trunc, std::move(c));
}

const TruncatedSeries kIdentity10 = TruncatedSeries::identity(ScalarMode::rational, 10);

}  // namespace

TEST_CASE("window semantics: below-window zero, beyond-window error") {
  TruncatedSeries a = S(-1, 3, {1, 2, 0, 4});
  CHECK(a.min_exp() == -1);
  CHECK(a.trunc_order() == 3);
  CHECK(a.at(-5) == Q(0));
  CHECK(a.at(-1) == Q(1));
  CHECK(a.at(1) == Q(0));
  CHECK(a.at(2) == Q(4));
  CHECK_THROWS_AS(a.at(3), precision_error);
  CHECK_THROWS_AS(a.at(100), precision_error);
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(S(0, 4, {1, 2}), usage_error);
  CHECK_THROWS_AS(TruncatedSeries::monomial(Q(1), 5, 5), usage_error);
  // Leading zeros are trimmed so min_exp is the valuation.
  TruncatedSeries t = S(0, 5, {0, 0, 1, 0, 0});
  CHECK(t == TruncatedSeries::monomial(Q(1), 2, 5));
  CHECK(t.valuation() == 2);
  // A window of zeros is the zero series.
  TruncatedSeries z = S(-2, 3, {0, 0, 0, 0, 0});
  CHECK(z.is_zero());
  CHECK(z.min_exp() == z.trunc_order());
  CHECK_THROWS_AS(z.valuation(), usage_error);
  CHECK(TruncatedSeries(ScalarMode::rational, 6).is_zero());
}

TEST_CASE("addition truncates to the weaker window") {
  TruncatedSeries a = S(0, 5, {1, 1, 1, 1, 1});
  TruncatedSeries b = S(1, 7, {2, 0, 0, 0, 0, 3});
  TruncatedSeries sum = a + b;
  CHECK(sum.trunc_order() == 5);
  CHECK(sum.min_exp() == 0);
  CHECK(sum.at(0) == Q(1));
  CHECK(sum.at(1) == Q(3));
  CHECK(sum.at(4) == Q(1));
  CHECK_THROWS_AS(sum.at(5), precision_error);
  // Cancellation re-trims the window floor.
  TruncatedSeries d = a - a;
  CHECK(d.is_zero());
  CHECK((a + (-a)).is_zero());
}

TEST_CASE("multiplication truncates by the partner valuation") {
  TruncatedSeries a = S(-2, 4, {1, 0, 3, 0, 0, 1});   // u^-2 + 3 + u^3
  TruncatedSeries b = S(1, 6, {1, -1, 0, 0, 2});      // u - u^2 + 2 u^5
  TruncatedSeries p = a * b;
  CHECK(p.trunc_order() == 4);  // min(4 + 1, 6 - 2)
  CHECK(p.min_exp() == -1);
  CHECK(p.at(-1) == Q(1));
  CHECK(p.at(0) == Q(-1));
  CHECK(p.at(1) == Q(3));
  CHECK(p.at(2) == Q(-3));
  CHECK(p.at(3) == Q(2));  // 2 u^5 * u^-2 = 2 u^3
  CHECK_THROWS_AS(p.at(4), precision_error);
  CHECK((a * TruncatedSeries(ScalarMode::rational, 9)).is_zero());
}

TEST_CASE("scaling and shifting") {
  TruncatedSeries a = S(1, 4, {1, 2, 3});
  CHECK(a.scaled(Q(2)).at(2) == Q(4));
  CHECK(a.scaled(Q(0)).is_zero());
  TruncatedSeries sh = a.shifted(-3);
  CHECK(sh.min_exp() == -2);
  CHECK(sh.trunc_order() == 1);
  CHECK(sh.at(-1) == Q(2));
  CHECK(residue(sh) == Q(2));
}

TEST_CASE("inverse spends window on the valuation twice") {
  TruncatedSeries a = S(1, 5, {1, 1, 0, 0});  // u + u^2
  TruncatedSeries i = inverse(a);
  CHECK(i.min_exp() == -1);
  CHECK(i.trunc_order() == 3);  // 5 - 2*1
  CHECK(i.at(-1) == Q(1));
  CHECK(i.at(0) == Q(-1));
  CHECK(i.at(1) == Q(1));
  CHECK(i.at(2) == Q(-1));
  CHECK_THROWS_AS(i.at(3), precision_error);
  CHECK_THROWS_AS(inverse(TruncatedSeries(ScalarMode::rational, 5)), singular_series_error);
  // Valuation-0 inverse keeps the window.
  TruncatedSeries u0 = S(0, 4, {2, 1, 0, 0});
  TruncatedSeries j = inverse(u0);
  CHECK(j.trunc_order() == 4);
  CHECK(j.at(0) == Q(1, 2));
  CHECK(j.at(1) == Q(-1, 4));
  CHECK(j.at(2) == Q(1, 8));
}

TEST_CASE("differentiation and antidifferentiation") {
  TruncatedSeries a = S(-2, 3, {1, 0, 5, 2, 0});  // u^-2 + 5 + 2u
  TruncatedSeries d = differentiate(a);
  CHECK(d.min_exp() == -3);
  CHECK(d.trunc_order() == 2);
  CHECK(d.at(-3) == Q(-2));
  CHECK(d.at(0) == Q(2));
  TruncatedSeries ad = antidifferentiate(d);
  CHECK(ad.trunc_order() == 3);
  // The constant of the original is not recoverable; everything else is.
  CHECK(ad.at(-2) == Q(1));
  CHECK(ad.at(0) == Q(0));
  CHECK(ad.at(1) == Q(2));
  CHECK_THROWS_AS(antidifferentiate(S(-1, 2, {3, 0, 0})), logarithmic_term_error);
  CHECK(residue(S(-1, 2, {3, 0, 0})) == Q(3));
  CHECK(residue(S(1, 4, {1, 1, 1})) == Q(0));
}

TEST_CASE("composition of a principal part matches the documented window") {
  // outer = u^-1, inner = u + u^2 known through order 5: the compose window
  // is [-1, 3) and reproduces inverse(inner).
  TruncatedSeries outer = TruncatedSeries::monomial(Q(1), -1, 10);
  TruncatedSeries inner = S(1, 5, {1, 1, 0, 0});
  TruncatedSeries c = compose(outer, inner);
  CHECK(c.min_exp() == -1);
  CHECK(c.trunc_order() == 3);  // min(10*1, 5 - (1+1)*1)
  CHECK(c.at(-1) == Q(1));
  CHECK(c.at(0) == Q(-1));
  CHECK(c.at(1) == Q(1));
  CHECK(c.at(2) == Q(-1));
  CHECK(c == inverse(inner));
}

TEST_CASE("composition window rules for tails and constants") {
  TruncatedSeries inner = S(1, 6, {1, 1, 0, 0, 0});  // val 1, trunc 6
  // Pure polynomial outer with a tail: t = min(To * vi, ti).
  TruncatedSeries outer = S(0, 4, {7, 0, 1, 0});  // 7 + u^2
  TruncatedSeries c = compose(outer, inner);
  CHECK(c.trunc_order() == 4);  // min(4*1, 6)
  CHECK(c.at(0) == Q(7));
  CHECK(c.at(2) == Q(1));
  CHECK(c.at(3) == Q(2));  // (u + u^2)^2 = u^2 + 2u^3 + ...
  // Constant-only outer is exact to its own window scaled by the valuation.
  TruncatedSeries k = compose(S(0, 3, {5, 0, 0}), inner);
  CHECK(k.trunc_order() == 3 * 1);
  CHECK(k.at(0) == Q(5));
  CHECK(k.at(1) == Q(0));
  // Valuation-2 inner stretches the window.
  TruncatedSeries inner2 = S(2, 8, {1, 0, 0, 0, 0, 0});  // u^2, trunc 8
  TruncatedSeries c2 = compose(S(0, 4, {0, 1, 0, 1}), inner2);  // u + u^3 at u^2
  CHECK(c2.trunc_order() == 8);  // min(4*2, 8)
  CHECK(c2.at(2) == Q(1));
  CHECK(c2.at(6) == Q(1));
  CHECK_THROWS_AS(compose(outer, S(0, 4, {1, 1, 0, 0})), composition_error);
  CHECK_THROWS_AS(compose(outer, TruncatedSeries(ScalarMode::rational, 5)), composition_error);
}

TEST_CASE("reversion inverts composition") {
  TruncatedSeries a = S(1, 6, {1, 1, 0, 0, 0});  // u + u^2
  TruncatedSeries b = reversion(a);
  CHECK(b.min_exp() == 1);
  CHECK(b.trunc_order() == 6);
  CHECK(b.at(1) == Q(1));
  CHECK(b.at(2) == Q(-1));
  CHECK(b.at(3) == Q(2));
  CHECK(b.at(4) == Q(-5));
  CHECK(b.at(5) == Q(14));
  CHECK(agree_on_overlap(compose(b, a), kIdentity10));
  CHECK(agree_on_overlap(compose(a, b), kIdentity10));
  CHECK_THROWS_AS(reversion(S(2, 6, {1, 0, 0, 0})), reversion_error);
  CHECK_THROWS_AS(reversion(S(0, 6, {1, 1, 0, 0, 0, 0})), reversion_error);
}

TEST_CASE("logarithm and square root of one-plus") {
  TruncatedSeries u = TruncatedSeries::identity(ScalarMode::rational, 6);
  TruncatedSeries lg = log1p_series(u);
  CHECK(lg.trunc_order() == 6);
  CHECK(lg.at(1) == Q(1));
  CHECK(lg.at(2) == Q(-1, 2));
  CHECK(lg.at(3) == Q(1, 3));
  CHECK(lg.at(4) == Q(-1, 4));
  CHECK(lg.at(5) == Q(1, 5));
  TruncatedSeries rt = sqrt1p_series(u);
  CHECK(rt.at(0) == Q(1));
  CHECK(rt.at(1) == Q(1, 2));
  CHECK(rt.at(2) == Q(-1, 8));
  CHECK(rt.at(3) == Q(1, 16));
  CHECK(rt.at(4) == Q(-5, 128));
  TruncatedSeries one = TruncatedSeries::monomial(Q(1), 0, 5);
  CHECK(agree_on_overlap(rt * rt, one + u));
  CHECK_THROWS_AS(log1p_series(S(0, 4, {1, 0, 0, 0})), domain_error);
  CHECK_THROWS_AS(sqrt1p_series(S(0, 4, {1, 0, 0, 0})), domain_error);
  CHECK(log1p_series(TruncatedSeries(ScalarMode::rational, 4)).is_zero());
}

TEST_CASE("integer powers") {
  TruncatedSeries a = S(1, 6, {1, 1, 0, 0, 0});
  CHECK(pow_int(a, 3) == a * a * a);
  CHECK(pow_int(a, 1) == a);
  CHECK(pow_int(a, 0).at(0) == Q(1));
  CHECK(agree_on_overlap(pow_int(a, -2) * a * a, pow_int(a, 0)));
}

TEST_CASE("mode mixing between series is rejected") {
  TruncatedSeries r = TruncatedSeries::identity(ScalarMode::rational, 5);
  TruncatedSeries s = TruncatedSeries::identity(ScalarMode::symbolic, 5);
  CHECK_THROWS_AS(r + s, usage_error);
  CHECK_THROWS_AS(r * s, usage_error);
  CHECK_THROWS_AS(compose(r, s), usage_error);
  CHECK_THROWS_AS(r.scaled(FieldScalar(RatFunc::var())), usage_error);
}

TEST_CASE("symbolic coefficients flow through series operations") {
  FieldScalar f = FieldScalar(RatFunc::var());
  TruncatedSeries u = TruncatedSeries::identity(ScalarMode::symbolic, 5);
  TruncatedSeries a = u.scaled(f) + (u * u).scaled(f.inv());
  // a = f u + u^2 / f; check inverse(a) * a == 1 on the overlap.
  TruncatedSeries one = TruncatedSeries::monomial(FieldScalar::one(ScalarMode::symbolic), 0, 5);
  CHECK(agree_on_overlap(inverse(a) * a, one));
  CHECK(inverse(a).at(-1) == f.inv());
}

namespace {

TruncatedSeries random_series(std::mt19937& rng, int min_lo, int min_hi, bool force_lead) {
  std::uniform_int_distribution<int> dmin(min_lo, min_hi), dlen(4, 8), dnum(-9, 9), dden(1, 4);
  const int lo = dmin(rng), len = dlen(rng);
  std::vector<FieldScalar> c;
  c.reserve(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i) c.push_back(FieldScalar(Rational(dnum(rng), dden(rng))));
  if (force_lead && c[0].is_zero()) c[0] = FieldScalar(Rational(1));
  return TruncatedSeries::from_window(ScalarMode::rational, lo, lo + len, std::move(c));
}

TruncatedSeries random_val1(std::mt19937& rng) {
  std::uniform_int_distribution<int> dlen(5, 8), dnum(-9, 9), dden(1, 4);
  const int len = dlen(rng);
  std::vector<FieldScalar> c;
  c.reserve(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i) c.push_back(FieldScalar(Rational(dnum(rng), dden(rng))));
  if (c[0].is_zero()) c[0] = FieldScalar(Rational(1));
  return TruncatedSeries::from_window(ScalarMode::rational, 1, 1 + len, std::move(c));
}

}  // namespace

TEST_CASE("randomized algebraic properties") {
  std::mt19937 rng(20260819u);
  int instances = 0;
  for (int iter = 0; iter < 40; ++iter) {
    TruncatedSeries a = random_series(rng, -3, 2, false);
    TruncatedSeries b = random_series(rng, -3, 2, false);
    TruncatedSeries c = random_series(rng, -3, 2, false);
    ++instances;
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
    REQUIRE(agree_on_overlap((a * b) * c, a * (b * c)));
    REQUIRE(agree_on_overlap(a * (b + c), a * b + a * c));
    REQUIRE((a - a).is_zero());
  }
  for (int iter = 0; iter < 40; ++iter) {
    TruncatedSeries a = random_series(rng, -3, 2, true);
    if (a.is_zero()) continue;
    ++instances;
    TruncatedSeries one = TruncatedSeries::monomial(Q(1), 0, 12);
    REQUIRE(agree_on_overlap(inverse(a) * a, one));
    REQUIRE(agree_on_overlap(inverse(inverse(a)), a));
    // Shift clear of exponent -1 so the antiderivative exists.
    REQUIRE(differentiate(antidifferentiate(a.shifted(4))) == a.shifted(4));
  }
  for (int iter = 0; iter < 40; ++iter) {
    TruncatedSeries s = random_val1(rng);
    ++instances;
    TruncatedSeries r = reversion(s);
    TruncatedSeries id = TruncatedSeries::identity(ScalarMode::rational, 12);
    REQUIRE(agree_on_overlap(compose(r, s), id));
    REQUIRE(agree_on_overlap(compose(s, r), id));
    TruncatedSeries g = random_val1(rng);
    TruncatedSeries h = random_series(rng, 0, 2, false);
    REQUIRE(agree_on_overlap(compose(compose(h, g), s), compose(h, compose(g, s))));
    // exp-free group law: sqrt and log interact with products correctly.
    TruncatedSeries sa = s.shifted(0);
    TruncatedSeries prod = sa + g + sa * g;  // (1+s)(1+g) - 1
    REQUIRE(agree_on_overlap(log1p_series(prod), log1p_series(sa) + log1p_series(g)));
    TruncatedSeries rt = sqrt1p_series(sa);
    TruncatedSeries one = TruncatedSeries::monomial(Q(1), 0, 12);
    REQUIRE(agree_on_overlap(rt * rt, one + sa));
  }
  REQUIRE(instances >= 100);
}
