#pragma once

// Identity test battery over the engine's observables: the constant-map
// free-energy formula, framing independence, the residue route through the
// descending basis, the t-operator form of that basis, and the half-integer
// framing curve. Every check is exact; a failing check carries a witness.

#include <algorithm>
#include <string>
#include <vector>

#include <torec/bernoulli.hpp>
#include <torec/curve.hpp>
#include <torec/errors.hpp>
#include <torec/recursion.hpp>
#include <torec/serialize.hpp>
#include <torec/session.hpp>

namespace torec {

struct CheckResult {
  std::string id;
  std::string anchor;   // the mathematical identity being checked
  bool pass = false;
  std::string witness;  // non-empty exactly when the check fails
};

struct VerificationReport {
  std::string suite;
  std::string framing;
  int order = 0;
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }
};

namespace detail {

inline void add_check(VerificationReport& rep, std::string id, std::string anchor, bool pass,
                      std::string witness) {
  rep.checks.push_back(
      {std::move(id), std::move(anchor), pass, pass ? std::string() : std::move(witness)});
}

// f(f+1) in the session's scalar mode.
inline FieldScalar framing_product(ScalarMode mode) {
  if (mode == ScalarMode::rational)
    throw usage_error("framing product needs the framing value; use the overload");
  return FieldScalar(RatFunc(Poly(std::vector<Rational>{Rational(0), Rational(1), Rational(1)})));
}

inline FieldScalar framing_product(const Framing& fr) {
  if (fr.mode() == ScalarMode::symbolic) return framing_product(ScalarMode::symbolic);
  const Rational f0 = fr.value();
  return FieldScalar(f0 * (f0 + Rational(1)));
}

inline void append_fp_checks(VerificationReport& rep, CheckedSession& session, int g_max) {
  const ScalarMode mode = session.framing().mode();
  for (int g = 2; g <= g_max; ++g) {
    const FieldScalar value = session.free_energy(g);
    const FieldScalar expect = FieldScalar::of_rational(faber_pandharipande(g), mode);
    add_check(rep, "fp.g" + std::to_string(g),
              "F_g == (-1)^g |B_{2g}| |B_{2g-2}| / (2 (2g) (2g-2) (2g-2)!)",
              value == expect, "F_" + std::to_string(g) + " = " + value.str() +
                                   ", expected " + expect.str());
  }
  rep.order = std::max(rep.order, session.order());
}

inline void append_framing_independence_checks(VerificationReport& rep,
                                               const Framing& suite_framing, int g_max,
                                               int margin) {
  std::vector<Rational> framings = {Rational(1), Rational(2), Rational(3), Rational(5),
                                    Rational(-1, 2)};
  if (suite_framing.mode() == ScalarMode::rational &&
      std::find(framings.begin(), framings.end(), suite_framing.value()) == framings.end())
    framings.push_back(suite_framing.value());

  const int top = std::min(g_max, 3);
  std::vector<std::vector<Rational>> values(framings.size());
  for (std::size_t i = 0; i < framings.size(); ++i) {
    CheckedSession s(Framing::fixed(framings[i]), top, 1, ComputePolicy{margin, true});
    for (int g = 2; g <= top; ++g) values[i].push_back(s.free_energy(g).rat());
    rep.order = std::max(rep.order, s.order());
  }

  CheckedSession* symbolic_session = nullptr;
  std::unique_ptr<CheckedSession> owned;
  if (suite_framing.mode() == ScalarMode::symbolic) {
    owned = std::make_unique<CheckedSession>(Framing::symbolic(), top, 1,
                                             ComputePolicy{margin, true});
    symbolic_session = owned.get();
  }

  for (int g = 2; g <= top; ++g) {
    const std::size_t k = static_cast<std::size_t>(g - 2);
    bool same = true;
    std::string witness;
    for (std::size_t i = 0; i < framings.size(); ++i) {
      if (values[i][k] != values[0][k]) same = false;
      if (i) witness += ", ";
      witness += "f=" + framings[i].str() + ": " + values[i][k].str();
    }
    add_check(rep, "framing.g" + std::to_string(g),
              "F_" + std::to_string(g) + " takes the same value at every generic framing",
              same, witness);
    if (symbolic_session) {
      const FieldScalar fs = symbolic_session->free_energy(g);
      const bool constant = fs.rf().is_constant() && fs.rf().constant_value() == values[0][k];
      add_check(rep, "framing.g" + std::to_string(g) + ".symbolic-constant",
                "F_" + std::to_string(g) + " is a constant rational function of f",
                constant, "F_" + std::to_string(g) + " = " + fs.str());
    }
  }
  if (symbolic_session) rep.order = std::max(rep.order, symbolic_session->order());
}

inline void append_residue_route_checks(VerificationReport& rep, CheckedSession& session,
                                        int g_max) {
  const ScalarMode mode = session.framing().mode();
  RecursionContext& ctx = session.primary();
  const FieldScalar ff1 = framing_product(session.framing());

  // (a) the pairing of phi_{-1} against the descending densities collapses
  // onto b == 1.
  for (int b = 0; b <= 3 * g_max - 1; ++b) {
    const FieldScalar value = residue_pairing(ctx.curve(), ctx.basis(), b);
    const FieldScalar expect = b == 1 ? ff1.inv() : FieldScalar::zero(mode);
    add_check(rep, "lemma.pairing.b" + std::to_string(b),
              "residue pairing against the descending basis vanishes except b == 1, "
              "where it equals 1/(f(f+1))",
              value == expect,
              "pairing(" + std::to_string(b) + ") = " + value.str() + ", expected " +
                  expect.str());
  }

  // (b) the residue definition of F_g agrees with the basis route; (c) the
  // dilaton restatement of the same coefficient.
  for (int g = 2; g <= g_max; ++g) {
    const FieldScalar fg = session.free_energy(g);
    const HodgeCoefficientTable table = session.hodge(g, 1);
    const auto it = table.entries.find(std::vector<int>{1});
    const FieldScalar tau1 = it == table.entries.end() ? FieldScalar::zero(mode) : it->second;

    const FieldScalar route =
        tau1 * (FieldScalar::of_rational(Rational(2 - 2 * g), mode) * ff1).inv();
    add_check(rep, "lemma.route.g" + std::to_string(g),
              "F_g == <tau_1 Gamma_g> / ((2-2g) f (f+1))", fg == route,
              "residue route F_" + std::to_string(g) + " = " + fg.str() +
                  ", basis route = " + route.str());

    const FieldScalar dilaton =
        FieldScalar::of_rational(Rational(-(2 * g - 2)), mode) * ff1 * fg;
    add_check(rep, "lemma.dilaton.g" + std::to_string(g),
              "<tau_1 Gamma_g> == -(2g-2) f (f+1) F_g", tau1 == dilaton,
              "<tau_1 Gamma_" + std::to_string(g) + "> = " + tau1.str() + ", dilaton form = " +
                  dilaton.str());
  }
  rep.order = std::max(rep.order, session.order());
}

// Rationalized t-operator identity: with xi(t) = t and
// D = -(t (f t + 1)(t - 1)/(f + 1)) d/dt, D^b xi == (-1)^b (f+1) phi_b.
inline void append_xi_basis_checks(VerificationReport& rep, int b_max) {
  const ScalarMode mode = ScalarMode::symbolic;
  PhiBasis basis(Framing::symbolic(), 2 * b_max + 10);
  const FieldScalar one = FieldScalar::one(mode);
  const FieldScalar f_plus_1 =
      FieldScalar(RatFunc(Poly(std::vector<Rational>{Rational(1), Rational(1)})));
  const TPoly t_poly = TPoly::from_coeffs(mode, {FieldScalar::zero(mode), one});

  {
    const TPoly lhs = t_poly - basis.phi(0).scaled(f_plus_1);
    const TPoly expect = TPoly::from_coeffs(mode, {one});
    add_check(rep, "appendix-a.b0", "t == (f+1) phi_0 + 1", lhs == expect,
              "t - (f+1) phi_0 has coefficients {" + lhs.coeff(0).str() + ", " +
                  lhs.coeff(1).str() + ", ...}");
  }

  TPoly d_power = t_poly;
  FieldScalar sign = one;
  for (int b = 1; b <= b_max; ++b) {
    d_power = basis.apply_t_operator(d_power).scaled(-one);
    sign = -sign;
    const TPoly expect = basis.phi(b).scaled(sign * f_plus_1);
    add_check(rep, "appendix-a.b" + std::to_string(b),
              "D^b t == (-1)^b (f+1) phi_b with D = -(t (f t + 1)(t - 1)/(f+1)) d/dt",
              d_power == expect, "degree(D^" + std::to_string(b) + " t) = " +
                                     std::to_string(d_power.degree()) + ", expected degree " +
                                     std::to_string(expect.degree()));
  }
  rep.order = std::max(rep.order, 2 * b_max + 10);
}

// Half-integer framing: at f = -1/2 the curve closes up rationally, since
// x^2 = y^{2f} (1-y)^2 = (1-y)^2 / y needs no square root.
inline void append_half_framing_checks(VerificationReport& rep, int margin) {
  const Framing fr = Framing::fixed(Rational(-1, 2));
  CheckedSession session(fr, 3, 1, ComputePolicy{margin, true});
  const MirrorCurveC3& c = session.primary().curve();

  {
    bool linear = true;
    for (int e = c.y.min_exp(); e < c.y.trunc_order(); ++e) {
      const FieldScalar expect = FieldScalar(Rational(e == 0 ? -1 : e == 1 ? 2 : 0));
      if (c.y.at(e) != expect) linear = false;
    }
    add_check(rep, "appendix-b.curve", "y(u) == 2u - 1 at f == -1/2", linear,
              "y = " + c.y.str());
  }

  {
    const TruncatedSeries yp = differentiate(c.y);
    const TruncatedSeries one_minus_y =
        TruncatedSeries::monomial(FieldScalar::one(c.mode), 0, c.y.trunc_order()) - c.y;
    const TruncatedSeries lhs = c.Gp.scaled(FieldScalar(Rational(2)));
    const TruncatedSeries rhs = yp.scaled(FieldScalar(Rational(-2))) * inverse(one_minus_y) -
                                yp * inverse(c.y);
    add_check(rep, "appendix-b.log-derivative",
              "2 G' == -2 y'/(1-y) - y'/y at f == -1/2  (d/du log x^2 == d/du log (1-y)^2/y)",
              agree_on_overlap(lhs, rhs), "2G' = " + lhs.str() + ", rhs = " + rhs.str());
  }

  {
    const Rational y0 = c.y.at(0).rat();
    const Rational base = (Rational(1) - y0) * (Rational(1) - y0) / y0;
    add_check(rep, "appendix-b.basepoint",
              "x(0)^2 == (1 - y(0))^2 / y(0) == -4 at f == -1/2", base == Rational(-4),
              "(1 - y(0))^2 / y(0) = " + base.str());
  }

  for (int g = 2; g <= 3; ++g) {
    const FieldScalar value = session.free_energy(g);
    const FieldScalar expect =
        FieldScalar::of_rational(faber_pandharipande(g), ScalarMode::rational);
    add_check(rep, "appendix-b.f" + std::to_string(g),
              "F_" + std::to_string(g) + " at f == -1/2 equals the Faber-Pandharipande value",
              value == expect,
              "F_" + std::to_string(g) + " = " + value.str() + ", expected " + expect.str());
  }
  rep.order = std::max(rep.order, session.order());
}

}  // namespace detail

// Suite names are the command-line contract: fp, framing, lemma, appendix-a,
// appendix-b, all.
inline VerificationReport run_suite(const std::string& suite, const Framing& framing,
                                    int genus_max, int margin = 6) {
  if (genus_max < 2) throw usage_error("verification needs genus-max >= 2");
  VerificationReport rep;
  rep.suite = suite;
  rep.framing = framing.str();

  const auto needs_session = suite == "fp" || suite == "lemma" || suite == "all";
  std::unique_ptr<CheckedSession> session;
  if (needs_session)
    session = std::make_unique<CheckedSession>(framing, genus_max, 1, ComputePolicy{margin, true});

  if (suite == "fp") {
    detail::append_fp_checks(rep, *session, genus_max);
  } else if (suite == "framing") {
    detail::append_framing_independence_checks(rep, framing, genus_max, margin);
  } else if (suite == "lemma") {
    detail::append_residue_route_checks(rep, *session, genus_max);
  } else if (suite == "appendix-a") {
    rep.framing = "symbolic";  // the identity is polynomial in f
    detail::append_xi_basis_checks(rep, 6);
  } else if (suite == "appendix-b") {
    rep.framing = Rational(-1, 2).str();  // the suite pins its framing
    detail::append_half_framing_checks(rep, margin);
  } else if (suite == "all") {
    detail::append_fp_checks(rep, *session, genus_max);
    detail::append_framing_independence_checks(rep, framing, genus_max, margin);
    detail::append_residue_route_checks(rep, *session, genus_max);
    detail::append_xi_basis_checks(rep, 6);
    detail::append_half_framing_checks(rep, margin);
  } else {
    throw usage_error("unknown verification suite '" + suite +
                      "' (expected fp, framing, lemma, appendix-a, appendix-b, or all)");
  }
  return rep;
}

// Single-purpose wrappers with the battery's natural signatures.

inline VerificationReport check_faber_pandharipande(int g_max, const Framing& framing,
                                                    int margin = 6) {
  return run_suite("fp", framing, g_max, margin);
}

inline VerificationReport check_framing_independence(int g, const std::vector<Rational>& framings,
                                                     int margin = 6) {
  VerificationReport rep;
  rep.suite = "framing";
  rep.framing = "symbolic";
  if (g < 2) throw usage_error("framing independence needs genus >= 2");
  for (const Rational& f0 : framings) Framing::fixed(f0);  // genericity guard
  std::vector<Rational> values;
  for (const Rational& f0 : framings) {
    CheckedSession s(Framing::fixed(f0), g, 1, ComputePolicy{margin, true});
    values.push_back(s.free_energy(g).rat());
    rep.order = std::max(rep.order, s.order());
  }
  bool same = true;
  std::string witness;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != values[0]) same = false;
    if (i) witness += ", ";
    witness += "f=" + framings[i].str() + ": " + values[i].str();
  }
  detail::add_check(rep, "framing.g" + std::to_string(g),
                    "F_" + std::to_string(g) + " takes the same value at every generic framing",
                    same, witness);
  CheckedSession sym(Framing::symbolic(), g, 1, ComputePolicy{margin, true});
  const FieldScalar fs = sym.free_energy(g);
  const bool constant = !values.empty() && fs.rf().is_constant() &&
                        fs.rf().constant_value() == values[0];
  detail::add_check(rep, "framing.g" + std::to_string(g) + ".symbolic-constant",
                    "F_" + std::to_string(g) + " is a constant rational function of f", constant,
                    "F_" + std::to_string(g) + " = " + fs.str());
  rep.order = std::max(rep.order, sym.order());
  return rep;
}

inline VerificationReport check_residue_route(int g, const Framing& framing = Framing::symbolic(),
                                              int margin = 6) {
  return run_suite("lemma", framing, g, margin);
}

inline VerificationReport check_xi_basis(int b_max) {
  if (b_max < 1) throw usage_error("t-operator identity check needs b_max >= 1");
  VerificationReport rep;
  rep.suite = "appendix-a";
  rep.framing = "symbolic";
  detail::append_xi_basis_checks(rep, b_max);
  return rep;
}

inline VerificationReport check_half_framing(int margin = 6) {
  VerificationReport rep;
  rep.suite = "appendix-b";
  rep.framing = Rational(-1, 2).str();
  detail::append_half_framing_checks(rep, margin);
  return rep;
}

// ---------------------------------------------------------------------------
// Report rendering. JSON is the payload form; csv/table derive from it.
// ---------------------------------------------------------------------------

inline ordered_json report_to_json(const VerificationReport& rep) {
  ordered_json j;
  j["suite"] = rep.suite;
  j["framing"] = rep.framing;
  j["order"] = rep.order;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json e;
    e["id"] = c.id;
    e["anchor"] = c.anchor;
    e["status"] = c.pass ? "pass" : "fail";
    if (!c.pass) e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["status"] = rep.pass() ? "pass" : "fail";
  return j;
}

inline std::string report_json_to_csv(const ordered_json& j) {
  std::string out = "id,anchor,status,witness\n";
  for (const auto& c : j.at("checks")) {
    const std::string witness =
        c.contains("witness") ? c.at("witness").get<std::string>() : std::string();
    out += csv_escape(c.at("id").get<std::string>()) + "," +
           csv_escape(c.at("anchor").get<std::string>()) + "," +
           c.at("status").get<std::string>() + "," + csv_escape(witness) + "\n";
  }
  return out;
}

inline std::string report_json_to_table(const ordered_json& j) {
  std::string out = "suite " + j.at("suite").get<std::string>() + "  framing " +
                    j.at("framing").get<std::string>() + "  order " +
                    std::to_string(j.at("order").get<int>()) + "\n";
  std::vector<std::vector<std::string>> rows{{"status", "id", "anchor"}};
  for (const auto& c : j.at("checks")) {
    rows.push_back({c.at("status").get<std::string>() == "pass" ? "PASS" : "FAIL",
                    c.at("id").get<std::string>(), c.at("anchor").get<std::string>()});
  }
  out += detail::render_columns(rows);
  for (const auto& c : j.at("checks"))
    if (c.contains("witness"))
      out += "witness " + c.at("id").get<std::string>() + ": " +
             c.at("witness").get<std::string>() + "\n";
  out += std::string("overall: ") + (j.at("status").get<std::string>() == "pass" ? "PASS" : "FAIL") +
         "\n";
  return out;
}

}  // namespace torec
