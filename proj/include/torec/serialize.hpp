#pragma once

// Canonical text forms for exported artifacts. Scalar strings round-trip
// through parse_scalar, and every emitted format (csv, table) renders from
// the same JSON payload that the cache stores, so a warm-cache run is
// byte-identical to a cold one.

#include <json.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include <torec/errors.hpp>
#include <torec/polynomial.hpp>
#include <torec/ratfunc.hpp>
#include <torec/rational.hpp>
#include <torec/scalar.hpp>
#include <torec/tensor.hpp>

namespace torec {

using ordered_json = nlohmann::ordered_json;

namespace detail {

// Recursive-descent reader for the polynomial strings Poly::str emits:
// integer coefficients, "f" powers, spaces around binary +/-. Accepts any
// whitespace placement; rejects everything else.
class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  Poly parse() {
    Poly acc;
    skip_ws();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      acc = acc + term(sign);
      skip_ws();
      first = false;
    }
    if (first) fail("empty polynomial");
    return acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw usage_error("unparseable scalar: " + why + " in '" + s_ + "'");
  }

  Rational integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return Rational::parse(s_.substr(start, pos_ - start));
  }

  Poly term(int sign) {
    skip_ws();
    Rational coeff(sign);
    bool saw_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = coeff * integer();
      saw_number = true;
    }
    int exp = 0;
    if (peek() == 'f') {
      ++pos_;
      exp = 1;
      if (peek() == '^') {
        ++pos_;
        const Rational e = integer();
        if (!e.is_integer()) fail("fractional exponent");
        exp = static_cast<int>(e.numerator().get_si());
        if (exp < 0) fail("negative exponent");
      }
    } else if (!saw_number) {
      fail("expected a coefficient or 'f'");
    }
    return Poly::monomial(exp, coeff);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// One side of a canonical fraction: either a parenthesized polynomial or a
// bare single-token polynomial (integer, f, f^k, or a lone signed monomial).
inline Poly parse_fraction_side(const std::string& s) {
  std::string body = s;
  const auto first = body.find_first_not_of(" \t");
  const auto last = body.find_last_not_of(" \t");
  body = first == std::string::npos ? std::string() : body.substr(first, last - first + 1);
  if (!body.empty() && body.front() == '(' && body.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i + 1 < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (depth == 0) {
        wraps = false;
        break;
      }
    }
    if (wraps) body = body.substr(1, body.size() - 2);
  }
  return PolyParser(body).parse();
}

}  // namespace detail

// Parse the canonical serialization produced by FieldScalar::str() back into
// a scalar of the requested mode. Rational mode accepts "p/q" integers;
// symbolic mode accepts "P", "P/Q", "(P)/Q" and all other forms str() emits.
inline FieldScalar parse_scalar(const std::string& s, ScalarMode mode) {
  if (s.empty()) throw usage_error("unparseable scalar: empty string");
  if (mode == ScalarMode::rational) return FieldScalar(Rational::parse(s));

  // Split at the single top-level '/'; depth tracking keeps "1/(f^2 + f)"
  // and "(f^2 + f + 1)/24" unambiguous.
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) {
      if (slash != std::string::npos)
        throw usage_error("unparseable scalar: multiple top-level '/' in '" + s + "'");
      slash = i;
    }
  }
  if (depth != 0) throw usage_error("unparseable scalar: unbalanced parentheses in '" + s + "'");
  if (slash == std::string::npos) return FieldScalar(RatFunc(detail::parse_fraction_side(s)));
  const Poly num = detail::parse_fraction_side(s.substr(0, slash));
  const Poly den = detail::parse_fraction_side(s.substr(slash + 1));
  if (den.is_zero()) throw arithmetic_error("scalar with zero denominator: '" + s + "'");
  return FieldScalar(RatFunc(num, den));
}

// ---------------------------------------------------------------------------
// JSON payloads. These are the cache payloads and the --format json outputs;
// csv/table renderers below consume the payload, never the live objects.
// ---------------------------------------------------------------------------

inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

// {"g","n","framing","basis":"zeta","entries":[{"b":[...],"coeff":"..."}]}
inline ordered_json hodge_table_to_json(const HodgeCoefficientTable& table,
                                        const std::string& framing_str) {
  ordered_json j;
  j["g"] = table.g;
  j["n"] = table.n;
  j["framing"] = framing_str;
  j["basis"] = "zeta";
  ordered_json entries = ordered_json::array();
  for (const auto& [key, coeff] : table.entries) {
    ordered_json e;
    e["b"] = key;
    e["coeff"] = coeff.str();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

// {"genus","framing","value","matches"}: one row of an fg table.
inline ordered_json fg_row_to_json(int genus, const std::string& framing_str,
                                   const std::string& value, bool matches) {
  ordered_json j;
  j["genus"] = genus;
  j["framing"] = framing_str;
  j["value"] = value;
  j["matches"] = matches;
  return j;
}

// ---------------------------------------------------------------------------
// CSV and table rendering.
// ---------------------------------------------------------------------------

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace detail {

inline std::string join_key(const ordered_json& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(b[i].get<int>());
  }
  return out;
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

// Two-column aligned text block with a header row.
inline std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (widths.size() <= i) widths.resize(i + 1, 0);
      widths[i] = std::max(widths[i], row[i].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += (i + 1 < row.size()) ? pad(row[i], widths[i]) + "  " : row[i];
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace detail

inline std::string hodge_json_to_csv(const ordered_json& j) {
  std::string out = "b,coeff\n";
  for (const auto& e : j.at("entries")) {
    out += csv_escape(detail::join_key(e.at("b"))) + "," +
           csv_escape(e.at("coeff").get<std::string>()) + "\n";
  }
  return out;
}

inline std::string hodge_json_to_table(const ordered_json& j) {
  std::string out = "(g, n) = (" + std::to_string(j.at("g").get<int>()) + ", " +
                    std::to_string(j.at("n").get<int>()) + ")  framing = " +
                    j.at("framing").get<std::string>() + "  basis = " +
                    j.at("basis").get<std::string>() + "\n";
  std::vector<std::vector<std::string>> rows{{"b", "coeff"}};
  for (const auto& e : j.at("entries"))
    rows.push_back({detail::join_key(e.at("b")), e.at("coeff").get<std::string>()});
  return out + detail::render_columns(rows);
}

inline std::string fg_json_to_csv(const ordered_json& rows) {
  std::string out = "genus,framing,value,matches\n";
  for (const auto& r : rows) {
    out += std::to_string(r.at("genus").get<int>()) + "," +
           csv_escape(r.at("framing").get<std::string>()) + "," +
           csv_escape(r.at("value").get<std::string>()) + "," +
           (r.at("matches").get<bool>() ? "true" : "false") + "\n";
  }
  return out;
}

inline std::string fg_json_to_table(const ordered_json& rows) {
  std::vector<std::vector<std::string>> table{{"genus", "framing", "value", "matches"}};
  for (const auto& r : rows)
    table.push_back({std::to_string(r.at("genus").get<int>()),
                     r.at("framing").get<std::string>(), r.at("value").get<std::string>(),
                     r.at("matches").get<bool>() ? "true" : "false"});
  return detail::render_columns(table);
}

}  // namespace torec
