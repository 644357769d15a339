#include <catch2/catch_amalgamated.hpp>

#include <torec/serialize.hpp>

using namespace torec;

namespace {

Poly P(std::vector<Rational> c) { return Poly(std::move(c)); }

FieldScalar sym(const RatFunc& r) { return FieldScalar(r); }

}  // namespace

TEST_CASE("canonical scalar strings round-trip through the parser") {
  const std::vector<RatFunc> cases = {
      RatFunc(P({Rational(1), Rational(1), Rational(1)}), P({Rational(24)})),
      RatFunc(P({Rational(1)}), P({Rational(0), Rational(1), Rational(1)})),
      RatFunc(P({Rational(0), Rational(-1)}), P({Rational(2)})),
      RatFunc(P({Rational(1), Rational(1)})),
      RatFunc(Rational(5, 3)),
      RatFunc(),
      RatFunc(P({Rational(1)}), P({Rational(0), Rational(1)})),
      RatFunc(P({Rational(0), Rational(1)})),
      RatFunc(P({Rational(0), Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
                 Rational(0), Rational(1)})),
      RatFunc(P({Rational(-1), Rational(1)}), P({Rational(1), Rational(1)})),
      RatFunc(P({Rational(-9), Rational(2), Rational(0), Rational(-1)}),
              P({Rational(0), Rational(0), Rational(1), Rational(0), Rational(0), Rational(7)})),
      RatFunc(P({Rational(1, 2), Rational(1, 3)}), P({Rational(1, 5)})),
  };
  for (const RatFunc& r : cases) {
    const std::string text = r.str();
    const FieldScalar round = parse_scalar(text, ScalarMode::symbolic);
    INFO(text);
    CHECK(round == sym(r));
  }
}

TEST_CASE("frozen canonical forms parse to the intended values") {
  CHECK(parse_scalar("(f^2 + f + 1)/24", ScalarMode::symbolic) ==
        sym(RatFunc(P({Rational(1), Rational(1), Rational(1)}), P({Rational(24)}))));
  CHECK(parse_scalar("1/(f^2 + f)", ScalarMode::symbolic) ==
        sym(RatFunc(P({Rational(1)}), P({Rational(0), Rational(1), Rational(1)}))));
  CHECK(parse_scalar("(-f)/2", ScalarMode::symbolic) ==
        sym(RatFunc(P({Rational(0), Rational(-1)}), P({Rational(2)}))));
  CHECK(parse_scalar("f + 1", ScalarMode::symbolic) ==
        sym(RatFunc(P({Rational(1), Rational(1)}))));
  CHECK(parse_scalar("5/3", ScalarMode::symbolic) == sym(RatFunc(Rational(5, 3))));
  CHECK(parse_scalar("1/f", ScalarMode::symbolic) ==
        sym(RatFunc(P({Rational(1)}), P({Rational(0), Rational(1)}))));
  CHECK(parse_scalar("0", ScalarMode::symbolic) == sym(RatFunc()));
  // Whitespace is free; the emitter's spacing is one choice among many.
  CHECK(parse_scalar("f+1", ScalarMode::symbolic) == parse_scalar("f + 1", ScalarMode::symbolic));
  CHECK(parse_scalar(" ( f^2+f+1 ) / 24 ", ScalarMode::symbolic) ==
        parse_scalar("(f^2 + f + 1)/24", ScalarMode::symbolic));
}

TEST_CASE("rational-mode parsing uses plain rational syntax") {
  CHECK(parse_scalar("-3/4", ScalarMode::rational) == FieldScalar(Rational(-3, 4)));
  CHECK(parse_scalar("120", ScalarMode::rational) == FieldScalar(Rational(120)));
  CHECK_THROWS_AS(parse_scalar("(f^2 + f + 1)/24", ScalarMode::rational), usage_error);
}

TEST_CASE("malformed scalar strings are rejected") {
  CHECK_THROWS_AS(parse_scalar("", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("f/", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("(f", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("1/2/3", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("x + 1", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("f^-2", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("f f", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("(f+1)(f+2)", ScalarMode::symbolic), usage_error);
  CHECK_THROWS_AS(parse_scalar("1/0", ScalarMode::symbolic), arithmetic_error);
  CHECK_THROWS_AS(parse_scalar("1/0", ScalarMode::rational), arithmetic_error);
}

TEST_CASE("coefficient tables serialize to the documented JSON shape") {
  HodgeCoefficientTable table;
  table.g = 1;
  table.n = 1;
  table.mode = ScalarMode::symbolic;
  table.entries.emplace(std::vector<int>{0},
                        sym(RatFunc(P({Rational(1), Rational(1), Rational(1)}), P({Rational(24)}))));
  table.entries.emplace(std::vector<int>{1},
                        sym(RatFunc(P({Rational(0), Rational(-1), Rational(-1)}), P({Rational(24)}))));

  const ordered_json j = hodge_table_to_json(table, "symbolic");
  CHECK(j.at("g") == 1);
  CHECK(j.at("n") == 1);
  CHECK(j.at("framing") == "symbolic");
  CHECK(j.at("basis") == "zeta");
  REQUIRE(j.at("entries").size() == 2);
  CHECK(j.at("entries")[0].at("b") == std::vector<int>{0});
  CHECK(j.at("entries")[0].at("coeff") == "(f^2 + f + 1)/24");
  CHECK(j.at("entries")[1].at("b") == std::vector<int>{1});
  CHECK(j.at("entries")[1].at("coeff") == "(-f^2 - f)/24");

  // Every emitted coefficient round-trips.
  for (const auto& e : j.at("entries"))
    CHECK_NOTHROW(parse_scalar(e.at("coeff").get<std::string>(), ScalarMode::symbolic));

  CHECK(hodge_json_to_csv(j) == "b,coeff\n0,(f^2 + f + 1)/24\n1,(-f^2 - f)/24\n");
  const std::string txt = hodge_json_to_table(j);
  CHECK(txt.find("(g, n) = (1, 1)") != std::string::npos);
  CHECK(txt.find("(f^2 + f + 1)/24") != std::string::npos);
}

TEST_CASE("multi-slot keys join with spaces in csv") {
  HodgeCoefficientTable table;
  table.g = 0;
  table.n = 3;
  table.mode = ScalarMode::rational;
  table.entries.emplace(std::vector<int>{0, 0, 0}, FieldScalar(Rational(1)));
  const ordered_json j = hodge_table_to_json(table, "1");
  CHECK(hodge_json_to_csv(j) == "b,coeff\n0 0 0,1\n");
}

TEST_CASE("free-energy rows render to the fixed csv column order") {
  ordered_json rows = ordered_json::array();
  rows.push_back(fg_row_to_json(2, "1", "1/5760", true));
  rows.push_back(fg_row_to_json(3, "1", "-1/1451520", true));
  CHECK(fg_json_to_csv(rows) ==
        "genus,framing,value,matches\n2,1,1/5760,true\n3,1,-1/1451520,true\n");
  const std::string txt = fg_json_to_table(rows);
  CHECK(txt.find("genus") != std::string::npos);
  CHECK(txt.find("1/5760") != std::string::npos);

  const ordered_json row = rows[0];
  CHECK(row.at("genus") == 2);
  CHECK(row.at("framing") == "1");
  CHECK(row.at("value") == "1/5760");
  CHECK(row.at("matches") == true);
}

TEST_CASE("csv escaping quotes only when needed") {
  CHECK(csv_escape("1/5760") == "1/5760");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("json dumps end with a newline") {
  ordered_json j;
  j["k"] = 1;
  const std::string s = dump_json(j);
  CHECK(!s.empty());
  CHECK(s.back() == '\n');
}
