// Command-line front end: free-energy tables (fg), coefficient tensors (wgn),
// and the verification battery (verify), with a content-addressed cache.
//
// Exit codes: 0 success / all-pass, 1 verification failure (including a
// falsified decomposition), 2 invalid input, 3 internal precision failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>

#include <torec/bernoulli.hpp>
#include <torec/cache.hpp>
#include <torec/errors.hpp>
#include <torec/serialize.hpp>
#include <torec/session.hpp>
#include <torec/verify.hpp>

namespace {

using torec::ordered_json;

struct CommonOptions {
  std::string framing = "symbolic";
  int margin = 6;
  std::string format;
  std::string out;
  std::string cache_dir;
};

torec::Framing parse_framing(const std::string& s) {
  if (s == "symbolic") return torec::Framing::symbolic();
  return torec::Framing::fixed(torec::Rational::parse(s));
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw torec::usage_error("");
    return v;
  } catch (const torec::usage_error&) {
    throw torec::usage_error(std::string("invalid ") + what + " '" + s + "'");
  } catch (const std::exception&) {
    throw torec::usage_error(std::string("invalid ") + what + " '" + s + "'");
  }
}

// "4" -> (4, 4); "2..5" -> (2, 5).
std::pair<int, int> parse_genus_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(s, "genus");
    return {v, v};
  }
  const int lo = parse_int(s.substr(0, dots), "genus range");
  const int hi = parse_int(s.substr(dots + 2), "genus range");
  if (lo > hi) throw torec::usage_error("empty genus range '" + s + "'");
  return {lo, hi};
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw torec::usage_error("cannot open output file '" + opt.out + "'");
  f << text;
}

int run_fg(const CommonOptions& opt, const std::string& genus_arg) {
  const auto [lo, hi] = parse_genus_range(genus_arg);
  if (lo < 2) throw torec::usage_error("fg needs genus >= 2");
  const torec::Framing framing = parse_framing(opt.framing);
  const int order = torec::base_truncation_order(hi, 1, opt.margin);
  const auto cache_dir = torec::resolve_cache_dir(opt.cache_dir);

  ordered_json rows = ordered_json::array();
  std::unique_ptr<torec::CheckedSession> session;
  bool all_match = true;
  for (int g = lo; g <= hi; ++g) {
    const std::string key = torec::cache_key("fg", g, 1, framing.str(), order);
    ordered_json row;
    if (auto hit = torec::cache_read(cache_dir, key);
        hit && hit->contains("value") && hit->contains("matches")) {
      row = std::move(*hit);
    } else {
      if (!session)
        session = std::make_unique<torec::CheckedSession>(
            framing, hi, 1, torec::ComputePolicy{opt.margin, true});
      const torec::FieldScalar value = session->free_energy(g);
      const bool matches =
          value == torec::FieldScalar::of_rational(torec::faber_pandharipande(g),
                                                   framing.mode());
      row = torec::fg_row_to_json(g, framing.str(), value.str(), matches);
      torec::cache_write(cache_dir, key, row);
    }
    all_match = all_match && row.at("matches").get<bool>();
    rows.push_back(std::move(row));
  }

  if (opt.format == "json")
    emit(opt, torec::dump_json(rows));
  else if (opt.format == "csv")
    emit(opt, torec::fg_json_to_csv(rows));
  else
    emit(opt, torec::fg_json_to_table(rows));
  return all_match ? 0 : 1;
}

int run_wgn(const CommonOptions& opt, int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
    throw torec::usage_error("wgn needs a stable pair: g >= 0, n >= 1, 2g - 2 + n > 0");
  const torec::Framing framing = parse_framing(opt.framing);
  const int order = torec::base_truncation_order(g, n, opt.margin);
  const auto cache_dir = torec::resolve_cache_dir(opt.cache_dir);

  const std::string key = torec::cache_key("wgn", g, n, framing.str(), order);
  ordered_json payload;
  if (auto hit = torec::cache_read(cache_dir, key); hit && hit->contains("entries")) {
    payload = std::move(*hit);
  } else {
    torec::CheckedSession session(framing, g, n, torec::ComputePolicy{opt.margin, true});
    payload = torec::hodge_table_to_json(session.hodge(g, n), framing.str());
    torec::cache_write(cache_dir, key, payload);
  }

  if (opt.format == "csv")
    emit(opt, torec::hodge_json_to_csv(payload));
  else if (opt.format == "table")
    emit(opt, torec::hodge_json_to_table(payload));
  else
    emit(opt, torec::dump_json(payload));
  return 0;
}

int run_verify(const CommonOptions& opt, const std::string& suite, int genus_max) {
  const torec::Framing framing = parse_framing(opt.framing);
  const torec::VerificationReport rep =
      torec::run_suite(suite, framing, genus_max, opt.margin);
  const ordered_json payload = torec::report_to_json(rep);

  if (opt.format == "json")
    emit(opt, torec::dump_json(payload));
  else if (opt.format == "csv")
    emit(opt, torec::report_json_to_csv(payload));
  else
    emit(opt, torec::report_json_to_table(payload));
  return rep.pass() ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOptions& opt, const std::string& default_format) {
  opt.format = default_format;
  cmd->add_option("--framing", opt.framing,
                  "framing: 'symbolic' or a rational like 1, 2, -1/2 (0 and -1 excluded)");
  cmd->add_option("--order-margin", opt.margin,
                  "extra truncation beyond the 6g + 2n baseline (default 6)");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", opt.out, "write output to this file instead of stdout");
  cmd->add_option("--cache-dir", opt.cache_dir,
                  "cache directory (default: $TOREC_CACHE_DIR, then ~/.cache/torec)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact topological recursion on the framed mirror curve of C^3"};
  app.require_subcommand(1);

  CommonOptions fg_opt, wgn_opt, verify_opt;
  std::string fg_genus;
  int wgn_genus = 0, wgn_n = 0;
  std::string verify_suite = "all";
  int verify_genus_max = 4;

  CLI::App* fg = app.add_subcommand("fg", "free energies F_g with the constant-map comparison");
  fg->add_option("--genus", fg_genus, "genus, a single integer or a range a..b")->required();
  add_common(fg, fg_opt, "table");

  CLI::App* wgn = app.add_subcommand("wgn", "coefficient table of W^g_n in the descending basis");
  wgn->add_option("--genus", wgn_genus, "genus g >= 0")->required();
  wgn->add_option("--n-points", wgn_n, "number of points n >= 1")->required();
  add_common(wgn, wgn_opt, "json");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", verify_suite,
                     "one of: fp, framing, lemma, appendix-a, appendix-b, all");
  verify->add_option("--genus-max", verify_genus_max, "largest genus to verify (default 4)");
  add_common(verify, verify_opt, "table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fg->parsed()) return run_fg(fg_opt, fg_genus);
    if (wgn->parsed()) return run_wgn(wgn_opt, wgn_genus, wgn_n);
    return run_verify(verify_opt, verify_suite, verify_genus_max);
  } catch (const torec::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const torec::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const torec::genericity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const torec::arithmetic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const torec::decomposition_error& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return 1;
  } catch (const torec::precision_error& e) {
    std::cerr << "precision failure (after one retry): " << e.what() << "\n";
    return 3;
  } catch (const torec::error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
