#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "lucasdensity/errors.hpp"
#include "table_ledger.hpp"

namespace lucasdensity::cli {

namespace {

using nlohmann::json;

constexpr unsigned long kOracleCutoff = 10000;
constexpr std::uint64_t kDefaultVerifyLimit = 1'000'000;
constexpr std::uint64_t kMinVerifyLimit = 100;

struct Config {
  std::string a1, a2;
  std::vector<std::string> gamma;
  std::string radicand;
  std::string d;
  std::optional<std::uint64_t> limit;
  std::string format = "text";
  bool json_flag = false;
  bool oracle_check = false;
  bool strict = false;
  unsigned threads = 0;
  std::string dump;
};

class UsageError : public InputError {
 public:
  using InputError::InputError;
};

Integer parse_integer(const std::string& s, const char* what) {
  try {
    return Integer(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + ": not an integer: '" + s + "'");
  }
}

Rational parse_rational(const std::string& s, const char* what) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw UsageError(std::string(what) + ": not a rational: '" + s + "'");
  if (q.get_den() == 0) throw UsageError(std::string(what) + ": zero denominator");
  q.canonicalize();
  return q;
}

SequenceContext context_from(const Config& c) {
  const bool pair = !c.a1.empty() || !c.a2.empty();
  const bool direct = !c.gamma.empty() || !c.radicand.empty();
  if (pair == direct) throw UsageError("give exactly one input: --a1/--a2 or --gamma U V --radicand D");
  if (pair) {
    if (c.a1.empty() || c.a2.empty()) throw UsageError("--a1 and --a2 must be given together");
    return make_context(parse_integer(c.a1, "--a1"), parse_integer(c.a2, "--a2"));
  }
  if (c.gamma.size() != 2 || c.radicand.empty()) throw UsageError("--gamma U V needs --radicand D");
  return make_context(parse_rational(c.gamma[0], "--gamma U"), parse_rational(c.gamma[1], "--gamma V"),
                      parse_integer(c.radicand, "--radicand"));
}

Integer parse_d(const Config& c) {
  if (c.d.empty()) throw UsageError("--d is required");
  const Integer d = parse_integer(c.d, "--d");
  if (d < 1) throw UsageError("--d must be at least 1");
  return d;
}

std::string format_of(const Config& c) { return c.json_flag ? "json" : c.format; }

std::string input_label(const SequenceContext& ctx) {
  if (ctx.lucas) return "(a1, a2) = (" + ctx.lucas->a1.get_str() + ", " + ctx.lucas->a2.get_str() + ")";
  return "gamma = " + to_string(ctx.gamma);
}

std::string show(const Rational& q) { return q.get_str() + " (" + truncate_decimal(q) + ")"; }

// Runs the series oracle on every leaf; false on any escape.
bool oracle_check(const DensityResult& r, std::ostream& out, json* report) {
  bool all = true;
  json leaves = json::array();
  for (const auto& leaf : r.leaves) {
    const OracleResult o = series_oracle(leaf.gamma_tilde, leaf.d, Integer(kOracleCutoff));
    const bool ok = o.delta.contains(leaf.delta) && o.delta_plus.contains(leaf.delta_plus) &&
                    o.delta_minus.contains(leaf.delta_minus);
    all = all && ok;
    if (report) {
      leaves.push_back({{"gamma", to_string(leaf.gamma_tilde)},
                        {"d", leaf.d.get_str()},
                        {"delta", rational_json(leaf.delta)},
                        {"lo", o.delta.lo.get_d()},
                        {"hi", o.delta.hi.get_d()},
                        {"contained", ok}});
    } else {
      out << "oracle  d=" << leaf.d << " " << leaf.delta << " in [" << std::setprecision(12) << o.delta.lo.get_d()
          << ", " << o.delta.hi.get_d() << "] " << (ok ? "contained" : "NOT CONTAINED") << "\n";
    }
  }
  if (report) *report = {{"cutoff", kOracleCutoff}, {"leaves", leaves}, {"contained", all}};
  return all;
}

int cmd_density(const Config& c, std::ostream& out) {
  const SequenceContext ctx = context_from(c);
  const Integer d = parse_d(c);
  const DensityResult r = dispatch(ctx, d);
  const std::string fmt = format_of(c);
  bool ok = true;
  if (fmt == "json") {
    json j = density_json(r);
    if (c.oracle_check) {
      json rep;
      ok = oracle_check(r, out, &rep);
      j["oracle"] = rep;
    }
    out << j.dump(2) << "\n";
  } else if (fmt == "csv") {
    out << "delta,delta_plus,delta_minus,case,h,zeta\n"
        << r.delta << ',' << r.delta_plus << ',' << r.delta_minus << ',' << to_string(r.case_tag) << ',' << r.h
        << ',' << r.zeta << "\n";
    if (c.oracle_check) ok = oracle_check(r, out, nullptr);
  } else {
    out << "input   " << input_label(ctx) << "\n"
        << "d       " << d << "\n"
        << "delta   " << show(r.delta) << "\n"
        << "delta+  " << show(r.delta_plus) << "\n"
        << "delta-  " << show(r.delta_minus) << "\n"
        << "case    " << to_string(r.case_tag) << "\n"
        << "h       " << r.h << "\n"
        << "zeta    " << r.zeta << "\n";
    if (c.oracle_check) ok = oracle_check(r, out, nullptr);
  }
  return ok ? kOk : kInternalFailure;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const SequenceContext ctx = context_from(c);
  const Integer d = parse_d(c);
  if (!d.fits_ulong_p()) throw UsageError("--d too large for verify");
  const std::uint64_t limit = c.limit.value_or(kDefaultVerifyLimit);
  if (limit < kMinVerifyLimit) throw UsageError("--limit must be at least 100 for verify");
  if (limit >= SpfTable::kMaxLimit) throw UsageError("--limit exceeds the sieve ceiling");
  const Rational delta = dispatch(ctx, d).delta;
  EmpiricalOptions opt;
  opt.threads = c.threads;
  if (!c.dump.empty()) opt.dump_path = c.dump;
  const EmpiricalReport rep = empirical_density(ctx, d.get_ui(), limit, delta, opt);
  const double dev = std::fabs(rep.ratio.get_d() - delta.get_d());
  const double tol = empirical_tolerance(delta, rep.eligible);
  const bool pass = dev <= tol;
  const std::string fmt = format_of(c);
  if (fmt == "json") {
    json j = {{"delta", rational_json(delta)},
              {"limit", limit},
              {"eligible", rep.eligible},
              {"counted", rep.counted},
              {"counted_plus", rep.counted_plus},
              {"counted_minus", rep.counted_minus},
              {"ratio", rep.ratio.get_d()},
              {"ratio_plus", rep.ratio_plus.get_d()},
              {"ratio_minus", rep.ratio_minus.get_d()},
              {"deviation", dev},
              {"tolerance", tol},
              {"pass", pass},
              {"seconds", rep.seconds}};
    out << j.dump(2) << "\n";
  } else if (fmt == "csv") {
    out << "delta,limit,eligible,counted,ratio,deviation,tolerance,pass\n"
        << delta << ',' << limit << ',' << rep.eligible << ',' << rep.counted << ',' << truncate_decimal(rep.ratio)
        << ',' << std::setprecision(6) << dev << ',' << tol << ',' << (pass ? "1" : "0") << "\n";
  } else {
    out << "input      " << input_label(ctx) << "\n"
        << "d          " << d << "\n"
        << "exact      " << show(delta) << "\n"
        << "empirical  " << truncate_decimal(rep.ratio) << "  (" << rep.counted << " of " << rep.eligible
        << " eligible primes up to " << limit << ")\n"
        << "split      +: " << rep.counted_plus << "  -: " << rep.counted_minus << "\n"
        << std::fixed << std::setprecision(6) << "deviation  " << dev << "  tolerance " << tol << "\n"
        << "result     " << (pass ? "PASS" : "FAIL") << "\n"
        << std::setprecision(2) << "runtime    " << rep.seconds << " s\n";
  }
  return (!pass && c.strict) ? kToleranceFailure : kOk;
}

int cmd_tables(const Config& c, std::ostream& out) {
  const std::string fmt = format_of(c);
  int matches = 0;
  json rows = json::array();
  std::ostringstream text;
  if (fmt == "csv") text << "table,gamma,d,ledger,computed,match,num,exp,empirical,note\n";
  for (const auto& row : table_ledger()) {
    const SequenceContext ctx = row.context();
    const DensityResult r = dispatch(ctx, Integer(row.d));
    Rational expected(row.expected);
    expected.canonicalize();
    const bool match = r.delta == expected;
    matches += match;
    std::optional<EmpiricalReport> rep;
    if (c.limit) {
      EmpiricalOptions opt;
      opt.threads = c.threads;
      rep = empirical_density(ctx, row.d, *c.limit, r.delta, opt);
    }
    if (fmt == "json") {
      json j = {{"table", row.table},
                {"gamma", row.gamma_label()},
                {"d", row.d},
                {"ledger", row.expected},
                {"printed", row.printed},
                {"computed", r.delta.get_str()},
                {"match", match},
                {"case", to_string(r.case_tag)},
                {"num", row.num},
                {"exp", row.exp}};
      if (!row.note.empty()) j["note"] = row.note;
      if (rep) {
        const double dev = std::fabs(rep->ratio.get_d() - r.delta.get_d());
        j["empirical"] = {{"ratio", rep->ratio.get_d()},
                          {"deviation", dev},
                          {"tolerance", empirical_tolerance(r.delta, rep->eligible)}};
      }
      rows.push_back(j);
    } else if (fmt == "csv") {
      text << row.table << ",\"" << row.gamma_label() << "\"," << row.d << ',' << row.expected << ',' << r.delta << ','
           << (match ? 1 : 0) << ',' << row.num << ',' << row.exp << ','
           << (rep ? truncate_decimal(rep->ratio) : std::string()) << ",\"" << row.note << "\"\n";
    } else {
      text << "T" << row.table << "  " << std::left << std::setw(30) << row.gamma_label() << " d=" << std::setw(4)
           << row.d << std::setw(12) << r.delta.get_str() << (match ? "match " : "DIFFERS ") << truncate_decimal(r.delta)
           << "  exp " << row.exp;
      if (rep) {
        const double dev = std::fabs(rep->ratio.get_d() - r.delta.get_d());
        text << "  empirical " << truncate_decimal(rep->ratio) << (dev <= empirical_tolerance(r.delta, rep->eligible) ? " ok" : " OUTSIDE");
      }
      if (!match) text << "  ledger " << row.expected;
      if (!row.note.empty()) text << "  [" << row.note << "]";
      text << "\n";
    }
  }
  const int total = static_cast<int>(table_ledger().size());
  if (fmt == "json") {
    out << json{{"rows", rows}, {"matches", matches}, {"total", total}}.dump(2) << "\n";
  } else {
    out << text.str();
    if (fmt == "text") out << matches << "/" << total << " exact matches against the ledger\n";
  }
  return matches == total ? kOk : kInternalFailure;
}

void explain_term(const STerm& t, std::ostream& out) {
  const SFactors f = s_factors(t.d, t.e, t.h, t.nu);
  out << "  " << t.coefficient << " * S_{" << t.d << "," << t.e << "," << t.h << "}(" << t.nu << ") = " << t.coefficient
      << " * " << t.value;
  if (f.vanishes) {
    out << "   [vanishes: e or nu has a prime outside d]\n";
    return;
  }
  out << "   [(h,d^inf)=" << f.h_d << " D=" << f.big_d << " (h,D^inf)=" << f.h_big_d << " lcm=" << f.lcm
      << " phi(nu)=" << f.phi_nu << " nu-product=" << f.nu_product << " d-product=" << f.d_product << "]\n";
}

int cmd_explain(const Config& c, std::ostream& out) {
  const SequenceContext ctx = context_from(c);
  const Integer d = parse_d(c);
  const DensityResult r = dispatch(ctx, d);
  if (format_of(c) == "json") {
    json j = density_json(r);
    json echo = json::array();
    for (const auto& [k, v] : r.echo) echo.push_back({{"name", k}, {"value", v}});
    j["inputs"] = echo;
    j["steps"] = r.steps;
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "input   " << input_label(ctx) << "\n"
      << "d       " << d << "\n"
      << "routing data:\n";
  for (const auto& [k, v] : r.echo) out << "  " << k << " = " << v << "\n";
  out << "derivation:\n";
  for (const auto& s : r.steps) out << "  " << s << "\n";
  out << "terms:\n";
  for (const auto& t : r.trace) explain_term(t, out);
  out << "delta  = " << show(r.delta) << "\n"
      << "delta+ = " << show(r.delta_plus) << "\n"
      << "delta- = " << show(r.delta_minus) << "\n"
      << "case   = " << to_string(r.case_tag) << "\n";
  return kOk;
}

void add_input_options(CLI::App* sub, Config& c) {
  sub->add_option("--a1", c.a1, "Lucas parameter a1");
  sub->add_option("--a2", c.a2, "Lucas parameter a2");
  sub->add_option("--gamma", c.gamma, "gamma = U + V sqrt(radicand), U and V rational")->expected(2);
  sub->add_option("--radicand", c.radicand, "radicand D for --gamma");
  sub->add_option("--d", c.d, "divisor d >= 1");
}

void add_format_options(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_flag("--json", c.json_flag, "same as --format json");
}

// CLI11 reads "-13/14" as an option name; protect such values.
std::vector<std::string> protect_negatives(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (const auto& a : args) {
    if (a.size() > 1 && a[0] == '-' && (std::isdigit(static_cast<unsigned char>(a[1])) != 0)) {
      out.push_back("\\" + a);
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::string unprotect(const std::string& s) { return (!s.empty() && s[0] == '\\') ? s.substr(1) : s; }

}  // namespace

std::string truncate_decimal(const Rational& q, unsigned places) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  const Integer num = abs(q.get_num()) * scale;
  Integer whole;
  mpz_tdiv_q(whole.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  Integer ip, fp;
  mpz_tdiv_qr(ip.get_mpz_t(), fp.get_mpz_t(), whole.get_mpz_t(), scale.get_mpz_t());
  std::string frac = fp.get_str();
  frac.insert(0, places - frac.size(), '0');
  return std::string(q < 0 ? "-" : "") + ip.get_str() + (places ? "." + frac : "");
}

json rational_json(const Rational& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
  }
  return {{"num", q.get_num().get_si()}, {"den", q.get_den().get_si()}};
}

namespace {

json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

}  // namespace

json density_json(const DensityResult& r) {
  json trace = json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"d", integer_json(t.d)},
                     {"e", integer_json(t.e)},
                     {"h", integer_json(t.h)},
                     {"nu", integer_json(t.nu)},
                     {"coeff", rational_json(t.coefficient)},
                     {"value", rational_json(t.value)}});
  }
  return {{"delta", rational_json(r.delta)},
          {"delta_plus", rational_json(r.delta_plus)},
          {"delta_minus", rational_json(r.delta_minus)},
          {"case", to_string(r.case_tag)},
          {"h", integer_json(r.h)},
          {"zeta", r.zeta},
          {"trace", trace}};
}

std::string error_name(const std::exception& e) {
#define LD_NAME(T) \
  if (dynamic_cast<const T*>(&e)) return #T
  LD_NAME(UsageError);
  LD_NAME(DiscMismatchError);
  LD_NAME(DivisionByZeroError);
  LD_NAME(HypothesisError);
  LD_NAME(CaseError);
  LD_NAME(LimitError);
  LD_NAME(PreconditionError);
  LD_NAME(ReducibleError);
  LD_NAME(TorsionError);
  LD_NAME(ZeroParameterError);
  LD_NAME(NormError);
  LD_NAME(PrecisionExhaustedError);
  LD_NAME(DegenerateError);
  LD_NAME(ShapeError);
  LD_NAME(OracleMismatchError);
  LD_NAME(UnreachableCaseError);
  LD_NAME(InputError);
  LD_NAME(InternalError);
  LD_NAME(Error);
#undef LD_NAME
  return "error";
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Densities of primes whose Lucas rank of appearance is divisible by d", "lucasdensity"};
  app.require_subcommand(1);
  auto* density = app.add_subcommand("density", "exact density and its S-sum trace");
  auto* verify = app.add_subcommand("verify", "compare the exact density with a prime count");
  auto* tables = app.add_subcommand("tables", "recompute the 18 reference rows");
  auto* explain = app.add_subcommand("explain", "print the full derivation");
  for (auto* sub : {density, verify, explain}) add_input_options(sub, c);
  for (auto* sub : {density, verify, tables, explain}) add_format_options(sub, c);
  density->add_flag("--oracle-check", c.oracle_check, "check every leaf against the direct series");
  for (auto* sub : {verify, tables}) {
    sub->add_option("--limit", c.limit, "prime bound");
    sub->add_option("--threads", c.threads, "worker threads (0: all cores)");
  }
  verify->add_flag("--strict", c.strict, "exit 1 when the deviation exceeds the tolerance");
  verify->add_option("--dump-ranks", c.dump, "CSV path for p,rank,jacobi,divisible");

  std::vector<std::string> args = protect_negatives(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  c.a1 = unprotect(c.a1);
  c.a2 = unprotect(c.a2);
  c.radicand = unprotect(c.radicand);
  c.d = unprotect(c.d);
  for (auto& g : c.gamma) g = unprotect(g);

  try {
    if (density->parsed()) return cmd_density(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (tables->parsed()) return cmd_tables(c, out);
    return cmd_explain(c, out);
  } catch (const InputError& e) {
    err << "error: " << error_name(e) << ": " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InternalError& e) {
    err << "internal error: " << error_name(e) << ": " << e.what() << "\n";
    return kInternalFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalFailure;
  }
}

}  // namespace lucasdensity::cli
