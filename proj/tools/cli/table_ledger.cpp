#include "table_ledger.hpp"

namespace lucasdensity::cli {

namespace {

Rational parse(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

const char* const kTypo = "printed as 661/8064; its numeric column 0.075768 and the closed form give 611/8064";

std::vector<TableRow> build() {
  std::vector<TableRow> rows;
  auto add = [&](int table, const char* u, const char* v, long rad, unsigned long h, const char* zeta,
                 const char* ru, const char* rv, std::optional<int> q, std::optional<long> f, unsigned long d,
                 const char* expected, const char* printed, const char* num, const char* exp,
                 const char* note = "") {
    rows.push_back({table, u, v, rad, h, zeta, ru, rv, q, f, d, expected, printed, num, exp, note});
  };
  add(1, "3", "1", 8, 2, "1", "1", "1/2", 0, {}, 6, "17/64", "17/64", "0.265625", "0.265670");
  add(1, "3", "1", 8, 2, "1", "1", "1/2", 0, {}, 20, "25/288", "25/288", "0.086805", "0.086782");
  add(1, "-27/2", "-5/2", 29, 2, "-1", "5/2", "1/2", 0, {}, 8, "1/6", "1/6", "0.166666", "0.166473");
  add(1, "-27/2", "-5/2", 29, 2, "-1", "5/2", "1/2", 0, {}, 10, "5/36", "5/36", "0.138888", "0.139166");
  add(1, "17/32", "7/32", -15, 4, "1", "1/4", "-1/4", 1, {}, 10, "5/288", "5/288", "0.017361", "0.017287");
  add(1, "17/32", "7/32", -15, 4, "1", "1/4", "-1/4", 1, {}, 30, "5/384", "5/384", "0.013020", "0.013017");
  add(2, "-3/5", "2/5", -4, 1, "1", "-3/5", "2/5", {}, 20, 8, "1/3", "1/3", "0.333333", "0.333427");
  add(2, "-3/5", "2/5", -4, 1, "1", "-3/5", "2/5", {}, 20, 10, "5/72", "5/72", "0.069444", "0.069279");
  add(2, "48/50", "7/50", -4, 2, "i", "3/5", "2/5", {}, 40, 10, "235/1152", "235/1152", "0.203993", "0.203844");
  add(2, "48/50", "7/50", -4, 2, "i", "3/5", "2/5", {}, 40, 24, "1/16", "1/16", "0.062500", "0.062553");
  add(2, "-240/338", "-119/338", -4, 2, "i", "-24/26", "5/26", {}, 208, 26, "611/8064", "661/8064", "0.075768",
      "0.075771", kTypo);
  add(2, "-240/338", "-119/338", -4, 2, "i", "-24/26", "5/26", {}, 208, 28, "35/288", "35/288", "0.121527",
      "0.121457");
  add(3, "-13/14", "3/14", -3, 1, "1", "-13/14", "3/14", {}, 7, 3, "3/4", "3/4", "0.750000", "0.750058");
  add(3, "-13/14", "3/14", -3, 1, "1", "-13/14", "3/14", {}, 7, 14, "35/288", "35/288", "0.121527", "0.121231");
  add(3, "683/686", "37/686", -3, 3, "omega^2", "1/7", "4/7", {}, 63, 9, "1/12", "1/12", "0.083333", "0.083407");
  add(3, "683/686", "37/686", -3, 3, "omega^2", "1/7", "4/7", {}, 63, 42, "1225/10368", "1225/10368", "0.118152",
      "0.117806");
  add(3, "1031/1369", "-520/1369", -3, 2, "-1", "13/37", "20/37", {}, 333, 6, "5/8", "5/8", "0.625000", "0.624809");
  add(3, "1031/1369", "-520/1369", -3, 2, "-1", "13/37", "20/37", {}, 333, 111, "407/16416", "407/16416",
      "0.024792", "0.024823");
  return rows;
}

}  // namespace

SequenceContext TableRow::context() const { return make_context(parse(u), parse(v), Integer(radicand)); }

QuadElem TableRow::printed_root() const { return gamma_from_radicand(parse(root_u), parse(root_v), Integer(radicand)); }

std::string TableRow::gamma_label() const { return "(" + u + ")+(" + v + ")*sqrt(" + std::to_string(radicand) + ")"; }

const std::vector<TableRow>& table_ledger() {
  static const std::vector<TableRow> rows = build();
  return rows;
}

}  // namespace lucasdensity::cli
