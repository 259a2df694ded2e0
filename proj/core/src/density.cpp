#include "lucasdensity/density.hpp"

#include <sstream>

#include "lucasdensity/errors.hpp"

namespace lucasdensity {

namespace {

bool divides(const Integer& a, const Integer& b) {
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer pow_ui(long base, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

std::string str(const Integer& z) { return z.get_str(); }
std::string str(const Rational& q) { return q.get_str(); }

// e / (d, e) for the discriminant-derived e values
Integer reduced(const Integer& value, const Integer& d) {
  const Integer a = abs(value);
  return a / gcd(d, a);
}

class Builder {
 public:
  Builder(CaseTag tag, const NormalForm& nf) : nf_(nf) {
    r_.case_tag = tag;
    r_.h = nf.h;
    r_.zeta = "1";
  }

  Rational term(const Integer& d, const Integer& e, const Integer& nu, const Rational& c_plus,
                const Rational& c_minus) {
    const Rational value = s_eval(d, e, nf_.h, nu);
    r_.delta_plus += c_plus * value;
    r_.delta_minus += c_minus * value;
    r_.trace.push_back({d, e, nf_.h, nu, c_plus + c_minus, value});
    return value;
  }

  void echo(const std::string& key, const std::string& value) { r_.echo.emplace_back(key, value); }
  void step(const std::string& s) { r_.steps.push_back(s); }

  DensityResult finish() {
    r_.delta = r_.delta_plus + r_.delta_minus;
    return std::move(r_);
  }

 private:
  const NormalForm& nf_;
  DensityResult r_;
};

void echo_sqrt(Builder& b, const KummerData& kd) {
  b.echo("h2", str(kd.h2));
  b.echo("Q", kd.sqrt.q_flag ? "1" : "0");
  b.echo(kd.disc_k == -3 ? "gamma~^(1/h6)" : "gamma~^(1/h2)", to_string(kd.sqrt_input));
  if (kd.sqrt.q_flag) {
    b.echo("c", str(*kd.sqrt.c));
    b.echo("Delta1", str(*kd.sqrt.delta1));
    b.echo("Delta2", str(*kd.sqrt.delta2));
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CaseError(what);
}

DensityResult trivial_result(const NormalForm& nf) {
  Builder b(CaseTag::ODD_GENERIC, nf);
  b.step("trivial: density 1");
  b.term(1, 1, 1, Rational(1, 2), Rational(1, 2));
  return b.finish();
}

void scale(DensityResult& r, const Rational& factor) {
  r.delta *= factor;
  r.delta_plus *= factor;
  r.delta_minus *= factor;
  for (auto& t : r.trace) t.coefficient *= factor;
}

std::vector<std::string> indent(const std::vector<std::string>& steps) {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back("  " + s);
  return out;
}

void append(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

NormalForm normal_from(const PowerIndexData& pix) {
  NormalForm nf;
  nf.gamma_tilde = pix.gamma_tilde;
  nf.h = pix.h;
  nf.gamma0 = pix.gamma0;
  nf.kd = kummer_data(pix.gamma0, pix.h);
  return nf;
}

DensityResult route(const QuadElem& gamma, const Integer& d);

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Q0: return "Q0";
    case CaseTag::Q1_real: return "Q1_real";
    case CaseTag::Q1_imag: return "Q1_imag";
    case CaseTag::GAUSS: return "GAUSS";
    case CaseTag::EISEN: return "EISEN";
    case CaseTag::SWITCH_MINUS1: return "SWITCH_MINUS1";
    case CaseTag::GAUSS_HI: return "GAUSS_HI";
    case CaseTag::EISEN_HOMEGA: return "EISEN_HOMEGA";
    case CaseTag::ODD_GENERIC: return "ODD_GENERIC";
  }
  return "?";
}

SFactors s_factors(const Integer& d, const Integer& e, const Integer& h, const Integer& nu) {
  if (d <= 0 || e <= 0 || h <= 0 || nu <= 0) throw PreconditionError("s_eval: arguments must be positive");
  SFactors f;
  if (!arith::divides_power_of(e, d) || !arith::divides_power_of(nu, d)) {
    f.vanishes = true;
    f.value = 0;
    return f;
  }
  if (!divides(arith::gcd_power_infinity(h, nu), nu)) {
    throw HypothesisError("s_eval: (h, nu^inf) must divide nu");
  }
  f.h_d = arith::gcd_power_infinity(h, d);
  f.big_d = d / arith::gcd_power_infinity(d, nu);
  f.h_big_d = arith::gcd_power_infinity(h, f.big_d);
  f.lcm = lcm(e, nu * f.h_big_d);
  f.phi_nu = arith::euler_phi(nu);
  f.nu_product = 1;
  const Integer g_e_nu = gcd(e, nu);
  for (const auto& p : arith::prime_divisors(nu)) {
    const Integer g = gcd(p * e, nu);
    f.nu_product *= 1 - arith::ratio(g * g, p * g_e_nu * g_e_nu);
  }
  f.d_product = 1;
  for (const auto& p : arith::prime_divisors(d)) f.d_product *= arith::ratio(p * p, p * p - 1);
  f.value = arith::ratio(f.h_d * nu, d * f.phi_nu * f.lcm * f.lcm) * f.nu_product * f.d_product;
  return f;
}

Rational s_eval(const Integer& d, const Integer& e, const Integer& h, const Integer& nu) {
  return s_factors(d, e, h, nu).value;
}

NormalForm normal_form(const QuadElem& gamma_tilde) {
  const PowerIndexData pix = power_index(gamma_tilde);
  if (pix.zeta_star != 0) {
    throw CaseError("normal_form: h(1) is not maximal for this element");
  }
  return normal_from(pix);
}

DensityResult delta_q0(const Integer& d, const NormalForm& nf) {
  const KummerData& kd = nf.kd;
  require(!kd.sqrt.q_flag && kd.disc_k > 0 && divides(2, d), "delta_q0: needs Q = 0 and even d");
  Builder b(CaseTag::Q0, nf);
  const Integer e = kd.disc_k / gcd(d, kd.disc_k);
  const bool h2_not_e = !divides(kd.h2, e);
  echo_sqrt(b, kd);
  b.echo("e", str(e));
  b.step("Q = 0 closed form with e = " + str(e) + (h2_not_e ? " (h2 does not divide e)" : " (h2 | e)"));
  b.step("delta+ = (S_{d,1,h} + S_{d,e,h})/2, delta- = 3/2 (S_{d,1,h} - [h2 !| e] S_{d,e,h})");
  b.term(d, 1, 1, Rational(1, 2), Rational(3, 2));
  b.term(d, e, 1, Rational(1, 2), h2_not_e ? Rational(-3, 2) : Rational(0));
  return b.finish();
}

DensityResult delta_q1(const Integer& d, const NormalForm& nf) {
  const KummerData& kd = nf.kd;
  require(kd.sqrt.q_flag && divides(2, d) && kd.disc_k != -3 && kd.disc_k != -4,
          "delta_q1: needs Q = 1, even d and a non-cyclotomic field");
  const bool real = kd.disc_k > 0;
  Builder b(real ? CaseTag::Q1_real : CaseTag::Q1_imag, nf);
  const Integer e = reduced(kd.disc_k, d);
  const Integer e1 = reduced(*kd.sqrt.delta1, d);
  const Integer e2 = reduced(*kd.sqrt.delta2, d);
  const Integer nu = 2 * kd.h2;
  echo_sqrt(b, kd);
  b.echo("e", str(e));
  b.echo("e1", str(e1));
  b.echo("e2", str(e2));
  b.step("Q = 1 closed form with e = " + str(e) + ", e1 = " + str(e1) + ", e2 = " + str(e2) +
         ", nu = 2h2 = " + str(nu));
  const Rational half(1, 2);
  if (!real) {
    b.step("imaginary field: delta- = delta+");
    b.term(d, 1, 1, half, half);
    b.term(d, e, 1, half, half);
    b.term(d, e1, nu, half, half);
    b.term(d, e2, nu, half, half);
    return b.finish();
  }
  const Rational sign = kd.sqrt.c_positive ? -1 : 1;
  b.step(std::string("real field: c ") + (kd.sqrt.c_positive ? "> 0" : "< 0") +
         ", delta- = (S1 - Se)/2 + (-1)^[c>0] (S_e1(2h2) - S_e2(2h2))/2");
  b.term(d, 1, 1, half, half);
  b.term(d, e, 1, half, -half);
  b.term(d, e1, nu, half, sign * half);
  b.term(d, e2, nu, half, -sign * half);
  return b.finish();
}

DensityResult delta_gauss(const Integer& d, const NormalForm& nf) {
  const KummerData& kd = nf.kd;
  require(kd.disc_k == -4 && divides(2, d) && kd.quartic, "delta_gauss: needs D = -4 and even d");
  Builder b(CaseTag::GAUSS, nf);
  const Integer e = 4 / gcd(d, 4);
  const Integer e1 = reduced(*kd.sqrt.delta1, d);
  const Integer e2 = reduced(*kd.sqrt.delta2, d);
  const Integer f = reduced(kd.quartic->value, d);
  echo_sqrt(b, kd);
  b.echo("f(L)", str(kd.quartic->value));
  b.echo("e", str(e));
  b.echo("e1", str(e1));
  b.echo("e2", str(e2));
  b.echo("f", str(f));
  b.step("Q(i) closed form with e = " + str(e) + ", e1 = " + str(e1) + ", e2 = " + str(e2) +
         ", f = " + str(f) + ", f(L) = " + str(kd.quartic->value));
  const Rational half(1, 2);
  b.term(d, 1, 1, half, half);
  b.term(d, e, 1, half, half);
  b.term(d, e1, 2 * kd.h2, half, half);
  b.term(d, e2, 2 * kd.h2, half, half);
  b.term(d, f, 4 * kd.h2, 2, 2);
  return b.finish();
}

DensityResult delta_eisen(const Integer& d, const NormalForm& nf) {
  const KummerData& kd = nf.kd;
  require(kd.disc_k == -3 && gcd(d, 6) > 1 && kd.cubic, "delta_eisen: needs D = -3 and (d,6) > 1");
  Builder b(CaseTag::EISEN, nf);
  const Integer e1 = reduced(*kd.sqrt.delta1, d);
  const Integer e2 = reduced(*kd.sqrt.delta2, d);
  const Integer et = e1 < e2 ? e1 : e2;
  const Integer f = reduced(kd.cubic->value, d);
  const Rational w = divides(3, d) ? 2 : 1;
  echo_sqrt(b, kd);
  b.echo("f(L)", str(kd.cubic->value));
  b.echo("e~", str(et));
  b.echo("f", str(f));
  b.step("Q(zeta3) closed form with e~ = " + str(et) + ", f = " + str(f) + ", f(L) = " +
         str(kd.cubic->value) + ", prefactor 2^[3|d] = " + str(w));
  b.step("cube-root data from gamma~^(1/h6) = " + to_string(kd.cubic_input));
  const Rational half = w / 2;
  b.term(d, 1, 1, half, half);
  b.term(d, et, 2 * kd.h2, half, half);
  b.term(d, f, 3 * kd.h3, 2 * half, 2 * half);
  b.term(d, lcm(et, f), 6 * kd.h6, 2 * half, 2 * half);
  return b.finish();
}

DensityResult delta_odd_generic(const Integer& d, const NormalForm& nf) {
  const KummerData& kd = nf.kd;
  const Integer& D = kd.disc_k;
  if (D == -3) {
    require(gcd(d, 6) == 1, "delta_odd_generic: needs (d,6) = 1 for D = -3");
  } else {
    require(!divides(2, d), "delta_odd_generic: needs odd d");
  }
  Builder b(CaseTag::ODD_GENERIC, nf);
  const Rational half(1, 2);
  if (D == -3 || D == -4) {
    b.step("odd d over a cyclotomic field: delta = S_{d,1,h}");
    b.term(d, 1, 1, half, half);
  } else {
    const Integer e = reduced(D, d);
    b.echo("e", str(e));
    if (D > 0) {
      b.step("odd d, real field: delta+ = (S1 + Se)/2, delta- = (S1 - Se)/2 with e = " + str(e));
      b.term(d, 1, 1, half, half);
      b.term(d, e, 1, half, -half);
    } else {
      b.step("odd d, imaginary field: delta = S1 + Se with e = " + str(e));
      b.term(d, 1, 1, half, half);
      b.term(d, e, 1, half, half);
    }
  }
  DensityResult r = b.finish();

  const OracleResult oracle = series_oracle(nf, d, Integer(kCertifyCutoff));
  if (!oracle.delta.contains(r.delta) || !oracle.delta_plus.contains(r.delta_plus) ||
      !oracle.delta_minus.contains(r.delta_minus)) {
    throw OracleMismatchError("odd-d closed form " + str(r.delta) + " for d = " + str(d) +
                              " lies outside the series enclosure [" + str(oracle.delta.lo) + ", " +
                              str(oracle.delta.hi) + "]");
  }
  r.steps.push_back("certified by direct series up to v <= " + std::to_string(kCertifyCutoff));
  return r;
}

DensityResult delta_normal(const Integer& d, const NormalForm& nf) {
  DensityResult r;
  const Integer& D = nf.kd.disc_k;
  const bool even = divides(2, d);
  if (d == 1) {
    r = trivial_result(nf);
  } else if (D == -4) {
    r = even ? delta_gauss(d, nf) : delta_odd_generic(d, nf);
  } else if (D == -3) {
    r = gcd(d, 6) > 1 ? delta_eisen(d, nf) : delta_odd_generic(d, nf);
  } else if (!even) {
    r = delta_odd_generic(d, nf);
  } else {
    r = nf.kd.sqrt.q_flag ? delta_q1(d, nf) : delta_q0(d, nf);
  }
  r.leaves.push_back({nf.gamma_tilde, d, r.delta, r.delta_plus, r.delta_minus});
  return r;
}

namespace detail {

DensityResult combine_switch(const Integer& d, DensityResult twice, DensityResult half,
                             DensityResult same) {
  DensityResult out;
  out.case_tag = CaseTag::SWITCH_MINUS1;
  out.delta = twice.delta + half.delta - same.delta;
  out.delta_plus = twice.delta_plus + half.delta_plus - same.delta_plus;
  out.delta_minus = twice.delta_minus + half.delta_minus - same.delta_minus;
  out.trace = std::move(twice.trace);
  out.trace.insert(out.trace.end(), half.trace.begin(), half.trace.end());
  for (auto t : same.trace) {
    t.coefficient = -t.coefficient;
    out.trace.push_back(std::move(t));
  }
  out.steps.push_back("switch to -gamma: 2 || d, so delta(" + str(d) + ") = delta_{-gamma}(" +
                      str(Integer(2 * d)) + ") + delta_{-gamma}(" + str(Integer(d / 2)) +
                      ") - delta_{-gamma}(" + str(d) + ")");
  out.steps.push_back("delta_{-gamma}(" + str(Integer(2 * d)) + ") = " + str(twice.delta));
  append(out.steps, indent(twice.steps));
  out.steps.push_back("delta_{-gamma}(" + str(Integer(d / 2)) + ") = " + str(half.delta));
  append(out.steps, indent(half.steps));
  out.steps.push_back("delta_{-gamma}(" + str(d) + ") = " + str(same.delta));
  append(out.steps, indent(same.steps));
  for (auto* part : {&twice, &half, &same}) {
    out.leaves.insert(out.leaves.end(), part->leaves.begin(), part->leaves.end());
  }
  out.echo = std::move(same.echo);
  return out;
}

}  // namespace detail

DensityResult delta_gauss_hi(const Integer& d, const QuadElem& gamma) {
  const PowerIndexData pix = power_index(gamma);
  require(gamma.disc_k == -4 && pix.zeta_star == 1, "delta_gauss_hi: needs h = h(i) > h(+-1)");
  const NormalForm nf = normal_from(pix);
  const unsigned k = arith::valuation(d, 2);
  const Integer dp = d / pow_ui(2, k);
  if (k == 0) {
    DensityResult r = delta_normal(d, nf);
    r.case_tag = CaseTag::GAUSS_HI;
    r.steps.insert(r.steps.begin(), "h = h(i), d odd: delta(d) = delta_{i gamma}(d)");
    return r;
  }
  const Integer& h2 = nf.kd.h2;
  const Integer f = nf.kd.quartic->value;
  const unsigned m = (divides(*nf.kd.sqrt.delta1, 8 * dp) ? 1u : 0u) + (divides(f, 16 * dp) ? 1u : 0u);
  Rational factor;
  if (k <= 2) {
    factor = 1 - arith::ratio(pow_ui(2, k), 3 * pow_ui(2, m + 2) * h2);
  } else {
    factor = arith::ratio(8, 3 * pow_ui(2, k + m) * h2);
  }
  DensityResult base = delta_normal(dp, nf);
  DensityResult r = base;
  scale(r, factor);
  r.case_tag = CaseTag::GAUSS_HI;
  r.steps.clear();
  r.steps.push_back("h = h(i): d = 2^" + std::to_string(k) + " * " + str(dp) + ", m = [Delta1 | 8d'] + [f(L) | 16d'] = " +
                    std::to_string(m) + ", h2 = " + str(h2));
  r.steps.push_back("delta_{i gamma}(" + str(dp) + ") = " + str(base.delta));
  append(r.steps, indent(base.steps));
  r.steps.push_back("factor = " + str(factor) + ", delta = " + str(r.delta));
  r.echo.emplace_back("k", std::to_string(k));
  r.echo.emplace_back("d'", str(dp));
  r.echo.emplace_back("m", std::to_string(m));
  r.echo.emplace_back("f(L)", str(f));
  r.echo.emplace_back("factor", str(factor));
  return r;
}

DensityResult delta_eisen_homega(const Integer& d, const QuadElem& gamma) {
  const PowerIndexData pix = power_index(gamma);
  require(gamma.disc_k == -3 && pix.zeta_star == 2, "delta_eisen_homega: needs h = h(omega) > h(+-1)");
  const NormalForm nf = normal_from(pix);
  const unsigned k = arith::valuation(d, 3);
  const Integer dp = d / pow_ui(3, k);
  if (k == 0) {
    DensityResult r = delta_normal(d, nf);
    r.case_tag = CaseTag::EISEN_HOMEGA;
    r.steps.insert(r.steps.begin(), "h = h(omega), 3 !| d: delta(d) = delta_{omega gamma}(d)");
    return r;
  }
  const Integer& h3 = nf.kd.h3;
  const Integer f = nf.kd.cubic->value;
  const unsigned m = divides(f, 9 * dp) ? 1u : 0u;
  Rational factor;
  if (k == 1) {
    factor = 1 - arith::ratio(1, 4 * pow_ui(3, m) * h3);
  } else {
    factor = arith::ratio(9, 4 * pow_ui(3, k + m) * h3);
  }
  DensityResult base = delta_normal(dp, nf);
  DensityResult r = base;
  scale(r, factor);
  r.case_tag = CaseTag::EISEN_HOMEGA;
  r.steps.clear();
  r.steps.push_back("h = h(omega): d = 3^" + std::to_string(k) + " * " + str(dp) + ", m = [f(L) | 9d'] = " +
                    std::to_string(m) + ", h3 = " + str(h3));
  r.steps.push_back("delta_{omega gamma}(" + str(dp) + ") = " + str(base.delta));
  append(r.steps, indent(base.steps));
  r.steps.push_back("factor = " + str(factor) + ", delta = " + str(r.delta));
  r.echo.emplace_back("k", std::to_string(k));
  r.echo.emplace_back("d'", str(dp));
  r.echo.emplace_back("m", std::to_string(m));
  r.echo.emplace_back("f(L)", str(f));
  r.echo.emplace_back("factor", str(factor));
  return r;
}

namespace {

DensityResult route(const QuadElem& gamma, const Integer& d) {
  const PowerIndexData pix = power_index(gamma);
  const Integer& D = gamma.disc_k;
  const unsigned j = pix.zeta_star;
  const unsigned order = mu_order(D);
  auto via_minus = [&](const Integer& dd) { return route(qf_neg(gamma), dd); };

  DensityResult r;
  std::string head;
  if (j == 0) {
    r = delta_normal(d, normal_from(pix));
  } else if (2 * j == order) {
    r = switch_minus_one(d, via_minus);
  } else if (D == -4) {
    if (j == 1) {
      r = delta_gauss_hi(d, gamma);
    } else {
      head = "zeta* = -i: replace gamma by its conjugate";
      r = delta_gauss_hi(d, qf_conj(gamma));
    }
  } else if (D == -3) {
    if (j == 2) {
      r = delta_eisen_homega(d, gamma);
    } else if (j == 4) {
      head = "zeta* = omega^2: replace gamma by its conjugate";
      r = delta_eisen_homega(d, qf_conj(gamma));
    } else {
      head = "zeta* = " + root_name(D, j) + ": switch to -gamma";
      r = switch_minus_one(d, via_minus);
    }
  } else {
    throw UnreachableCaseError("no route for zeta* = " + root_name(D, j));
  }
  if (!head.empty()) r.steps.insert(r.steps.begin(), head);
  r.h = pix.h;
  r.zeta = root_name(D, j);
  return r;
}

}  // namespace

DensityResult dispatch(const QuadElem& gamma, const Integer& d) {
  if (d <= 0) throw PreconditionError("d must be positive");
  DensityResult r;
  try {
    r = route(gamma, d);
  } catch (const CaseError& e) {
    throw UnreachableCaseError(std::string("routing reached an inapplicable case: ") + e.what());
  }
  std::ostringstream table;
  const PowerIndexData pix = power_index(gamma);
  for (unsigned j = 0; j < pix.table.size(); ++j) {
    if (j) table << ", ";
    table << "h(" << root_name(gamma.disc_k, j) << ")=" << pix.table[j].get_str();
  }
  r.echo.insert(r.echo.begin(), {"h table", table.str()});
  r.echo.insert(r.echo.begin() + 1, {"zeta*", r.zeta});
  r.echo.insert(r.echo.begin() + 2, {"h", str(r.h)});

  if (r.delta != r.delta_plus + r.delta_minus || r.delta < 0 || r.delta > 1 || r.delta_plus < 0 ||
      r.delta_minus < 0) {
    throw InternalError("density invariants violated for d = " + str(d));
  }
  Rational total = 0;
  for (const auto& t : r.trace) total += t.coefficient * t.value;
  if (total != r.delta) throw InternalError("trace does not sum to delta");
  return r;
}

DensityResult dispatch(const SequenceContext& ctx, const Integer& d) { return dispatch(ctx.gamma, d); }

}  // namespace lucasdensity
