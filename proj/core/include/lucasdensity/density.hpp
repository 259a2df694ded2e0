#pragma once

// Exact densities of primes whose rank of appearance is divisible by d.

#include <string>
#include <utility>
#include <vector>

#include "lucasdensity/kummer.hpp"
#include "lucasdensity/quadfield.hpp"

namespace lucasdensity {

enum class CaseTag {
  Q0,
  Q1_real,
  Q1_imag,
  GAUSS,
  EISEN,
  SWITCH_MINUS1,
  GAUSS_HI,
  EISEN_HOMEGA,
  ODD_GENERIC,
};

std::string to_string(CaseTag tag);

/// One S_{d,e,h}(nu) evaluation and its weight in delta.
struct STerm {
  Integer d, e, h, nu;
  Rational coefficient;
  Rational value;
};

/// Closed-form pieces of S_{d,e,h}(nu), for derivation output.
struct SFactors {
  bool vanishes = false;  // e or nu not supported on the primes of d
  Integer h_d;            // (h, d^inf)
  Integer big_d;          // d / (d, nu^inf)
  Integer h_big_d;        // (h, D^inf)
  Integer lcm;            // [e, nu * (h, D^inf)]
  Integer phi_nu;
  Rational nu_product;    // prod over p | nu
  Rational d_product;     // prod over p | d of p^2/(p^2-1)
  Rational value;
};

/// HypothesisError when (h, nu^inf) does not divide nu (checked after the
/// vanishing conditions).
SFactors s_factors(const Integer& d, const Integer& e, const Integer& h, const Integer& nu);
Rational s_eval(const Integer& d, const Integer& e, const Integer& h, const Integer& nu);

/// gamma~ together with its data, valid when h(1) of gamma~ is maximal.
struct NormalForm {
  QuadElem gamma_tilde;
  Integer h;
  QuadElem gamma0;
  KummerData kd;
};

/// CaseError unless h(1) attains the power index of gamma_tilde.
NormalForm normal_form(const QuadElem& gamma_tilde);

/// A density evaluated directly on a normal form; every routed result is a
/// rational combination of these.
struct Leaf {
  QuadElem gamma_tilde;
  Integer d;
  Rational delta, delta_plus, delta_minus;
};

struct DensityResult {
  Rational delta, delta_plus, delta_minus;
  CaseTag case_tag = CaseTag::ODD_GENERIC;
  std::vector<STerm> trace;  // sum of coefficient * value equals delta
  Integer h;
  std::string zeta;
  std::vector<std::pair<std::string, std::string>> echo;  // routing inputs
  std::vector<std::string> steps;                         // derivation narrative
  std::vector<Leaf> leaves;
};

// Closed forms on a normal form. Each throws CaseError when its
// preconditions fail.
DensityResult delta_q0(const Integer& d, const NormalForm& nf);
DensityResult delta_q1(const Integer& d, const NormalForm& nf);
DensityResult delta_gauss(const Integer& d, const NormalForm& nf);
DensityResult delta_eisen(const Integer& d, const NormalForm& nf);
/// Certified against series_oracle; OracleMismatchError on disagreement.
DensityResult delta_odd_generic(const Integer& d, const NormalForm& nf);

/// Picks the closed form for a normal form.
DensityResult delta_normal(const Integer& d, const NormalForm& nf);

/// For 2 || d: eval(2d) + eval(d/2) - eval(d); otherwise eval(d).
template <class Eval>
DensityResult switch_minus_one(const Integer& d, Eval&& eval_minus_gamma);

/// gamma with zeta* = i.
DensityResult delta_gauss_hi(const Integer& d, const QuadElem& gamma);
/// gamma with zeta* = omega.
DensityResult delta_eisen_homega(const Integer& d, const QuadElem& gamma);

/// Routes any non-torsion norm-1 gamma. Every CaseError raised below is
/// reported as UnreachableCaseError.
DensityResult dispatch(const QuadElem& gamma, const Integer& d);
DensityResult dispatch(const SequenceContext& ctx, const Integer& d);

struct Interval {
  Rational lo, hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

struct OracleResult {
  Interval delta, delta_plus, delta_minus;
  Integer terms;  // number of v values summed
};

/// Direct summation over v | d^inf, v <= cutoff, with a rigorous tail
/// enclosure. Requires a normal form.
OracleResult series_oracle(const NormalForm& nf, const Integer& d, const Integer& cutoff);
OracleResult series_oracle(const QuadElem& gamma_tilde, const Integer& d, const Integer& cutoff);

/// Cutoff used when certifying odd-generic closed forms.
inline constexpr unsigned long kCertifyCutoff = 4096;

// ---- template definition ----

namespace detail {
DensityResult combine_switch(const Integer& d, DensityResult twice, DensityResult half,
                             DensityResult same);
}

template <class Eval>
DensityResult switch_minus_one(const Integer& d, Eval&& eval_minus_gamma) {
  if (d == 1) return eval_minus_gamma(d);
  if (arith::valuation(d, 2) == 1) {
    return detail::combine_switch(d, eval_minus_gamma(Integer(2 * d)),
                                  eval_minus_gamma(Integer(d / 2)), eval_minus_gamma(d));
  }
  DensityResult out = eval_minus_gamma(d);
  out.steps.insert(out.steps.begin(),
                   "switch to -gamma: v2(d) != 1, so delta(d) = delta_{-gamma}(d)");
  out.case_tag = CaseTag::SWITCH_MINUS1;
  return out;
}

}  // namespace lucasdensity
