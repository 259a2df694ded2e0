#pragma once

// Arithmetic in K = Q(sqrt(D)) for a fundamental discriminant D, plus the
// Lucas root quotient and its power index data.

#include <optional>
#include <string>
#include <vector>

#include "lucasdensity/arith.hpp"

namespace lucasdensity {

/// u + v*sqrt(disc_k). disc_k is a fundamental discriminant, never a square.
struct QuadElem {
  Integer disc_k;
  Rational u;
  Rational v;

  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.disc_k == b.disc_k && a.u == b.u && a.v == b.v;
  }
};

QuadElem qf_make(const Integer& disc_k, const Rational& u, const Rational& v);
QuadElem qf_one(const Integer& disc_k);
Rational qf_norm(const QuadElem& x);
Rational qf_trace(const QuadElem& x);
QuadElem qf_conj(const QuadElem& x);
QuadElem qf_neg(const QuadElem& x);
QuadElem qf_mul(const QuadElem& x, const QuadElem& y);
QuadElem qf_inv(const QuadElem& x);
/// Negative k inverts first.
QuadElem qf_pow(const QuadElem& x, long k);
bool qf_is_zero(const QuadElem& x);
bool qf_is_one(const QuadElem& x);
/// "(u)+(v)*sqrt(D)" style, e.g. "3+1*sqrt(8)".
std::string to_string(const QuadElem& x);

/// Whether d is a fundamental discriminant (d != 1).
bool is_fundamental_discriminant(const Integer& d);

/// u + v*sqrt(radicand) rewritten over the fundamental discriminant of
/// Q(sqrt(radicand)). Throws ReducibleError when radicand is a square.
QuadElem gamma_from_radicand(const Rational& u, const Rational& v, const Integer& radicand);

struct LucasParams {
  Integer a1;
  Integer a2;
};

struct SequenceContext {
  std::optional<LucasParams> lucas;  // absent for direct gamma input
  Integer delta;                     // a1^2 - 4 a2, or disc_k for direct input
  Integer disc_k;
  QuadElem gamma;
};

/// gamma = a/b for the roots a, b of X^2 - a1 X + a2.
/// ZeroParameterError for a1 == 0 or a2 == 0, ReducibleError when the
/// discriminant is a square, TorsionError when gamma is a root of unity.
SequenceContext make_context(const Integer& a1, const Integer& a2);

/// Direct gamma input. Requires norm 1 (NormError), v != 0 and a
/// non-square radicand (ReducibleError), non-torsion (TorsionError).
SequenceContext make_context(const Rational& u, const Rational& v, const Integer& radicand);

/// Same checks for an element already in canonical form.
SequenceContext make_context(const QuadElem& gamma);

/// Whether x^k == 1 for some 1 <= k <= 6.
bool is_torsion(const QuadElem& x);

// Roots of unity of K are encoded as exponents of a fixed generator:
// -1 for generic K, i = sqrt(-4)/2 for D = -4, zeta6 = (1+sqrt(-3))/2 for D = -3.
unsigned mu_order(const Integer& disc_k);
QuadElem root_of_unity(const Integer& disc_k, unsigned exponent);
/// ASCII name: "1", "-1", "i", "-i", "omega", "omega^2", "zeta6", "zeta6^5".
std::string root_name(const Integer& disc_k, unsigned exponent);
/// Exponent of the complex conjugate root.
unsigned conj_exponent(const Integer& disc_k, unsigned exponent);
/// Tie-break order used when several roots attain the maximal power index.
std::vector<unsigned> root_preference(const Integer& disc_k);

/// Some y in K with y^n == x, verified exactly; nullopt when x is not an
/// n-th power in K. Throws PreconditionError for x == 0 or n == 0.
std::optional<QuadElem> is_nth_power(const QuadElem& x, unsigned long n);

/// Fundamental unit eps > 1 of the maximal order of Q(sqrt(disc_k)).
QuadElem fundamental_unit(const Integer& disc_k);

struct PowerIndexData {
  std::vector<Integer> table;  // table[j] = h(generator^j)
  Integer h;
  unsigned zeta_star = 0;  // exponent
  QuadElem gamma_tilde;    // zeta_star * gamma
  QuadElem gamma0;         // gamma0^h == gamma_tilde
};

/// Requires a norm-1 non-torsion gamma.
PowerIndexData power_index(const QuadElem& gamma);

/// Candidate bound for every h(zeta): each h(zeta) divides the returned value.
Integer power_index_bound(const QuadElem& gamma);

}  // namespace lucasdensity
