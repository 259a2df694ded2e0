#pragma once

// Square-root, fourth-root and cube-root criteria inside cyclotomic
// extensions of K, and the resulting degrees [K(zeta_n, gamma^(1/dd)) : Q].

#include <optional>
#include <vector>

#include "lucasdensity/quadfield.hpp"

namespace lucasdensity {

struct SqrtData {
  bool q_flag = false;  // norm of the root is +1
  // The fields below are set only when q_flag holds.
  std::optional<Rational> c;
  std::optional<Integer> delta1;  // disc of Q(sqrt(c)), 1 when c is a square
  std::optional<Integer> delta2;  // disc of Q(sqrt(c/D)), 1 when that is a square
  bool c_positive = false;
};

struct ConductorData {
  Integer value;
  unsigned prime_exponent = 0;  // exponent of 2 (quartic) or 3 (cubic) in value
  Integer odd_part;             // value with that prime removed, squarefree
};

/// Fundamental discriminant of Q(sqrt(q)); 1 when q is a rational square.
Integer quad_disc(const Rational& q);

/// Input is gamma~^(1/h2) (gamma~^(1/h6) for D = -3). DegenerateError if c == 0.
SqrtData sqrt_data(const QuadElem& root);

/// Monic polynomial with coefficients listed from the constant term up.
using Poly = std::vector<Integer>;
using RationalPoly = std::vector<Rational>;

/// Y = D*X substitution with D the lcm of coefficient denominators.
Poly integralize(const RationalPoly& monic);

/// Discriminant of the monic polynomial.
Integer poly_disc(const Poly& f);

/// Whether the monic integer polynomial of degree <= 4 factors over Q.
bool is_reducible(const Poly& f);

/// Discriminant of the field Q[X]/(f) for monic irreducible f of degree 2..4.
/// ReducibleError if f factors.
Integer poly_field_disc(const Poly& f);

/// Conductor of Q(i, root^(1/4)) for a norm-1 non-square root over D = -4.
/// ShapeError unless value = 2^a * squarefree odd with a in {2,3,4}.
ConductorData quartic_conductor(const QuadElem& root);

/// Conductor of the splitting field of X^3 - 3X - 2u, u the rational part
/// of a norm-1 non-cube root over D = -3. ShapeError unless value = 3^a * m
/// with a in {0,2}, m squarefree with every prime = 1 mod 3.
ConductorData cubic_conductor(const QuadElem& root);

/// Everything the degree formula and the closed forms need for an element
/// gamma~ = gamma0^h with h = h(1) of gamma~.
struct KummerData {
  Integer disc_k;
  Integer h, h2, h3, h6;
  QuadElem sqrt_input;  // gamma0^(h/h2), or gamma0^(h/h6) when D = -3
  SqrtData sqrt;
  std::optional<ConductorData> quartic;  // D = -4
  QuadElem cubic_input;                  // D = -3 only
  std::optional<ConductorData> cubic;    // D = -3
};

KummerData kummer_data(const QuadElem& gamma0, const Integer& h);

/// [K_{n,dd} : Q]. PreconditionError unless dd divides n.
Integer kummer_degree(const Integer& n, const Integer& dd, const KummerData& kd);

/// Whether K_{dv,uv} carries the automorphism sigma_{u,v}.
bool sigma_exists(const Integer& dv, const Integer& uv, const KummerData& kd);

/// Largest m | #mu(K) with m*h_m | dd whose root lies in K(zeta_n).
unsigned kummer_t(const Integer& n, const Integer& dd, const KummerData& kd);

}  // namespace lucasdensity
