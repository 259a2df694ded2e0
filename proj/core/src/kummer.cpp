#include "lucasdensity/kummer.hpp"

#include <algorithm>

#include "lucasdensity/errors.hpp"

namespace lucasdensity {

namespace {

bool divides(const Integer& a, const Integer& b) {
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

ConductorData split_conductor(const Integer& value, const Integer& prime) {
  ConductorData out;
  out.value = value;
  out.prime_exponent = arith::valuation(value, prime);
  Integer pk;
  mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), out.prime_exponent);
  out.odd_part = value / pk;
  return out;
}

bool squarefree(const Integer& n) { return n == 1 || arith::mobius(n) != 0; }

// Representative of x * omega^j (j = 0,1,2) with the smallest height.
QuadElem smallest_cube_class_rep(const QuadElem& x) {
  const QuadElem omega = root_of_unity(x.disc_k, 2);
  QuadElem best = x;
  QuadElem cur = x;
  auto key = [](const QuadElem& y) {
    Integer den;
    mpz_lcm(den.get_mpz_t(), y.u.get_den_mpz_t(), y.v.get_den_mpz_t());
    return den;
  };
  for (int j = 1; j < 3; ++j) {
    cur = qf_mul(cur, omega);
    const Integer kc = key(cur), kb = key(best);
    if (kc < kb || (kc == kb && (abs(cur.u) < abs(best.u) ||
                                 (abs(cur.u) == abs(best.u) && cur.u > best.u)))) {
      best = cur;
    }
  }
  return best;
}

bool member(unsigned m, const Integer& n, const KummerData& kd) {
  switch (m) {
    case 1:
      return true;
    case 2:
      return kd.sqrt.q_flag && (divides(*kd.sqrt.delta1, n) || divides(*kd.sqrt.delta2, n));
    case 4:
      return member(2, n, kd) && kd.quartic && divides(kd.quartic->value, lcm(4, n));
    case 3:
      return kd.cubic && divides(kd.cubic->value, n);
    case 6:
      return member(2, n, kd) && member(3, n, kd);
    default:
      throw InternalError("unexpected root-of-unity order");
  }
}

}  // namespace

Integer quad_disc(const Rational& q) {
  if (q == 0) throw PreconditionError("quad_disc: argument must be nonzero");
  const Integer s = arith::squarefree_kernel(q).kernel;
  if (s == 1) return 1;
  if (arith::mod_ui(s, 4) == 1) return s;
  return 4 * s;
}

SqrtData sqrt_data(const QuadElem& root) {
  SqrtData out;
  const Rational n = qf_norm(root);
  if (n != 1 && n != -1) throw NormError("sqrt_data: root must have norm +-1");
  out.q_flag = n == 1;
  if (!out.q_flag) return out;
  const Rational c = (root.u - 1) / 2;
  if (c == 0) throw DegenerateError("sqrt_data: c vanishes");
  out.c = c;
  out.delta1 = quad_disc(c);
  out.delta2 = quad_disc(c / Rational(root.disc_k));
  out.c_positive = c > 0;
  return out;
}

ConductorData quartic_conductor(const QuadElem& root) {
  if (root.disc_k != -4) throw PreconditionError("quartic_conductor: field must be Q(i)");
  if (qf_norm(root) != 1) throw NormError("quartic_conductor: root must have norm 1");
  // L = Q(i, alpha) with 2 alpha^2 = 1 + sqrt(c)
  const Rational c = (1 + root.u) / 2;
  if (c == 0 || arith::is_rational_square(c)) {
    throw DegenerateError("quartic_conductor: input is a square in K");
  }
  const Poly f = integralize({(1 - c) / 4, 0, -1, 0, 1});
  const Integer disc = abs(poly_field_disc(f));
  const Integer sub = abs(quad_disc(c));
  if (!divides(sub, disc)) throw ShapeError("quartic_conductor: quadratic subfield mismatch");
  const auto ff = arith::exact_sqrt(disc / sub);
  if (!ff) throw ShapeError("quartic_conductor: discriminant is not conductor-shaped");
  const ConductorData out = split_conductor(lcm(4, *ff), 2);
  if (out.prime_exponent < 2 || out.prime_exponent > 4 || !squarefree(out.odd_part)) {
    throw ShapeError("quartic_conductor: conductor " + out.value.get_str() + " has the wrong shape");
  }
  return out;
}

ConductorData cubic_conductor(const QuadElem& root) {
  if (root.disc_k != -3) throw PreconditionError("cubic_conductor: field must be Q(sqrt(-3))");
  if (qf_norm(root) != 1) throw NormError("cubic_conductor: root must have norm 1");
  const Poly f = integralize({-2 * root.u, -3, 0, 1});
  const Integer disc = poly_field_disc(f);
  const auto ff = arith::exact_sqrt(disc);
  if (!ff) throw ShapeError("cubic_conductor: field discriminant is not a square");
  const ConductorData out = split_conductor(*ff, 3);
  bool ok = (out.prime_exponent == 0 || out.prime_exponent == 2) && squarefree(out.odd_part);
  if (ok && out.odd_part > 1) {
    for (const auto& p : arith::prime_divisors(out.odd_part)) ok = ok && arith::mod_ui(p, 3) == 1;
  }
  if (!ok) throw ShapeError("cubic_conductor: conductor " + out.value.get_str() + " has the wrong shape");
  return out;
}

KummerData kummer_data(const QuadElem& gamma0, const Integer& h) {
  KummerData kd;
  kd.disc_k = gamma0.disc_k;
  kd.h = h;
  kd.h2 = arith::gcd_power_infinity(h, 2);
  kd.h3 = arith::gcd_power_infinity(h, 3);
  kd.h6 = arith::gcd_power_infinity(h, 6);
  if (kd.disc_k == -3) {
    // the h6-th root is only ambiguous up to omega when 3 | h
    const QuadElem root = qf_pow(gamma0, Integer(h / kd.h6).get_si());
    kd.cubic_input = kd.h3 > 1 ? smallest_cube_class_rep(root) : root;
    kd.sqrt_input = kd.cubic_input;
    kd.cubic = cubic_conductor(kd.cubic_input);
  } else {
    kd.sqrt_input = qf_pow(gamma0, Integer(h / kd.h2).get_si());
  }
  kd.sqrt = sqrt_data(kd.sqrt_input);
  if (kd.disc_k == -4) kd.quartic = quartic_conductor(kd.sqrt_input);
  return kd;
}

unsigned kummer_t(const Integer& n, const Integer& dd, const KummerData& kd) {
  const unsigned order = mu_order(kd.disc_k);
  unsigned t = 1;
  for (unsigned m = 2; m <= order; ++m) {
    if (order % m != 0) continue;
    const Integer hm = arith::gcd_power_infinity(kd.h, m);
    if (!divides(m * hm, dd)) continue;
    if (member(m, n, kd)) t = std::max(t, m);
  }
  return t;
}

Integer kummer_degree(const Integer& n, const Integer& dd, const KummerData& kd) {
  if (n <= 0 || dd <= 0 || !divides(dd, n)) throw PreconditionError("kummer_degree: need dd | n");
  const unsigned t = kummer_t(n, dd, kd);
  Integer out = dd * arith::euler_phi(n) / (gcd(dd, kd.h) * t);
  if (!divides(kd.disc_k, n)) out *= 2;
  return out;
}

bool sigma_exists(const Integer& dv, const Integer& uv, const KummerData& kd) {
  if (kd.disc_k < 0) return true;
  const bool not_dk = !divides(kd.disc_k, dv);
  const bool square_root_in = member(2, dv, kd);
  if (!divides(2 * kd.h2, uv) || !square_root_in) {
    return not_dk && (!divides(kd.h2, uv) || kd.sqrt.q_flag);
  }
  const bool c_neg_branch = !kd.sqrt.c_positive && divides(*kd.sqrt.delta1, dv);
  const bool c_pos_branch = kd.sqrt.c_positive && divides(*kd.sqrt.delta2, dv);
  return not_dk && (c_neg_branch || c_pos_branch);
}

}  // namespace lucasdensity
