// n-th root test, fundamental units and the power index.

#include <algorithm>
#include <utility>

#include "bigfloat.hpp"
#include "lucasdensity/errors.hpp"
#include "lucasdensity/quadfield.hpp"

namespace lucasdensity {

namespace {

using detail::BigFloat;

constexpr mpfr_prec_t kMaxPrecision = mpfr_prec_t{1} << 24;

std::size_t bitlen(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

std::size_t height_bits(const QuadElem& x) {
  return std::max({bitlen(x.u.get_num()), bitlen(x.u.get_den()), bitlen(x.v.get_num()),
                   bitlen(x.v.get_den()), bitlen(x.disc_k)});
}

// Coordinates of x in the integral basis {1, w}: w = sqrt(D)/2 or (1+sqrt(D))/2.
std::pair<Rational, Rational> integral_coords(const QuadElem& x) {
  if (arith::mod_ui(x.disc_k, 4) == 0) return {x.u, 2 * x.v};
  return {x.u - x.v, 2 * x.v};
}

bool rational_nth_root_exists(const Rational& q, unsigned long n) {
  if (q < 0 && n % 2 == 0) return false;
  Integer r;
  Integer num = abs(q.get_num());
  if (!mpz_root(r.get_mpz_t(), num.get_mpz_t(), n)) return false;
  Integer den = q.get_den();
  return mpz_root(r.get_mpz_t(), den.get_mpz_t(), n) != 0;
}

// Rounds scale*value to the nearest integer; false if it is more than 1/4 away.
bool snap(const BigFloat& value, const Integer& scale, Integer& out) {
  BigFloat t(value.prec());
  mpfr_mul_z(t.get(), value.get(), scale.get_mpz_t(), MPFR_RNDN);
  BigFloat r(value.prec());
  mpfr_rint(r.get(), t.get(), MPFR_RNDN);
  BigFloat diff(value.prec());
  mpfr_sub(diff.get(), t.get(), r.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  if (mpfr_cmp_d(diff.get(), 0.25) > 0) return false;
  mpfr_get_z(out.get_mpz_t(), r.get(), MPFR_RNDN);
  return true;
}

// Real n-th roots of e (both signs for even n).
std::vector<BigFloat> real_roots(const BigFloat& e, unsigned long n) {
  std::vector<BigFloat> out;
  const mpfr_prec_t prec = e.prec();
  if (mpfr_sgn(e.get()) < 0 && n % 2 == 0) return out;
  BigFloat a(prec);
  mpfr_abs(a.get(), e.get(), MPFR_RNDN);
  BigFloat r(prec);
  mpfr_rootn_ui(r.get(), a.get(), n, MPFR_RNDN);
  if (mpfr_sgn(e.get()) < 0) mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  out.push_back(r);
  if (n % 2 == 0) {
    mpfr_neg(r.get(), r.get(), MPFR_RNDN);
    out.push_back(r);
  }
  return out;
}

std::optional<QuadElem> try_candidate(const QuadElem& x, unsigned long n, const BigFloat& uy,
                                      const BigFloat& vy, const Integer& scale) {
  Integer a, b;
  if (!snap(uy, scale, a) || !snap(vy, scale, b)) return std::nullopt;
  QuadElem y = qf_make(x.disc_k, Rational(a, scale), Rational(b, scale));
  if (qf_is_zero(y)) return std::nullopt;
  if (qf_pow(y, static_cast<long>(n)) == x) return y;
  return std::nullopt;
}

std::optional<QuadElem> nth_root_at(const QuadElem& x, unsigned long n, const Integer& scale,
                                    mpfr_prec_t prec) {
  const Integer& D = x.disc_k;
  BigFloat u(prec, x.u), v(prec, x.v);
  BigFloat s(prec, Integer(abs(D)));
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDN);

  if (D > 0) {
    BigFloat e1(prec), e2(prec);
    mpfr_fma(e1.get(), v.get(), s.get(), u.get(), MPFR_RNDN);
    BigFloat nv(prec);
    mpfr_neg(nv.get(), v.get(), MPFR_RNDN);
    mpfr_fma(e2.get(), nv.get(), s.get(), u.get(), MPFR_RNDN);
    for (const auto& y1 : real_roots(e1, n)) {
      for (const auto& y2 : real_roots(e2, n)) {
        BigFloat uy(prec), vy(prec);
        mpfr_add(uy.get(), y1.get(), y2.get(), MPFR_RNDN);
        mpfr_div_2ui(uy.get(), uy.get(), 1, MPFR_RNDN);
        mpfr_sub(vy.get(), y1.get(), y2.get(), MPFR_RNDN);
        mpfr_div(vy.get(), vy.get(), s.get(), MPFR_RNDN);
        mpfr_div_2ui(vy.get(), vy.get(), 1, MPFR_RNDN);
        if (auto y = try_candidate(x, n, uy, vy, scale)) return y;
      }
    }
    return std::nullopt;
  }

  BigFloat im(prec);
  mpfr_mul(im.get(), v.get(), s.get(), MPFR_RNDN);
  BigFloat r(prec), theta(prec);
  mpfr_hypot(r.get(), u.get(), im.get(), MPFR_RNDN);
  mpfr_rootn_ui(r.get(), r.get(), n, MPFR_RNDN);
  mpfr_atan2(theta.get(), im.get(), u.get(), MPFR_RNDN);
  BigFloat two_pi(prec);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_2ui(two_pi.get(), two_pi.get(), 1, MPFR_RNDN);
  BigFloat phi(prec), c(prec), sn(prec), uy(prec), vy(prec);
  for (unsigned long k = 0; k < n; ++k) {
    mpfr_mul_ui(phi.get(), two_pi.get(), k, MPFR_RNDN);
    mpfr_add(phi.get(), phi.get(), theta.get(), MPFR_RNDN);
    mpfr_div_ui(phi.get(), phi.get(), n, MPFR_RNDN);
    mpfr_sin_cos(sn.get(), c.get(), phi.get(), MPFR_RNDN);
    mpfr_mul(uy.get(), r.get(), c.get(), MPFR_RNDN);
    mpfr_mul(vy.get(), r.get(), sn.get(), MPFR_RNDN);
    mpfr_div(vy.get(), vy.get(), s.get(), MPFR_RNDN);
    if (auto y = try_candidate(x, n, uy, vy, scale)) return y;
  }
  return std::nullopt;
}

}  // namespace

std::optional<QuadElem> is_nth_power(const QuadElem& x, unsigned long n) {
  if (n == 0) throw PreconditionError("is_nth_power: n must be positive");
  if (qf_is_zero(x)) throw PreconditionError("is_nth_power: x must be nonzero");
  if (n == 1) return x;
  if (!rational_nth_root_exists(qf_norm(x), n)) return std::nullopt;

  // m*y is integral whenever m*x is, so 2m*y has integer coordinates.
  const auto [a, b] = integral_coords(x);
  Integer m;
  mpz_lcm(m.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  const Integer scale = 2 * m;

  // absolute error of scale*coordinate must stay far below 1/4
  const std::size_t h = height_bits(x);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(64 + 6 * h + 2 * bitlen(Integer(n)));
  if (prec > kMaxPrecision) {
    throw PrecisionExhaustedError("is_nth_power: required precision exceeds the cap");
  }
  return nth_root_at(x, n, scale, prec);
}

QuadElem fundamental_unit(const Integer& disc_k) {
  if (disc_k <= 0) throw PreconditionError("fundamental_unit: discriminant must be positive");
  if (!is_fundamental_discriminant(disc_k)) {
    throw PreconditionError(disc_k.get_str() + " is not a fundamental discriminant");
  }
  const bool one_mod_four = arith::mod_ui(disc_k, 4) == 1;
  const Integer d = one_mod_four ? disc_k : Integer(disc_k / 4);

  // continued fraction of sqrt(d) until p^2 - d q^2 = +-1
  Integer a0;
  mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
  Integer mm = 0, den = 1, a = a0;
  Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
  while (true) {
    const Integer nrm = p * p - d * q * q;
    if (nrm == 1 || nrm == -1) break;
    mm = den * a - mm;
    den = (d - mm * mm) / den;
    a = (a0 + mm) / den;
    Integer pn = a * p + p_prev;
    Integer qn = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
  }
  QuadElem eps = one_mod_four ? qf_make(disc_k, p, q) : qf_make(disc_k, p, Rational(q, 2));
  if (one_mod_four) {
    if (auto r = is_nth_power(eps, 3)) return *r;
  }
  return eps;
}

Integer power_index_bound(const QuadElem& gamma) {
  const auto [a, b] = integral_coords(gamma);
  Integer m;
  mpz_lcm(m.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  const Integer A = Rational(a * m).get_num();
  const Integer B = Rational(b * m).get_num();
  const Integer content = gcd(A, B);
  const Integer& D = gamma.disc_k;

  Integer g = 0;
  if (m > 1) {
    for (const auto& f : arith::factorize(m)) {
      bool split;
      if (f.prime == 2) {
        split = arith::mod_ui(D, 8) == 1;
      } else {
        split = arith::jacobi(D, f.prime) == 1;
      }
      if (!split) continue;
      const long vm = f.exponent;
      const long vc = content == 0 ? vm : static_cast<long>(arith::valuation(content, f.prime));
      g = gcd(g, Integer(vm - vc));
    }
  }
  if (g != 0) return abs(g);

  // unit: gamma = +-eps^k
  if (D < 0) throw PreconditionError("power_index: gamma is torsion");
  const QuadElem eps = fundamental_unit(D);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(128 + 2 * height_bits(gamma));
  BigFloat s(prec, D);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDN);
  auto log_big = [&](const QuadElem& x) {
    // log(|u| + |v| sqrt(D)), the larger real embedding in absolute value
    BigFloat u(prec, Rational(abs(x.u))), v(prec, Rational(abs(x.v)));
    BigFloat e(prec);
    mpfr_fma(e.get(), v.get(), s.get(), u.get(), MPFR_RNDN);
    mpfr_log(e.get(), e.get(), MPFR_RNDN);
    return e;
  };
  BigFloat lg = log_big(gamma);
  const BigFloat le = log_big(eps);
  mpfr_div(lg.get(), lg.get(), le.get(), MPFR_RNDN);
  const long kabs = mpfr_get_si(lg.get(), MPFR_RNDN);
  for (long k : {kabs, -kabs}) {
    const QuadElem ek = qf_pow(eps, k);
    if (ek == gamma || qf_neg(ek) == gamma) return Integer(2 * (k < 0 ? -k : k));
  }
  throw InternalError("power_index: unit exponent could not be verified");
}

PowerIndexData power_index(const QuadElem& gamma) {
  if (qf_norm(gamma) != 1) throw NormError("power_index: gamma must have norm 1");
  if (is_torsion(gamma)) throw TorsionError("power_index: gamma is a root of unity");
  const Integer bound = power_index_bound(gamma);
  std::vector<Integer> cands = arith::divisors(bound);
  std::reverse(cands.begin(), cands.end());

  const Integer& D = gamma.disc_k;
  const unsigned order = mu_order(D);
  PowerIndexData out;
  out.table.assign(order, Integer(1));
  for (unsigned j = 0; j < order; ++j) {
    const QuadElem x = qf_mul(root_of_unity(D, j), gamma);
    for (const auto& n : cands) {
      if (is_nth_power(x, n.get_ui())) {
        out.table[j] = n;
        break;
      }
    }
  }
  const auto pref = root_preference(D);
  unsigned best = pref.front();
  for (unsigned j : pref) {
    if (out.table[j] > out.table[best]) best = j;
  }
  out.h = out.table[best];
  out.zeta_star = best;
  out.gamma_tilde = qf_mul(root_of_unity(D, best), gamma);
  auto root = is_nth_power(out.gamma_tilde, out.h.get_ui());
  if (!root) throw InternalError("power_index: maximal root vanished on recomputation");
  out.gamma0 = *root;
  return out;
}

}  // namespace lucasdensity
