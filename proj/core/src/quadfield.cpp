#include "lucasdensity/quadfield.hpp"

#include <sstream>

#include "lucasdensity/errors.hpp"

namespace lucasdensity {

namespace {

void require_same_field(const QuadElem& x, const QuadElem& y) {
  if (x.disc_k != y.disc_k) {
    throw DiscMismatchError("quadratic elements live over different discriminants " +
                            x.disc_k.get_str() + " and " + y.disc_k.get_str());
  }
}

}  // namespace

QuadElem qf_make(const Integer& disc_k, const Rational& u, const Rational& v) {
  QuadElem out{disc_k, u, v};
  out.u.canonicalize();
  out.v.canonicalize();
  return out;
}

QuadElem qf_one(const Integer& disc_k) { return {disc_k, 1, 0}; }

Rational qf_norm(const QuadElem& x) { return x.u * x.u - Rational(x.disc_k) * x.v * x.v; }

Rational qf_trace(const QuadElem& x) { return 2 * x.u; }

QuadElem qf_conj(const QuadElem& x) { return {x.disc_k, x.u, -x.v}; }

QuadElem qf_neg(const QuadElem& x) { return {x.disc_k, -x.u, -x.v}; }

QuadElem qf_mul(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  return {x.disc_k, x.u * y.u + Rational(x.disc_k) * x.v * y.v, x.u * y.v + x.v * y.u};
}

QuadElem qf_inv(const QuadElem& x) {
  if (qf_is_zero(x)) throw DivisionByZeroError("inverse of zero in a quadratic field");
  const Rational n = qf_norm(x);
  return {x.disc_k, x.u / n, -x.v / n};
}

QuadElem qf_pow(const QuadElem& x, long k) {
  QuadElem base = k < 0 ? qf_inv(x) : x;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
  QuadElem out = qf_one(x.disc_k);
  while (e) {
    if (e & 1) out = qf_mul(out, base);
    e >>= 1;
    if (e) base = qf_mul(base, base);
  }
  return out;
}

bool qf_is_zero(const QuadElem& x) { return x.u == 0 && x.v == 0; }

bool qf_is_one(const QuadElem& x) { return x.u == 1 && x.v == 0; }

std::string to_string(const QuadElem& x) {
  std::ostringstream os;
  os << x.u.get_str();
  os << (x.v < 0 ? "-" : "+") << Rational(abs(x.v)).get_str() << "*sqrt(" << x.disc_k.get_str()
     << ")";
  return os.str();
}

bool is_fundamental_discriminant(const Integer& d) {
  if (d == 0 || d == 1) return false;
  const unsigned long r = arith::mod_ui(d, 4);
  if (r == 1) return arith::mobius(abs(d)) != 0;
  if (r != 0) return false;
  const Integer q = d / 4;
  const unsigned long r4 = arith::mod_ui(q, 4);
  if (r4 != 2 && r4 != 3) return false;
  return arith::mobius(abs(q)) != 0;
}

QuadElem gamma_from_radicand(const Rational& u, const Rational& v, const Integer& radicand) {
  if (radicand == 0) throw ReducibleError("radicand must be nonzero");
  const auto sk = arith::squarefree_kernel(Rational(radicand));
  if (sk.kernel == 1) {
    throw ReducibleError("radicand " + radicand.get_str() + " is a perfect square");
  }
  // sqrt(radicand) = t*sqrt(s); over D = 4s this is (t/2)*sqrt(D)
  if (arith::mod_ui(sk.kernel, 4) == 1) return qf_make(sk.kernel, u, v * sk.cofactor);
  return qf_make(4 * sk.kernel, u, v * sk.cofactor / 2);
}

bool is_torsion(const QuadElem& x) {
  QuadElem p = x;
  for (int k = 1; k <= 6; ++k) {
    if (qf_is_one(p)) return true;
    p = qf_mul(p, x);
  }
  return false;
}

SequenceContext make_context(const Integer& a1, const Integer& a2) {
  if (a2 == 0) throw ZeroParameterError("a2 must be nonzero");
  if (a1 == 0) throw ZeroParameterError("a1 must be nonzero (gamma would be -1)");
  const Integer delta = a1 * a1 - 4 * a2;
  if (delta == 0 || (delta > 0 && arith::exact_sqrt(delta))) {
    throw ReducibleError("discriminant " + delta.get_str() + " is a perfect square");
  }
  Rational u(a1 * a1 - 2 * a2, 2 * a2);
  Rational v(a1, 2 * a2);
  u.canonicalize();
  v.canonicalize();
  SequenceContext ctx;
  ctx.lucas = LucasParams{a1, a2};
  ctx.delta = delta;
  ctx.gamma = gamma_from_radicand(u, v, delta);
  ctx.disc_k = ctx.gamma.disc_k;
  if (qf_norm(ctx.gamma) != 1) throw InternalError("root quotient with norm != 1");
  if (is_torsion(ctx.gamma)) {
    throw TorsionError("root quotient of (" + a1.get_str() + ", " + a2.get_str() +
                       ") is a root of unity");
  }
  return ctx;
}

SequenceContext make_context(const QuadElem& gamma) {
  if (!is_fundamental_discriminant(gamma.disc_k)) {
    throw PreconditionError(gamma.disc_k.get_str() + " is not a fundamental discriminant");
  }
  if (gamma.v == 0) throw ReducibleError("gamma must not be rational");
  if (qf_norm(gamma) != 1) {
    throw NormError("gamma must have norm 1, got " + qf_norm(gamma).get_str());
  }
  if (is_torsion(gamma)) throw TorsionError("gamma is a root of unity");
  SequenceContext ctx;
  ctx.delta = gamma.disc_k;
  ctx.disc_k = gamma.disc_k;
  ctx.gamma = gamma;
  return ctx;
}

SequenceContext make_context(const Rational& u, const Rational& v, const Integer& radicand) {
  return make_context(gamma_from_radicand(u, v, radicand));
}

unsigned mu_order(const Integer& disc_k) {
  if (disc_k == -4) return 4;
  if (disc_k == -3) return 6;
  return 2;
}

QuadElem root_of_unity(const Integer& disc_k, unsigned exponent) {
  const unsigned order = mu_order(disc_k);
  exponent %= order;
  QuadElem gen;
  if (disc_k == -4) {
    gen = qf_make(disc_k, 0, Rational(1, 2));
  } else if (disc_k == -3) {
    gen = qf_make(disc_k, Rational(1, 2), Rational(1, 2));
  } else {
    gen = qf_make(disc_k, -1, 0);
  }
  return qf_pow(gen, exponent);
}

std::string root_name(const Integer& disc_k, unsigned exponent) {
  static const char* const gauss[] = {"1", "i", "-1", "-i"};
  static const char* const eisen[] = {"1", "zeta6", "omega", "-1", "omega^2", "zeta6^5"};
  static const char* const generic[] = {"1", "-1"};
  const unsigned order = mu_order(disc_k);
  exponent %= order;
  if (order == 4) return gauss[exponent];
  if (order == 6) return eisen[exponent];
  return generic[exponent];
}

unsigned conj_exponent(const Integer& disc_k, unsigned exponent) {
  const unsigned order = mu_order(disc_k);
  return (order - exponent % order) % order;
}

std::vector<unsigned> root_preference(const Integer& disc_k) {
  // 1, -1, then the roots handled directly, then their conjugates
  if (disc_k == -4) return {0, 2, 1, 3};
  if (disc_k == -3) return {0, 3, 2, 4, 1, 5};
  return {0, 1};
}

}  // namespace lucasdensity
