#include <functional>

#include "lucasdensity/density.hpp"
#include "lucasdensity/errors.hpp"

namespace lucasdensity {

namespace {

// All v <= cutoff supported on the given primes.
std::vector<Integer> smooth_up_to(const std::vector<Integer>& primes, const Integer& cutoff) {
  std::vector<Integer> out;
  std::function<void(std::size_t, const Integer&)> walk = [&](std::size_t i, const Integer& v) {
    if (i == primes.size()) {
      out.push_back(v);
      return;
    }
    for (Integer w = v; w <= cutoff; w *= primes[i]) walk(i + 1, w);
  };
  walk(0, 1);
  return out;
}

}  // namespace

OracleResult series_oracle(const NormalForm& nf, const Integer& d, const Integer& cutoff) {
  if (d <= 0 || cutoff <= 0) throw PreconditionError("series_oracle: d and cutoff must be positive");
  const KummerData& kd = nf.kd;
  const std::vector<Integer> primes = arith::prime_divisors(d);
  const std::vector<Integer> us = arith::squarefree_divisors(d);
  const std::vector<Integer> vs = smooth_up_to(primes, cutoff);

  Rational plus = 0, minus = 0, partial = 0;
  for (const auto& v : vs) {
    partial += arith::ratio(1, v * v);
    const Integer n = d * v;
    for (const auto& u : us) {
      const int mu = arith::mobius(u);
      const Integer uv = u * v;
      const Rational w = arith::ratio(mu, kummer_degree(n, uv, kd));
      plus += w;
      if (sigma_exists(n, uv, kd)) minus += w;
    }
  }

  // |term| <= 2 h #mu / (phi(d) v^2) for each of the 2^omega(d) values of u
  Rational full = 1;
  for (const auto& p : primes) full *= arith::ratio(p * p, p * p - 1);
  const Rational tail = arith::ratio(Integer(us.size()) * 2 * mu_order(kd.disc_k) * kd.h, arith::euler_phi(d)) *
                        (full - partial);

  OracleResult out;
  const Rational delta = plus + minus;
  out.delta = {delta - tail, delta + tail};
  out.delta_plus = {plus - tail / 2, plus + tail / 2};
  out.delta_minus = {minus - tail / 2, minus + tail / 2};
  out.terms = Integer(vs.size());
  return out;
}

OracleResult series_oracle(const QuadElem& gamma_tilde, const Integer& d, const Integer& cutoff) {
  return series_oracle(normal_form(gamma_tilde), d, cutoff);
}

}  // namespace lucasdensity
