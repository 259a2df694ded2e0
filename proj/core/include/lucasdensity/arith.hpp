#pragma once

// Exact integer and rational helpers shared by every other module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lucasdensity {

using Integer = mpz_class;
using Rational = mpq_class;

namespace arith {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime decomposition of |n|, primes strictly increasing.
class Factorization {
 public:
  Factorization() = default;
  /// Sorts by prime and merges repeated primes.
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  unsigned exponent_of(const Integer& p) const;
  Integer value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Deterministic below 3.3e24 (Miller-Rabin with the first 13 prime
/// bases); above that GMP's BPSW-based test is used.
bool is_prime(const Integer& n);

/// Trial division to 1e6, then Pollard-Brent rho. Sign is ignored.
/// Throws PreconditionError for n == 0.
Factorization factorize(const Integer& n);

std::vector<Integer> prime_divisors(const Integer& n);

/// All positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n);

/// Squarefree positive divisors of |n|, ascending.
std::vector<Integer> squarefree_divisors(const Integer& n);

Integer euler_phi(const Integer& n);
int mobius(const Integer& n);

/// v_p(n) for n != 0.
unsigned valuation(const Integer& n, const Integer& p);

struct SquarefreeKernel {
  Integer kernel;     // squarefree, sign of q
  Rational cofactor;  // positive
};

/// Writes q = kernel * cofactor^2. Throws PreconditionError for q == 0.
SquarefreeKernel squarefree_kernel(const Rational& q);

/// (h, m^inf): the largest divisor of h built from primes dividing m.
Integer gcd_power_infinity(const Integer& h, const Integer& m);

/// Whether e divides m^inf, i.e. every prime of e divides m.
bool divides_power_of(const Integer& e, const Integer& m);

/// Jacobi symbol (a/n) for odd positive n; PreconditionError otherwise.
int jacobi(const Integer& a, const Integer& n);

/// Non-negative residue of a modulo m > 0.
Integer mod(const Integer& a, const Integer& m);
unsigned long mod_ui(const Integer& a, unsigned long m);

std::optional<Integer> exact_sqrt(const Integer& n);
bool is_rational_square(const Rational& q);

std::string to_string(const Factorization& f);

/// num/den in lowest terms; the two-argument mpq constructor does not reduce.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace arith
}  // namespace lucasdensity
