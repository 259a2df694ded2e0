#include "lucasdensity/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <sstream>

#include "lucasdensity/errors.hpp"

namespace lucasdensity::arith {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

constexpr unsigned long kTrialDivisionBound = 1'000'000;
constexpr std::array<unsigned, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Miller-Rabin with the first 13 primes is deterministic below this bound.
const Integer& deterministic_bound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

bool fits_u64(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const Integer& n) {
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Integer from_u64(u64 v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_u64(u64 n) {
  if (n < 2) return false;
  for (unsigned p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : kWitnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool miller_rabin_mpz(const Integer& n) {
  for (unsigned p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return n == p;
  }
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const Integer n_minus_1 = n - 1;
  Integer x;
  for (unsigned a : kWitnesses) {
    Integer base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_brent_u64(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

Integer pollard_brent_mpz(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x = 2, g = 1, q = 1, ys = 2, diff;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          f(y);
          diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(const Integer& n, std::vector<PrimePower>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back({n, 1});
    return;
  }
  Integer divisor;
  if (fits_u64(n)) {
    divisor = from_u64(pollard_brent_u64(to_u64(n)));
  } else {
    divisor = pollard_brent_mpz(n);
  }
  split_large(divisor, out);
  split_large(Integer(n / divisor), out);
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  for (auto& f : factors) {
    if (!factors_.empty() && factors_.back().prime == f.prime) {
      factors_.back().exponent += f.exponent;
    } else {
      factors_.push_back(std::move(f));
    }
  }
}

unsigned Factorization::exponent_of(const Integer& p) const {
  for (const auto& f : factors_) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

Integer Factorization::value() const {
  Integer out = 1;
  Integer pk;
  for (const auto& f : factors_) {
    mpz_pow_ui(pk.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out *= pk;
  }
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return miller_rabin_u64(to_u64(n));
  if (n < deterministic_bound()) return miller_rabin_mpz(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const Integer& n) {
  if (n == 0) throw PreconditionError("factorize: argument must be nonzero");
  Integer rest = abs(n);
  std::vector<PrimePower> out;

  unsigned long twos = mpz_scan1(rest.get_mpz_t(), 0);
  if (twos > 0) {
    out.push_back({2, static_cast<unsigned>(twos)});
    mpz_tdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), twos);
  }
  for (unsigned long p = 3; p <= kTrialDivisionBound; p += 2) {
    if (rest == 1) break;
    // once p^2 exceeds the cofactor it is prime
    if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      out.push_back({Integer(p), e});
    }
  }
  split_large(rest, out);
  return Factorization(std::move(out));
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& f : factorize(n)) out.push_back(f.prime);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  Integer pk;
  for (const auto& f : factorize(n)) {
    const std::size_t base = out.size();
    pk = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> squarefree_divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& f : factorize(n)) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * f.prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer euler_phi(const Integer& n) {
  if (n <= 0) throw PreconditionError("euler_phi: argument must be positive");
  Integer out = n;
  for (const auto& f : factorize(n)) out = out / f.prime * (f.prime - 1);
  return out;
}

int mobius(const Integer& n) {
  if (n <= 0) throw PreconditionError("mobius: argument must be positive");
  int sign = 1;
  for (const auto& f : factorize(n)) {
    if (f.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw PreconditionError("valuation: argument must be nonzero");
  Integer rest = n;
  unsigned e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

SquarefreeKernel squarefree_kernel(const Rational& q) {
  if (q == 0) throw PreconditionError("squarefree_kernel: argument must be nonzero");
  Integer kernel = sgn(q);
  Rational cofactor = 1;
  Integer pk;
  auto absorb = [&](const Integer& n, bool numerator) {
    for (const auto& f : factorize(n)) {
      // p^e = p^(e mod 2) * (p^(e/2))^2 ; a denominator p^e is folded into
      // the kernel as p^(e mod 2) with the square part moved to the cofactor.
      const unsigned half = f.exponent / 2;
      const bool odd = f.exponent % 2 == 1;
      if (odd) kernel *= f.prime;
      mpz_pow_ui(pk.get_mpz_t(), f.prime.get_mpz_t(), numerator ? half : half + (odd ? 1 : 0));
      if (numerator) {
        cofactor *= pk;
      } else {
        cofactor /= pk;
      }
    }
  };
  absorb(q.get_num(), true);
  absorb(q.get_den(), false);
  cofactor.canonicalize();
  return {kernel, cofactor};
}

Integer gcd_power_infinity(const Integer& h, const Integer& m) {
  if (h <= 0 || m <= 0) throw PreconditionError("gcd_power_infinity: arguments must be positive");
  Integer out = 1;
  Integer rest = h;
  Integer g = gcd(rest, m);
  while (g > 1) {
    out *= g;
    rest /= g;
    g = gcd(rest, g);
  }
  return out;
}

bool divides_power_of(const Integer& e, const Integer& m) {
  if (e == 0) return false;
  return gcd_power_infinity(abs(e), abs(m)) == abs(e);
}

int jacobi(const Integer& a, const Integer& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t())) {
    throw PreconditionError("jacobi: modulus must be odd and positive");
  }
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

unsigned long mod_ui(const Integer& a, unsigned long m) { return mpz_fdiv_ui(a.get_mpz_t(), m); }

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_rational_square(const Rational& q) {
  return q >= 0 && exact_sqrt(q.get_num()) && exact_sqrt(q.get_den());
}

std::string to_string(const Factorization& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& pp : f) {
    if (!first) os << ", ";
    first = false;
    os << pp.prime.get_str() << ':' << pp.exponent;
  }
  os << '}';
  return os.str();
}

}  // namespace arith
