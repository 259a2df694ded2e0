#pragma once

// Rank of appearance modulo primes and empirical density counts.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lucasdensity/quadfield.hpp"

namespace lucasdensity {

/// Smallest-prime-factor table on [0, limit], built by a linear sieve.
class SpfTable {
 public:
  static constexpr std::uint64_t kMaxLimit = 2'000'000'000;

  /// LimitError for limit < 2 or limit > kMaxLimit.
  explicit SpfTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  /// 0 for n < 2.
  std::uint32_t operator[](std::uint64_t n) const { return spf_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  /// Distinct prime divisors of 1 <= n <= limit, ascending.
  std::vector<std::uint64_t> prime_divisors(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

SpfTable spf_sieve(std::uint64_t limit);

/// (U_n mod p, V_n mod p). PreconditionError when p is even or divides a2.
std::pair<std::uint64_t, std::uint64_t> lucas_pair_mod(std::uint64_t n, std::uint64_t p, const Integer& a1,
                                                       const Integer& a2);

/// Primes excluded from counting: 2, divisors of a2 * delta for Lucas
/// input; 2, divisors of disc_k and of the denominators of u, v for direct
/// gamma input.
bool is_excluded_prime(std::uint64_t p, const SequenceContext& ctx);

/// Least n >= 1 with p | U_n, or the order of gamma modulo a prime above p
/// for direct input. PreconditionError for excluded p, LimitError when
/// p + 1 exceeds the table.
std::uint64_t rank(std::uint64_t p, const SequenceContext& ctx, const SpfTable& spf);

/// Brute-force rank by iterating the recurrence; Lucas input only.
std::uint64_t naive_rank(std::uint64_t p, const LucasParams& lucas);

struct EmpiricalReport {
  std::optional<LucasParams> lucas;
  QuadElem gamma;
  std::uint64_t d = 1;
  std::uint64_t x = 0;
  std::uint64_t counted = 0;
  std::uint64_t counted_plus = 0;
  std::uint64_t counted_minus = 0;
  std::uint64_t eligible = 0;
  std::uint64_t eligible_plus = 0;
  std::uint64_t eligible_minus = 0;
  Rational ratio, ratio_plus, ratio_minus;  // over all eligible primes
  std::optional<Rational> reference_delta;
  double seconds = 0;
};

struct EmpiricalOptions {
  unsigned threads = 0;                   // 0: hardware concurrency
  std::optional<std::string> dump_path;  // CSV p,rank,jacobi,divisible
};

/// Counts eligible p <= x with d | rank(p), split by jacobi(delta, p).
EmpiricalReport empirical_density(const SequenceContext& ctx, std::uint64_t d, std::uint64_t x,
                                  std::optional<Rational> reference = std::nullopt,
                                  const EmpiricalOptions& options = {});

/// Acceptance band 3 sqrt(delta (1 - delta) / eligible) + 0.002.
double empirical_tolerance(const Rational& delta, std::uint64_t eligible);

}  // namespace lucasdensity
