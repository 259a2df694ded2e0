#include "lucasdensity/lucasrank.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "lucasdensity/errors.hpp"

namespace lucasdensity {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(const Integer& a, u64 p) { return arith::mod_ui(a, p); }

u64 reduce(const Rational& q, u64 p) {
  return mulmod(reduce(Integer(q.get_num()), p), invmod(reduce(Integer(q.get_den()), p), p), p);
}

int legendre(const Integer& a, u64 p) { return arith::jacobi(a, Integer(static_cast<unsigned long>(p))); }

// Square root of a quadratic residue a mod an odd prime p.
u64 tonelli_shanks(u64 a, u64 p) {
  if (a == 0) return 0;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    const u64 b = powmod(c, u64{1} << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

// a + b*t in F_p[t]/(t^2 - D)
struct Fp2 {
  u64 a, b;
};

Fp2 fp2_mul(const Fp2& x, const Fp2& y, u64 dmod, u64 p) {
  return {(mulmod(x.a, y.a, p) + mulmod(mulmod(x.b, y.b, p), dmod, p)) % p,
          (mulmod(x.a, y.b, p) + mulmod(x.b, y.a, p)) % p};
}

Fp2 fp2_pow(Fp2 x, u64 e, u64 dmod, u64 p) {
  Fp2 r{1 % p, 0};
  while (e) {
    if (e & 1) r = fp2_mul(r, x, dmod, p);
    x = fp2_mul(x, x, dmod, p);
    e >>= 1;
  }
  return r;
}

// Smallest divisor n of m with pred(n), given that pred holds on multiples
// of the answer.
template <class Pred>
u64 descend(u64 m, const SpfTable& spf, Pred&& pred) {
  for (const u64 q : spf.prime_divisors(m)) {
    while (m % q == 0 && pred(m / q)) m /= q;
  }
  return m;
}

u64 checked_index(u64 m, const SpfTable& spf) {
  if (m > spf.limit()) {
    throw LimitError("rank: " + std::to_string(m) + " exceeds the sieve limit " + std::to_string(spf.limit()));
  }
  return m;
}

u64 rank_lucas(u64 p, const SequenceContext& ctx, const SpfTable& spf) {
  const LucasParams& lp = *ctx.lucas;
  const u64 m = checked_index(static_cast<u64>(static_cast<std::int64_t>(p) - legendre(ctx.delta, p)), spf);
  return descend(m, spf, [&](u64 n) { return lucas_pair_mod(n, p, lp.a1, lp.a2).first == 0; });
}

u64 rank_direct(u64 p, const SequenceContext& ctx, const SpfTable& spf) {
  const QuadElem& g = ctx.gamma;
  const u64 u = reduce(g.u, p), v = reduce(g.v, p);
  const u64 dmod = reduce(g.disc_k, p);
  if (legendre(g.disc_k, p) == 1) {
    const u64 s = tonelli_shanks(dmod, p);
    const u64 x = (u + mulmod(v, s, p)) % p;
    return descend(checked_index(p - 1, spf), spf, [&](u64 n) { return powmod(x, n, p) == 1; });
  }
  const Fp2 x{u, v};
  return descend(checked_index(p + 1, spf), spf, [&](u64 n) {
    const Fp2 y = fp2_pow(x, n, dmod, p);
    return y.a == 1 && y.b == 0;
  });
}

struct BlockResult {
  u64 counted = 0, counted_plus = 0, counted_minus = 0;
  u64 eligible = 0, eligible_plus = 0, eligible_minus = 0;
  std::string csv;
};

}  // namespace

SpfTable::SpfTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2 || limit > kMaxLimit) {
    throw LimitError("spf_sieve: limit " + std::to_string(limit) + " outside [2, " + std::to_string(kMaxLimit) + "]");
  }
  spf_.assign(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (const std::uint32_t q : primes_) {
      const u64 iq = i * q;
      if (q > spf_[i] || iq > limit) break;
      spf_[iq] = q;
    }
  }
}

std::vector<std::uint64_t> SpfTable::prime_divisors(std::uint64_t n) const {
  if (n < 1 || n > limit_) throw LimitError("prime_divisors: argument outside the table");
  std::vector<u64> out;
  while (n > 1) {
    const u64 q = spf_[n];
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  return out;
}

SpfTable spf_sieve(std::uint64_t limit) { return SpfTable(limit); }

std::pair<std::uint64_t, std::uint64_t> lucas_pair_mod(std::uint64_t n, std::uint64_t p, const Integer& a1,
                                                       const Integer& a2) {
  if (p < 3 || p % 2 == 0) throw PreconditionError("lucas_pair_mod: p must be an odd prime");
  const u64 q = reduce(a2, p);
  if (q == 0) throw PreconditionError("lucas_pair_mod: p divides a2");
  const u64 a = reduce(a1, p);
  const u64 delta = (mulmod(a, a, p) + p - mulmod(4 % p, q, p)) % p;
  const u64 half = (p + 1) / 2;
  u64 un = 0, vn = 2 % p, qn = 1 % p;  // U_k, V_k, a2^k for k = 0
  for (int bit = 63; bit >= 0; --bit) {
    // k -> 2k
    const u64 u2 = mulmod(un, vn, p);
    const u64 v2 = (mulmod(vn, vn, p) + p - mulmod(2, qn, p)) % p;
    un = u2;
    vn = v2;
    qn = mulmod(qn, qn, p);
    if ((n >> bit) & 1) {
      const u64 u1 = mulmod((mulmod(a, un, p) + vn) % p, half, p);
      const u64 v1 = mulmod((mulmod(delta, un, p) + mulmod(a, vn, p)) % p, half, p);
      un = u1;
      vn = v1;
      qn = mulmod(qn, q, p);
    }
  }
  return {un, vn};
}

bool is_excluded_prime(std::uint64_t p, const SequenceContext& ctx) {
  if (p == 2) return true;
  if (ctx.lucas) return reduce(ctx.lucas->a2, p) == 0 || reduce(ctx.delta, p) == 0;
  const QuadElem& g = ctx.gamma;
  return reduce(g.disc_k, p) == 0 || reduce(Integer(g.u.get_den()), p) == 0 ||
         reduce(Integer(g.v.get_den()), p) == 0;
}

std::uint64_t rank(std::uint64_t p, const SequenceContext& ctx, const SpfTable& spf) {
  if (p < 3 || !arith::is_prime(Integer(static_cast<unsigned long>(p)))) {
    throw PreconditionError("rank: p must be an odd prime");
  }
  if (is_excluded_prime(p, ctx)) throw PreconditionError("rank: p = " + std::to_string(p) + " is excluded");
  return ctx.lucas ? rank_lucas(p, ctx, spf) : rank_direct(p, ctx, spf);
}

std::uint64_t naive_rank(std::uint64_t p, const LucasParams& lucas) {
  const u64 a = reduce(lucas.a1, p), q = reduce(lucas.a2, p);
  u64 prev = 0, cur = 1 % p;
  for (u64 n = 1; n <= 2 * p + 2; ++n) {
    if (cur == 0) return n;
    const u64 next = (mulmod(a, cur, p) + p - mulmod(q, prev, p)) % p;
    prev = cur;
    cur = next;
  }
  throw InternalError("naive_rank: no zero within 2p + 2 terms");
}

EmpiricalReport empirical_density(const SequenceContext& ctx, std::uint64_t d, std::uint64_t x,
                                  std::optional<Rational> reference, const EmpiricalOptions& options) {
  if (d == 0) throw PreconditionError("empirical_density: d must be positive");
  if (x < 3) throw PreconditionError("empirical_density: x must be at least 3");
  const auto start = std::chrono::steady_clock::now();
  const SpfTable spf(x + 1);
  const auto& primes = spf.primes();
  const u64 count = primes.size();
  const bool dump = options.dump_path.has_value();

  constexpr u64 kBlock = 4096;
  const u64 blocks = (count + kBlock - 1) / kBlock;
  std::vector<BlockResult> results(blocks);
  std::atomic<u64> next{0};
  auto worker = [&] {
    for (u64 b = next++; b < blocks; b = next++) {
      BlockResult& r = results[b];
      const u64 end = std::min(count, (b + 1) * kBlock);
      for (u64 i = b * kBlock; i < end; ++i) {
        const u64 p = primes[i];
        if (is_excluded_prime(p, ctx)) continue;
        const u64 rk = ctx.lucas ? rank_lucas(p, ctx, spf) : rank_direct(p, ctx, spf);
        const int j = legendre(ctx.delta, p);
        const bool hit = rk % d == 0;
        ++r.eligible;
        (j == 1 ? r.eligible_plus : r.eligible_minus)++;
        if (hit) {
          ++r.counted;
          (j == 1 ? r.counted_plus : r.counted_minus)++;
        }
        if (dump) {
          r.csv += std::to_string(p) + ',' + std::to_string(rk) + ',' + std::to_string(j) + ',' + (hit ? '1' : '0') +
                   '\n';
        }
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<u64>(threads, std::max<u64>(blocks, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  EmpiricalReport rep;
  rep.lucas = ctx.lucas;
  rep.gamma = ctx.gamma;
  rep.d = d;
  rep.x = x;
  rep.reference_delta = std::move(reference);
  for (const auto& r : results) {
    rep.counted += r.counted;
    rep.counted_plus += r.counted_plus;
    rep.counted_minus += r.counted_minus;
    rep.eligible += r.eligible;
    rep.eligible_plus += r.eligible_plus;
    rep.eligible_minus += r.eligible_minus;
  }
  if (rep.eligible == 0) throw PreconditionError("empirical_density: no eligible primes below x");
  const Integer el(static_cast<unsigned long>(rep.eligible));
  rep.ratio = arith::ratio(Integer(static_cast<unsigned long>(rep.counted)), el);
  rep.ratio_plus = arith::ratio(Integer(static_cast<unsigned long>(rep.counted_plus)), el);
  rep.ratio_minus = arith::ratio(Integer(static_cast<unsigned long>(rep.counted_minus)), el);

  if (dump) {
    std::ofstream out(*options.dump_path);
    if (!out) throw PreconditionError("empirical_density: cannot open " + *options.dump_path);
    out << "p,rank,jacobi,divisible\n";
    for (const auto& r : results) out << r.csv;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

double empirical_tolerance(const Rational& delta, std::uint64_t eligible) {
  const double dd = delta.get_d();
  return 3.0 * std::sqrt(dd * (1.0 - dd) / static_cast<double>(eligible)) + 0.002;
}

}  // namespace lucasdensity
