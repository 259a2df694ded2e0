// Field discriminants of small-degree number fields: polynomial
// discriminant corrected by the index of Z[theta], found one prime at a
// time by the Round 2 enlargement (p-radical, then its multiplier ring).

#include <algorithm>
#include <utility>

#include "lucasdensity/errors.hpp"
#include "lucasdensity/kummer.hpp"

namespace lucasdensity {

namespace {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;
using IVec = std::vector<Integer>;
using IMat = std::vector<IVec>;

std::size_t degree(const Poly& f) { return f.size() - 1; }

void require_monic(const Poly& f) {
  if (f.size() < 2 || f.back() != 1) throw PreconditionError("polynomial must be monic of degree >= 1");
}

Integer horner(const Poly& f, const Integer& x) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Bareiss fraction-free determinant.
Integer det_bareiss(IMat m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer resultant(const Poly& f, const Poly& g) {
  const std::size_t m = degree(f), n = degree(g);
  const std::size_t size = m + n;
  IMat s(size, IVec(size, 0));
  // rows hold coefficients from the leading term down
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
  }
  return det_bareiss(std::move(s));
}

// ---- arithmetic in Q[X]/(f) on power-basis coordinates ----

Vec mul_mod(const Vec& a, const Vec& b, const Poly& f) {
  const std::size_t n = degree(f);
  Vec prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
  }
  for (std::size_t k = prod.size(); k-- > n;) {
    if (prod[k] == 0) continue;
    const Rational top = prod[k];
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= top * f[i];
    prod[k] = 0;
  }
  prod.resize(n);
  return prod;
}

Vec pow_mod(Vec base, Integer e, const Poly& f) {
  Vec out(degree(f), Rational(0));
  out[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) out = mul_mod(out, base, f);
    e >>= 1;
    if (e > 0) base = mul_mod(base, base, f);
  }
  return out;
}

Mat inverse(Mat a) {
  const std::size_t n = a.size();
  Mat inv(n, Vec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw InternalError("singular order basis");
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    const Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational factor = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= factor * a[col][j];
        inv[i][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

Rational det_rational(Mat a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[col], a[piv]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      const Rational factor = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[col][j];
    }
  }
  return det;
}

// Row vector times matrix, with every entry required to be an integer.
IVec integer_coords(const Vec& x, const Mat& basis_inv) {
  const std::size_t n = x.size();
  IVec out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * basis_inv[i][j];
    if (s.get_den() != 1) throw InternalError("order element has non-integral coordinates");
    out[j] = s.get_num();
  }
  return out;
}

Mat combine(const IMat& coeffs, const Mat& basis) {
  const std::size_t n = basis.size();
  Mat out(coeffs.size(), Vec(n, Rational(0)));
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      if (coeffs[r][i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[r][j] += Rational(coeffs[r][i]) * basis[i][j];
    }
  }
  return out;
}

// Hermite normal form of a full-rank integer lattice given by generators.
IMat hnf(IMat rows, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      if (rows[r][col] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][col].get_mpz_t(),
                 rows[i][col].get_mpz_t());
      const Integer a = rows[r][col] / g;
      const Integer b = rows[i][col] / g;
      for (std::size_t j = 0; j < n; ++j) {
        const Integer x = rows[r][j], y = rows[i][j];
        rows[r][j] = s * x + t * y;
        rows[i][j] = a * y - b * x;
      }
    }
    if (rows[r][col] != 0) {
      if (rows[r][col] < 0) {
        for (auto& e : rows[r]) e = -e;
      }
      // keep entries above the pivot small
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        if (q != 0) {
          for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        }
      }
      ++r;
    }
  }
  if (r != n) throw InternalError("lattice is not of full rank");
  rows.resize(n);
  return rows;
}

// Basis of {c in F_p^n : sum_i c_i rows_i = 0}, lifted to [0, p).
IMat left_kernel_mod_p(const IMat& rows, const Integer& p) {
  const std::size_t n = rows.size();
  const std::size_t k = rows.empty() ? 0 : rows[0].size();
  IMat aug(n, IVec(k + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = arith::mod(rows[i][j], p);
    aug[i][k + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < n; ++col) {
    std::size_t piv = r;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[r], aug[piv]);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), aug[r][col].get_mpz_t(), p.get_mpz_t());
    for (auto& e : aug[r]) e = arith::mod(e * inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][col] == 0) continue;
      const Integer factor = aug[i][col];
      for (std::size_t j = 0; j < k + n; ++j) aug[i][j] = arith::mod(aug[i][j] - factor * aug[r][j], p);
    }
    ++r;
  }
  IMat kernel;
  for (std::size_t i = r; i < n; ++i) kernel.emplace_back(aug[i].begin() + k, aug[i].end());
  return kernel;
}

IMat with_p_multiples(IMat gens, std::size_t n, const Integer& p) {
  for (std::size_t i = 0; i < n; ++i) {
    IVec row(n, 0);
    row[i] = p;
    gens.push_back(std::move(row));
  }
  return gens;
}

// Returns the p-maximal order containing Z[theta] as a power-basis matrix.
Mat p_maximal_order(const Poly& f, const Integer& p) {
  const std::size_t n = degree(f);
  Mat basis(n, Vec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;

  Integer q = p;
  while (q < Integer(n)) q *= p;
  Integer p_to_n;
  mpz_pow_ui(p_to_n.get_mpz_t(), p.get_mpz_t(), n);

  while (true) {
    const Mat basis_inv = inverse(basis);

    // p-radical: kernel of x -> x^q on O/pO
    IMat frob(n);
    for (std::size_t i = 0; i < n; ++i) frob[i] = integer_coords(pow_mod(basis[i], q, f), basis_inv);
    const IMat radical = hnf(with_p_multiples(left_kernel_mod_p(frob, p), n, p), n);
    const Mat ideal = combine(radical, basis);
    const Mat ideal_inv = inverse(ideal);

    // {x in O : x*I in pI}
    IMat action(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const IVec c = integer_coords(mul_mod(basis[i], ideal[j], f), ideal_inv);
        action[i].insert(action[i].end(), c.begin(), c.end());
      }
    }
    const IMat u = hnf(with_p_multiples(left_kernel_mod_p(action, p), n, p), n);
    Integer det = 1;
    for (std::size_t i = 0; i < n; ++i) det *= u[i][i];
    if (det == p_to_n) return basis;

    Mat next = combine(u, basis);
    for (auto& row : next) {
      for (auto& e : row) e /= p;
    }
    basis = std::move(next);
  }
}

bool has_integer_root(const Poly& f) {
  if (f[0] == 0) return true;
  for (const auto& r : arith::divisors(f[0])) {
    if (horner(f, r) == 0 || horner(f, Integer(-r)) == 0) return true;
  }
  return false;
}

bool quartic_has_quadratic_factor(const Poly& f) {
  // (X^2 + aX + b)(X^2 + a'X + b') with b*b' = f0
  for (const auto& d : arith::divisors(f[0])) {
    for (const Integer& b : {d, Integer(-d)}) {
      const Integer b2 = f[0] / b;
      const Integer s = f[3];
      const Integer prod = f[2] - b - b2;
      const Integer disc = s * s - 4 * prod;
      if (disc < 0) continue;
      const auto r = arith::exact_sqrt(disc);
      if (!r || mpz_odd_p(Integer(s + *r).get_mpz_t())) continue;
      const Integer a = (s + *r) / 2;
      const Integer a2 = s - a;
      if (a * b2 + a2 * b == f[1] || a2 * b2 + a * b == f[1]) return true;
    }
  }
  return false;
}

}  // namespace

Poly integralize(const RationalPoly& monic) {
  if (monic.size() < 2 || monic.back() != 1) throw PreconditionError("integralize: polynomial must be monic");
  Integer D = 1;
  for (const auto& c : monic) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
  const std::size_t n = monic.size() - 1;
  Poly out(n + 1);
  Integer scale = 1;
  // coefficient of Y^(n-k) picks up D^k
  for (std::size_t k = 0; k <= n; ++k) {
    const Rational v = monic[n - k] * Rational(scale);
    if (v.get_den() != 1) throw InternalError("integralize: non-integral coefficient");
    out[n - k] = v.get_num();
    scale *= D;
  }
  return out;
}

Integer poly_disc(const Poly& f) {
  require_monic(f);
  const std::size_t n = degree(f);
  if (n == 1) return 1;
  Poly df(n);
  for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f[i] * static_cast<unsigned long>(i);
  Integer res = resultant(f, df);
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  return res;
}

bool is_reducible(const Poly& f) {
  require_monic(f);
  const std::size_t n = degree(f);
  if (n > 4) throw PreconditionError("is_reducible: degree must be at most 4");
  if (n <= 1) return false;
  if (n == 2) {
    const Integer d = poly_disc(f);
    return d >= 0 && arith::exact_sqrt(d).has_value();
  }
  if (has_integer_root(f)) return true;
  return n == 4 && quartic_has_quadratic_factor(f);
}

Integer poly_field_disc(const Poly& f) {
  require_monic(f);
  const std::size_t n = degree(f);
  if (n < 2 || n > 4) throw PreconditionError("poly_field_disc: degree must be 2, 3 or 4");
  if (is_reducible(f)) throw ReducibleError("poly_field_disc: polynomial is reducible");
  const Integer disc = poly_disc(f);
  Integer field_disc = disc;
  for (const auto& pp : arith::factorize(disc)) {
    if (pp.exponent < 2) continue;
    const Rational det = det_rational(p_maximal_order(f, pp.prime));
    const Rational corrected = Rational(field_disc) * det * det;
    if (corrected.get_den() != 1) throw InternalError("poly_field_disc: index does not divide");
    field_disc = corrected.get_num();
  }
  return field_disc;
}

}  // namespace lucasdensity
