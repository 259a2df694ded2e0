#include <doctest.h>

#include <random>

#include "lucasdensity/errors.hpp"
#include "lucasdensity/quadfield.hpp"

using namespace lucasdensity;

namespace {

Rational q(const char* s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

QuadElem elem(long disc, const char* u, const char* v) { return qf_make(Integer(disc), q(u), q(v)); }

}  // namespace

TEST_CASE("context from a Lucas pair") {
  const SequenceContext fib = make_context(Integer(1), Integer(-1));
  CHECK(fib.gamma == elem(5, "-3/2", "-1/2"));
  CHECK(fib.delta == 5);
  CHECK(fib.disc_k == 5);
  REQUIRE(fib.lucas);
  CHECK(fib.lucas->a1 == 1);

  const SequenceContext pell = make_context(Integer(2), Integer(-1));
  CHECK(pell.gamma == elem(8, "-3", "-1"));
  CHECK(pell.delta == 8);
  CHECK(pell.disc_k == 8);
}

TEST_CASE("context rejects degenerate pairs") {
  CHECK_THROWS_AS(make_context(Integer(1), Integer(1)), TorsionError);
  CHECK_THROWS_AS(make_context(Integer(2), Integer(1)), ReducibleError);
  CHECK_THROWS_AS(make_context(Integer(3), Integer(2)), ReducibleError);
  CHECK_THROWS_AS(make_context(Integer(1), Integer(0)), ZeroParameterError);
  CHECK_THROWS_AS(make_context(Integer(0), Integer(1)), ZeroParameterError);
  CHECK_THROWS_AS(make_context(Integer(2), Integer(2)), TorsionError);  // gamma = i
}

TEST_CASE("direct context validation") {
  CHECK_NOTHROW(make_context(q("3"), q("1"), Integer(8)));
  CHECK_THROWS_AS(make_context(q("3"), q("2"), Integer(8)), NormError);
  CHECK_THROWS_AS(make_context(q("1"), q("0"), Integer(8)), ReducibleError);
  CHECK_THROWS_AS(make_context(q("1"), q("1"), Integer(9)), ReducibleError);
  CHECK_THROWS_AS(make_context(q("1/2"), q("1/2"), Integer(-3)), TorsionError);
  // radicand 8 and radicand 2 describe the same element
  CHECK(make_context(q("3"), q("1"), Integer(8)).gamma == make_context(q("3"), q("2"), Integer(2)).gamma);
}

TEST_CASE("field arithmetic") {
  CHECK(qf_norm(elem(8, "1", "1/2")) == -1);
  CHECK(qf_pow(elem(29, "5/2", "1/2"), 2) == elem(29, "27/2", "5/2"));
  CHECK(qf_conj(elem(-4, "3/5", "2/5")) == elem(-4, "3/5", "-2/5"));
  CHECK(qf_trace(elem(5, "1/2", "1/2")) == 1);
  CHECK_THROWS_AS(qf_mul(elem(5, "1", "1"), elem(8, "1", "1")), DiscMismatchError);
  CHECK_THROWS_AS(qf_inv(elem(5, "0", "0")), DivisionByZeroError);
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const long disc = std::vector<long>{5, 8, -4, -3, -15, 29, 12}[rng() % 7];
    auto coord = [&] {
      return arith::ratio(Integer(static_cast<long>(rng() % 41) - 20), Integer(static_cast<long>(rng() % 9 + 1)));
    };
    const Rational u = coord(), v = coord();
    const QuadElem x = qf_make(Integer(disc), u, v);
    if (qf_is_zero(x)) continue;
    CHECK(qf_is_one(qf_mul(x, qf_inv(x))));
    CHECK(qf_norm(qf_mul(x, x)) == qf_norm(x) * qf_norm(x));
    CHECK(qf_pow(x, -3) == qf_inv(qf_pow(x, 3)));
  }
}

TEST_CASE("fundamental discriminants") {
  for (long d : {5, 8, 12, 13, -3, -4, -7, -8, -15, 29, 40, -24, -111, 37}) CHECK(is_fundamental_discriminant(d));
  for (long d : {1, 4, 9, 16, -12, 20, 94, 2, 3}) CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("nth roots") {
  const auto r = is_nth_power(elem(-4, "-7/25", "12/25"), 2);
  REQUIRE(r);
  CHECK((*r == elem(-4, "3/5", "2/5") || *r == elem(-4, "-3/5", "-2/5")));
  CHECK(is_nth_power(elem(8, "3", "1"), 1) == elem(8, "3", "1"));
  CHECK_FALSE(is_nth_power(elem(8, "3", "1"), 3).has_value());
  CHECK(is_nth_power(elem(8, "3", "1"), 2) == elem(8, "1", "1/2"));
  CHECK_THROWS_AS(is_nth_power(elem(8, "3", "1"), 0), PreconditionError);
  // every power of a random element is recognised
  const QuadElem base = elem(-15, "1/4", "-1/4");
  for (long k : {2, 3, 4, 6, 8}) {
    const auto root = is_nth_power(qf_pow(base, k), static_cast<unsigned long>(k));
    REQUIRE(root);
    CHECK(qf_pow(*root, k) == qf_pow(base, k));
  }
}

TEST_CASE("fundamental units") {
  CHECK(fundamental_unit(8) == elem(8, "1", "1/2"));
  CHECK(fundamental_unit(5) == elem(5, "1/2", "1/2"));
  CHECK(fundamental_unit(29) == elem(29, "5/2", "1/2"));
  CHECK(fundamental_unit(12) == elem(12, "2", "1/2"));
  CHECK_THROWS_AS(fundamental_unit(-4), PreconditionError);
}

TEST_CASE("power index on reference elements") {
  SUBCASE("real, zeta 1") {
    const PowerIndexData p = power_index(elem(8, "3", "1"));
    CHECK(p.h == 2);
    CHECK(p.zeta_star == 0);
    CHECK(p.gamma0 == elem(8, "1", "1/2"));
  }
  SUBCASE("real, zeta -1") {
    const PowerIndexData p = power_index(elem(29, "-27/2", "-5/2"));
    CHECK(p.h == 2);
    CHECK(root_name(29, p.zeta_star) == "-1");
    CHECK((p.gamma0 == elem(29, "5/2", "1/2") || p.gamma0 == elem(29, "-5/2", "-1/2")));
  }
  SUBCASE("gaussian, zeta i") {
    const PowerIndexData p = power_index(elem(-4, "48/50", "7/50"));
    CHECK(p.h == 2);
    CHECK(root_name(-4, p.zeta_star) == "i");
    CHECK(qf_pow(p.gamma0, 2) == qf_mul(root_of_unity(-4, 1), elem(-4, "48/50", "7/50")));
  }
  SUBCASE("eisenstein, zeta omega^2") {
    const PowerIndexData p = power_index(elem(-3, "683/686", "37/686"));
    CHECK(p.h == 3);
    CHECK(root_name(-3, p.zeta_star) == "omega^2");
    CHECK(qf_pow(p.gamma0, 3) == p.gamma_tilde);
  }
  SUBCASE("unit power in a real field") {
    const QuadElem eps = fundamental_unit(5);
    const PowerIndexData p = power_index(qf_pow(eps, 12));
    CHECK(p.h == 12);
    CHECK(p.zeta_star == 0);
  }
}

TEST_CASE("power index is invariant under conjugation") {
  for (const QuadElem& g : {elem(-4, "48/50", "7/50"), elem(-3, "683/686", "37/686"), elem(-15, "17/32", "7/32"),
                            elem(-3, "1031/1369", "-520/1369")}) {
    const PowerIndexData a = power_index(g), b = power_index(qf_conj(g));
    CHECK(a.h == b.h);
    for (unsigned j = 0; j < a.table.size(); ++j) CHECK(b.table[conj_exponent(g.disc_k, j)] == a.table[j]);
  }
}

TEST_CASE("roots of unity") {
  CHECK(mu_order(5) == 2);
  CHECK(mu_order(-4) == 4);
  CHECK(mu_order(-3) == 6);
  for (long disc : {-4L, -3L, 5L}) {
    const unsigned n = mu_order(disc);
    CHECK(qf_is_one(qf_pow(root_of_unity(disc, 1), n)));
    for (unsigned j = 0; j < n; ++j) {
      CHECK(qf_mul(root_of_unity(disc, j), root_of_unity(disc, conj_exponent(disc, j))) == qf_one(disc));
    }
  }
  CHECK(root_name(-3, 2) == "omega");
  CHECK(root_name(-4, 3) == "-i");
}
