#include <doctest.h>

#include "lucasdensity/errors.hpp"
#include "lucasdensity/kummer.hpp"

using namespace lucasdensity;

namespace {

Rational q(const char* s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

QuadElem elem(long disc, const char* u, const char* v) { return qf_make(Integer(disc), q(u), q(v)); }

KummerData data_for(const QuadElem& gamma_tilde) {
  const PowerIndexData p = power_index(gamma_tilde);
  REQUIRE(p.zeta_star == 0);
  return kummer_data(p.gamma0, p.h);
}

}  // namespace

TEST_CASE("discriminant of Q(sqrt q)") {
  CHECK(quad_disc(q("-4/5")) == -20);
  CHECK(quad_disc(q("1/40")) == 40);
  CHECK(quad_disc(q("9/4")) == 1);
  CHECK(quad_disc(q("-3/8")) == -24);
  CHECK_THROWS_AS(quad_disc(0), PreconditionError);
}

TEST_CASE("square-root data") {
  SUBCASE("norm -1 root") {
    const SqrtData s = sqrt_data(elem(8, "1", "1/2"));
    CHECK_FALSE(s.q_flag);
    CHECK_FALSE(s.c.has_value());
  }
  SUBCASE("imaginary field") {
    const SqrtData s = sqrt_data(elem(-15, "1/4", "-1/4"));
    CHECK(s.q_flag);
    CHECK(*s.c == q("-3/8"));
    CHECK(*s.delta1 == -24);
    CHECK(*s.delta2 == 40);
    CHECK_FALSE(s.c_positive);
  }
  SUBCASE("eisenstein field") {
    const SqrtData s = sqrt_data(elem(-3, "13/37", "20/37"));
    CHECK(s.q_flag);
    CHECK(*s.c == q("-12/37"));
    CHECK(*s.delta1 == -111);
    CHECK(*s.delta2 == 37);
  }
  CHECK_THROWS_AS(sqrt_data(elem(5, "2", "2")), NormError);
}

TEST_CASE("field discriminants via maximal orders") {
  CHECK(poly_field_disc({-2, 0, 1}) == 8);
  CHECK(poly_field_disc({1, -2, -1, 1}) == 49);
  CHECK(poly_disc({-2, 0, 1}) == 8);
  CHECK(poly_disc({1, -2, -1, 1}) == 49);
  // Z[sqrt(5)] is not maximal
  CHECK(poly_disc({-5, 0, 1}) == 20);
  CHECK(poly_field_disc({-5, 0, 1}) == 5);
  // Z[2^(1/3)] is maximal, Z[10^(1/3)] is not maximal at 3
  CHECK(poly_field_disc({-2, 0, 0, 1}) == -108);
  CHECK(poly_field_disc({-10, 0, 0, 1}) == -300);
  CHECK_THROWS_AS(poly_field_disc({-1, 0, 1}), ReducibleError);
  CHECK(is_reducible({-4, 0, 0, 0, 1}));
  CHECK_FALSE(is_reducible({-2, 0, 0, 0, 1}));
}

TEST_CASE("quartic conductors") {
  CHECK(quartic_conductor(elem(-4, "-3/5", "2/5")).value == 20);
  CHECK(quartic_conductor(elem(-4, "3/5", "2/5")).value == 40);
  CHECK(quartic_conductor(elem(-4, "-24/26", "5/26")).value == 208);
  // conjugate and negated roots give the same field conductor
  CHECK(quartic_conductor(elem(-4, "-3/5", "-2/5")).value == 20);
  CHECK(quartic_conductor(elem(-4, "-24/26", "-5/26")).value == 208);
  const ConductorData c = quartic_conductor(elem(-4, "-24/26", "5/26"));
  CHECK(c.prime_exponent == 4);
  CHECK(c.odd_part == 13);
}

TEST_CASE("cubic conductors") {
  CHECK(cubic_conductor(elem(-3, "-13/14", "3/14")).value == 7);
  CHECK(cubic_conductor(elem(-3, "1/7", "4/7")).value == 63);
  CHECK(cubic_conductor(elem(-3, "11/14", "-5/14")).value == 63);
  CHECK(cubic_conductor(elem(-3, "13/37", "20/37")).value == 333);
  CHECK(cubic_conductor(elem(-3, "-13/37", "20/37")).value == 333);
  CHECK_THROWS_AS(cubic_conductor(elem(-4, "3/5", "2/5")), PreconditionError);
}

TEST_CASE("cube-root input keeps gamma0 when 3 does not divide h") {
  const KummerData a = data_for(elem(-3, "-13/14", "3/14"));
  CHECK(a.cubic_input == elem(-3, "-13/14", "3/14"));
  CHECK(a.cubic->value == 7);
  const PowerIndexData p = power_index(elem(-3, "1031/1369", "-520/1369"));
  const KummerData b = kummer_data(p.gamma0, p.h);
  CHECK(b.cubic_input == p.gamma0);
  CHECK(b.cubic->value == 333);
}

TEST_CASE("Kummer degrees") {
  SUBCASE("real field, Q = 0") {
    const KummerData kd = data_for(elem(8, "3", "1"));
    CHECK(kummer_t(2, 2, kd) == 1);
    CHECK(kummer_degree(2, 2, kd) == 2);
  }
  SUBCASE("no Kummer part") {
    const KummerData kd = data_for(qf_pow(elem(5, "1/2", "1/2"), 2));
    CHECK(kummer_degree(4, 1, kd) == 4);
  }
  SUBCASE("gaussian field, full entanglement") {
    const KummerData kd = data_for(elem(-4, "-3/5", "2/5"));
    CHECK(kummer_t(40, 4, kd) == 4);
    CHECK(kummer_degree(40, 4, kd) == 16);
  }
  CHECK_THROWS_AS(kummer_degree(6, 4, data_for(elem(8, "3", "1"))), PreconditionError);
}

TEST_CASE("existence of the sign automorphism") {
  const KummerData imag = data_for(elem(-15, "17/32", "7/32"));
  CHECK(sigma_exists(40, 8, imag));
  CHECK(sigma_exists(3, 1, imag));
  // gamma~ = (27+5 sqrt 29)/2, h2 = 2, Q = 0
  const KummerData real = data_for(elem(29, "27/2", "5/2"));
  CHECK_FALSE(sigma_exists(8, 2, real));
  CHECK(sigma_exists(8, 1, real));
  CHECK_FALSE(sigma_exists(29, 1, real));
}
