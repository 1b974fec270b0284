#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padl/cyclo.hpp"

using namespace padl;

TEST_CASE("euler phi and cyclotomic polynomials") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(105) == 48);

  auto p1 = cyclotomic_poly(1);
  REQUIRE(p1.size() == 2);
  CHECK(p1[0] == -1);
  CHECK(p1[1] == 1);

  auto p12 = cyclotomic_poly(12);  // x^4 - x^2 + 1
  REQUIRE(p12.size() == 5);
  CHECK(p12[0] == 1);
  CHECK(p12[1] == 0);
  CHECK(p12[2] == -1);
  CHECK(p12[3] == 0);
  CHECK(p12[4] == 1);

  auto p9 = cyclotomic_poly(9);  // x^6 + x^3 + 1
  REQUIRE(p9.size() == 7);
  CHECK(p9[3] == 1);
  CHECK(p9[6] == 1);

  // first index with a coefficient outside {-1,0,1}
  auto p105 = cyclotomic_poly(105);
  CHECK(p105[7] == -2);
}

TEST_CASE("root of unity relations") {
  CHECK(cyclo_eq(cyclo_zeta_pow(6, 3), cyclo_from_mpq(6, mpq_class(-1))));
  CHECK(cyclo_eq(cyclo_zeta_pow(4, 2), cyclo_from_mpq(4, mpq_class(-1))));

  CycloRational s = cyclo_zero(5);
  for (long i = 0; i < 5; ++i) s = cyclo_add(s, cyclo_zeta_pow(5, i));
  CHECK(cyclo_is_zero(s));

  CycloRational lhs = cyclo_mul(cyclo_add(cyclo_from_mpq(5, 1), cyclo_zeta_pow(5, 1)),
                                cyclo_add(cyclo_from_mpq(5, 1), cyclo_zeta_pow(5, 4)));
  CycloRational rhs = cyclo_from_exponents(
      5, {{0, mpq_class(2)}, {1, mpq_class(1)}, {4, mpq_class(1)}});
  CHECK(cyclo_eq(lhs, rhs));
  CHECK_FALSE(cyclo_is_rational(rhs));

  // prod over i of (1 - zeta_5^i) equals the cyclotomic value 5
  CycloRational prod = cyclo_from_mpq(5, 1);
  for (long i = 1; i < 5; ++i)
    prod = cyclo_mul(prod, cyclo_sub(cyclo_from_mpq(5, 1), cyclo_zeta_pow(5, i)));
  CHECK(cyclo_is_rational(prod));
  CHECK(prod.c[0] == 5);

  // lifting along zeta_3 = zeta_6^2
  CHECK(cyclo_eq(cyclo_lift(cyclo_zeta_pow(3, 1), 6), cyclo_zeta_pow(6, 2)));
  CycloRational mixed = cyclo_add(cyclo_zeta_pow(3, 1), cyclo_from_mpq(3, mpq_class(1, 2)));
  CHECK(cyclo_eq(cyclo_mul(cyclo_lift(mixed, 6), cyclo_lift(mixed, 6)),
                 cyclo_lift(cyclo_mul(mixed, mixed), 6)));
}

TEST_CASE("padic coefficients follow the same relations") {
  CycloPadic prod = cyclo_padic_from(5, padic_from_long(3, 1, 10));
  CycloPadic one = prod;
  for (long i = 1; i < 5; ++i)
    prod = cyclo_padic_mul(
        prod, cyclo_padic_sub(one, cyclo_padic_zeta_pow(5, 3, i, 10)));
  CHECK(padic_agree(prod.c[0], padic_from_long(3, 5, 9)));
  for (size_t i = 1; i < prod.c.size(); ++i) CHECK(prod.c[i].is_prec_zero());
}

TEST_CASE("formal ring with p dividing M still cancels roots exactly") {
  // zeta_5 over Q_5 is a formal symbol here; the vanishing of the full
  // exponent sum is a polynomial identity mod the cyclotomic polynomial
  CycloPadic s = cyclo_padic_zero(5, 5, 12);
  for (long i = 0; i < 5; ++i)
    s = cyclo_padic_add(s, cyclo_padic_zeta_pow(5, 5, i, 12));
  for (const auto& c : s.c) {
    CHECK(c.is_prec_zero());
    CHECK(c.val >= 12);
  }
}

TEST_CASE("fixed embedding into Q_p") {
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(11) == 2);
  CHECK(primitive_root(13) == 2);

  // zeta_4 goes to omega(2) = 7 mod 25 for p = 5
  PadicNumber z4 = padic_embed_cyclo(cyclo_zeta_pow(4, 1), 5, 2);
  CHECK(z4.unit == 7);

  PadicNumber i2 = padic_root_of_unity(13, 4, 6);
  CHECK(padic_agree(padic_pow(i2, 2), padic_from_long(13, -1, 6)));
  CHECK_THROWS_AS(padic_root_of_unity(7, 4, 6), precondition_error);

  // embedding is a ring map: check on (1 + z)(1 - z) = 1 - z^2 in Q(zeta_4)
  CycloRational a = cyclo_add(cyclo_from_mpq(4, 1), cyclo_zeta_pow(4, 1));
  CycloRational b = cyclo_sub(cyclo_from_mpq(4, 1), cyclo_zeta_pow(4, 1));
  PadicNumber lhs = padic_embed_cyclo(cyclo_mul(a, b), 5, 8);
  PadicNumber rhs = padic_mul(padic_embed_cyclo(a, 5, 8), padic_embed_cyclo(b, 5, 8));
  CHECK(padic_agree(lhs, rhs));
  CHECK(padic_agree(lhs, padic_from_long(5, 2, 8)));
}
