#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "padl/dirichlet.hpp"

using namespace padl;

TEST_CASE("unit group structure") {
  const UnitGroup& g5 = unit_group(5);
  REQUIRE(g5.factors.size() == 1);
  CHECK(g5.factors[0].gen == 2);
  CHECK(g5.factors[0].ord == 4);
  CHECK(unit_dlog(5, 3) == std::vector<long>{3});  // 3 = 2^3 mod 5

  const UnitGroup& g8 = unit_group(8);
  REQUIRE(g8.factors.size() == 2);
  CHECK(g8.factors[0].ord == 2);
  CHECK(g8.factors[1].ord == 2);

  const UnitGroup& g9 = unit_group(9);
  REQUIRE(g9.factors.size() == 1);
  CHECK(g9.factors[0].ord == 6);

  CHECK(dirichlet_all(5).size() == 4);
  CHECK(dirichlet_all(12).size() == 4);
  CHECK(dirichlet_all(16).size() == 8);
}

TEST_CASE("character values, order, parity, conductor") {
  auto chars = dirichlet_all(5);
  // pick the quartic character with chi(2) = zeta_4
  DirichletChar quartic;
  bool found = false;
  for (const auto& c : chars)
    if (c.exps == std::vector<long>{1}) {
      quartic = c;
      found = true;
    }
  REQUIRE(found);
  CHECK(dirichlet_order(quartic) == 4);
  CHECK(dirichlet_is_odd(quartic));
  CHECK(dirichlet_is_primitive(quartic));
  CHECK(*dirichlet_exponent(quartic, 2) == 1);
  CHECK(*dirichlet_exponent(quartic, 4) == 2);
  CHECK_FALSE(dirichlet_exponent(quartic, 10).has_value());

  DirichletChar quad = dirichlet_mul(quartic, quartic);
  CHECK(dirichlet_order(quad) == 2);
  CHECK_FALSE(dirichlet_is_odd(quad));
  CHECK(cyclo_eq(dirichlet_value(quad, 2, 4), cyclo_from_mpq(4, -1)));

  CHECK(dirichlet_conductor(dirichlet_trivial(12)) == 1);
  // character mod 12 factoring through the mod 4 piece
  for (const auto& c : dirichlet_all(12)) {
    long f = dirichlet_conductor(c);
    CHECK(12 % f == 0);
    if (f == 4) {
      DirichletChar r = dirichlet_restrict(c, 4);
      CHECK(dirichlet_is_primitive(r));
      for (long n = 1; n < 12; ++n) {
        if (std::gcd(n, 12) != 1) continue;
        // values agree through the lift
        long E12 = unit_group(12).exponent, E4 = unit_group(4).exponent;
        CHECK(*dirichlet_exponent(c, n) * E4 ==
              *dirichlet_exponent(r, n) * E12);
      }
    }
  }
}

TEST_CASE("padic character values") {
  DirichletChar quad;
  quad.modulus = 5;
  quad.exps = {2};
  PadicNumber v = dirichlet_value_padic(quad, 2, 5, 6);
  CHECK(padic_agree(v, padic_from_long(5, -1, 6)));
  CHECK(padic_agree(dirichlet_value_padic(quad, 4, 5, 6), padic_from_long(5, 1, 6)));
  CHECK(dirichlet_value_padic(quad, 10, 5, 6).is_prec_zero());

  DirichletChar quartic;
  quartic.modulus = 5;
  quartic.exps = {1};
  // quartic values need a fourth root of unity, present for p = 13
  PadicNumber w = dirichlet_value_padic(quartic, 2, 13, 6);
  CHECK(padic_agree(padic_mul(w, w), padic_from_long(13, -1, 6)));
  CHECK_THROWS_AS(dirichlet_value_padic(quartic, 2, 7, 6), precondition_error);
}

TEST_CASE("bernoulli numbers and L values") {
  CHECK(bernoulli_number(0) == 1);
  CHECK(bernoulli_number(1) == mpq_class(-1, 2));
  CHECK(bernoulli_number(4) == mpq_class(-1, 30));
  CHECK(bernoulli_number(12) == mpq_class(-691, 2730));

  // trivial character: L(-3) = -B_4/4 = 1/120
  CycloRational l = gen_bernoulli_L(4, dirichlet_trivial(1));
  CHECK(cyclo_is_rational(l));
  CHECK(l.c[0] == mpq_class(1, 120));

  // odd character mod 4: B_1 = -1/2, L(0) = 1/2
  DirichletChar chi4;
  chi4.modulus = 4;
  chi4.exps = {1};
  CycloRational b1 = gen_bernoulli(1, chi4);
  CHECK(cyclo_is_rational(b1));
  CHECK(b1.c[0] == mpq_class(-1, 2));
  CHECK(gen_bernoulli_L(1, chi4).c[0] == mpq_class(1, 2));

  // parity mismatch kills the value
  DirichletChar quad5;
  quad5.modulus = 5;
  quad5.exps = {2};
  CHECK(cyclo_is_zero(gen_bernoulli(3, quad5)));
}

TEST_CASE("imprimitive bernoulli equals primitive times euler factors") {
  for (long N : {10L, 12L, 15L, 20L}) {
    for (const auto& chi : dirichlet_all(N)) {
      long f = dirichlet_conductor(chi);
      if (f == N) continue;
      DirichletChar prim = dirichlet_restrict(chi, f);
      long M = dirichlet_order(chi);
      REQUIRE(dirichlet_order(prim) == M);
      for (long k = 1; k <= 4; ++k) {
        CycloRational lhs = gen_bernoulli(k, chi);
        CycloRational rhs = gen_bernoulli(k, prim);
        for (long ell = 2; ell <= N; ++ell) {
          if (N % ell || f % ell == 0) continue;
          bool is_prime = true;
          for (long d = 2; d * d <= ell; ++d)
            if (ell % d == 0) is_prime = false;
          if (!is_prime) continue;
          mpz_class lp;
          mpz_ui_pow_ui(lp.get_mpz_t(), ell, k - 1);
          CycloRational factor =
              cyclo_sub(cyclo_from_mpq(M, 1),
                        cyclo_scale(dirichlet_value_min(prim, ell), mpq_class(lp)));
          rhs = cyclo_mul(rhs, factor);
        }
        CHECK(cyclo_eq(lhs, rhs));
      }
    }
  }
}

TEST_CASE("gauss sum norm identity") {
  DirichletChar quad5;
  quad5.modulus = 5;
  quad5.exps = {2};
  CycloRational g = gauss_sum(quad5);
  CycloRational g2 = cyclo_mul(g, g);
  CHECK(cyclo_is_rational(g2));
  CHECK(g2.c[0] == 5);  // quadratic character mod 5 squares to +5

  for (long N : {3L, 4L, 5L, 7L, 8L, 12L}) {
    for (const auto& chi : dirichlet_all(N)) {
      if (!dirichlet_is_primitive(chi)) continue;
      CycloRational s = gauss_sum(chi);
      CycloRational sbar = gauss_sum(dirichlet_conj(chi));
      CycloRational prod = cyclo_mul(s, sbar);
      CHECK(cyclo_is_rational(prod));
      mpq_class expect = dirichlet_is_odd(chi) ? mpq_class(-N) : mpq_class(N);
      CHECK(prod.c[0] == expect);
    }
  }
}
