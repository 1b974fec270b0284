#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padl/padic.hpp"

using namespace padl;

static PadicNumber at(long p, long n, long rel) {
  return padic_from_long(p, n, rel);
}

TEST_CASE("construction and normalization") {
  PadicNumber x = padic_from_mpz_at(5, mpz_class(75), 6);
  CHECK(x.val == 2);
  CHECK(x.relprec == 4);
  CHECK(x.unit == 3);

  PadicNumber z = padic_from_mpz_at(5, mpz_class(625), 3);
  CHECK(z.is_prec_zero());
  CHECK(z.val == 3);

  // 1/2 in Z_3 at relative precision 2 is 5 mod 9
  PadicNumber h = padic_from_mpq(3, mpq_class(1, 2), 2);
  CHECK(h.val == 0);
  CHECK(h.unit == 5);
}

TEST_CASE("string round trip") {
  PadicNumber x;
  x.prime = 5;
  x.val = 3;
  x.unit = 12;
  x.relprec = 20;
  std::string s = padic_to_string(x);
  CHECK(s == "5^3 * 12 mod 5^20");
  PadicNumber y = padic_parse(s);
  CHECK(y.val == 3);
  CHECK(y.unit == 12);
  CHECK(y.relprec == 20);

  PadicNumber z = padic_parse("5^7 * 0 mod 5^0");
  CHECK(z.is_prec_zero());
  CHECK(z.val == 7);
  CHECK(padic_to_string(z) == "5^7 * 0 mod 5^0");

  PadicNumber w = padic_parse("7^-2 * 3 mod 7^4");
  CHECK(w.val == -2);
  CHECK(padic_lift(w) == mpq_class(3) / 49);

  CHECK_THROWS_AS(padic_parse("nonsense"), usage_error);
}

TEST_CASE("arithmetic caps and renormalizes") {
  PadicNumber a = at(5, 7, 6), b = at(5, 17, 4);
  PadicNumber s = padic_add(a, b);
  CHECK(s.val == 0);
  CHECK(s.absprec() == 4);
  CHECK(s.unit == 24);

  // cancellation extracts valuation
  PadicNumber c = padic_add(at(5, 2, 6), at(5, 23, 6));
  CHECK(c.val == 2);  // 2 + 23 = 25
  CHECK(c.relprec == 4);

  // total cancellation leaves a precision-zero element at the shared cap
  PadicNumber d = padic_sub(a, a);
  CHECK(d.is_prec_zero());
  CHECK(d.val == 6);

  PadicNumber m = padic_mul(at(5, 10, 3), at(5, 15, 5));
  CHECK(m.val == 2);
  CHECK(m.relprec == 3);
  CHECK(m.unit == 6);

  PadicNumber q = padic_div(at(5, 1, 4), at(5, 10, 4));
  CHECK(q.val == -1);
  // 1/2 mod 5^4 = 313
  CHECK(q.unit == 313);
}

TEST_CASE("precision zero propagation") {
  PadicNumber o = padic_prec_zero(5, 8);
  PadicNumber x = at(5, 50, 10);  // val 2
  CHECK(padic_mul(x, o).val == 10);
  CHECK(padic_mul(x, o).is_prec_zero());
  CHECK(padic_add(x, o).absprec() == 8);
  CHECK(padic_add(o, padic_prec_zero(5, 3)).val == 3);
  CHECK_THROWS_AS(padic_div(x, o), precision_error);
  CHECK(padic_div(o, x).val == 6);
}

TEST_CASE("agreement predicate") {
  PadicNumber a = padic_from_mpz_at(5, mpz_class(626), 3);
  PadicNumber b = at(5, 1, 3);
  CHECK(padic_agree(a, b));
  CHECK(padic_shared_absprec(a, b) == 3);
  CHECK_FALSE(padic_agree(at(5, 2, 3), b));
  // too-coarse cap makes everything agree; callers must check the floor
  CHECK(padic_agree(padic_prec_zero(5, 0), at(5, 2, 3)));
}

TEST_CASE("log on the principal units") {
  // log_5(6) = 5 - 25/2 + ... = 55 mod 125
  PadicNumber l = padic_log(at(5, 6, 3));
  CHECK(padic_agree(l, padic_from_mpz_at(5, mpz_class(55), 3)));
  CHECK(l.absprec() == 3);

  CHECK(padic_log(at(5, 1, 9)).is_prec_zero());
  CHECK_THROWS_AS(padic_log(at(5, 2, 5)), precondition_error);

  // additivity at higher precision
  PadicNumber u = at(5, 26, 12), v = at(5, 101, 12);
  PadicNumber lhs = padic_log(padic_mul(u, v));
  PadicNumber rhs = padic_add(padic_log(u), padic_log(v));
  CHECK(padic_shared_absprec(lhs, rhs) >= 10);
  CHECK(padic_agree(lhs, rhs));
}

TEST_CASE("exp and the inverse relation") {
  // exp_5(5) = 1 + 5 + 25/2 = 81 mod 125
  PadicNumber x;
  x.prime = 5;
  x.val = 1;
  x.unit = 1;
  x.relprec = 2;
  PadicNumber e = padic_exp(x);
  CHECK(padic_agree(e, padic_from_mpz_at(5, mpz_class(81), 3)));

  PadicNumber y = at(5, 16, 12);
  PadicNumber back = padic_exp(padic_log(y));
  CHECK(padic_shared_absprec(back, y) >= 11);
  CHECK(padic_agree(back, y));

  CHECK_THROWS_AS(padic_exp(at(5, 2, 4)), precondition_error);
}

TEST_CASE("teichmuller lift") {
  PadicNumber t = teichmuller(at(5, 2, 2));
  CHECK(t.unit == 7);  // omega(2) = 7 mod 25
  PadicNumber t2 = teichmuller(at(5, 2, 12));
  // fixed point of x -> x^p, so its (p-1)st power is 1
  CHECK(padic_agree(padic_pow(t2, 4), at(5, 1, 12)));
  // reduces to the input mod p
  mpz_class diff = t2.unit - 2;
  CHECK(diff % 5 == 0);
}

TEST_CASE("iwasawa branch log") {
  PadicNumber a = at(5, 6, 8);
  PadicNumber pa = padic_from_mpq(5, mpq_class(30), 8);  // 5 * 6
  // log(p) = 0 on this branch
  CHECK(padic_agree(padic_log_iw(pa), padic_log_iw(a)));
  // teichmuller roots die
  CHECK(padic_log_iw(teichmuller(at(5, 2, 8))).is_prec_zero());
  // agrees with the series log on principal units
  CHECK(padic_agree(padic_log_iw(at(5, 26, 8)), padic_log(at(5, 26, 8))));
}

TEST_CASE("binomial and falling factors") {
  // binom(-1, 2) = (-1)(-2)/2 = 1
  CHECK(padic_agree(binom_padic(at(5, -1, 10), 2), at(5, 1, 10)));
  // binom(7, 3) = 35
  CHECK(padic_agree(binom_padic(at(5, 7, 10), 3), at(5, 35, 8)));
  // binom(s, 0) = 1 even for precision-poor s
  CHECK(padic_agree(binom_padic(padic_prec_zero(5, 2), 0), at(5, 1, 2)));
  // pochhammer_shift(5, 2) = 4 * 3 = 12
  CHECK(padic_agree(pochhammer_shift(at(7, 5, 10), 2), at(7, 12, 10)));
  CHECK(padic_agree(pochhammer_shift(at(7, 5, 10), 0), at(7, 1, 10)));
}

TEST_CASE("randomized ring identities") {
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<long> num(-400, 400), den(1, 60);
  for (int i = 0; i < 60; ++i) {
    long p = (i % 2) ? 5 : 7;
    mpq_class qa(num(rng), den(rng)), qb(num(rng), den(rng));
    if (qa == 0 || qb == 0) continue;
    qa.canonicalize();
    qb.canonicalize();
    PadicNumber a = padic_from_mpq(p, qa, 12), b = padic_from_mpq(p, qb, 12);
    CHECK(padic_agree(padic_add(a, b), padic_add(b, a)));
    CHECK(padic_agree(padic_mul(a, b), padic_mul(b, a)));
    CHECK(padic_agree(padic_sub(padic_add(a, b), b), a));
    PadicNumber prod = padic_mul(a, b);
    CHECK(padic_agree(padic_div(prod, b), a));
    // exact lift consistency
    CHECK(padic_agree(padic_from_mpq(p, qa + qb, 12), padic_add(a, b)));
    CHECK(padic_agree(padic_from_mpq(p, qa * qb, 12), padic_mul(a, b)));
  }
}
