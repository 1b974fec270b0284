#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padl/errors.hpp"
#include "padl/nabla.hpp"

using namespace padl;

static QExpansion e_dep(long p, long k, long nq = 48, long rel = 14) {
  return qexp_deplete(eisenstein(p, k, dirichlet_trivial(1), nq, rel));
}

static Weight dev_weight(long p, long d, long rel) {
  Weight w;
  w.prime = p;
  w.dev = padic_from_long(p, d, rel);
  return w;
}

TEST_CASE("single step at classical weight two") {
  QExpansion f = e_dep(5, 4);
  Weight k2 = classical_weight(5, 2, 14);
  WSection s = wsection_from_qexp(f, k2);

  WSection d1 = nabla_step(s);
  REQUIRE(d1.degree() == 1);
  CHECK(qexp_agree(d1.comp[0], qexp_theta(f)));
  CHECK(qexp_agree(d1.comp[1], qexp_scale(f, padic_from_long(5, 2, 14))));

  // second step: (theta^2 f, (2u+2) theta f, u(u+1) f) with u = 2
  WSection d2 = nabla_step(d1);
  REQUIRE(d2.degree() == 2);
  CHECK(qexp_agree(d2.comp[0], qexp_theta(qexp_theta(f))));
  CHECK(qexp_agree(d2.comp[1],
                   qexp_scale(qexp_theta(f), padic_from_long(5, 6, 14))));
  CHECK(qexp_agree(d2.comp[2], qexp_scale(f, padic_from_long(5, 6, 14))));
}

TEST_CASE("interpolated power specializes to iterated steps") {
  for (long p : {5L, 7L}) {
    QExpansion f = e_dep(p, 4, 40, 12);
    for (long k : {2L, 4L}) {
      Weight kw = classical_weight(p, k, 12);
      WSection iter = wsection_from_qexp(f, kw);
      for (long m = 1; m <= 3; ++m) {
        iter = nabla_step(iter);
        NablaReport rep;
        WSection direct = nabla_nu(f, kw, classical_weight(p, m, 12), -1, &rep);
        CHECK(rep.J == m);
        CHECK(rep.classical_cutoff);
        CHECK(wsection_agree(direct, iter));
      }
    }
  }
}

TEST_CASE("zeroth power returns the input alone") {
  QExpansion f = e_dep(5, 4);
  Weight kw = classical_weight(5, 4, 14);
  WSection s = nabla_nu(f, kw, classical_weight(5, 0, 14));
  REQUIRE(s.degree() == 0);
  CHECK(qexp_agree(s.comp[0], f));
}

TEST_CASE("degree-zero projection matches component zero") {
  QExpansion f = e_dep(5, 4);
  Weight kw = classical_weight(5, 4, 14);
  Weight nu = dev_weight(5, 125, 12);
  WSection s = nabla_nu(f, kw, nu);
  QExpansion split = theta_nu_split(f, kw, nu);
  CHECK(qexp_agree(split, s.comp[0]));

  // classical m acts as a_n -> n^m a_n
  QExpansion cube = theta_nu_split(f, kw, classical_weight(5, 3, 14));
  QExpansion manual = qexp_theta(qexp_theta(qexp_theta(f)));
  CHECK(qexp_agree(cube, manual));
}

TEST_CASE("composition of interpolated powers is additive") {
  QExpansion f = e_dep(5, 4, 40, 12);
  Weight kw = classical_weight(5, 4, 12);

  // classical pair
  Weight n1 = classical_weight(5, 2, 12);
  Weight n2 = classical_weight(5, 1, 12);
  WSection lhs = nabla_nu(f, kw, weight_add(n1, n2));
  WSection rhs = nabla_nu_section(nabla_nu(f, kw, n1), n2);
  CHECK(wsection_agree(lhs, rhs));

  // classical then analytic deviation
  Weight n3 = dev_weight(5, 125, 12);
  WSection lhs2 = nabla_nu(f, kw, weight_add(n1, n3));
  WSection rhs2 = nabla_nu_section(nabla_nu(f, kw, n1), n3);
  CHECK(wsection_agree(lhs2, rhs2));
}

TEST_CASE("component floors are sound and can undercut the square count") {
  QExpansion f = e_dep(5, 4);
  Weight kw = classical_weight(5, 2, 14);
  Weight nu = dev_weight(5, 25, 16);  // s = 25, u = 2

  NablaReport rep;
  WSection s = nabla_nu(f, kw, nu, -1, &rep);
  REQUIRE(s.degree() >= 3);
  for (long j = 0; j <= s.degree(); ++j)
    for (const auto& x : s.comp[j].a)
      if (!x.is_prec_zero()) CHECK(x.val >= s.val_floor[j]);

  // binom(25,3) * 26*25*24 has valuation 4, not the 6 a per-slot square
  // count would predict; a_1 = 2 is a unit so the component shows it
  PadicNumber scal = padic_mul(binom_padic(padic_from_long(5, 25, 16), 3),
                               pochhammer_shift(padic_from_long(5, 27, 16), 3));
  CHECK(scal.val == 4);
  CHECK(s.comp[3].a[1].val == 4);
  CHECK(s.comp[3].a[1].val < 6);
  CHECK(s.val_floor[3] <= 4);
}

TEST_CASE("derivative gates reject bad inputs") {
  QExpansion full = eisenstein(5, 4, dirichlet_trivial(1), 30, 10);
  Weight kw = classical_weight(5, 4, 10);
  Weight nu = classical_weight(5, 1, 10);
  CHECK_THROWS_AS(nabla_nu(full, kw, nu), precondition_error);

  QExpansion f = qexp_deplete(full);
  Weight bad_nu = dev_weight(5, 5, 10);  // deviation only in pZ_p
  CHECK_THROWS_AS(nabla_nu(f, kw, bad_nu), precondition_error);

  Weight odd_k = classical_weight(5, 3, 10);
  CHECK_THROWS_AS(nabla_nu(f, odd_k, nu), precondition_error);

  // truncating a classical cubic power below degree 3 discards real content
  CHECK_THROWS_AS(nabla_nu(f, kw, classical_weight(5, 3, 10), 1),
                  precision_error);
}

TEST_CASE("connection commutes with V and U") {
  Weight kw = classical_weight(5, 2, 12);

  QExpansion q1 = qexp_zero(5, 20, 12);
  q1.a[1] = padic_from_long(5, 1, 12);
  CommutationReport basic = check_commutation(q1, kw);
  CHECK(basic.all_ok());

  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<long> coef(-40, 40);
  for (int trial = 0; trial < 5; ++trial) {
    QExpansion f = qexp_zero(5, 30, 12);
    for (long n = 1; n <= 30; ++n)
      f.a[n] = padic_from_long(5, coef(rng), 12);
    CommutationReport rep = check_commutation(f, kw);
    CHECK(rep.theta_V_ok);
    CHECK(rep.theta_U_ok);
    CHECK(rep.section_V_ok);
    CHECK(rep.section_U_ok);
    CHECK(rep.agree_absprec >= 10);

    // depletion commutes with theta, so primitives of depleted forms stay
    // inside the depleted calculus
    CHECK(qexp_agree(qexp_deplete(qexp_theta(f)), qexp_theta(qexp_deplete(f))));
  }
}

TEST_CASE("primitive chain and its derivative relations") {
  QExpansion f = e_dep(5, 4);
  long r = 3;
  WSection g = coleman_primitive(f, r);
  REQUIRE(g.degree() == r);

  // degree zero is a_n / n
  CHECK(padic_agree(g.comp[0].a[1], padic_from_long(5, 2, 10)));
  CHECK(padic_agree(g.comp[0].a[2], padic_from_long(5, 9, 10)));

  // top component carries r! / n^{r+1}
  CHECK(padic_agree(g.comp[r].a[2],
                    padic_from_mpq(5, mpq_class(6 * 18, 16), 10)));

  // theta(g_j) = (r - j + 1) g_{j-1}
  for (long j = 1; j <= r; ++j)
    CHECK(qexp_agree(qexp_theta(g.comp[j]),
                     qexp_scale(g.comp[j - 1],
                                padic_from_long(5, r - j + 1, 14))));

  // theta^{r-j}(g_r) = (r-j)! g_j
  for (long j = 0; j <= r; ++j) {
    QExpansion lhs = g.comp[r];
    for (long t = 0; t < r - j; ++t) lhs = qexp_theta(lhs);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(r - j));
    CHECK(qexp_agree(lhs, qexp_scale(g.comp[j],
                                     padic_from_mpq(5, mpq_class(fact), 14))));
  }

  // theta(g_0) returns the input
  CHECK(qexp_agree(qexp_theta(g.comp[0]), f));
}

TEST_CASE("top primitive component meets the negative interpolated powers") {
  // degree-0 term of the (r-j)-fold step on g_r at weight -r equals
  // r! times the degree-0 term of the (-1-j)-th interpolated power
  QExpansion f = e_dep(7, 4, 40, 12);
  long r = 2;
  WSection g = coleman_primitive(f, r);
  Weight kw = classical_weight(7, r + 2, 12);
  mpz_class rfact;
  mpz_fac_ui(rfact.get_mpz_t(), static_cast<unsigned long>(r));

  for (long j = 0; j <= r; ++j) {
    WSection s = wsection_from_qexp(g.comp[r], classical_weight(7, -r, 12));
    for (long t = 0; t < r - j; ++t) s = nabla_step(s);
    WSection w = nabla_nu(f, kw, classical_weight(7, -1 - j, 12));
    CHECK(qexp_agree(s.comp[0],
                     qexp_scale(w.comp[0],
                                padic_from_mpq(7, mpq_class(rfact), 12))));
  }
}

TEST_CASE("eigen recurrence coefficients satisfy the primitive depletion rule") {
  // synthetic weight-4 fixture: a_{p^e} by the Hecke recurrence at p = 5,
  // coprime part arbitrary units; G = sum a_n / n q^n must satisfy
  // G - V U G = G - (a_p / p) V G + p V^2 G
  long p = 5, nq = 50, rel = 14;
  mpq_class ap = 7;
  std::vector<mpq_class> ppow = {1, ap, ap * ap - 125};  // p^{k-1} = 125
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> unit(1, 30);

  std::vector<mpq_class> a(nq + 1, 0);
  std::vector<mpq_class> b(nq + 1, 0);
  for (long m = 1; m <= nq; ++m) {
    if (m % p == 0) continue;
    long u = unit(rng);
    while (u % p == 0) u = unit(rng);
    b[m] = u;
  }
  for (long n = 1; n <= nq; ++n) {
    long e = 0, m = n;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    a[n] = ppow[e] * b[m];
  }

  QExpansion G = qexp_zero(p, nq, rel);
  for (long n = 1; n <= nq; ++n)
    G.a[n] = padic_from_mpq(p, a[n] / n, rel);

  QExpansion vg = qexp_V(G);
  QExpansion vvg = qexp_V(vg);
  QExpansion rhs = qexp_add(
      qexp_sub(G, qexp_scale(vg, padic_from_mpq(p, ap / p, rel))),
      qexp_scale(vvg, padic_from_long(p, p, rel)));
  CHECK(qexp_agree(qexp_deplete(G), rhs));
}

TEST_CASE("unit series split into dominant monomial and log tail") {
  long p = 5, rel = 12;
  auto one = padic_from_long(p, 1, rel);

  LaurentSeries disk{p, 0, {one, padic_from_long(p, 5, rel)}};
  ColemanLog dl = coleman_log(disk, Region::disk);
  CHECK(dl.constant.is_prec_zero());
  CHECK(dl.residue == 0);
  CHECK(padic_agree(dl.tail.c[1 - dl.tail.low], padic_from_long(p, 5, rel)));
  CHECK(padic_agree(dl.tail.c[2 - dl.tail.low],
                    padic_from_mpq(p, mpq_class(-25, 2), rel)));
  CHECK(padic_agree(dl.tail.c[3 - dl.tail.low],
                    padic_from_mpq(p, mpq_class(125, 3), rel)));

  LaurentSeries tee{p, 1, {one}};
  ColemanLog tl = coleman_log(tee, Region::annulus);
  CHECK(tl.constant.is_prec_zero());
  CHECK(tl.residue == 1);
  for (const auto& x : tl.tail.c) CHECK(x.is_prec_zero());

  // 2 t^{-1} (1 + 5t): constant log(2), residue -1
  LaurentSeries ann{p, -1,
                    {padic_from_long(p, 2, rel), padic_from_long(p, 10, rel)}};
  ColemanLog al = coleman_log(ann, Region::annulus);
  CHECK(padic_agree(al.constant, padic_log_iw(padic_from_long(p, 2, rel))));
  CHECK(al.residue == -1);
  CHECK(padic_agree(al.tail.c[1 - al.tail.low], padic_from_long(p, 5, rel)));

  LaurentSeries tie{p, 0, {one, one}};
  CHECK_THROWS_AS(coleman_log(tie, Region::annulus), precondition_error);

  LaurentSeries shifted{p, 0, {padic_from_long(p, 5, rel), one}};
  CHECK_THROWS_AS(coleman_log(shifted, Region::disk), precondition_error);

  LaurentSeries wide{p, 0, {one, padic_from_long(p, 3, rel)}};
  CHECK_THROWS_AS(coleman_log(wide, Region::annulus), precondition_error);

  LaurentSeries fuzzy{p, 0, {one, padic_prec_zero(p, 0)}};
  CHECK_THROWS_AS(coleman_log(fuzzy, Region::annulus), precision_error);
}
