#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padl/weight.hpp"

using namespace padl;

TEST_CASE("classical weights evaluate by powering") {
  for (long p : {5L, 7L}) {
    for (long m = -2; m <= 6; ++m) {
      Weight w = classical_weight(p, m, 10);
      for (long t : {2L, 3L, 12L}) {
        PadicNumber v = weight_eval(w, t);
        PadicNumber expect = padic_pow(padic_from_long(p, t, 10), m);
        CHECK(padic_shared_absprec(v, expect) >= 9);
        CHECK(padic_agree(v, expect));
      }
    }
  }
}

TEST_CASE("evaluation is multiplicative in t") {
  Weight w;
  w.prime = 5;
  w.torsion = 2;
  w.int_part = 3;
  w.dev = padic_from_long(5, 15, 8);  // deviation 15 = 3p
  PadicNumber a = weight_eval(w, 2), b = weight_eval(w, 3);
  PadicNumber ab = weight_eval(w, 6);
  CHECK(padic_agree(ab, padic_mul(a, b)));
  // t only matters mod p^absprec through omega and <t>
  CHECK(padic_agree(weight_eval(w, 2 + 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 25),
                    weight_eval(w, 2)));
}

TEST_CASE("series route matches integer powering route") {
  // dev an exact integer multiple of p: exp(dev log<t>) must equal <t>^dev
  long p = 7;
  for (long d : {7L, 14L, -7L}) {
    Weight w;
    w.prime = p;
    w.torsion = 0;
    w.int_part = 2;
    w.dev = padic_from_long(p, d, 9);
    for (long t : {2L, 5L}) {
      PadicNumber lhs = weight_eval(w, t);
      PadicNumber tp = padic_from_long(p, t, 12);
      PadicNumber bracket = padic_div(tp, teichmuller(tp));
      PadicNumber rhs = padic_pow(bracket, 2 + d);
      CHECK(padic_shared_absprec(lhs, rhs) >= 8);
      CHECK(padic_agree(lhs, rhs));
    }
  }
}

TEST_CASE("combination rule") {
  Weight k = classical_weight(5, 4, 8), nu = classical_weight(5, 1, 8);
  Weight c = weight_combine(k, nu);
  CHECK(c.int_part == 6);
  CHECK(c.torsion == 2);
  CHECK(padic_agree(weight_eval(c, 3), padic_pow(padic_from_long(5, 3, 8), 6)));

  Weight nu2;
  nu2.prime = 5;
  nu2.torsion = 1;
  nu2.int_part = -1;
  nu2.dev = padic_from_long(5, 50, 8);
  Weight c2 = weight_combine(k, nu2);
  CHECK(c2.torsion == 2);
  CHECK(c2.int_part == 2);
  CHECK(padic_agree(c2.dev, padic_from_long(5, 100, 8)));
  CHECK(padic_agree(weight_analytic(c2),
                    padic_from_long(5, 102, 8)));
}

TEST_CASE("assumption gate") {
  std::string why;
  Weight k = classical_weight(5, 4, 8), nu = classical_weight(5, 1, 8);
  CHECK(weight_assumption_holds(k, nu, &why));

  Weight k_odd = classical_weight(5, 3, 8);
  CHECK_FALSE(weight_assumption_holds(k_odd, nu, &why));
  CHECK(why.find("tame") != std::string::npos);

  Weight k_dev = k;
  k_dev.dev = padic_from_long(5, 3, 8);  // unit deviation, not in pZ_p
  CHECK_FALSE(weight_assumption_holds(k_dev, nu, &why));

  Weight k_ok = k;
  k_ok.dev = padic_from_long(5, 10, 8);
  CHECK(weight_assumption_holds(k_ok, nu, &why));

  Weight nu_shallow = nu;
  nu_shallow.dev = padic_from_long(5, 5, 8);  // in pZ_p but not p^2 Z_p
  CHECK_FALSE(weight_assumption_holds(k, nu_shallow, &why));

  Weight nu_ok = nu;
  nu_ok.dev = padic_from_long(5, 25, 8);
  CHECK(weight_assumption_holds(k, nu_ok, &why));
}

TEST_CASE("weight string round trip") {
  Weight w;
  w.prime = 5;
  w.torsion = 2;
  w.int_part = -3;
  w.dev = padic_from_long(5, 10, 6);
  std::string s = weight_to_string(w);
  Weight back = weight_parse(s);
  CHECK(back.prime == 5);
  CHECK(back.torsion == 2);
  CHECK(back.int_part == -3);
  CHECK(padic_agree(back.dev, w.dev));
  CHECK(weight_to_string(back) == s);

  Weight cl = weight_parse("(0; 4; 5^8 * 0 mod 5^0)");
  CHECK(cl.int_part == 4);
  CHECK(cl.dev.is_prec_zero());
  CHECK_THROWS_AS(weight_parse("(1; 2)"), usage_error);
}
