#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "padl/padic.hpp"

namespace padl {

// Coefficients of the M-th cyclotomic polynomial, ascending degree, monic.
const std::vector<mpz_class>& cyclotomic_poly(long M);
long euler_phi(long M);
long primitive_root(long p);  // smallest positive primitive root mod an odd prime

// Exact element of Q(zeta_M): vector of length phi(M), coordinate i holding
// the coefficient of zeta^i after reduction mod the cyclotomic polynomial.
struct CycloRational {
  long M = 1;
  std::vector<mpq_class> c;
};

CycloRational cyclo_zero(long M);
CycloRational cyclo_from_mpq(long M, const mpq_class& q);
// zeta_M^e, any integer exponent
CycloRational cyclo_zeta_pow(long M, long e);
// sum of q_e * zeta^e from exponent buckets; single reduction at the end
CycloRational cyclo_from_exponents(long M, const std::map<long, mpq_class>& buckets);

// image of a under Q(zeta_m) -> Q(zeta_M) for m | M, zeta_m = zeta_M^(M/m)
CycloRational cyclo_lift(const CycloRational& a, long M);

CycloRational cyclo_add(const CycloRational& a, const CycloRational& b);
CycloRational cyclo_sub(const CycloRational& a, const CycloRational& b);
CycloRational cyclo_mul(const CycloRational& a, const CycloRational& b);
CycloRational cyclo_scale(const CycloRational& a, const mpq_class& q);
bool cyclo_eq(const CycloRational& a, const CycloRational& b);
bool cyclo_is_zero(const CycloRational& a);
bool cyclo_is_rational(const CycloRational& a);  // all nonconstant coords vanish

// Same quotient ring with capped p-adic coefficients.  p dividing M is
// permitted; the ring is then used as a formal container for exact
// root-of-unity cancellation identities, with precision tracked per
// coefficient only.
struct CycloPadic {
  long M = 1;
  long prime = 0;
  std::vector<PadicNumber> c;
};

CycloPadic cyclo_padic_zero(long M, long prime, long absprec);
CycloPadic cyclo_padic_from(long M, const PadicNumber& x);
CycloPadic cyclo_padic_zeta_pow(long M, long prime, long e, long relprec);
CycloPadic cyclo_padic_embed(const CycloRational& a, long prime, long relprec);

CycloPadic cyclo_padic_add(const CycloPadic& a, const CycloPadic& b);
CycloPadic cyclo_padic_sub(const CycloPadic& a, const CycloPadic& b);
CycloPadic cyclo_padic_mul(const CycloPadic& a, const CycloPadic& b);
CycloPadic cyclo_padic_scale(const CycloPadic& a, const PadicNumber& x);
// all coordinates of a - b are zero at their shared caps
bool cyclo_padic_agree(const CycloPadic& a, const CycloPadic& b);

// Embedding Q(zeta_M) -> Q_p for M dividing p - 1, sending zeta_M to the
// Teichmuller root omega(g)^((p-1)/M) with g the smallest primitive root.
// This is the fixed embedding used everywhere a character value lands in Q_p.
PadicNumber padic_embed_cyclo(const CycloRational& a, long prime, long relprec);
PadicNumber padic_root_of_unity(long prime, long order, long relprec);

}  // namespace padl
