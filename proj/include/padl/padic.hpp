#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padl/errors.hpp"

namespace padl {

// Element of Q_p held at capped relative precision.
//
// Invariants:
//   relprec >  0: unit lies in [1, p^relprec) and is coprime to p; the element
//                 is p^val * unit known modulo p^(val + relprec).
//   relprec == 0: precision zero.  unit == 0 and val is the absolute precision
//                 bound, i.e. the element is O(p^val).  This is a value, not an
//                 error state; arithmetic propagates it.
// val may be negative.  absprec() == val + relprec in both cases.
struct PadicNumber {
  long prime = 0;
  long val = 0;
  mpz_class unit = 0;
  long relprec = 0;

  long absprec() const { return val + relprec; }
  bool is_prec_zero() const { return relprec == 0; }
};

mpz_class ipow(long b, long e);
long val_p(const mpz_class& n, long p);          // requires n != 0
long val_p_q(const mpq_class& q, long p);        // requires q != 0

// Canonical constructors.  from_mpz_at reduces an exact integer modulo p^absprec
// and extracts the valuation; a multiple of p^absprec becomes O(p^absprec).
PadicNumber padic_prec_zero(long prime, long absprec);
PadicNumber padic_from_mpz_at(long prime, const mpz_class& n, long absprec);
PadicNumber padic_from_mpq(long prime, const mpq_class& q, long relprec);
PadicNumber padic_from_long(long prime, long n, long relprec);

// Exact lift p^val * unit.  Denominator is a p-power when val < 0.
mpq_class padic_lift(const PadicNumber& x);

PadicNumber padic_add(const PadicNumber& x, const PadicNumber& y);
PadicNumber padic_sub(const PadicNumber& x, const PadicNumber& y);
PadicNumber padic_neg(const PadicNumber& x);
PadicNumber padic_mul(const PadicNumber& x, const PadicNumber& y);
PadicNumber padic_div(const PadicNumber& x, const PadicNumber& y);
PadicNumber padic_pow(const PadicNumber& x, long e);
PadicNumber padic_scale(const PadicNumber& x, const mpq_class& c);  // exact scalar, keeps relprec

// True when x - y is zero to the shared absolute precision.  Always true if
// either operand carries no usable digits at the shared cap.
bool padic_agree(const PadicNumber& x, const PadicNumber& y);
long padic_shared_absprec(const PadicNumber& x, const PadicNumber& y);

std::string padic_to_string(const PadicNumber& x);
PadicNumber padic_parse(const std::string& s);

// log on 1 + pZ_p.
PadicNumber padic_log(const PadicNumber& x);
// Iwasawa branch: log(p) = 0, log of a Teichmuller root is 0.  Any nonzero x.
PadicNumber padic_log_iw(const PadicNumber& x);
// exp, domain val(x) >= 1 (p odd throughout this project).
PadicNumber padic_exp(const PadicNumber& x);
// Teichmuller representative of a unit, to the unit's relative precision.
PadicNumber teichmuller(const PadicNumber& x);

// Binomial coefficient binom(s, j) = s(s-1)...(s-j+1)/j! for p-adic s.
PadicNumber binom_padic(const PadicNumber& s, long j);
// prod_{i=0}^{j-1} (a - 1 - i), the falling factor chain used by the
// derivative-power expansion.
PadicNumber pochhammer_shift(const PadicNumber& a, long j);

}  // namespace padl
