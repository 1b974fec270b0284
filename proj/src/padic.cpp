#include "padl/padic.hpp"

#include <gmp.h>

#include <sstream>

namespace padl {

mpz_class ipow(long b, long e) {
  mpz_class r;
  if (b < 0 || e < 0) throw usage_error("ipow: negative base or exponent");
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b),
                static_cast<unsigned long>(e));
  return r;
}

long val_p(const mpz_class& n, long p) {
  if (n == 0) throw usage_error("val_p of zero");
  mpz_class rem, pz(p);
  return static_cast<long>(
      mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long val_p_q(const mpq_class& q, long p) {
  if (q == 0) throw usage_error("val_p of zero");
  return val_p(q.get_num(), p) - val_p(q.get_den(), p);
}

static mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw precondition_error("inv_mod: not invertible");
  return r;
}

static void check_same_prime(const PadicNumber& x, const PadicNumber& y) {
  if (x.prime != y.prime) throw precondition_error("prime mismatch");
}

PadicNumber padic_prec_zero(long prime, long absprec) {
  PadicNumber z;
  z.prime = prime;
  z.val = absprec;
  z.unit = 0;
  z.relprec = 0;
  return z;
}

PadicNumber padic_from_mpz_at(long prime, const mpz_class& n, long absprec) {
  if (n == 0) return padic_prec_zero(prime, absprec);
  long c = val_p(n, prime);
  if (c >= absprec) return padic_prec_zero(prime, absprec);
  PadicNumber x;
  x.prime = prime;
  x.val = c;
  x.relprec = absprec - c;
  mpz_class u = n / ipow(prime, c);
  mpz_class m = ipow(prime, x.relprec);
  mpz_mod(x.unit.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
  if (x.unit == 0) throw precision_error("padic_from_mpz_at: unit collapsed");
  return x;
}

static PadicNumber padic_from_mpq_at(long prime, const mpq_class& q,
                                     long absprec) {
  if (q == 0) return padic_prec_zero(prime, absprec);
  long v = val_p_q(q, prime);
  if (v >= absprec) return padic_prec_zero(prime, absprec);
  long rel = absprec - v;
  mpz_class num = q.get_num(), den = q.get_den();
  long vn = val_p(num, prime), vd = val_p(den, prime);
  num /= ipow(prime, vn);
  den /= ipow(prime, vd);
  mpz_class m = ipow(prime, rel);
  PadicNumber x;
  x.prime = prime;
  x.val = v;
  x.relprec = rel;
  x.unit = num * inv_mod(den, m);
  mpz_mod(x.unit.get_mpz_t(), x.unit.get_mpz_t(), m.get_mpz_t());
  return x;
}

PadicNumber padic_from_mpq(long prime, const mpq_class& q, long relprec) {
  if (relprec <= 0) throw usage_error("padic_from_mpq: relprec must be positive");
  if (q == 0) return padic_prec_zero(prime, relprec);
  return padic_from_mpq_at(prime, q, val_p_q(q, prime) + relprec);
}

PadicNumber padic_from_long(long prime, long n, long relprec) {
  return padic_from_mpq(prime, mpq_class(n), relprec);
}

mpq_class padic_lift(const PadicNumber& x) {
  if (x.is_prec_zero()) return mpq_class(0);
  mpq_class u(x.unit);
  if (x.val >= 0) return u * ipow(x.prime, x.val);
  return u / ipow(x.prime, -x.val);
}

PadicNumber padic_add(const PadicNumber& x, const PadicNumber& y) {
  check_same_prime(x, y);
  long a = std::min(x.absprec(), y.absprec());
  if (x.is_prec_zero() && y.is_prec_zero())
    return padic_prec_zero(x.prime, a);
  // shift only tracks contributing operands so a precision-zero element with a
  // large bound never forces a large power
  long shift = 0;
  bool first = true;
  for (const PadicNumber* t : {&x, &y}) {
    if (t->is_prec_zero()) continue;
    shift = first ? t->val : std::min(shift, t->val);
    first = false;
  }
  mpz_class nx = x.is_prec_zero() ? mpz_class(0)
                                  : mpz_class(x.unit * ipow(x.prime, x.val - shift));
  mpz_class ny = y.is_prec_zero() ? mpz_class(0)
                                  : mpz_class(y.unit * ipow(y.prime, y.val - shift));
  PadicNumber r = padic_from_mpz_at(x.prime, nx + ny, a - shift);
  r.val += shift;
  return r;
}

PadicNumber padic_neg(const PadicNumber& x) {
  if (x.is_prec_zero()) return x;
  PadicNumber r = x;
  r.unit = ipow(x.prime, x.relprec) - x.unit;
  return r;
}

PadicNumber padic_sub(const PadicNumber& x, const PadicNumber& y) {
  return padic_add(x, padic_neg(y));
}

PadicNumber padic_mul(const PadicNumber& x, const PadicNumber& y) {
  check_same_prime(x, y);
  if (x.is_prec_zero() || y.is_prec_zero())
    return padic_prec_zero(x.prime, x.val + y.val);
  PadicNumber r;
  r.prime = x.prime;
  r.val = x.val + y.val;
  r.relprec = std::min(x.relprec, y.relprec);
  mpz_class m = ipow(x.prime, r.relprec);
  r.unit = x.unit * y.unit;
  mpz_mod(r.unit.get_mpz_t(), r.unit.get_mpz_t(), m.get_mpz_t());
  return r;
}

PadicNumber padic_div(const PadicNumber& x, const PadicNumber& y) {
  check_same_prime(x, y);
  if (y.is_prec_zero())
    throw precision_error("division by a precision-zero element");
  if (x.is_prec_zero()) return padic_prec_zero(x.prime, x.val - y.val);
  PadicNumber r;
  r.prime = x.prime;
  r.val = x.val - y.val;
  r.relprec = std::min(x.relprec, y.relprec);
  mpz_class m = ipow(x.prime, r.relprec);
  r.unit = x.unit * inv_mod(y.unit, m);
  mpz_mod(r.unit.get_mpz_t(), r.unit.get_mpz_t(), m.get_mpz_t());
  return r;
}

PadicNumber padic_pow(const PadicNumber& x, long e) {
  if (e == 0) {
    long rel = x.is_prec_zero() ? std::max(x.val, 1L) : x.relprec;
    return padic_from_long(x.prime, 1, rel);
  }
  if (e < 0) {
    PadicNumber one = padic_from_long(x.prime, 1, std::max(x.relprec, 1L));
    return padic_pow(padic_div(one, x), -e);
  }
  if (x.is_prec_zero()) return padic_prec_zero(x.prime, e * x.val);
  PadicNumber r;
  r.prime = x.prime;
  r.val = e * x.val;
  r.relprec = x.relprec;
  mpz_class m = ipow(x.prime, x.relprec), ez(e);
  mpz_powm(r.unit.get_mpz_t(), x.unit.get_mpz_t(), ez.get_mpz_t(),
           m.get_mpz_t());
  return r;
}

PadicNumber padic_scale(const PadicNumber& x, const mpq_class& c) {
  if (c == 0) return padic_prec_zero(x.prime, x.absprec());
  long w = val_p_q(c, x.prime);
  if (x.is_prec_zero()) return padic_prec_zero(x.prime, x.val + w);
  PadicNumber r = x;
  r.val += w;
  mpz_class num = c.get_num(), den = c.get_den();
  num /= ipow(x.prime, val_p(num, x.prime));
  den /= ipow(x.prime, val_p(den, x.prime));
  mpz_class m = ipow(x.prime, x.relprec);
  r.unit = x.unit * num * inv_mod(den, m);
  mpz_mod(r.unit.get_mpz_t(), r.unit.get_mpz_t(), m.get_mpz_t());
  return r;
}

long padic_shared_absprec(const PadicNumber& x, const PadicNumber& y) {
  return std::min(x.absprec(), y.absprec());
}

bool padic_agree(const PadicNumber& x, const PadicNumber& y) {
  return padic_sub(x, y).is_prec_zero();
}

std::string padic_to_string(const PadicNumber& x) {
  std::ostringstream os;
  os << x.prime << "^" << x.val << " * " << x.unit << " mod " << x.prime << "^"
     << x.relprec;
  return os.str();
}

PadicNumber padic_parse(const std::string& s) {
  long prime = 0, val = 0, prime2 = 0, relprec = 0;
  mpz_class unit;
  int got = gmp_sscanf(s.c_str(), "%ld^%ld * %Zd mod %ld^%ld", &prime, &val,
                       unit.get_mpz_t(), &prime2, &relprec);
  if (got != 5 || prime != prime2 || prime < 2 || relprec < 0)
    throw usage_error("padic_parse: expected 'p^a * u mod p^M', got '" + s + "'");
  if (relprec == 0) {
    if (unit != 0) throw usage_error("padic_parse: precision-zero needs unit 0");
    return padic_prec_zero(prime, val);
  }
  PadicNumber r = padic_from_mpz_at(prime, unit, relprec);
  r.val += val;
  return r;
}

static long ilog(long p, long n) {
  long k = 0, q = n;
  while (q >= p) {
    q /= p;
    ++k;
  }
  return k;
}

PadicNumber padic_log(const PadicNumber& x) {
  if (x.is_prec_zero() || x.val != 0)
    throw precondition_error("padic_log: need a unit congruent to 1 mod p");
  mpz_class u1 = x.unit - 1;
  long M = x.relprec;
  if (u1 == 0) return padic_prec_zero(x.prime, M);
  long c = val_p(u1, x.prime);
  if (c < 1) throw precondition_error("padic_log: need a unit congruent to 1 mod p");
  // Exact alternating sum of u1^n / n; the stopping bound c*n - ilog(n) is
  // nondecreasing once reached, so the tail sits above p^M.
  mpq_class sum = 0;
  mpz_class pw = u1;
  for (long n = 1;; ++n) {
    if (n > 1) pw *= u1;
    mpq_class term(pw, mpz_class(n));
    term.canonicalize();
    if (n % 2 == 0) term = -term;
    sum += term;
    if (c * n - ilog(x.prime, n) >= M && c * (n + 1) - ilog(x.prime, n + 1) >= M)
      break;
  }
  return padic_from_mpq_at(x.prime, sum, M);
}

PadicNumber teichmuller(const PadicNumber& x) {
  if (x.is_prec_zero() || x.val != 0)
    throw precondition_error("teichmuller: need a unit");
  long r = x.relprec;
  mpz_class m = ipow(x.prime, r), y = x.unit, pz(x.prime);
  for (long i = 0; i < r; ++i)
    mpz_powm(y.get_mpz_t(), y.get_mpz_t(), pz.get_mpz_t(), m.get_mpz_t());
  PadicNumber t = x;
  t.unit = y;
  return t;
}

PadicNumber padic_log_iw(const PadicNumber& x) {
  if (x.is_prec_zero())
    throw precision_error("padic_log_iw: argument indistinguishable from zero");
  PadicNumber u = x;
  u.val = 0;  // the p-power part contributes log(p) = 0 on this branch
  PadicNumber t = teichmuller(u);
  return padic_log(padic_div(u, t));
}

PadicNumber padic_exp(const PadicNumber& x) {
  long p = x.prime;
  if (x.is_prec_zero()) {
    if (x.val < 1) throw precondition_error("padic_exp: need valuation >= 1");
    PadicNumber r = padic_from_long(p, 1, x.val);
    return r;
  }
  if (x.val < 1 || p < 3)
    throw precondition_error("padic_exp: need odd p and valuation >= 1");
  long c = x.val, M = x.absprec();
  mpq_class X = padic_lift(x);
  // v(X^n / n!) >= n*c - (n-1)/(p-1) > n*(c - 1/(p-1)), so N below is enough.
  long N = (M * (p - 1) - 1) / (c * (p - 1) - 1) + 1;
  mpq_class sum = 1, term = 1;
  for (long n = 1; n <= N; ++n) {
    term *= X;
    term /= n;
    sum += term;
  }
  return padic_from_mpq_at(p, sum, M);
}

PadicNumber binom_padic(const PadicNumber& s, long j) {
  if (j < 0) throw usage_error("binom_padic: j must be nonnegative");
  long base = s.is_prec_zero() ? std::max(s.val, 1L) : s.relprec;
  long guard = base + 2 * (ilog(s.prime, std::max(j, 1L)) + 1);
  PadicNumber acc = padic_from_long(s.prime, 1, guard);
  mpz_class jfact = 1;
  for (long i = 0; i < j; ++i) {
    acc = padic_mul(acc, padic_sub(s, padic_from_long(s.prime, i, guard)));
    jfact *= (i + 1);
  }
  if (j == 0) return acc;
  return padic_scale(acc, mpq_class(1) / mpq_class(jfact));
}

PadicNumber pochhammer_shift(const PadicNumber& a, long j) {
  if (j < 0) throw usage_error("pochhammer_shift: j must be nonnegative");
  long base = a.is_prec_zero() ? std::max(a.val, 1L) : a.relprec;
  long guard = base + 2 * (ilog(a.prime, std::max(j, 1L)) + 1);
  PadicNumber acc = padic_from_long(a.prime, 1, guard);
  for (long i = 0; i < j; ++i)
    acc = padic_mul(acc, padic_sub(a, padic_from_long(a.prime, 1 + i, guard)));
  return acc;
}

}  // namespace padl
