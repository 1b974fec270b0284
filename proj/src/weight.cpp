#include "padl/weight.hpp"

#include <sstream>

namespace padl {

Weight classical_weight(long prime, long m, long relprec) {
  Weight w;
  w.prime = prime;
  w.torsion = ((m % (prime - 1)) + (prime - 1)) % (prime - 1);
  w.int_part = m;
  w.dev = padic_prec_zero(prime, relprec);
  return w;
}

PadicNumber weight_analytic(const Weight& w) {
  return padic_add(padic_from_long(w.prime, w.int_part,
                                   std::max(w.dev.absprec(), 1L)),
                   w.dev);
}

PadicNumber weight_eval(const Weight& w, long t) {
  long p = w.prime;
  long r = ((t % p) + p) % p;
  if (r == 0) throw precondition_error("weight_eval: t must be prime to p");
  long M = std::max(w.dev.absprec(), 1L);
  PadicNumber tp = padic_from_long(p, t, M);
  PadicNumber om = teichmuller(tp);
  PadicNumber one_unit = padic_div(tp, om);  // <t>, congruent to 1 mod p
  PadicNumber out = padic_mul(padic_pow(om, w.torsion),
                              padic_pow(one_unit, w.int_part));
  if (!(w.dev.is_prec_zero() && w.dev.val >= M)) {
    PadicNumber arg = padic_mul(w.dev, padic_log(one_unit));
    out = padic_mul(out, padic_exp(arg));
  }
  return out;
}

Weight weight_add(const Weight& a, const Weight& b) {
  if (a.prime != b.prime) throw precondition_error("weight_add: prime mismatch");
  Weight w;
  w.prime = a.prime;
  w.torsion = (a.torsion + b.torsion) % (a.prime - 1);
  w.int_part = a.int_part + b.int_part;
  w.dev = padic_add(a.dev, b.dev);
  return w;
}

Weight weight_scale_int(const Weight& a, long c) {
  Weight w = a;
  long q = a.prime - 1;
  w.torsion = ((a.torsion * c) % q + q) % q;
  w.int_part = a.int_part * c;
  w.dev = padic_scale(a.dev, mpq_class(c));
  return w;
}

Weight weight_combine(const Weight& k, const Weight& nu) {
  return weight_add(k, weight_scale_int(nu, 2));
}

bool weight_assumption_holds(const Weight& k, const Weight& nu,
                             std::string* reason) {
  auto fail = [&](const char* msg) {
    if (reason) *reason = msg;
    return false;
  };
  if (k.torsion % 2 != 0) return fail("tame part of k is not a square");
  if (!k.dev.is_prec_zero() && k.dev.val < 1)
    return fail("deviation of k does not lie in pZ_p");
  if (k.dev.is_prec_zero() && k.dev.val < 1)
    return fail("deviation of k not resolved past p^1");
  if (!nu.dev.is_prec_zero() && nu.dev.val < 2)
    return fail("deviation of nu does not lie in p^2 Z_p");
  if (nu.dev.is_prec_zero() && nu.dev.val < 2)
    return fail("deviation of nu not resolved past p^2");
  if (reason) reason->clear();
  return true;
}

std::string weight_to_string(const Weight& w) {
  std::ostringstream os;
  os << "(" << w.torsion << "; " << w.int_part << "; " << padic_to_string(w.dev)
     << ")";
  return os.str();
}

Weight weight_parse(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw usage_error("weight_parse: expected '(e; a; u)'");
  std::string body = s.substr(1, s.size() - 2);
  size_t c1 = body.find(';');
  size_t c2 = body.find(';', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw usage_error("weight_parse: expected '(e; a; u)'");
  Weight w;
  try {
    w.torsion = std::stol(body.substr(0, c1));
    w.int_part = std::stol(body.substr(c1 + 1, c2 - c1 - 1));
  } catch (const std::exception&) {
    throw usage_error("weight_parse: bad integer field");
  }
  size_t start = body.find_first_not_of(' ', c2 + 1);
  if (start == std::string::npos)
    throw usage_error("weight_parse: missing deviation field");
  w.dev = padic_parse(body.substr(start));
  w.prime = w.dev.prime;
  w.torsion = ((w.torsion % (w.prime - 1)) + (w.prime - 1)) % (w.prime - 1);
  return w;
}

}  // namespace padl
