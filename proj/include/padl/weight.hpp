#pragma once

#include <string>

#include "padl/padic.hpp"

namespace padl {

// Point of the weight space W(Q_p) = Hom((Z/p)^* x (1 + pZ_p), Q_p^*),
// written as t -> omega(t)^torsion * <t>^int_part * exp(dev * log<t>).
//
// The analytic parameter int_part + dev is carried split: int_part is an
// exact integer so that classical weights evaluate by integer powering with
// no series involved, dev is the p-adically small deviation.  dev must lie
// in pZ_p for the exponential to converge.
struct Weight {
  long prime = 0;
  long torsion = 0;   // exponent mod p - 1 of the tame character
  long int_part = 0;
  PadicNumber dev;    // element of pZ_p; precision zero encodes an exact 0
};

Weight classical_weight(long prime, long m, long relprec);
// full analytic parameter int_part + dev
PadicNumber weight_analytic(const Weight& w);
// value at an integer prime to p
PadicNumber weight_eval(const Weight& w, long t);

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_scale_int(const Weight& a, long c);
// k + 2 nu, the weight the nu-fold derivative lands in
Weight weight_combine(const Weight& k, const Weight& nu);

// Gate for the derivative machinery: k has even torsion and dev in pZ_p,
// nu has dev in p^2 Z_p.  Returns a reason string on failure.
bool weight_assumption_holds(const Weight& k, const Weight& nu,
                             std::string* reason = nullptr);

// "(torsion; int_part; dev)" with dev in the p-adic string format
std::string weight_to_string(const Weight& w);
Weight weight_parse(const std::string& s);

}  // namespace padl
