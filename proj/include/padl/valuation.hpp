#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padl/padic.hpp"
#include "padl/quad.hpp"

namespace padl {

// Exact rational valuation data attached to the level-n quotient curve at a
// non-split odd prime.  hdg is the Hodge height, delta the (p-1)st root
// section height, period the attached p-adic period height.  delta and
// period coincide: both are hdg/(p-1).
struct ValProfile {
  long prime = 0;
  Splitting cas = Splitting::inert;
  long level = 0;
  mpq_class hdg;
  mpq_class delta;
  mpq_class period;
};

// hdg = 1/(p^(n-1)(p+1)) inert, 1/(2p^n) ramified; n >= 1, p odd.
// Throws on the split case.
ValProfile canonical_valuations(long p, Splitting cas, long n);

// Overconvergence radius r, blow-up bound b, and the minimal level n at
// which the region contains the canonical locus, per splitting case.
// b = p(r-1) is established only for p >= 5; at p = 3 the same expression
// is used as a configured default and flagged unverified.
struct RadiusParams {
  long prime = 0;
  bool classical = true;
  long radius = 0;
  long bound = 0;
  bool bound_verified = true;
  long n_inert = 0;
  long n_ramified = 0;
};

// radius = p+2 for integer weights, 2p (4p at p = 3) for analytic ones;
// n_inert minimal with p^(n-1)(p+1) >= b, n_ramified minimal with
// 2p^n >= b.  Requires p an odd prime.
RadiusParams radius_params(bool k_is_classical, long p);

// One violated instance of a named inequality, with the exact signed
// margin (lhs - rhs of the claimed ">= 0" form).
struct IneqFailure {
  std::string check;
  std::string witness;
  mpq_class margin;
};

// Sweep report: minimal margin per named check, and every violation found.
// A strict inequality fails on margin <= 0.
struct IneqReport {
  long prime = 0;
  long jcap = 0;
  long hcap = 0;
  bool all_hold = true;
  std::vector<IneqFailure> failures;
  std::vector<std::pair<std::string, mpq_class>> margins;
};

// Instantiates the numeric inequalities underpinning the convergence
// arguments over j <= jcap and h <= hcap, all in exact rational
// arithmetic.  Checks claimed only for p >= 5 are skipped at p = 3.
// The multiset tail bound is checked through the per-entry minimum, which
// is tight, so a reported failure is a genuine counterexample.
IneqReport check_inequalities(long p, long jcap = 100000, long hcap = 10);

// Measured precision-loss tracker: records the worst p-denominator
// exponent seen across a run.  The loss allowance is asserted to exist,
// not pinned, so it is observed rather than assumed.
struct LossLedger {
  long worst = 0;
  long samples = 0;
  void observe_val(long v);
  void observe(const PadicNumber& x);
};

std::string valuation_csv_header();
std::string valuation_csv_row(const ValProfile& v, const RadiusParams& rp);

}  // namespace padl
