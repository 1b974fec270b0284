#include "padl/valuation.hpp"

#include <algorithm>
#include <sstream>

#include "padl/errors.hpp"

namespace padl {

namespace {

mpq_class frac(long n, long d) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

const char* case_name(Splitting cas) {
  return cas == Splitting::inert ? "inert" : "ramified";
}

// v_p(n!) by Legendre
long factorial_val(long n, long p) {
  long v = 0;
  for (long q = p; q <= n; q *= p) v += n / q;
  return v;
}

void note_margin(IneqReport& rep, const std::string& check,
                 const mpq_class& margin, bool strict,
                 const std::string& witness) {
  for (auto& [name, m] : rep.margins)
    if (name == check) {
      if (margin < m) m = margin;
      if (margin < 0 || (strict && margin == 0)) {
        rep.all_hold = false;
        rep.failures.push_back({check, witness, margin});
      }
      return;
    }
  rep.margins.emplace_back(check, margin);
  if (margin < 0 || (strict && margin == 0)) {
    rep.all_hold = false;
    rep.failures.push_back({check, witness, margin});
  }
}

}  // namespace

ValProfile canonical_valuations(long p, Splitting cas, long n) {
  if (!is_odd_prime(p))
    throw precondition_error("canonical_valuations: p must be an odd prime");
  if (n < 1) throw precondition_error("canonical_valuations: level n >= 1");
  if (cas == Splitting::split)
    throw precondition_error(
        "canonical_valuations: the split case is ordinary, no height data");
  ValProfile v;
  v.prime = p;
  v.cas = cas;
  v.level = n;
  if (cas == Splitting::inert)
    v.hdg = mpq_class(1, ipow(p, n - 1) * (p + 1));
  else
    v.hdg = mpq_class(1, 2 * ipow(p, n));
  v.hdg.canonicalize();
  v.delta = v.hdg / (p - 1);
  v.period = v.delta;
  return v;
}

RadiusParams radius_params(bool k_is_classical, long p) {
  if (!is_odd_prime(p))
    throw precondition_error("radius_params: p must be an odd prime");
  RadiusParams rp;
  rp.prime = p;
  rp.classical = k_is_classical;
  if (k_is_classical)
    rp.radius = p + 2;
  else
    rp.radius = (p == 3) ? 4 * p : 2 * p;
  rp.bound = p * (rp.radius - 1);
  rp.bound_verified = (p >= 5);
  long n = 1;
  while (ipow(p, n - 1) * (p + 1) < rp.bound) ++n;
  rp.n_inert = n;
  n = 1;
  while (2 * ipow(p, n) < rp.bound) ++n;
  rp.n_ramified = n;
  return rp;
}

IneqReport check_inequalities(long p, long jcap, long hcap) {
  if (!is_odd_prime(p))
    throw precondition_error("check_inequalities: p must be an odd prime");
  IneqReport rep;
  rep.prime = p;
  rep.jcap = jcap;
  rep.hcap = hcap;

  // depth of log(1 + p*h^(-p/(p-1))): the wide region r >= 4 needs
  // 1 - p/(4(p-1)) >= 5/(4(p-1)), i.e. 3p - 9 >= 0
  note_margin(rep, "log_depth_wide", frac(3 * p - 9, 4 * (p - 1)), false,
              "p = " + std::to_string(p));
  if (p >= 5) {
    // the narrow region r >= 2 needs 1 - p/(2(p-1)) >= 3/(2(p-1))
    note_margin(rep, "log_depth_narrow", frac(p - 5, 2 * (p - 1)), false,
                "p = " + std::to_string(p));
  }

  // v_p(n!) < n/(p-1), the strict bound feeding the exponential estimates
  {
    long cap = std::min<long>(jcap, 20000);
    for (long n = 1; n <= cap; ++n) {
      mpq_class m = frac(n, p - 1) - factorial_val(n, p);
      note_margin(rep, "factorial_bound", m, true, "n = " + std::to_string(n));
    }
  }

  // iteration radius, claimed for p >= 5 only: z p (r-1) >= p^2 + h + 2 at
  // r = p+2+h, z = 1 - 1/(2p), equivalent to p + 2hp - 3h - 5 >= 0
  for (long h = 0; p >= 5 && h <= std::max<long>(hcap, 100); ++h) {
    long r = p + 2 + h;
    mpq_class z = frac(2 * p - 1, 2 * p);
    mpq_class lhs = z * p * (r - 1);
    mpq_class margin = lhs - (p * p + h + 2);
    mpq_class closed = frac(p + 2 * h * p - 3 * h - 5, 2);
    if (margin != closed)
      throw precondition_error("check_inequalities: radius identity broke");
    note_margin(rep, "iteration_radius", margin, false,
                "h = " + std::to_string(h));
  }

  // Frobenius-lift comparisons on the second quotient
  note_margin(rep, "supersingular_lift_inert",
              mpq_class(ipow(p, 3) - (2 * p * p - 1)), false,
              "p = " + std::to_string(p));
  note_margin(rep, "supersingular_lift_ramified",
              mpq_class(ipow(p, 3) - (3 * p * p - p - 1)), false,
              "p = " + std::to_string(p));

  if (p >= 5) {
    // tail bound, single term: 2 + j/(2p^2) - v_p(j) - 1/(p-1) > 0
    mpq_class gmin;
    long jmin = 1;
    bool first = true;
    for (long j = 1; j <= jcap; ++j) {
      long vj = val_p(mpz_class(j), p);
      mpq_class g = frac(j, 2 * p * p) - vj;
      if (first || g < gmin) {
        gmin = g;
        jmin = j;
        first = false;
      }
      mpq_class m = 2 + g - frac(1, p - 1);
      note_margin(rep, "tail_term", m, true, "j = " + std::to_string(j));
    }

    // tail bound, h terms: 2 + h + N/(2p^2) - sum v_p(j_i) - h/(p-1) > 0.
    // The per-entry minimum gmin is attained, so the h-fold repetition of
    // jmin is the extremal multiset with entries <= jcap.
    for (long h = 1; h <= hcap; ++h) {
      mpq_class m = 2 + h * (mpq_class(1) - frac(1, p - 1)) + h * gmin;
      note_margin(rep, "tail_sum", m, true,
                  "h = " + std::to_string(h) + ", all j_i = " +
                      std::to_string(jmin));
    }
  }

  return rep;
}

void LossLedger::observe_val(long v) {
  ++samples;
  if (-v > worst) worst = -v;
}

void LossLedger::observe(const PadicNumber& x) {
  if (x.is_prec_zero()) return;
  observe_val(x.val);
}

std::string valuation_csv_header() { return "p,case,n,hdg,period,r,b,n_k"; }

std::string valuation_csv_row(const ValProfile& v, const RadiusParams& rp) {
  std::ostringstream os;
  long nk = (v.cas == Splitting::inert) ? rp.n_inert : rp.n_ramified;
  os << v.prime << ',' << case_name(v.cas) << ',' << v.level << ',' << v.hdg
     << ',' << v.period << ',' << rp.radius << ',' << rp.bound << ',' << nk;
  return os.str();
}

}  // namespace padl
