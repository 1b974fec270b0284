#include "padl/nabla.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "padl/errors.hpp"

namespace padl {

namespace {

QExpansion qexp_scale_exact(const QExpansion& f, const mpq_class& q) {
  QExpansion out = f;
  for (auto& x : out.a) x = padic_scale(x, q);
  return out;
}

WSection wsection_scale_exact(const WSection& s, const mpq_class& q) {
  WSection out = s;
  for (auto& c : out.comp) c = qexp_scale_exact(c, q);
  return out;
}

long dev_relprec(const Weight& w) {
  return w.dev.is_prec_zero() ? std::max(w.dev.val, 1L)
                              : std::max(w.dev.absprec(), 1L);
}

Weight weight_two(const Weight& like) {
  return classical_weight(like.prime, 2, dev_relprec(like));
}

// #{0 <= i < j : i == r (mod q)}
long count_cong(long j, const mpz_class& q, long r) {
  mpz_class rr = mpz_class(r) % q;
  if (rr < 0) rr += q;
  if (rr >= j) return 0;
  mpz_class cnt = (mpz_class(j) - 1 - rr) / q + 1;
  return cnt.get_si();
}

long vp_factorial(long j, long p) {
  long v = 0;
  for (long q = p; q <= j; q *= p) {
    v += j / q;
    if (q > j / p) break;
  }
  return v;
}

// proven lower bound for v_p(binom(s,j) * prod_{i<j}(u+s-1-i)) from the
// congruence pattern of the integer parts; cap_nu and cap_u bound what is
// known about v_p(dev_nu) and v_p(dev_k + dev_nu)
long scalar_val_bound(long p, long j, long b, long a_plus_b_minus_1,
                      long cap_nu, long cap_u) {
  long bound = -vp_factorial(j, p);
  mpz_class q = 1;
  for (long t = 1; t <= cap_nu; ++t) {
    q *= p;
    bound += count_cong(j, q, b);
  }
  q = 1;
  for (long t = 1; t <= cap_u; ++t) {
    q *= p;
    bound += count_cong(j, q, a_plus_b_minus_1);
  }
  return bound;
}

// smallest j with the monotone envelope
//   2(j/p - 1) + [cap_nu >= 2](j/p^2 - 1) - (j-1)/(p-1) >= target
// using only the t = 1 (and one t = 2) congruence counts; the envelope is
// below scalar_val_bound for every j, and its slope is positive for p >= 3
long envelope_clear(long p, long cap_nu, long target) {
  mpq_class rate = mpq_class(2, p) - mpq_class(1, p - 1);
  mpq_class offset = mpq_class(-2) + mpq_class(1, p - 1);
  if (cap_nu >= 2) {
    rate += mpq_class(1, mpz_class(p) * p);
    offset -= 1;
  }
  if (rate <= 0)
    throw precondition_error("nabla_nu: no convergent tail envelope at p=2");
  mpq_class need = (mpq_class(target) - offset) / rate;
  mpz_class j = need.get_num() / need.get_den() + 1;
  return std::max(1L, j.get_si());
}

// working-precision target and minimal coefficient valuation over the
// surviving slots (n >= 1, p not dividing n) of a depleted input
void survivor_stats(const QExpansion& f, long* target, long* vmin) {
  *target = std::numeric_limits<long>::max();
  *vmin = std::numeric_limits<long>::max();
  for (long n = 1; n <= f.nq(); ++n) {
    if (n % f.prime == 0) continue;
    *target = std::min(*target, f.a[n].absprec());
    *vmin = std::min(*vmin, f.a[n].val);
  }
  if (*target == std::numeric_limits<long>::max()) {
    *target = 1;
    *vmin = 0;
  }
}

void require_admissible(const Weight& k, const Weight& nu, const char* who) {
  std::string reason;
  if (!weight_assumption_holds(k, nu, &reason))
    throw precondition_error(std::string(who) + ": " + reason);
}

bool weights_agree(const Weight& a, const Weight& b) {
  if (a.prime != b.prime) return false;
  long pm1 = a.prime - 1;
  if (((a.torsion - b.torsion) % pm1 + pm1) % pm1 != 0) return false;
  return padic_agree(weight_analytic(a), weight_analytic(b));
}

PadicNumber laurent_amb(const LaurentSeries& s) {
  long cap = 1;
  for (const auto& x : s.c) cap = std::max(cap, x.absprec());
  return padic_prec_zero(s.prime, cap);
}

}  // namespace

WSection wsection_from_qexp(const QExpansion& f, const Weight& w) {
  if (f.prime != w.prime)
    throw precondition_error("wsection_from_qexp: prime mismatch");
  WSection s;
  s.base = w;
  s.comp = {f};
  return s;
}

bool wsection_agree(const WSection& a, const WSection& b) {
  if (!weights_agree(a.base, b.base)) return false;
  long common = std::min(a.comp.size(), b.comp.size());
  long shared = std::numeric_limits<long>::max();
  for (long j = 0; j < common; ++j)
    shared = std::min(shared, qexp_min_shared_absprec(a.comp[j], b.comp[j]));
  for (long j = 0; j < common; ++j)
    if (!qexp_agree(a.comp[j], b.comp[j])) return false;
  const WSection& longer = a.comp.size() >= b.comp.size() ? a : b;
  for (size_t j = common; j < longer.comp.size(); ++j)
    for (const auto& x : longer.comp[j].a)
      if (!x.is_prec_zero() && x.val < shared) return false;
  return true;
}

WSection nabla_step(const WSection& s) {
  if (s.comp.empty()) throw precondition_error("nabla_step: empty section");
  long p = s.base.prime;
  PadicNumber w_an = weight_analytic(s.base);
  long rel = std::max(w_an.absprec(), 1L);
  WSection out;
  out.base = weight_add(s.base, weight_two(s.base));
  long J = s.degree();
  for (long j = 0; j <= J + 1; ++j) {
    QExpansion term;
    if (j <= J) term = qexp_theta(s.comp[j]);
    if (j >= 1) {
      PadicNumber lam = padic_sub(w_an, padic_from_long(p, j - 1, rel));
      QExpansion shift = qexp_scale(s.comp[j - 1], lam);
      term = j <= J ? qexp_add(term, shift) : shift;
    }
    out.comp.push_back(std::move(term));
  }
  if (!s.val_floor.empty()) {
    out.val_floor.resize(out.comp.size());
    for (long j = 0; j <= J + 1; ++j) {
      long f = std::numeric_limits<long>::max();
      if (j <= J) f = std::min(f, s.val_floor[j]);
      if (j >= 1) f = std::min(f, s.val_floor[j - 1]);
      out.val_floor[j] = f;
    }
  }
  return out;
}

WSection wsection_V(const WSection& s) {
  WSection out = s;
  mpq_class scale = 1;
  mpq_class invp = mpq_class(1, s.base.prime);
  for (size_t j = 0; j < out.comp.size(); ++j) {
    out.comp[j] = qexp_scale_exact(qexp_V(s.comp[j], s.comp[j].nq()), scale);
    scale *= invp;
  }
  out.val_floor.clear();
  return out;
}

WSection wsection_U(const WSection& s) {
  WSection out = s;
  mpq_class scale = 1;
  for (size_t j = 0; j < out.comp.size(); ++j) {
    out.comp[j] = qexp_scale_exact(qexp_U(s.comp[j]), scale);
    scale *= s.base.prime;
  }
  out.val_floor.clear();
  return out;
}

WSection nabla_nu(const QExpansion& f, const Weight& k, const Weight& nu,
                  long J, NablaReport* report) {
  require_admissible(k, nu, "nabla_nu");
  if (f.prime != k.prime || f.prime != nu.prime)
    throw precondition_error("nabla_nu: prime mismatch");
  if (!qexp_is_depleted(f))
    throw precondition_error("nabla_nu: input must be depleted");

  long p = f.prime;
  long target = 0, vmin = 0;
  survivor_stats(f, &target, &vmin);
  long need = target - vmin;  // scalar valuation that hides a component

  long cap_nu = std::max(nu.dev.val, 1L);
  PadicNumber dev_u = padic_add(k.dev, nu.dev);
  long cap_u = std::max(dev_u.val, 1L);
  long b = nu.int_part;
  long apb1 = k.int_part + nu.int_part - 1;

  long scan_end = std::max(envelope_clear(p, cap_nu, need), J + 1);
  std::vector<long> bound(scan_end + 1, 0);
  for (long j = 1; j <= scan_end; ++j)
    bound[j] = scalar_val_bound(p, j, b, apb1, cap_nu, cap_u);

  long admissible = 0;
  for (long j = 1; j <= scan_end; ++j)
    if (bound[j] < need) admissible = j;
  if (J < 0) {
    J = admissible;
  } else if (J < admissible) {
    throw precision_error(
        "nabla_nu: tail not certifiably below working precision; smallest "
        "admissible truncation degree is " +
        std::to_string(admissible));
  }

  PadicNumber s_an = weight_analytic(nu);
  PadicNumber us = padic_add(weight_analytic(k), s_an);
  WSection out;
  out.base = weight_combine(k, nu);
  for (long j = 0; j <= J; ++j) {
    PadicNumber scalar =
        padic_mul(binom_padic(s_an, j), pochhammer_shift(us, j));
    out.comp.push_back(qexp_scale(qexp_theta_weight(f, nu, j), scalar));
    out.val_floor.push_back(bound[j] + vmin);
  }
  if (report) {
    report->J = J;
    report->target = target;
    report->scan_end = scan_end;
    report->bound.assign(bound.begin(), bound.end());
    for (auto& x : report->bound) x += vmin;
    report->classical_cutoff =
        nu.dev.is_prec_zero() && nu.int_part >= 0 && admissible <= nu.int_part;
  }
  return out;
}

WSection nabla_nu_section(const WSection& s, const Weight& nu, long J) {
  require_admissible(s.base, nu, "nabla_nu_section");
  if (s.comp.empty())
    throw precondition_error("nabla_nu_section: empty section");
  long p = s.base.prime;
  long in_deg = s.degree();

  PadicNumber s_an = weight_analytic(nu);
  PadicNumber w_an = weight_analytic(s.base);
  long cap_nu = std::max(nu.dev.val, 1L);
  PadicNumber dev_u = padic_add(s.base.dev, nu.dev);
  long cap_u = std::max(dev_u.val, 1L);

  // per-slot truncation: slot j feeds out-slots j..j+I(j), I(j) certified
  // with the poch constant shifted by -j
  std::vector<std::vector<QExpansion>> contrib;
  long out_deg = 0;
  for (long j = 0; j <= in_deg; ++j) {
    const QExpansion& c = s.comp[j];
    if (!qexp_is_depleted(c))
      throw precondition_error("nabla_nu_section: components must be depleted");
    long target = 0, vmin = 0;
    survivor_stats(c, &target, &vmin);
    long need = target - vmin;
    long scan_end = envelope_clear(p, cap_nu, need);
    long admissible = 0;
    for (long i = 1; i <= scan_end; ++i)
      if (scalar_val_bound(p, i, nu.int_part,
                           s.base.int_part - j + nu.int_part - 1, cap_nu,
                           cap_u) < need)
        admissible = i;
    if (J >= 0 && j + admissible > J)
      throw precision_error(
          "nabla_nu_section: requested degree cap discards uncertified "
          "components; need at least degree " +
          std::to_string(j + admissible));
    long I = admissible;
    PadicNumber x = padic_sub(padic_add(w_an, s_an),
                              padic_from_long(p, j, std::max(w_an.absprec(), 1L)));
    std::vector<QExpansion> row;
    for (long i = 0; i <= I; ++i) {
      PadicNumber scalar =
          padic_mul(binom_padic(s_an, i), pochhammer_shift(x, i));
      row.push_back(qexp_scale(qexp_theta_weight(c, nu, i), scalar));
    }
    out_deg = std::max(out_deg, j + I);
    contrib.push_back(std::move(row));
  }

  WSection out;
  out.base = weight_combine(s.base, nu);
  for (long d = 0; d <= out_deg; ++d) {
    QExpansion acc;
    bool first = true;
    for (long j = 0; j <= std::min(d, in_deg); ++j) {
      long i = d - j;
      if (i >= static_cast<long>(contrib[j].size())) continue;
      acc = first ? contrib[j][i] : qexp_add(acc, contrib[j][i]);
      first = false;
    }
    if (first)
      acc = qexp_scale_exact(s.comp[0], 0);
    out.comp.push_back(std::move(acc));
  }
  return out;
}

QExpansion theta_nu_split(const QExpansion& f, const Weight& k,
                          const Weight& nu) {
  require_admissible(k, nu, "theta_nu_split");
  if (!qexp_is_depleted(f))
    throw precondition_error("theta_nu_split: input must be depleted");
  return qexp_theta_weight(f, nu, 0);
}

CommutationReport check_commutation(const QExpansion& f, const Weight& w) {
  CommutationReport rep;
  long p = f.prime;

  QExpansion lhsV = qexp_theta(qexp_V(f));
  QExpansion rhsV = qexp_scale_exact(qexp_V(qexp_theta(f)), p);
  rep.theta_V_ok = qexp_agree(lhsV, rhsV);

  QExpansion lhsU = qexp_theta(qexp_U(f));
  QExpansion rhsU = qexp_scale_exact(qexp_U(qexp_theta(f)), mpq_class(1, p));
  rep.theta_U_ok = qexp_agree(lhsU, rhsU);

  rep.agree_absprec = std::min(qexp_min_shared_absprec(lhsV, rhsV),
                               qexp_min_shared_absprec(lhsU, rhsU));

  WSection s;
  s.base = w;
  s.comp = {f, qexp_theta(f)};
  WSection nabla_s = nabla_step(s);
  rep.section_V_ok = wsection_agree(
      nabla_step(wsection_V(s)), wsection_scale_exact(wsection_V(nabla_s), p));
  rep.section_U_ok =
      wsection_agree(nabla_step(wsection_U(s)),
                     wsection_scale_exact(wsection_U(nabla_s), mpq_class(1, p)));
  return rep;
}

WSection coleman_primitive(const QExpansion& f_dep, long r) {
  if (r < 0) throw usage_error("coleman_primitive: r must be nonnegative");
  if (!qexp_is_depleted(f_dep))
    throw precondition_error("coleman_primitive: input must be depleted");
  long p = f_dep.prime;
  long rel = 1;
  for (const auto& x : f_dep.a)
    if (!x.is_prec_zero()) rel = std::max(rel, x.relprec);
  Weight zero_w = classical_weight(p, 0, rel);
  mpz_class rfact;
  mpz_fac_ui(rfact.get_mpz_t(), static_cast<unsigned long>(r));
  WSection out;
  out.base = classical_weight(p, -r, rel);
  for (long j = 0; j <= r; ++j) {
    mpz_class denom;
    mpz_fac_ui(denom.get_mpz_t(), static_cast<unsigned long>(r - j));
    out.comp.push_back(qexp_scale_exact(qexp_theta_weight(f_dep, zero_w, j + 1),
                                        mpq_class(rfact) / mpq_class(denom)));
  }
  return out;
}

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.prime != b.prime) throw precondition_error("laurent_mul: prime mismatch");
  LaurentSeries out;
  out.prime = a.prime;
  out.low = a.low + b.low;
  long n = static_cast<long>(a.c.size()) + static_cast<long>(b.c.size()) - 1;
  out.c.reserve(n);
  for (long d = 0; d < n; ++d) {
    PadicNumber acc;
    bool first = true;
    long i0 = std::max(0L, d - static_cast<long>(b.c.size()) + 1);
    long i1 = std::min(d, static_cast<long>(a.c.size()) - 1);
    for (long i = i0; i <= i1; ++i) {
      PadicNumber t = padic_mul(a.c[i], b.c[d - i]);
      acc = first ? t : padic_add(acc, t);
      first = false;
    }
    out.c.push_back(acc);
  }
  return out;
}

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.prime != b.prime) throw precondition_error("laurent_add: prime mismatch");
  LaurentSeries out;
  out.prime = a.prime;
  out.low = std::min(a.low, b.low);
  long hi = std::max(a.high(), b.high());
  PadicNumber amb = padic_add(laurent_amb(a), laurent_amb(b));
  for (long d = out.low; d <= hi; ++d) {
    bool ina = d >= a.low && d <= a.high();
    bool inb = d >= b.low && d <= b.high();
    if (ina && inb)
      out.c.push_back(padic_add(a.c[d - a.low], b.c[d - b.low]));
    else if (ina)
      out.c.push_back(a.c[d - a.low]);
    else if (inb)
      out.c.push_back(b.c[d - b.low]);
    else
      out.c.push_back(amb);
  }
  return out;
}

LaurentSeries laurent_scale(const LaurentSeries& a, const mpq_class& q) {
  LaurentSeries out = a;
  for (auto& x : out.c) x = padic_scale(x, q);
  return out;
}

ColemanLog coleman_log(const LaurentSeries& g, Region kind) {
  if (g.c.empty()) throw precondition_error("coleman_log: empty series");
  long p = g.prime;

  long imin = -1;
  long vmin = 0;
  for (size_t i = 0; i < g.c.size(); ++i) {
    if (g.c[i].is_prec_zero()) continue;
    if (imin < 0 || g.c[i].val < vmin) {
      imin = static_cast<long>(i);
      vmin = g.c[i].val;
    }
  }
  if (imin < 0)
    throw precision_error("coleman_log: no coefficient of known valuation");
  for (size_t i = 0; i < g.c.size(); ++i) {
    if (static_cast<long>(i) == imin) continue;
    if (g.c[i].is_prec_zero()) {
      if (g.c[i].val < vmin + 1)
        throw precision_error(
            "coleman_log: coefficient precision too low to certify a "
            "dominant monomial");
    } else if (g.c[i].val < vmin + 1) {
      throw precondition_error(
          "coleman_log: no monomial dominates by a full power of p");
    }
  }
  long n = g.low + imin;
  if (kind == Region::disk && n != 0)
    throw precondition_error("coleman_log: disk unit needs a dominant constant term");

  const PadicNumber& a = g.c[imin];
  ColemanLog out;
  out.constant = padic_log_iw(a);
  out.residue = n;

  LaurentSeries h;
  h.prime = p;
  h.low = g.low - n;
  for (size_t i = 0; i < g.c.size(); ++i) {
    PadicNumber t = padic_div(g.c[i], a);
    if (static_cast<long>(i) == imin)
      t = padic_sub(t, padic_from_long(p, 1, std::max(t.relprec, 1L)));
    h.c.push_back(t);
  }

  long tprec = 1;
  for (const auto& x : h.c) tprec = std::max(tprec, x.absprec());

  auto ilog = [p](long m) {
    long il = 0;
    for (long q = p; q <= m; q *= p) {
      ++il;
      if (q > m / p) break;
    }
    return il;
  };

  LaurentSeries acc;
  acc.prime = p;
  acc.low = 0;
  acc.c = {padic_prec_zero(p, tprec)};
  LaurentSeries hm = h;
  long m = 1;
  while (m - ilog(m) < tprec) {
    mpq_class coef = mpq_class((m % 2 == 1) ? 1 : -1, m);
    acc = laurent_add(acc, laurent_scale(hm, coef));
    ++m;
    hm = laurent_mul(hm, h);
  }

  // every dropped h^m/m term splits into degree-0 factors (valuation >= v0)
  // and tail factors (valuation >= vtail); cap each output slot at the
  // smallest valuation such a term could reach there
  long v0 = h.c[imin].val;
  long vtail = std::numeric_limits<long>::max();
  long mind = 0;
  for (size_t i = 0; i < h.c.size(); ++i) {
    if (static_cast<long>(i) == imin) continue;
    vtail = std::min(vtail, h.c[i].val);
    mind = std::min(mind, static_cast<long>(i) - imin);
  }
  if (vtail != std::numeric_limits<long>::max()) {
    for (size_t d = 0; d < acc.c.size(); ++d) {
      long deg = acc.low + static_cast<long>(d);
      long res;
      if (mind < 0 || deg < 0) {
        res = m * std::min(v0, vtail) - ilog(m);
      } else {
        res = std::numeric_limits<long>::max();
        for (long m2 = m; m2 <= m + deg + 2; ++m2) {
          long tails = std::min(m2, deg);
          long val = std::max(0L, m2 - deg) * v0 + tails * vtail - ilog(m2);
          res = std::min(res, val);
        }
      }
      acc.c[d] = padic_add(acc.c[d], padic_prec_zero(p, std::max(res, 1L)));
    }
  }
  out.tail = acc;
  return out;
}

}  // namespace padl
