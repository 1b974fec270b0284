#include "padl/hecke.hpp"

#include <numeric>

#include "padl/errors.hpp"

namespace padl {
namespace {

long md(long a, long m) {
  if (m <= 1) return 0;
  long r = a % m;
  return r < 0 ? r + m : r;
}

long lcm2(long a, long b) { return a / std::gcd(a, b) * b; }

mpq_class qpow(const mpq_class& b, long e) {
  mpq_class out = 1;
  mpq_class base = b;
  long n = e;
  if (n < 0) {
    base = 1 / base;
    n = -n;
  }
  for (; n > 0; n >>= 1) {
    if (n & 1) out *= base;
    base *= base;
  }
  return out;
}

mpz_class norm_of(long dk, const mpz_class& x, const mpz_class& y) {
  mpz_class nrm = (mpz_class(dk) * dk - dk) / 4;
  return x * x + x * y * dk + y * y * nrm;
}

// torsion generator of the unit group of the order, as (order; x + y omega)
struct TorsionUnit {
  long w;
  long x;
  long y;
};

TorsionUnit torsion_unit(const QuadOrder& o) {
  if (o.c == 1 && o.dk == -4) return {4, 2, 1};  // 2 + omega squares to -1
  if (o.c == 1 && o.dk == -3) return {6, 2, 1};  // 2 + omega, a sixth root
  return {2, -1, 0};
}

long finite_exp_raw(const AbGroup& dec, const std::vector<long>& fexp, long x,
                    long E) {
  const std::vector<long>& co = dec.coords[x];
  long acc = 0;
  for (size_t i = 0; i < dec.gen.size(); ++i) {
    long t = (fexp[i] * co[i]) % dec.ord[i];
    acc = (acc + (E / dec.ord[i]) * t) % E;
  }
  return acc;
}

// roots of unity zeta_Ea^a and zeta_Eb^b agree in the compatible system
bool roots_agree(long a, long Ea, long b, long Eb) {
  long L = lcm2(Ea, Eb);
  return md(a * (L / Ea) - b * (L / Eb), L) == 0;
}

long eps_exponent(const DirichletChar& eps, long r) {
  if (eps.modulus <= 1) return 0;
  auto e = dirichlet_exponent(eps, r);
  if (!e)
    throw precondition_error("hecke: nebentype evaluated off the unit group");
  return *e;
}

long compute_cond_p(const HGroup& h, const AbGroup& dec,
                    const std::vector<long>& fexp) {
  if (h.level == 0) return 0;
  long E = abgroup_exponent(dec);
  for (long t = 0; t <= h.level; ++t) {
    bool triv = true;
    for (size_t i = 0; i < h.w.reps.size() && triv; ++i) {
      if (h.w.u_level[i] < t) continue;
      if (finite_exp_raw(dec, fexp, hgroup_kernel_w(h, (long)i), E) != 0)
        triv = false;
    }
    if (triv) return t;
  }
  // unreachable: the deepest filtration layer is the identity class alone
  return h.level;
}

HeckeChar make_char(const HGroup& h, AbGroup dec, long n, long m,
                    const DirichletChar& eps, std::vector<long> fexp) {
  if (h.n < 1 || !h.heeg.ok)
    throw precondition_error("hecke_char: group context has no Heegner datum");
  if (h.p < 3)
    throw precondition_error(
        "hecke_char: the group context needs an odd distinguished prime");
  if (eps.modulus != h.heeg.n)
    throw precondition_error("hecke_char: nebentype modulus mismatch");
  if (fexp.size() != dec.gen.size())
    throw precondition_error("hecke_char: finite part has wrong rank");
  for (size_t i = 0; i < fexp.size(); ++i) fexp[i] = md(fexp[i], dec.ord[i]);

  long E = abgroup_exponent(dec);
  long Eg = unit_group(h.heeg.n).exponent;
  for (const auto& [g, og] : residue_units(h.heeg)) {
    long fe = finite_exp_raw(dec, fexp, hgroup_kernel_unit(h, g), E);
    if (!roots_agree(fe, E, eps_exponent(eps, g), Eg))
      throw precondition_error(
          "hecke_char: kernel restriction differs from the nebentype");
  }
  std::string reason;
  if (!hecke_unit_consistent(h, n, m, eps, &reason))
    throw precondition_error("hecke_char: " + reason);

  HeckeChar chi;
  chi.h = h;
  chi.dec = std::move(dec);
  chi.inf_n = n;
  chi.inf_m = m;
  chi.eps = eps;
  chi.fexp = std::move(fexp);
  chi.cond_p = compute_cond_p(chi.h, chi.dec, chi.fexp);
  return chi;
}

}  // namespace

long residue_field_size(long dk, long p) {
  switch (splitting_type(dk, p)) {
    case Splitting::inert:
      return p * p;
    case Splitting::ramified:
      return p;
    default:
      throw precondition_error(
          "residue_field_size: the prime splits, no single residue pairing");
  }
}

bool hecke_unit_consistent(const HGroup& h, long n, long m,
                           const DirichletChar& eps, std::string* reason) {
  TorsionUnit u = torsion_unit(h.order);
  long r = heegner_residue(h.heeg, u.x, u.y);
  long Eg = unit_group(h.heeg.n).exponent;
  long L = lcm2(Eg, u.w);
  long tot =
      md(eps_exponent(eps, r) * (L / Eg) + md(m - n, u.w) * (L / u.w), L);
  if (tot != 0) {
    if (reason)
      *reason = "the torsion unit of order " + std::to_string(u.w) +
                " pairs nontrivially with the type";
    return false;
  }
  return true;
}

HeckeChar hecke_char(const HGroup& h, long n, long m, const DirichletChar& eps,
                     const std::vector<long>& fexp) {
  return make_char(h, hgroup_analyze(h), n, m, eps, fexp);
}

HeckeChar hecke_norm_char(const HGroup& h) {
  AbGroup dec = hgroup_analyze(h);
  std::vector<long> zero(dec.gen.size(), 0);
  return make_char(h, std::move(dec), 1, 1, dirichlet_trivial(h.heeg.n), zero);
}

std::vector<HeckeChar> enumerate_chars(const HGroup& h, long k, long j,
                                       const DirichletChar& eps) {
  if (k < 1 || j < 0)
    throw precondition_error(
        "enumerate_chars: the type (k + j, -j) needs k >= 1 and j >= 0");
  if (h.n < 1 || !h.heeg.ok)
    throw precondition_error(
        "enumerate_chars: group context has no Heegner datum");
  std::vector<HeckeChar> out;
  if (!hecke_unit_consistent(h, k + j, -j, eps)) return out;

  AbGroup dec = hgroup_analyze(h);
  long E = abgroup_exponent(dec);
  long Eg = unit_group(h.heeg.n).exponent;
  // kernel generator coordinates and target exponents, fixed for the scan
  std::vector<std::vector<long>> kco;
  std::vector<long> ke;
  for (const auto& [g, og] : residue_units(h.heeg)) {
    kco.push_back(dec.coords[hgroup_kernel_unit(h, g)]);
    ke.push_back(eps_exponent(eps, g));
  }

  size_t rank = dec.gen.size();
  std::vector<long> fexp(rank, 0);
  while (true) {
    bool good = true;
    for (size_t t = 0; t < kco.size() && good; ++t) {
      long acc = 0;
      for (size_t i = 0; i < rank; ++i)
        acc = (acc + (E / dec.ord[i]) * ((fexp[i] * kco[t][i]) % dec.ord[i])) %
              E;
      good = roots_agree(acc, E, ke[t], Eg);
    }
    if (good) out.push_back(make_char(h, dec, k + j, -j, eps, fexp));
    size_t i = rank;
    while (i > 0 && ++fexp[i - 1] == dec.ord[i - 1]) fexp[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

long hecke_finite_exponent(const HeckeChar& chi, long hclass) {
  if (hclass < 0 || hclass >= chi.h.n)
    throw precondition_error("hecke_finite_exponent: class out of range");
  return finite_exp_raw(chi.dec, chi.fexp, hclass, abgroup_exponent(chi.dec));
}

CycloPadic char_eval_class(const HeckeChar& chi, long hclass, long relprec) {
  long E = abgroup_exponent(chi.dec);
  CycloPadic v = cyclo_padic_zeta_pow(E, chi.h.p, hecke_finite_exponent(chi, hclass),
                                      relprec);
  if (chi.def_M > 0)
    for (auto& c : v.c) c = padic_add(c, padic_prec_zero(chi.h.p, chi.def_M));
  return v;
}

CycloPadic char_eval(const HeckeChar& chi, const mpz_class& x,
                     const mpz_class& y, long relprec) {
  if (!chi.dev_m.is_prec_zero() || !chi.dev_r.is_prec_zero())
    throw precondition_error(
        "char_eval: an analytic deformation has no exact ideal values; use "
        "avatar_eval");
  const HGroup& h = chi.h;
  long np = chi.inf_n + chi.def_m + chi.def_r;
  long mp = chi.inf_m - chi.def_r;
  mpz_class na = norm_of(h.order.dk, x, y);
  if (na == 0) throw precondition_error("char_eval: zero generator");
  mpz_class support = mpz_class(h.heeg.n) * h.order.c * h.p;
  if (gcd(na, support) != 1)
    throw precondition_error(
        "char_eval: generator is not prime to the character support");
  long r = heegner_residue(h.heeg, x, y);
  mpq_class inf;
  if (y == 0)
    inf = qpow(mpq_class(x), -(np + mp));
  else if (np == mp)
    inf = qpow(mpq_class(na), -np);
  else
    throw precondition_error(
        "char_eval: infinity part lies outside the cyclotomic ring for this "
        "generator");
  long Eg = unit_group(h.heeg.n).exponent;
  CycloPadic out =
      cyclo_padic_zeta_pow(Eg, h.p, eps_exponent(chi.eps, r), relprec);
  return cyclo_padic_scale(out, padic_from_mpq(h.p, inf, relprec));
}

HeckeChar twist_norm(const HeckeChar& chi, long j) {
  HeckeChar out = chi;
  out.inf_n += j;
  out.inf_m += j;
  return out;
}

long conductor_ppart(const HeckeChar& chi) { return chi.cond_p; }

Weight hecke_avatar_weight(const HeckeChar& chi, long relprec) {
  long p = chi.h.p;
  Weight w;
  w.prime = p;
  long mc = chi.inf_n + chi.inf_m;
  w.torsion = md(mc, p - 1);
  w.int_part = mc + chi.def_m;
  w.dev = chi.dev_m.is_prec_zero() ? padic_prec_zero(p, relprec) : chi.dev_m;
  return w;
}

PadicNumber avatar_eval(const HeckeChar& chi, long r, long relprec) {
  return weight_eval(hecke_avatar_weight(chi, relprec), r);
}

CycloPadic avatar_eval_local(const HeckeChar& chi, const mpz_class& x,
                             const mpz_class& y, long relprec) {
  if (!chi.dev_m.is_prec_zero() || !chi.dev_r.is_prec_zero())
    throw precondition_error(
        "avatar_eval_local: analytic deformations evaluate through "
        "avatar_eval");
  const HGroup& h = chi.h;
  long np = chi.inf_n + chi.def_m + chi.def_r;
  long mp = chi.inf_m - chi.def_r;
  mpz_class na = norm_of(h.order.dk, x, y);
  if (na == 0 || gcd(na, mpz_class(h.p)) != 1)
    throw precondition_error("avatar_eval_local: datum is not a local unit");
  mpq_class ap;
  if (y == 0)
    ap = qpow(mpq_class(x), np + mp);
  else if (np == mp)
    ap = qpow(mpq_class(na), np);
  else
    throw precondition_error(
        "avatar_eval_local: the local power lies outside Q_p for this datum");
  long E = abgroup_exponent(chi.dec);
  long fe = 0;
  if (h.level >= 1) {
    long pn = h.w.pn;
    long xr = (long)mpz_class(((x % pn) + pn) % pn).get_si();
    long yr = (long)mpz_class(((y % pn) + pn) % pn).get_si();
    fe = hecke_finite_exponent(chi, hgroup_kernel_w(h, h.w.index_of(xr, yr)));
  }
  CycloPadic out = cyclo_padic_zeta_pow(E, h.p, fe, relprec);
  return cyclo_padic_scale(out, padic_from_mpq(h.p, ap, relprec));
}

WeightMapImage weight_map(const HeckeChar& chi, long relprec) {
  long p = chi.h.p;
  long q = residue_field_size(chi.h.order.dk, p);
  WeightMapImage im;
  im.qm1 = q - 1;
  long mc = chi.inf_n + chi.inf_m;
  long rc = -chi.inf_m;
  im.mbar = md(mc, q - 1);
  im.rbar = md(rc, q - 1);
  im.m_an = padic_from_long(p, mc + chi.def_m, relprec);
  if (!chi.dev_m.is_prec_zero()) im.m_an = padic_add(im.m_an, chi.dev_m);
  im.r_an = padic_from_long(p, rc + chi.def_r, relprec);
  if (!chi.dev_r.is_prec_zero()) im.r_an = padic_add(im.r_an, chi.dev_r);
  im.w = hecke_avatar_weight(chi, relprec);
  return im;
}

HeckeChar deform_char(const HeckeChar& chi, long dm_int,
                      const PadicNumber& dm_dev, long dr_int,
                      const PadicNumber& dr_dev, long M) {
  if (M < 2)
    throw precondition_error(
        "deform_char: the proximity exponent needs M >= 2 so deviations sit "
        "inside the one-units");
  long p = chi.h.p;
  long q = residue_field_size(chi.h.order.dk, p);
  if (md(dm_int, q - 1) != 0 || md(dr_int, q - 1) != 0)
    throw precondition_error(
        "deform_char: the classes mod q - 1 must not move");
  auto depth = [&](long di, const PadicNumber& dd) {
    if (di == 0 && dd.is_prec_zero()) return;
    if (!dd.is_prec_zero() && dd.prime != p)
      throw precondition_error("deform_char: deviation prime mismatch");
    PadicNumber s = padic_from_long(p, di, M + 2);
    if (!dd.is_prec_zero()) s = padic_add(s, dd);
    if (s.val >= M - 1) return;
    if (s.is_prec_zero())
      throw precision_error(
          "deform_char: deviation precision cannot certify the congruence");
    throw precondition_error(
        "deform_char: the deformation does not sit inside p^(M-1) Z_p");
  };
  depth(dm_int, dm_dev);
  depth(dr_int, dr_dev);
  if (dm_int == 0 && dr_int == 0 && dm_dev.is_prec_zero() &&
      dr_dev.is_prec_zero())
    return chi;

  HeckeChar out = chi;
  out.def_m += dm_int;
  out.def_r += dr_int;
  auto combine = [](const PadicNumber& a, const PadicNumber& b) {
    if (b.is_prec_zero()) return a;
    if (a.is_prec_zero()) return b;
    return padic_add(a, b);
  };
  out.dev_m = combine(chi.dev_m, dm_dev);
  out.dev_r = combine(chi.dev_r, dr_dev);
  out.def_M = chi.def_M == 0 ? M : std::min(chi.def_M, M);
  return out;
}

bool hecke_rational_check(const HeckeChar& chi, long ell) {
  const HGroup& h = chi.h;
  mpz_class support = mpz_class(h.heeg.n) * h.order.c * h.p;
  if (ell <= 0 || gcd(mpz_class(ell), support) != 1)
    throw precondition_error(
        "hecke_rational_check: the prime must avoid the character support");
  long N = h.heeg.n;
  long fe = hecke_finite_exponent(chi, hgroup_kernel_unit(h, md(ell, N)));
  long E = abgroup_exponent(chi.dec);
  long Eg = unit_group(N).exponent;
  return roots_agree(fe, E, eps_exponent(chi.eps, md(ell, N)), Eg);
}

}  // namespace padl
