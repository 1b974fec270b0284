#include "padl/lfun.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "padl/errors.hpp"

namespace padl {

namespace {

mpq_class frac(long n, long d) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

long min_coord_absprec(const CycloPadic& v) {
  long m = v.c.empty() ? 0 : v.c.front().absprec();
  for (const auto& x : v.c) m = std::min(m, x.absprec());
  return m;
}

// least admissible conductor exponent at this prime and splitting, from the
// classical radius table
long minimal_level(long prime, Splitting cas) {
  RadiusParams rp = radius_params(true, prime);
  return cas == Splitting::ramified ? rp.n_ramified : rp.n_inert;
}

void require_exact_tags(const HeckeChar& chi, const char* who) {
  if (!chi.dev_m.is_prec_zero() || !chi.dev_r.is_prec_zero())
    throw precondition_error(std::string(who) +
                             ": analytic deformation tags have no single "
                             "value here, evaluate through the family");
}

// weight coordinates the assembly reads off the character: the twist index
// nu and the motive weight k, deformation tags folded in
long chi_nu(const HeckeChar& chi) { return chi.def_r - chi.inf_m; }
long chi_k(const HeckeChar& chi) {
  return chi.inf_n + chi.def_m + chi.inf_m - chi.def_r;
}

// sum over the full group of chi^-1 on the class times the datum; class
// values go through char_eval_class, so a deformed character's def_M cap is
// inherited by every coefficient
CycloPadic inverse_char_sum(const HeckeChar& chi,
                            const std::vector<PadicNumber>& w, long relprec) {
  CycloPadic acc;
  bool first = true;
  for (long a = 0; a < chi.h.n; ++a) {
    CycloPadic z = char_eval_class(chi, hgroup_inv(chi.h, a), relprec);
    CycloPadic t = cyclo_padic_scale(z, w[a]);
    if (first) {
      acc = t;
      first = false;
    } else {
      acc = cyclo_padic_add(acc, t);
    }
  }
  return acc;
}

mpz_class draw_unit(std::mt19937_64& rng, long p, long relprec) {
  mpz_class u = 1 + static_cast<long>(rng() % static_cast<unsigned long>(p - 1));
  mpz_class pw = p;
  for (long i = 1; i < relprec; ++i) {
    u += pw * static_cast<long>(rng() % static_cast<unsigned long>(p));
    pw *= p;
  }
  return u;
}

void check_oracle_context(const HGroup& h, long relprec, const char* who) {
  if (relprec < 1)
    throw precondition_error(std::string(who) + ": positive precision required");
  if (h.p < 2)
    throw precondition_error(std::string(who) + ": group carries no prime");
  if (splitting_type(h.order.dk, h.p) == Splitting::split)
    throw precondition_error(std::string(who) + ": split prime");
}

void check_family_shape(const CMOracleFamily& fam, const char* who) {
  if (fam.degree < 0 ||
      static_cast<long>(fam.coeffs.size()) != fam.degree + 1)
    throw precondition_error(std::string(who) +
                             ": coefficient count must be degree + 1");
  for (const auto& layer : fam.coeffs)
    if (layer.size() != fam.coeffs.front().size())
      throw precondition_error(std::string(who) + ": ragged coefficient data");
}

}  // namespace

CMOracle mock_oracle(const HGroup& h, long weight_k, long nu,
                     unsigned long seed, long relprec) {
  check_oracle_context(h, relprec, "mock_oracle");
  CMOracle o;
  o.prime = h.p;
  o.cas = splitting_type(h.order.dk, h.p);
  o.level_n = h.level;
  o.weight_k = weight_k;
  o.nu = nu;
  o.id = "mock seed " + std::to_string(seed);
  std::mt19937_64 rng(seed);
  o.values.reserve(h.n);
  for (long a = 0; a < h.n; ++a)
    o.values.push_back(padic_from_mpz_at(h.p, draw_unit(rng, h.p, relprec),
                                         relprec));
  return o;
}

LValue lp_raw_sum(const HeckeChar& chi, const CMOracle& o, long relprec) {
  const HGroup& h = chi.h;
  long p = h.p;
  if (p != o.prime) throw precondition_error("lp_value: prime mismatch");
  if (o.cas == Splitting::split)
    throw precondition_error("lp_value: split prime has no evaluation datum");
  if (splitting_type(h.order.dk, p) != o.cas)
    throw precondition_error("lp_value: splitting mismatch");
  if (h.level != o.level_n)
    throw precondition_error("lp_value: level mismatch");
  if (static_cast<long>(o.values.size()) != h.n)
    throw precondition_error("lp_value: one datum per class required");
  require_exact_tags(chi, "lp_value");
  long nu = chi_nu(chi);
  long k = chi_k(chi);
  if (nu < 0)
    throw precondition_error("lp_value: twist index outside the range");
  if (nu != o.nu)
    throw precondition_error("lp_value: twist index does not match the oracle");
  if (k != o.weight_k)
    throw precondition_error("lp_value: weight does not match the oracle");
  CycloPadic s = inverse_char_sum(chi, o.values, relprec);
  s = cyclo_padic_scale(
      s, padic_from_mpq(p, frac(1, euler_phi(h.heeg.n)), relprec));
  LValue out;
  out.value = s;
  out.omega_exp = k + 2 * nu;
  out.certificate = min_coord_absprec(s);
  out.provenance = "lp " + o.id;
  return out;
}

LValue lp_value(const HeckeChar& chi, const CMOracle& o, long relprec) {
  if (o.cas == Splitting::split)
    throw precondition_error("lp_value: split prime has no evaluation datum");
  if (conductor_ppart(chi) < minimal_level(chi.h.p, o.cas))
    throw precondition_error(
        "lp_value: conductor exponent below the minimal admissible level");
  return lp_raw_sum(chi, o, relprec);
}

bool lp_well_posed(const HeckeChar& chi, const CMOracle& o, long r,
                   long relprec) {
  const HGroup& h = chi.h;
  long N = h.heeg.n;
  if (r <= 0 || r % h.p == 0)
    throw precondition_error("lp_well_posed: r must be positive and prime to p");
  if (r % N != 1 % N)
    throw precondition_error("lp_well_posed: r must be 1 mod the ideal norm");
  require_exact_tags(chi, "lp_well_posed");
  // (r) is principal with a scalar generator: trivial in the class group and
  // in the local classes, so its group class is the unit residue of r
  long cls = hgroup_kernel_unit(h, r % N);
  if (cls != hgroup_id(h)) return false;
  // inversion identity: the ideal value carries r^-(n+m), the avatar carries
  // r^(n+m), and the nebentype factor is 1 at r = 1 mod N
  CycloPadic idv = char_eval(chi, mpz_class(r), mpz_class(0), relprec);
  CycloPadic prod = cyclo_padic_scale(idv, avatar_eval(chi, r, relprec));
  CycloPadic one = cyclo_padic_from(prod.M, padic_from_long(h.p, 1, relprec));
  if (!cyclo_padic_agree(prod, one)) return false;
  // translating every class by the class of (r) permutes the summands, so
  // with the two identities above the assembled value must not move
  CMOracle t = o;
  for (long a = 0; a < h.n; ++a) t.values[a] = o.values[hgroup_mul(h, a, cls)];
  return cyclo_padic_agree(lp_value(chi, o, relprec).value,
                           lp_value(chi, t, relprec).value);
}

OrthVerdict orthogonality_vanish(const HeckeChar& chi, long n, long m) {
  const HGroup& h = chi.h;
  if (h.level < 1)
    throw precondition_error("orthogonality_vanish: group carries no level");
  if (n < 1 || n > h.level)
    throw precondition_error(
        "orthogonality_vanish: claimed conductor outside 1..level");
  if (m < 0 || m >= n)
    throw precondition_error("orthogonality_vanish: depth outside 0..n-1");
  long E = abgroup_exponent(chi.dec);
  // classes of local units congruent to 1 mod p^m form the depth-m subgroup
  std::map<long, mpq_class> buckets;
  long size = 0;
  for (long wi = 0; wi < h.w.group.n; ++wi) {
    if (h.w.u_level[wi] < m) continue;
    long e = hecke_finite_exponent(chi, hgroup_kernel_w(h, wi));
    buckets[((-e) % E + E) % E] += 1;
    ++size;
  }
  CycloRational s = cyclo_from_exponents(E, buckets);
  OrthVerdict v;
  v.subgroup_size = size;
  v.vanished = cyclo_is_zero(s);
  // a character summed over a subgroup gives zero or the subgroup order
  if (!v.vanished && !cyclo_eq(s, cyclo_from_mpq(E, mpq_class(size))))
    throw precondition_error("orthogonality_vanish: partial sum broke");
  return v;
}

InterpReport interpolation_check(const HeckeChar& chi, const HGroup& h1,
                                 const HGroup& h2, const InterpolationData& d,
                                 long relprec) {
  const HGroup& h = chi.h;
  long p = h.p;
  if (h.level < 2)
    throw precondition_error("interpolation_check: level at least 2 required");
  if (h1.level != h.level - 1 || h2.level != h.level - 2)
    throw precondition_error(
        "interpolation_check: dropped levels must be n-1 and n-2");
  if (static_cast<long>(d.at_n.size()) != h.n ||
      static_cast<long>(d.at_n1.size()) != h1.n ||
      static_cast<long>(d.at_n2.size()) != h2.n)
    throw precondition_error("interpolation_check: value count mismatch");
  require_exact_tags(chi, "interpolation_check");
  // sub-level sums vanish exactly when the finite part is nontrivial on
  // every depth subgroup below the level
  if (conductor_ppart(chi) != h.level)
    throw precondition_error(
        "interpolation_check: conductor exponent must equal the level");
  long k = chi_k(chi);
  if (k < 1)
    throw precondition_error("interpolation_check: weight below 1");
  PadicNumber euler2 =
      padic_mul(d.eps_p, padic_from_mpq(p, mpq_class(ipow(p, k - 1)), relprec));
  CMOracle comb;
  comb.prime = p;
  comb.cas = splitting_type(h.order.dk, p);
  comb.level_n = h.level;
  comb.weight_k = k;
  comb.nu = chi_nu(chi);
  comb.id = "euler combination";
  comb.values.reserve(h.n);
  for (long a = 0; a < h.n; ++a) {
    PadicNumber t =
        padic_sub(d.at_n[a], padic_mul(d.ap, d.at_n1[hgroup_drop(h, h1, a)]));
    comb.values.push_back(
        padic_add(t, padic_mul(euler2, d.at_n2[hgroup_drop(h, h2, a)])));
  }
  CMOracle plain = comb;
  plain.values = d.at_n;
  plain.id = "level sum";
  InterpReport rep;
  rep.lhs = lp_value(chi, comb, relprec);
  rep.rhs = lp_value(chi, plain, relprec);
  rep.equal = rep.lhs.omega_exp == rep.rhs.omega_exp &&
              cyclo_padic_agree(rep.lhs.value, rep.rhs.value);
  return rep;
}

LValue kronecker_assemble(const HeckeChar& chi,
                          const std::vector<PadicNumber>& logs, long relprec) {
  const HGroup& h = chi.h;
  long p = h.p;
  if (chi.inf_n != 1 || chi.inf_m != 1)
    throw precondition_error(
        "kronecker_assemble: infinity type must be (1, 1)");
  if (chi.def_m != 0 || chi.def_r != 0 || chi.def_M != 0)
    throw precondition_error(
        "kronecker_assemble: no deformation at the limit point");
  // the sum runs over the class group, so the finite part must factor
  // through it: no level structure and trivial nebentype
  if (h.level != 0)
    throw precondition_error("kronecker_assemble: level-0 group required");
  if (dirichlet_conductor(chi.eps) != 1)
    throw precondition_error("kronecker_assemble: nebentype must be trivial");
  if (logs.size() != h.pic.forms.size())
    throw precondition_error(
        "kronecker_assemble: one log datum per form class required");
  long E = abgroup_exponent(chi.dec);
  CycloPadic acc;
  bool first = true;
  for (size_t i = 0; i < logs.size(); ++i) {
    long na = h.pic.forms[i].a;
    if (na % p == 0)
      throw precondition_error(
          "kronecker_assemble: representative norm not prime to p");
    long e = hecke_finite_exponent(chi, hgroup_class_lift(h, static_cast<long>(i)));
    PadicNumber wgt = padic_mul(padic_from_long(p, na, relprec), logs[i]);
    CycloPadic t =
        cyclo_padic_scale(cyclo_padic_zeta_pow(E, p, -e, relprec), wgt);
    if (first) {
      acc = t;
      first = false;
    } else {
      acc = cyclo_padic_add(acc, t);
    }
  }
  LValue out;
  out.value = acc;
  out.omega_exp = 1;
  out.certificate = min_coord_absprec(acc);
  out.provenance = "kronecker";
  return out;
}

CMOracle kronecker_oracle(const HeckeChar& chi,
                          const std::vector<PadicNumber>& logs, long relprec) {
  const HGroup& h = chi.h;
  check_oracle_context(h, relprec, "kronecker_oracle");
  if (logs.size() != h.pic.forms.size())
    throw precondition_error(
        "kronecker_oracle: one log datum per form class required");
  CMOracle o;
  o.prime = h.p;
  o.cas = splitting_type(h.order.dk, h.p);
  o.level_n = h.level;
  o.weight_k = 2;
  o.nu = 0;
  o.id = "kronecker collapse";
  o.values.reserve(h.n);
  for (long a = 0; a < h.n; ++a) {
    long i = hgroup_project_pic(h, a);
    o.values.push_back(
        padic_mul(padic_from_long(h.p, h.pic.forms[i].a, relprec), logs[i]));
  }
  return o;
}

LValue gross_zagier_assemble(const HeckeChar& chi, long j,
                             const std::vector<PadicNumber>& gj,
                             long relprec) {
  const HGroup& h = chi.h;
  long p = h.p;
  if (chi.def_m != 0 || chi.def_r != 0 || chi.def_M != 0)
    throw precondition_error(
        "gross_zagier_assemble: classical characters only");
  long k = chi.inf_n + chi.inf_m;
  long r = k - 2;
  if (j < 0 || j > r)
    throw precondition_error("gross_zagier_assemble: index outside 0..r");
  if (chi.inf_m != 1 + j)
    throw precondition_error(
        "gross_zagier_assemble: infinity type must be (k-1-j, 1+j)");
  if (static_cast<long>(gj.size()) != h.n)
    throw precondition_error(
        "gross_zagier_assemble: one value per class required");
  Splitting cas = splitting_type(h.order.dk, p);
  if (cas == Splitting::split)
    throw precondition_error("gross_zagier_assemble: split prime");
  if (conductor_ppart(chi) < minimal_level(p, cas))
    throw precondition_error(
        "gross_zagier_assemble: conductor exponent below the minimal level");
  CycloPadic acc = inverse_char_sum(chi, gj, relprec);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(j));
  mpq_class sc(mpz_class(1), fact * euler_phi(h.heeg.n));
  sc.canonicalize();
  acc = cyclo_padic_scale(acc, padic_from_mpq(p, sc, relprec));
  LValue out;
  out.value = acc;
  out.omega_exp = r - 2 * j;
  out.certificate = min_coord_absprec(acc);
  out.provenance = "heegner j = " + std::to_string(j);
  return out;
}

QExpansion euler_depleted_combination(const QExpansion& g,
                                      const PadicNumber& ap,
                                      const PadicNumber& eps_p, long k) {
  long p = g.prime;
  if ((!ap.is_prec_zero() && ap.prime != p) ||
      (!eps_p.is_prec_zero() && eps_p.prime != p))
    throw precondition_error("euler_depleted_combination: prime mismatch");
  QExpansion vg = qexp_V(g, g.nq());
  QExpansion v2g = qexp_V(vg, g.nq());
  long rp = std::max({ap.relprec, eps_p.relprec, 1L});
  PadicNumber c1 = padic_mul(ap, padic_from_mpq(p, frac(1, p), rp));
  mpq_class pk = k >= 3 ? mpq_class(ipow(p, k - 3)) : mpq_class(1);
  if (k < 3) {
    pk /= mpq_class(ipow(p, 3 - k));
    pk.canonicalize();
  }
  PadicNumber c2 = padic_mul(eps_p, padic_from_mpq(p, pk, rp));
  QExpansion out = qexp_add(qexp_sub(g, qexp_scale(vg, c1)),
                            qexp_scale(v2g, c2));
  out.weight_k = g.weight_k;
  out.neben = g.neben;
  return out;
}

CMOracleFamily mock_oracle_family(const HGroup& h, long weight_k, long nu,
                                  long degree, unsigned long seed,
                                  long relprec) {
  check_oracle_context(h, relprec, "mock_oracle_family");
  if (degree < 0)
    throw precondition_error("mock_oracle_family: degree must be >= 0");
  CMOracleFamily f;
  f.prime = h.p;
  f.cas = splitting_type(h.order.dk, h.p);
  f.level_n = h.level;
  f.weight_k = weight_k;
  f.nu = nu;
  f.degree = degree;
  f.id = "mock family seed " + std::to_string(seed);
  std::mt19937_64 rng(seed);
  f.coeffs.assign(degree + 1, {});
  for (auto& layer : f.coeffs) {
    layer.reserve(h.n);
    for (long a = 0; a < h.n; ++a)
      layer.push_back(
          padic_from_mpz_at(h.p, draw_unit(rng, h.p, relprec), relprec));
  }
  return f;
}

CMOracle oracle_specialize(const CMOracleFamily& fam, long u, long relprec) {
  check_family_shape(fam, "oracle_specialize");
  CMOracle o;
  o.prime = fam.prime;
  o.cas = fam.cas;
  o.level_n = fam.level_n;
  o.weight_k = fam.weight_k;
  o.nu = fam.nu;
  o.id = fam.id + " at " + std::to_string(u);
  long ncls = static_cast<long>(fam.coeffs.front().size());
  o.values.reserve(ncls);
  for (long a = 0; a < ncls; ++a) {
    PadicNumber acc = fam.coeffs[0][a];
    mpz_class up = 1;
    for (long d = 1; d <= fam.degree; ++d) {
      up *= u;
      if (up == 0) break;
      acc = padic_add(acc, padic_mul(fam.coeffs[d][a],
                                     padic_from_mpq(fam.prime, mpq_class(up),
                                                    relprec)));
    }
    o.values.push_back(acc);
  }
  return o;
}

std::vector<LValue> lp_two_var(const HeckeChar& chi, const CMOracleFamily& fam,
                               long relprec) {
  check_family_shape(fam, "lp_two_var");
  std::vector<LValue> out;
  out.reserve(fam.degree + 1);
  for (long d = 0; d <= fam.degree; ++d) {
    CMOracle o;
    o.prime = fam.prime;
    o.cas = fam.cas;
    o.level_n = fam.level_n;
    o.weight_k = fam.weight_k;
    o.nu = fam.nu;
    o.id = fam.id + " coeff " + std::to_string(d);
    o.values = fam.coeffs[d];
    out.push_back(lp_value(chi, o, relprec));
  }
  return out;
}

LValue lp_two_var_at(const HeckeChar& chi, const CMOracleFamily& fam, long u,
                     long relprec) {
  return lp_value(chi, oracle_specialize(fam, u, relprec), relprec);
}

bool lp_family_consistent(const HeckeChar& chi, const CMOracleFamily& fam,
                          long relprec) {
  check_family_shape(fam, "lp_family_consistent");
  long D = fam.degree;
  long p = fam.prime;
  std::vector<LValue> coeff = lp_two_var(chi, fam, relprec);
  std::vector<LValue> pts;
  pts.reserve(D + 1);
  for (long u = 0; u <= D; ++u)
    pts.push_back(lp_two_var_at(chi, fam, u, relprec));
  // forward differences of u^e at 0 are e-to-d surjection counts, Stirling
  // numbers of the second kind times d!
  std::vector<std::vector<mpz_class>> st(D + 1,
                                         std::vector<mpz_class>(D + 1, 0));
  st[0][0] = 1;
  for (long e = 1; e <= D; ++e)
    for (long d = 1; d <= e; ++d) st[e][d] = st[e - 1][d - 1] + d * st[e - 1][d];
  for (long d = 0; d <= D; ++d) {
    CycloPadic diff;
    bool first = true;
    for (long i = 0; i <= d; ++i) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d),
                   static_cast<unsigned long>(i));
      if ((d - i) % 2 != 0) c = -c;
      CycloPadic t = cyclo_padic_scale(
          pts[i].value, padic_from_mpq(p, mpq_class(c), relprec));
      if (first) {
        diff = t;
        first = false;
      } else {
        diff = cyclo_padic_add(diff, t);
      }
    }
    mpz_class dfact;
    mpz_fac_ui(dfact.get_mpz_t(), static_cast<unsigned long>(d));
    CycloPadic rhs;
    first = true;
    for (long e = 0; e <= D; ++e) {
      mpz_class w = dfact * st[e][d];
      if (w == 0) continue;
      CycloPadic t = cyclo_padic_scale(coeff[e].value,
                                       padic_from_mpq(p, mpq_class(w), relprec));
      if (first) {
        rhs = t;
        first = false;
      } else {
        rhs = cyclo_padic_add(rhs, t);
      }
    }
    if (!cyclo_padic_agree(diff, rhs)) return false;
  }
  return true;
}

}  // namespace padl
