#include <algorithm>
#include <memory>
#include <numeric>

#include "padl/dirichlet.hpp"
#include "padl/errors.hpp"
#include "padl/quad.hpp"

namespace padl {

namespace {

long egcd_inv(long a, long m) {
  if (m == 1) return 0;
  long r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    long s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw precondition_error("egcd_inv: arguments not coprime");
  return ((s0 % m) + m) % m;
}

long omega_norm_mod(long dk, long m) {
  mpz_class d(dk);
  mpz_class n = (d * d - d) / 4;
  mpz_class r = n % m;
  if (r < 0) r += m;
  return static_cast<long>(r.get_si());
}

struct WShape {
  long p = 0;
  long pn = 1;
  long dk = 0;
  long nrm = 0;  // N(omega) mod pn
  bool inert = false;
};

// canonical index of the class of x + y omega; scalars act by rescaling
long w_index(const WShape& s, long x, long y) {
  x = ((x % s.pn) + s.pn) % s.pn;
  y = ((y % s.pn) + s.pn) % s.pn;
  if (x % s.p != 0) return (y * egcd_inv(x, s.pn)) % s.pn;
  if (!s.inert || y % s.p == 0)
    throw precondition_error("wgroup: element is not a unit");
  long w = (x * egcd_inv(y, s.pn)) % s.pn;
  return s.pn + w / s.p;
}

std::pair<long, long> w_rep(const WShape& s, long i) {
  if (i < s.pn) return {1, i};
  return {(i - s.pn) * s.p, 1};
}

long w_mul(const WShape& s, long i, long j) {
  auto [x1, y1] = w_rep(s, i);
  auto [x2, y2] = w_rep(s, j);
  long x3 = (x1 * x2 % s.pn - y1 * y2 % s.pn * s.nrm) % s.pn;
  long y3 = (x1 * y2 + x2 * y1 + y1 * y2 % s.pn * s.dk) % s.pn;
  return w_index(s, x3, y3);
}

// tracked ideal: the represented value is (accumulated scalar) * I where
// the scalar's residue mod the Heegner ideal and W class are kept instead
// of the scalar itself
struct Tracked {
  QuadIdeal I;
  long resn = 1;
  long widx = 0;
};

struct RedCtx {
  long dk = 0;
  mpz_class nrm;
  mpz_class avoid;    // reduction factors stay coprime to this
  mpz_class norm_cap; // reduce until the ideal norm is at most this
  const HeegnerIdeal* heeg = nullptr;
  const WShape* w = nullptr;
};

long resn_mul_elem(const RedCtx& ctx, long resn, const mpz_class& x,
                   const mpz_class& y) {
  if (ctx.heeg->n == 1) return 0;
  return (resn * heegner_residue(*ctx.heeg, x, y)) % ctx.heeg->n;
}

long resn_div_int(const RedCtx& ctx, long resn, const mpz_class& m) {
  if (ctx.heeg->n == 1) return 0;
  mpz_class r = m % ctx.heeg->n;
  if (r < 0) r += ctx.heeg->n;
  return (resn * egcd_inv(static_cast<long>(r.get_si()), ctx.heeg->n)) %
         ctx.heeg->n;
}

long w_mul_elem(const RedCtx& ctx, long widx, const mpz_class& x,
                const mpz_class& y) {
  if (!ctx.w) return 0;
  mpz_class xr = x % ctx.w->pn, yr = y % ctx.w->pn;
  if (xr < 0) xr += ctx.w->pn;
  if (yr < 0) yr += ctx.w->pn;
  long idx = w_index(*ctx.w, static_cast<long>(xr.get_si()),
                     static_cast<long>(yr.get_si()));
  return w_mul(*ctx.w, widx, idx);
}

mpz_class form_value(const QuadIdeal& I, const mpz_class& x,
                     const mpz_class& y) {
  mpz_class d(I.dk);
  mpz_class nrm = (d * d - d) / 4;
  return x * x + d * x * y + nrm * y * y;
}

// one reduction pass: pick a short mu in I with N(mu)/N(I) coprime to
// avoid, then replace I by conj(mu conj(I) / N(I)), which has norm
// N(mu)/N(I) and differs from I by the scalar mu / that norm
void reduce_tracked(Tracked& T, const RedCtx& ctx) {
  for (int iter = 0; iter < 12; ++iter) {
    mpz_class nI = ideal_norm(T.I);
    if (nI <= ctx.norm_cap) return;
    // Gauss reduce the basis (a, 0), (b, c) under the norm form
    mpz_class v1x = T.I.a, v1y = 0, v2x = T.I.b, v2y = T.I.c;
    while (true) {
      mpz_class q1 = form_value(T.I, v1x, v1y);
      // 2 B(v1, v2)
      mpz_class bb = 2 * v1x * v2x + T.I.dk * (v1x * v2y + v2x * v1y) +
                     2 * ctx.nrm * v1y * v2y;
      mpz_class t;
      mpz_class den = 2 * q1;
      mpz_fdiv_q(t.get_mpz_t(), mpz_class(bb + q1).get_mpz_t(),
                 den.get_mpz_t());
      v2x -= t * v1x;
      v2y -= t * v1y;
      if (form_value(T.I, v2x, v2y) < q1) {
        std::swap(v1x, v2x);
        std::swap(v1y, v2y);
        continue;
      }
      break;
    }
    // smallest candidate with an admissible cofactor
    bool found = false;
    mpz_class bx, by, bq;
    for (long range : {4L, 16L}) {
      for (long al = -range; al <= range && !found; ++al)
        for (long be = -range; be <= range; ++be) {
          if (al == 0 && be == 0) continue;
          mpz_class cx = al * v1x + be * v2x;
          mpz_class cy = al * v1y + be * v2y;
          mpz_class q = form_value(T.I, cx, cy);
          if (found && q >= bq) continue;
          mpz_class m = q / nI;
          mpz_class g;
          mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), ctx.avoid.get_mpz_t());
          if (g != 1) continue;
          bx = cx;
          by = cy;
          bq = q;
          found = true;
        }
      if (found) break;
    }
    if (!found)
      throw precondition_error("hgroup: no admissible short vector in reduction");
    mpz_class m = bq / nI;
    // c = mu * conj(I) / N(I), next ideal is conj(c)
    QuadIdeal B = ideal_conj(T.I);
    auto g1 = quad_mul_elem(T.I.dk, {bx, by}, {B.a, 0});
    auto g2 = quad_mul_elem(T.I.dk, {bx, by}, {B.b, B.c});
    g1.first /= nI;
    g1.second /= nI;
    g2.first /= nI;
    g2.second /= nI;
    QuadIdeal C = ideal_from_gens(T.I.dk, {g1, g2});
    T.I = ideal_conj(C);
    T.resn = resn_mul_elem(ctx, T.resn, bx, by);
    T.resn = resn_div_int(ctx, T.resn, m);
    T.widx = w_mul_elem(ctx, T.widx, bx, by);
    if (ideal_norm(T.I) != m)
      throw precondition_error("hgroup: reduction produced a wrong norm");
  }
  throw precondition_error("hgroup: ideal reduction did not converge");
}

Tracked tracked_mul(const Tracked& x, const Tracked& y, const RedCtx& ctx) {
  Tracked r;
  r.I = ideal_mul(x.I, y.I);
  r.resn = ctx.heeg->n == 1 ? 0 : (x.resn * y.resn) % ctx.heeg->n;
  r.widx = ctx.w ? w_mul(*ctx.w, x.widx, y.widx) : 0;
  reduce_tracked(r, ctx);
  return r;
}

Tracked tracked_pow(const Tracked& x, long e, const RedCtx& ctx) {
  Tracked r;
  r.I = ideal_from_gens(x.I.dk, {{1, 0}});
  r.resn = ctx.heeg->n == 1 ? 0 : 1;
  Tracked b = x;
  reduce_tracked(b, ctx);
  while (e) {
    if (e & 1) r = tracked_mul(r, b, ctx);
    b = tracked_mul(b, b, ctx);
    e >>= 1;
  }
  return r;
}

// digit layout shared by the multiplication closure
struct HLaw {
  std::vector<long> radix;
  size_t npic = 0;
  std::vector<std::vector<long>> rho;  // kernel digits per pic slot
};

long hlaw_decode_mul(const HLaw& L, long x, long y) {
  size_t k = L.radix.size();
  std::vector<long> acc(k, 0);
  long xx = x, yy = y;
  for (size_t i = 0; i < k; ++i) {
    acc[i] = xx % L.radix[i] + yy % L.radix[i];
    xx /= L.radix[i];
    yy /= L.radix[i];
  }
  for (size_t t = 0; t < L.npic; ++t) {
    if (acc[t] < L.radix[t]) continue;
    acc[t] -= L.radix[t];
    for (size_t i = L.npic; i < k; ++i) acc[i] += L.rho[t][i];
  }
  long r = 0;
  for (size_t i = k; i-- > 0;) r = r * L.radix[i] + acc[i] % L.radix[i];
  return r;
}

}  // namespace

long WGroup::index_of(long x, long y) const {
  WShape s{p, pn, dk, omega_norm_mod(dk, pn), type == Splitting::inert};
  return w_index(s, x, y);
}

WGroup wgroup(long dk, long p, long level) {
  if (level < 1) throw usage_error("wgroup: level must be at least 1");
  Splitting ty = splitting_type(dk, p);
  if (ty == Splitting::split)
    throw precondition_error("wgroup: p splits, the local quotient is trivial");
  WGroup w;
  w.dk = dk;
  w.p = p;
  w.level = level;
  w.pn = 1;
  for (long i = 0; i < level; ++i) w.pn *= p;
  w.type = ty;
  WShape s{p, w.pn, dk, omega_norm_mod(dk, w.pn), ty == Splitting::inert};
  long n = w.pn + (s.inert ? w.pn / p : 0);
  for (long i = 0; i < n; ++i) w.reps.push_back(w_rep(s, i));
  w.group = abgroup_analyze(n, 0, [s](long i, long j) { return w_mul(s, i, j); });
  w.u_level.assign(n, 0);
  for (long i = 0; i < w.pn; ++i) {
    long z = i, t = 0;
    if (z == 0)
      t = level;
    else
      while (z % p == 0) {
        z /= p;
        ++t;
      }
    w.u_level[i] = std::min(t, level);
  }
  return w;
}

std::vector<std::pair<long, long>> residue_units(const HeegnerIdeal& heeg) {
  if (!heeg.ok) throw precondition_error("residue_units: no ideal");
  std::vector<std::pair<long, long>> out;
  const UnitGroup& U = unit_group(heeg.n);
  for (const auto& f : U.factors) {
    // lift the local generator to 1 mod the complementary part
    long rest = heeg.n / f.pe;
    long g;
    if (rest == 1) {
      g = f.gen % heeg.n;
    } else {
      long inv = egcd_inv(f.pe % rest, rest);
      long k = ((1 - f.gen) % rest * inv % rest + rest) % rest;
      g = (f.gen + f.pe * k) % heeg.n;
    }
    out.push_back({g, f.ord});
  }
  return out;
}

std::vector<long> HGroup::digits(long x) const {
  std::vector<long> d(radix.size());
  for (size_t i = 0; i < radix.size(); ++i) {
    d[i] = x % radix[i];
    x /= radix[i];
  }
  return d;
}

long HGroup::index(const std::vector<long>& d) const {
  long x = 0;
  for (size_t i = radix.size(); i-- > 0;) x = x * radix[i] + d[i];
  return x;
}

HGroup hgroup(const QuadOrder& order, const HeegnerIdeal& heeg, long p,
              long level) {
  if (!heeg.ok) throw precondition_error("hgroup: no Heegner ideal");
  if (heeg.dk != order.dk) throw usage_error("hgroup: field mismatch");
  if (std::gcd(order.c, heeg.n) != 1)
    throw precondition_error("hgroup: conductor shares a factor with the norm");
  if (level < 0) throw usage_error("hgroup: level must be nonnegative");
  if (level > 0) {
    if (p < 3) throw usage_error("hgroup: level needs an odd prime");
    if (std::gcd(p, order.c) != 1 || heeg.n % p == 0)
      throw precondition_error("hgroup: p must be prime to the conductor and norm");
    if (order.dk >= -4)
      throw precondition_error("hgroup: level extension needs dk < -4");
  }
  HGroup h;
  h.order = order;
  h.heeg = heeg;
  h.p = p;
  h.level = level;
  h.pic = class_group(order);
  if (level > 0) h.w = wgroup(order.dk, p, level);

  const UnitGroup& U = unit_group(heeg.n);
  h.npic = h.pic.group.gen.size();
  h.nunit = U.factors.size();
  for (long o : h.pic.group.ord) h.radix.push_back(o);
  for (const auto& f : U.factors) h.radix.push_back(f.ord);
  if (level > 0)
    for (long o : h.w.group.ord) h.radix.push_back(o);
  h.n = 1;
  for (long o : h.radix) h.n *= o;

  // relation constants: a principal generator of each representative ideal
  // raised to its class order, reduced mod the Heegner ideal and into W
  WShape ws{p, h.level > 0 ? h.w.pn : 1, order.dk,
            h.level > 0 ? omega_norm_mod(order.dk, h.w.pn) : 0,
            h.level > 0 && h.w.type == Splitting::inert};
  RedCtx ctx;
  ctx.dk = order.dk;
  {
    mpz_class d(order.dk);
    ctx.nrm = (d * d - d) / 4;
  }
  ctx.avoid = mpz_class(heeg.n) * order.c * 2 * (-order.dk);
  if (p > 0) ctx.avoid *= p;
  ctx.norm_cap = 64 * mpz_class(-order.dk) + 1024;
  ctx.heeg = &h.heeg;
  ctx.w = h.level > 0 ? &ws : nullptr;

  size_t nk = h.radix.size();
  for (size_t t = 0; t < h.npic; ++t) {
    long gi = h.pic.group.gen[t];
    long ordt = h.pic.group.ord[t];
    QuadForm rep = quad_rep_coprime(h.pic.forms[gi], ctx.avoid);
    Tracked base;
    base.I = form_to_ideal(order, rep);
    base.resn = heeg.n == 1 ? 0 : 1;
    Tracked pw = tracked_pow(base, ordt, ctx);
    mpz_class gx, gy;
    if (!ideal_principal_gen(pw.I, &gx, &gy))
      throw precondition_error("hgroup: relation ideal is not principal");
    long resn = resn_mul_elem(ctx, pw.resn, gx, gy);
    long widx = w_mul_elem(ctx, pw.widx, gx, gy);
    if (heeg.n > 1 && std::gcd(resn, heeg.n) != 1)
      throw precondition_error("hgroup: relation residue is not a unit");
    std::vector<long> digits(nk, 0);
    if (heeg.n > 1) {
      std::vector<long> ud = unit_dlog(heeg.n, resn == 0 ? 1 : resn);
      for (size_t i = 0; i < h.nunit; ++i) digits[h.npic + i] = ud[i];
    }
    if (h.level > 0) {
      const std::vector<long>& wc = h.w.group.coords[widx];
      for (size_t i = 0; i < wc.size(); ++i)
        digits[h.npic + h.nunit + i] = wc[i];
    }
    h.rho.push_back(digits);
    h.rho_resn.push_back(heeg.n == 1 ? 0 : resn);
  }

  auto law = std::make_shared<HLaw>();
  law->radix = h.radix;
  law->npic = h.npic;
  law->rho = h.rho;
  h.mul = [law](long x, long y) { return hlaw_decode_mul(*law, x, y); };
  return h;
}

AbGroup hgroup_analyze(const HGroup& h) {
  return abgroup_analyze(h.n, 0, h.mul);
}

long hgroup_id(const HGroup&) { return 0; }

long hgroup_mul(const HGroup& h, long x, long y) { return h.mul(x, y); }

long hgroup_inv(const HGroup& h, long x) {
  std::vector<long> d = h.digits(x);
  std::vector<long> e(d.size(), 0);
  std::vector<long> kacc(d.size(), 0);
  for (size_t t = 0; t < h.npic; ++t) {
    if (d[t] == 0) continue;
    e[t] = h.radix[t] - d[t];
    // the pic digits then wrap once, contributing one rho each
    for (size_t i = h.npic; i < d.size(); ++i) kacc[i] += h.rho[t][i];
  }
  for (size_t i = h.npic; i < d.size(); ++i) {
    long v = (-d[i] - kacc[i]) % h.radix[i];
    if (v < 0) v += h.radix[i];
    e[i] = v;
  }
  return h.index(e);
}

long hgroup_pow(const HGroup& h, long x, long e) {
  if (e < 0) return hgroup_pow(h, hgroup_inv(h, x), -e);
  long r = 0;
  long b = x;
  while (e) {
    if (e & 1) r = h.mul(r, b);
    b = h.mul(b, b);
    e >>= 1;
  }
  return r;
}

long hgroup_kernel_unit(const HGroup& h, long r) {
  if (h.heeg.n == 1) return 0;
  if (std::gcd(((r % h.heeg.n) + h.heeg.n) % h.heeg.n, h.heeg.n) != 1)
    throw precondition_error("hgroup_kernel_unit: residue is not a unit");
  std::vector<long> d(h.radix.size(), 0);
  std::vector<long> ud = unit_dlog(h.heeg.n, ((r % h.heeg.n) + h.heeg.n) % h.heeg.n);
  for (size_t i = 0; i < h.nunit; ++i) d[h.npic + i] = ud[i];
  return h.index(d);
}

long hgroup_kernel_w(const HGroup& h, long widx) {
  if (h.level == 0) throw usage_error("hgroup_kernel_w: no level attached");
  std::vector<long> d(h.radix.size(), 0);
  const std::vector<long>& wc = h.w.group.coords[widx];
  for (size_t i = 0; i < wc.size(); ++i) d[h.npic + h.nunit + i] = wc[i];
  return h.index(d);
}

long hgroup_project_pic(const HGroup& h, long x) {
  std::vector<long> d = h.digits(x);
  std::vector<long> e(d.begin(), d.begin() + h.npic);
  return abgroup_from_coords(h.pic.group, e);
}

long hgroup_class_lift(const HGroup& h, long form_index) {
  std::vector<long> d(h.radix.size(), 0);
  const std::vector<long>& pc = h.pic.group.coords[form_index];
  for (size_t i = 0; i < h.npic; ++i) d[i] = pc[i];
  return h.index(d);
}

long hgroup_drop(const HGroup& from, const HGroup& to, long x) {
  if (from.order.dk != to.order.dk || from.order.c != to.order.c ||
      from.heeg.n != to.heeg.n || from.heeg.t != to.heeg.t ||
      from.p != to.p || to.level >= from.level)
    throw precondition_error("hgroup_drop: groups are not a level pair");
  if (from.rho_resn != to.rho_resn)
    throw precondition_error("hgroup_drop: representative systems differ");
  if (x < 0 || x >= from.n) throw precondition_error("hgroup_drop: range");
  std::vector<long> d = from.digits(x);
  std::vector<long> e(d.begin(), d.begin() + from.npic + from.nunit);
  if (to.level == 0) return to.index(e);
  std::vector<long> wc(d.begin() + from.npic + from.nunit, d.end());
  long widx = abgroup_from_coords(from.w.group, wc);
  auto [wx, wy] = from.w.reps[widx];
  long tidx = to.w.index_of(wx, wy);
  const std::vector<long>& tc = to.w.group.coords[tidx];
  e.insert(e.end(), tc.begin(), tc.end());
  return to.index(e);
}

}  // namespace padl
