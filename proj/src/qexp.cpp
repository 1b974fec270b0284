#include "padl/qexp.hpp"

#include <algorithm>
#include <numeric>

namespace padl {

QExpansion qexp_zero(long prime, long nq, long absprec) {
  QExpansion f;
  f.prime = prime;
  f.a.assign(nq + 1, padic_prec_zero(prime, absprec));
  return f;
}

static long best_cap(const QExpansion& f) {
  long m = 0;
  for (const auto& x : f.a) m = std::max(m, x.absprec());
  return m;
}

QExpansion qexp_U(const QExpansion& f) {
  QExpansion g;
  g.prime = f.prime;
  g.weight_k = f.weight_k;
  g.neben = f.neben;
  long n = f.nq() / f.prime;
  g.a.reserve(n + 1);
  for (long i = 0; i <= n; ++i) g.a.push_back(f.a[i * f.prime]);
  return g;
}

QExpansion qexp_V(const QExpansion& f, long cap) {
  QExpansion g;
  g.prime = f.prime;
  g.weight_k = f.weight_k;
  g.neben = f.neben;
  long n = f.nq() * f.prime;
  if (cap >= 0) n = std::min(n, cap);
  long zero_cap = best_cap(f);
  g.a.assign(n + 1, padic_prec_zero(f.prime, zero_cap));
  for (long i = 0; i * f.prime <= n; ++i) g.a[i * f.prime] = f.a[i];
  return g;
}

static void check_compatible(const QExpansion& f, const QExpansion& g) {
  if (f.prime != g.prime) throw precondition_error("qexp: prime mismatch");
}

QExpansion qexp_add(const QExpansion& f, const QExpansion& g) {
  check_compatible(f, g);
  QExpansion h;
  h.prime = f.prime;
  h.weight_k = f.weight_k == g.weight_k ? f.weight_k : std::nullopt;
  long n = std::min(f.nq(), g.nq());
  h.a.reserve(n + 1);
  for (long i = 0; i <= n; ++i) h.a.push_back(padic_add(f.a[i], g.a[i]));
  return h;
}

QExpansion qexp_sub(const QExpansion& f, const QExpansion& g) {
  check_compatible(f, g);
  QExpansion h;
  h.prime = f.prime;
  h.weight_k = f.weight_k == g.weight_k ? f.weight_k : std::nullopt;
  long n = std::min(f.nq(), g.nq());
  h.a.reserve(n + 1);
  for (long i = 0; i <= n; ++i) h.a.push_back(padic_sub(f.a[i], g.a[i]));
  return h;
}

QExpansion qexp_scale(const QExpansion& f, const PadicNumber& c) {
  QExpansion h = f;
  for (auto& x : h.a) x = padic_mul(x, c);
  return h;
}

// eps(p) p^(k-1) for the Hecke and depletion recipes
static PadicNumber hecke_vp_scalar(const QExpansion& f, long* k_out) {
  if (!f.weight_k || !f.neben)
    throw precondition_error("hecke: weight and nebentype tags required");
  long N = f.neben->modulus;
  if (N % f.prime == 0)
    throw precondition_error("hecke: p must be prime to the level");
  long k = *f.weight_k;
  if (k < 1) throw precondition_error("hecke: need weight k >= 1");
  *k_out = k;
  PadicNumber epsp =
      dirichlet_value_padic(*f.neben, f.prime, f.prime, best_cap(f));
  return padic_scale(epsp, mpq_class(ipow(f.prime, k - 1)));
}

QExpansion qexp_Tp(const QExpansion& f) {
  long k = 0;
  PadicNumber c = hecke_vp_scalar(f, &k);
  QExpansion out = qexp_add(qexp_U(f), qexp_scale(qexp_V(f), c));
  out.weight_k = f.weight_k;
  out.neben = f.neben;
  return out;
}

QExpansion qexp_deplete(const QExpansion& f) {
  QExpansion g = f;
  for (long i = 0; i <= g.nq(); i += f.prime)
    g.a[i] = padic_prec_zero(f.prime, f.a[i].absprec());
  return g;
}

bool qexp_is_depleted(const QExpansion& f) {
  for (long i = 0; i <= f.nq(); i += f.prime)
    if (!f.a[i].is_prec_zero()) return false;
  return true;
}

QExpansion qexp_deplete_eigen(const QExpansion& f) {
  long k = 0;
  PadicNumber c2 = hecke_vp_scalar(f, &k);
  if (f.nq() < f.prime)
    throw precondition_error("deplete_eigen: need a_p in range");
  if (f.a[1].is_prec_zero())
    throw precondition_error("deplete_eigen: a_1 must be invertible");
  // eigenvalue normalized by a_1, since the series here carry a_1 = 2
  PadicNumber lam = padic_div(f.a[f.prime], f.a[1]);
  // the recipe is only valid on an eigenform; verify on what is computable
  QExpansion tpf = qexp_Tp(f);
  QExpansion lf = qexp_scale(f, lam);
  if (!qexp_agree(tpf, lf))
    throw precondition_error("deplete_eigen: not a T_p eigenform");
  QExpansion vf = qexp_V(f, f.nq());
  QExpansion v2f = qexp_V(vf, f.nq());
  QExpansion out = qexp_sub(f, qexp_scale(vf, lam));
  out = qexp_add(out, qexp_scale(v2f, c2));
  out.weight_k = f.weight_k;
  out.neben = f.neben;
  return out;
}

QExpansion qexp_theta(const QExpansion& f) {
  QExpansion g = f;
  for (long i = 0; i <= g.nq(); ++i)
    g.a[i] = padic_scale(f.a[i], mpq_class(i));
  return g;
}

QExpansion qexp_theta_weight(const QExpansion& f, const Weight& nu, long j) {
  if (nu.prime != f.prime)
    throw precondition_error("theta_weight: prime mismatch");
  if (!qexp_is_depleted(f))
    throw precondition_error("theta_weight: expansion must be depleted");
  QExpansion g = f;
  for (long i = 1; i <= g.nq(); ++i) {
    if (i % f.prime == 0) continue;
    PadicNumber c = weight_eval(nu, i);
    if (j != 0) {
      mpz_class ij;
      mpz_ui_pow_ui(ij.get_mpz_t(), i, j >= 0 ? j : -j);
      c = padic_scale(c, j >= 0 ? mpq_class(mpz_class(1), ij) : mpq_class(ij));
    }
    g.a[i] = padic_mul(f.a[i], c);
  }
  return g;
}

QExpansion qexp_twist(const QExpansion& f, const DirichletChar& chi) {
  QExpansion g = f;
  g.neben = std::nullopt;  // the nebentype moves under twisting
  long cap = best_cap(f);
  for (long i = 0; i <= g.nq(); ++i) {
    if (!dirichlet_exponent(chi, i)) {
      // chi vanishes on common factors with the modulus
      g.a[i] = padic_prec_zero(f.prime, f.a[i].absprec());
      continue;
    }
    g.a[i] = padic_mul(f.a[i], dirichlet_value_padic(chi, i, f.prime, cap));
  }
  return g;
}

QExpansion eisenstein(long prime, long k, const DirichletChar& eps, long nq,
                      long relprec) {
  if (k < 1) throw precondition_error("eisenstein: k must be positive");
  if (dirichlet_is_odd(eps) != (k % 2 == 1))
    throw precondition_error("eisenstein: parity of eps must match k");
  if (k == 2 && dirichlet_conductor(eps) == 1)
    throw precondition_error("eisenstein: weight 2 needs a nontrivial eps");
  long ord = dirichlet_order(eps);
  if ((prime - 1) % ord != 0)
    throw precondition_error("eisenstein: order of eps must divide p - 1");
  QExpansion f;
  f.prime = prime;
  f.weight_k = k;
  f.neben = eps;
  f.a.reserve(nq + 1);
  f.a.push_back(padic_embed_cyclo(gen_bernoulli_L(k, eps), prime, relprec));
  for (long n = 1; n <= nq; ++n) {
    PadicNumber s = padic_prec_zero(prime, relprec + k + 4);
    bool have = false;
    for (long d = 1; d <= n; ++d) {
      if (n % d) continue;
      PadicNumber ev = dirichlet_value_padic(eps, d, prime, relprec + k + 4);
      if (ev.is_prec_zero()) continue;  // d shares a factor with the modulus
      mpz_class dk;
      mpz_ui_pow_ui(dk.get_mpz_t(), d, k - 1);
      PadicNumber term = padic_scale(ev, mpq_class(dk));
      s = have ? padic_add(s, term) : term;
      have = true;
    }
    if (!have) {
      f.a.push_back(padic_prec_zero(prime, relprec));
    } else {
      // drop the guard digits so the result is at the requested precision
      PadicNumber v = padic_scale(s, mpq_class(2));
      f.a.push_back(padic_add(v, padic_prec_zero(prime, v.val + relprec)));
    }
  }
  return f;
}

bool qexp_agree(const QExpansion& f, const QExpansion& g) {
  if (f.prime != g.prime) return false;
  long n = std::min(f.nq(), g.nq());
  for (long i = 0; i <= n; ++i)
    if (!padic_agree(f.a[i], g.a[i])) return false;
  return true;
}

long qexp_min_shared_absprec(const QExpansion& f, const QExpansion& g) {
  long n = std::min(f.nq(), g.nq());
  long m = padic_shared_absprec(f.a[0], g.a[0]);
  for (long i = 1; i <= n; ++i)
    m = std::min(m, padic_shared_absprec(f.a[i], g.a[i]));
  return m;
}

}  // namespace padl
