#include "padl/cyclo.hpp"

#include <algorithm>

namespace padl {

long euler_phi(long M) {
  if (M <= 0) throw usage_error("euler_phi: M must be positive");
  long phi = 1, m = M;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    phi *= q - 1;
    m /= q;
    while (m % q == 0) {
      phi *= q;
      m /= q;
    }
  }
  if (m > 1) phi *= m - 1;
  return phi;
}

// Exact long division of integer polynomials, divisor monic.
static std::vector<mpz_class> poly_divide_exact(std::vector<mpz_class> num,
                                                const std::vector<mpz_class>& den) {
  long dn = static_cast<long>(num.size()) - 1;
  long dd = static_cast<long>(den.size()) - 1;
  std::vector<mpz_class> quot(dn - dd + 1, 0);
  for (long k = dn - dd; k >= 0; --k) {
    mpz_class c = num[k + dd];
    quot[k] = c;
    if (c == 0) continue;
    for (long i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  for (const auto& r : num)
    if (r != 0) throw precondition_error("poly_divide_exact: nonzero remainder");
  return quot;
}

const std::vector<mpz_class>& cyclotomic_poly(long M) {
  static std::map<long, std::vector<mpz_class>> cache;
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  if (M <= 0) throw usage_error("cyclotomic_poly: M must be positive");
  std::vector<mpz_class> num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (long d = 1; d < M; ++d) {
    if (M % d) continue;
    num = poly_divide_exact(std::move(num), cyclotomic_poly(d));
  }
  return cache.emplace(M, std::move(num)).first->second;
}

long primitive_root(long p) {
  if (p == 2) return 1;
  std::vector<long> qs;
  long m = p - 1;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    qs.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) qs.push_back(m);
  mpz_class pz(p);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (long q : qs) {
      mpz_class e((p - 1) / q), r;
      mpz_class gz(g);
      mpz_powm(r.get_mpz_t(), gz.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

CycloRational cyclo_zero(long M) {
  CycloRational a;
  a.M = M;
  a.c.assign(euler_phi(M), mpq_class(0));
  return a;
}

CycloRational cyclo_from_mpq(long M, const mpq_class& q) {
  CycloRational a = cyclo_zero(M);
  a.c[0] = q;
  return a;
}

// reduce a raw coefficient vector (any degree) mod the monic cyclotomic poly
static void cyclo_reduce(std::vector<mpq_class>& v, long M) {
  const auto& phi = cyclotomic_poly(M);
  long deg = static_cast<long>(phi.size()) - 1;
  for (long k = static_cast<long>(v.size()) - 1; k >= deg; --k) {
    if (v[k] == 0) continue;
    mpq_class c = v[k];
    for (long i = 0; i <= deg; ++i) v[k - deg + i] -= c * phi[i];
  }
  v.resize(deg);
}

CycloRational cyclo_from_exponents(long M,
                                   const std::map<long, mpq_class>& buckets) {
  std::vector<mpq_class> v(M, mpq_class(0));
  for (const auto& [e, q] : buckets) {
    long r = ((e % M) + M) % M;
    v[r] += q;
  }
  cyclo_reduce(v, M);
  CycloRational a;
  a.M = M;
  a.c = std::move(v);
  return a;
}

CycloRational cyclo_zeta_pow(long M, long e) {
  return cyclo_from_exponents(M, {{e, mpq_class(1)}});
}

CycloRational cyclo_lift(const CycloRational& a, long M) {
  if (M % a.M != 0) throw precondition_error("cyclo_lift: need m | M");
  if (M == a.M) return a;
  long s = M / a.M;
  std::map<long, mpq_class> buckets;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != 0) buckets[static_cast<long>(i) * s] = a.c[i];
  return cyclo_from_exponents(M, buckets);
}

static void check_same_ring(long Ma, long Mb) {
  if (Ma != Mb) throw precondition_error("cyclotomic ring mismatch");
}

CycloRational cyclo_add(const CycloRational& a, const CycloRational& b) {
  check_same_ring(a.M, b.M);
  CycloRational r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

CycloRational cyclo_sub(const CycloRational& a, const CycloRational& b) {
  check_same_ring(a.M, b.M);
  CycloRational r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

CycloRational cyclo_mul(const CycloRational& a, const CycloRational& b) {
  check_same_ring(a.M, b.M);
  std::vector<mpq_class> v(2 * a.c.size(), mpq_class(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      v[i + j] += a.c[i] * b.c[j];
    }
  }
  cyclo_reduce(v, a.M);
  CycloRational r;
  r.M = a.M;
  r.c = std::move(v);
  return r;
}

CycloRational cyclo_scale(const CycloRational& a, const mpq_class& q) {
  CycloRational r = a;
  for (auto& x : r.c) x *= q;
  return r;
}

bool cyclo_eq(const CycloRational& a, const CycloRational& b) {
  if (a.M != b.M) return false;
  return a.c == b.c;
}

bool cyclo_is_zero(const CycloRational& a) {
  return std::all_of(a.c.begin(), a.c.end(),
                     [](const mpq_class& x) { return x == 0; });
}

bool cyclo_is_rational(const CycloRational& a) {
  for (size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return false;
  return true;
}

CycloPadic cyclo_padic_zero(long M, long prime, long absprec) {
  CycloPadic a;
  a.M = M;
  a.prime = prime;
  a.c.assign(euler_phi(M), padic_prec_zero(prime, absprec));
  return a;
}

// best absolute precision any coordinate could carry; used as the cap on
// coordinates that are exactly zero by construction
static long best_cap(const CycloPadic& a, const CycloPadic& b) {
  long m = a.c.empty() ? 0 : a.c[0].absprec();
  for (const auto& x : a.c) m = std::max(m, x.absprec());
  for (const auto& x : b.c) m = std::max(m, x.absprec());
  return m;
}

CycloPadic cyclo_padic_from(long M, const PadicNumber& x) {
  CycloPadic a = cyclo_padic_zero(M, x.prime, x.absprec());
  a.c[0] = x;
  return a;
}

static CycloPadic cyclo_padic_from_raw(long M, long prime,
                                       std::vector<PadicNumber> v,
                                       std::vector<char> has, long zero_cap) {
  const auto& phi = cyclotomic_poly(M);
  long deg = static_cast<long>(phi.size()) - 1;
  for (long k = static_cast<long>(v.size()) - 1; k >= deg; --k) {
    if (!has[k]) continue;
    for (long i = 0; i < deg; ++i) {
      if (phi[i] == 0) continue;
      PadicNumber t = padic_scale(v[k], mpq_class(-phi[i]));
      if (has[k - deg + i])
        v[k - deg + i] = padic_add(v[k - deg + i], t);
      else {
        v[k - deg + i] = t;
        has[k - deg + i] = 1;
      }
    }
  }
  CycloPadic r;
  r.M = M;
  r.prime = prime;
  r.c.resize(deg, padic_prec_zero(prime, zero_cap));
  for (long i = 0; i < deg; ++i)
    if (has[i]) r.c[i] = v[i];
  return r;
}

CycloPadic cyclo_padic_zeta_pow(long M, long prime, long e, long relprec) {
  long r = ((e % M) + M) % M;
  std::vector<PadicNumber> v(M, padic_prec_zero(prime, relprec));
  std::vector<char> has(M, 0);
  v[r] = padic_from_long(prime, 1, relprec);
  has[r] = 1;
  return cyclo_padic_from_raw(M, prime, std::move(v), std::move(has), relprec);
}

CycloPadic cyclo_padic_embed(const CycloRational& a, long prime, long relprec) {
  CycloPadic r;
  r.M = a.M;
  r.prime = prime;
  r.c.reserve(a.c.size());
  for (const auto& q : a.c) {
    if (q == 0)
      r.c.push_back(padic_prec_zero(prime, relprec));
    else
      r.c.push_back(padic_from_mpq(prime, q, relprec));
  }
  return r;
}

CycloPadic cyclo_padic_add(const CycloPadic& a, const CycloPadic& b) {
  check_same_ring(a.M, b.M);
  CycloPadic r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = padic_add(r.c[i], b.c[i]);
  return r;
}

CycloPadic cyclo_padic_sub(const CycloPadic& a, const CycloPadic& b) {
  check_same_ring(a.M, b.M);
  CycloPadic r = a;
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = padic_sub(r.c[i], b.c[i]);
  return r;
}

CycloPadic cyclo_padic_mul(const CycloPadic& a, const CycloPadic& b) {
  check_same_ring(a.M, b.M);
  long cap = best_cap(a, b);
  size_t n = a.c.size();
  std::vector<PadicNumber> v(2 * n, padic_prec_zero(a.prime, cap));
  std::vector<char> has(2 * n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (a.c[i].is_prec_zero() && a.c[i].val >= cap) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b.c[j].is_prec_zero() && b.c[j].val >= cap) continue;
      PadicNumber t = padic_mul(a.c[i], b.c[j]);
      if (has[i + j])
        v[i + j] = padic_add(v[i + j], t);
      else {
        v[i + j] = t;
        has[i + j] = 1;
      }
    }
  }
  return cyclo_padic_from_raw(a.M, a.prime, std::move(v), std::move(has), cap);
}

CycloPadic cyclo_padic_scale(const CycloPadic& a, const PadicNumber& x) {
  CycloPadic r = a;
  for (auto& c : r.c) c = padic_mul(c, x);
  return r;
}

bool cyclo_padic_agree(const CycloPadic& a, const CycloPadic& b) {
  if (a.M != b.M) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!padic_agree(a.c[i], b.c[i])) return false;
  return true;
}

PadicNumber padic_root_of_unity(long prime, long order, long relprec) {
  if (order <= 0 || (prime - 1) % order != 0)
    throw precondition_error("padic_root_of_unity: order must divide p - 1");
  long g = primitive_root(prime);
  PadicNumber w = teichmuller(padic_from_long(prime, g, relprec));
  return padic_pow(w, (prime - 1) / order);
}

PadicNumber padic_embed_cyclo(const CycloRational& a, long prime, long relprec) {
  if ((prime - 1) % a.M != 0)
    throw precondition_error("padic_embed_cyclo: need M | p - 1");
  PadicNumber z = padic_root_of_unity(prime, a.M, relprec);
  bool have = false;
  PadicNumber acc = padic_prec_zero(prime, relprec);
  for (long i = static_cast<long>(a.c.size()) - 1; i >= 0; --i) {
    if (have) acc = padic_mul(acc, z);
    if (a.c[i] == 0) continue;
    PadicNumber ci = padic_from_mpq(prime, a.c[i], relprec);
    acc = have ? padic_add(acc, ci) : ci;
    have = true;
  }
  if (!have) return padic_prec_zero(prime, relprec);
  return acc;
}

}  // namespace padl
