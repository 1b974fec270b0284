#include "padl/dirichlet.hpp"

#include <numeric>

namespace padl {

static std::vector<std::pair<long, long>> factorize(long n) {
  std::vector<std::pair<long, long>> out;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    long e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

static long pow_mod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

const UnitGroup& unit_group(long N) {
  static std::map<long, UnitGroup> cache;
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  if (N <= 0) throw usage_error("unit_group: N must be positive");
  UnitGroup G;
  G.N = N;
  for (auto [p, e] : factorize(N)) {
    long pe = 1;
    for (long i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        UnitGroupFactor f;
        f.pe = 4;
        f.gen = 3;
        f.ord = 2;
        f.dlog.assign(4, -1);
        f.dlog[1] = 0;
        f.dlog[3] = 1;
        G.factors.push_back(std::move(f));
        continue;
      }
      // 2^e with e >= 3: <-1> x <5>
      UnitGroupFactor fs, ft;
      fs.pe = ft.pe = pe;
      fs.gen = pe - 1;
      fs.ord = 2;
      ft.gen = 5;
      ft.ord = pe / 4;
      fs.dlog.assign(pe, -1);
      ft.dlog.assign(pe, -1);
      for (long s = 0; s < 2; ++s)
        for (long t = 0; t < ft.ord; ++t) {
          long r = (pow_mod(pe - 1, s, pe) * pow_mod(5, t, pe)) % pe;
          fs.dlog[r] = s;
          ft.dlog[r] = t;
        }
      G.factors.push_back(std::move(fs));
      G.factors.push_back(std::move(ft));
      continue;
    }
    long g = primitive_root(p);
    if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;
    UnitGroupFactor f;
    f.pe = pe;
    f.gen = g % pe;
    f.ord = (pe / p) * (p - 1);
    f.dlog.assign(pe, -1);
    long x = 1;
    for (long k = 0; k < f.ord; ++k) {
      f.dlog[x] = k;
      x = (x * f.gen) % pe;
    }
    G.factors.push_back(std::move(f));
  }
  G.exponent = 1;
  for (const auto& f : G.factors) G.exponent = std::lcm(G.exponent, f.ord);
  return cache.emplace(N, std::move(G)).first->second;
}

std::vector<long> unit_dlog(long N, long n) {
  const UnitGroup& G = unit_group(N);
  long r = ((n % N) + N) % N;
  if (std::gcd(r, N) != 1) throw precondition_error("unit_dlog: not a unit");
  std::vector<long> out;
  out.reserve(G.factors.size());
  for (const auto& f : G.factors) out.push_back(f.dlog[r % f.pe]);
  return out;
}

DirichletChar dirichlet_trivial(long N) {
  DirichletChar c;
  c.modulus = N;
  c.exps.assign(unit_group(N).factors.size(), 0);
  return c;
}

std::vector<DirichletChar> dirichlet_all(long N) {
  const UnitGroup& G = unit_group(N);
  std::vector<DirichletChar> out;
  out.push_back(dirichlet_trivial(N));
  for (size_t i = 0; i < G.factors.size(); ++i) {
    size_t base = out.size();
    for (long e = 1; e < G.factors[i].ord; ++e)
      for (size_t j = 0; j < base; ++j) {
        DirichletChar c = out[j];
        c.exps[i] = e;
        out.push_back(std::move(c));
      }
  }
  return out;
}

DirichletChar dirichlet_mul(const DirichletChar& a, const DirichletChar& b) {
  if (a.modulus != b.modulus) throw precondition_error("modulus mismatch");
  const UnitGroup& G = unit_group(a.modulus);
  DirichletChar c = a;
  for (size_t i = 0; i < c.exps.size(); ++i)
    c.exps[i] = (a.exps[i] + b.exps[i]) % G.factors[i].ord;
  return c;
}

DirichletChar dirichlet_conj(const DirichletChar& a) {
  const UnitGroup& G = unit_group(a.modulus);
  DirichletChar c = a;
  for (size_t i = 0; i < c.exps.size(); ++i)
    c.exps[i] = (G.factors[i].ord - a.exps[i]) % G.factors[i].ord;
  return c;
}

std::optional<long> dirichlet_exponent(const DirichletChar& chi, long n) {
  const UnitGroup& G = unit_group(chi.modulus);
  long r = ((n % G.N) + G.N) % G.N;
  if (std::gcd(r, G.N) != 1) return std::nullopt;
  std::vector<long> d = unit_dlog(G.N, r);
  long t = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    long step = G.exponent / G.factors[i].ord;
    t = (t + d[i] % G.factors[i].ord * chi.exps[i] % G.exponent * step) %
        G.exponent;
  }
  return t;
}

CycloRational dirichlet_value(const DirichletChar& chi, long n, long M) {
  const UnitGroup& G = unit_group(chi.modulus);
  if (M % G.exponent != 0)
    throw precondition_error("dirichlet_value: group exponent must divide M");
  auto t = dirichlet_exponent(chi, n);
  if (!t) return cyclo_zero(M);
  return cyclo_zeta_pow(M, *t * (M / G.exponent));
}

CycloRational dirichlet_value_min(const DirichletChar& chi, long n) {
  long ord = dirichlet_order(chi);
  auto t = dirichlet_exponent(chi, n);
  if (!t) return cyclo_zero(ord);
  long E = unit_group(chi.modulus).exponent;
  return cyclo_zeta_pow(ord, *t * ord / E);
}

long dirichlet_order(const DirichletChar& chi) {
  const UnitGroup& G = unit_group(chi.modulus);
  long ord = 1;
  for (size_t i = 0; i < chi.exps.size(); ++i) {
    long d = G.factors[i].ord / std::gcd(G.factors[i].ord, chi.exps[i]);
    ord = std::lcm(ord, d);
  }
  return ord;
}

PadicNumber dirichlet_value_padic(const DirichletChar& chi, long n, long p,
                                  long relprec) {
  long ord = dirichlet_order(chi);
  if ((p - 1) % ord != 0)
    throw precondition_error("dirichlet_value_padic: order must divide p - 1");
  auto t = dirichlet_exponent(chi, n);
  if (!t) return padic_prec_zero(p, relprec);
  long E = unit_group(chi.modulus).exponent;
  // chi(n) has order dividing ord, so t*ord/E is integral
  long e = *t * ord / E;
  return padic_pow(padic_root_of_unity(p, ord, relprec), e);
}

bool dirichlet_is_odd(const DirichletChar& chi) {
  auto t = dirichlet_exponent(chi, -1);
  return t && *t != 0;
}

long dirichlet_conductor(const DirichletChar& chi) {
  long N = chi.modulus;
  for (long f = 1; f <= N; ++f) {
    if (N % f) continue;
    bool ok = true;
    for (long a = 1 + f; a <= N && ok; a += f) {
      if (std::gcd(a, N) != 1) continue;
      auto t = dirichlet_exponent(chi, a);
      if (*t != 0) ok = false;
    }
    if (ok) return f;
  }
  return N;
}

bool dirichlet_is_primitive(const DirichletChar& chi) {
  return dirichlet_conductor(chi) == chi.modulus;
}

DirichletChar dirichlet_restrict(const DirichletChar& chi, long f) {
  long N = chi.modulus;
  if (N % f != 0 || f % dirichlet_conductor(chi) != 0)
    throw precondition_error("dirichlet_restrict: conductor must divide f | N");
  const UnitGroup& Gf = unit_group(f);
  long E = unit_group(N).exponent;
  DirichletChar out;
  out.modulus = f;
  for (const auto& fac : Gf.factors) {
    // lift the generator to a unit mod N in the same residue class mod f
    long a = fac.gen;
    while (std::gcd(a, N) != 1) a += f;
    long t = *dirichlet_exponent(chi, a);
    if ((t * fac.ord) % E != 0)
      throw precondition_error("dirichlet_restrict: not defined mod f");
    out.exps.push_back(t * fac.ord / E % fac.ord);
  }
  return out;
}

mpq_class bernoulli_number(long k) {
  static std::vector<mpq_class> cache{mpq_class(1)};
  if (k < 0) throw usage_error("bernoulli_number: negative index");
  for (long m = static_cast<long>(cache.size()); m <= k; ++m) {
    mpq_class s = 0;
    for (long j = 0; j < m; ++j) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), m + 1, j);
      s += mpq_class(b) * cache[j];
    }
    cache.push_back(-s / (m + 1));
  }
  return cache[k];
}

static mpq_class bernoulli_poly_at(long k, const mpq_class& x) {
  mpq_class s = 0, xp = 1;
  for (long j = k; j >= 0; --j) {
    // term binom(k, j) B_j x^(k-j), accumulated with ascending powers of x
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), k, j);
    s += mpq_class(b) * bernoulli_number(j) * xp;
    if (j > 0) xp *= x;
  }
  return s;
}

CycloRational gen_bernoulli(long k, const DirichletChar& chi) {
  if (k < 1) throw usage_error("gen_bernoulli: k must be positive");
  long N = chi.modulus;
  long E = unit_group(N).exponent, ord = dirichlet_order(chi);
  std::map<long, mpq_class> buckets;
  for (long a = 1; a <= N; ++a) {
    if (std::gcd(a, N) != 1) continue;
    long t = *dirichlet_exponent(chi, a);
    buckets[t * ord / E] += bernoulli_poly_at(k, mpq_class(a, N));
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), N, k - 1);
  return cyclo_scale(cyclo_from_exponents(ord, buckets), mpq_class(scale));
}

CycloRational gen_bernoulli_L(long k, const DirichletChar& chi) {
  return cyclo_scale(gen_bernoulli(k, chi), mpq_class(-1, k));
}

CycloRational gauss_sum(const DirichletChar& chi) {
  if (!dirichlet_is_primitive(chi))
    throw precondition_error("gauss_sum: character must be primitive");
  long N = chi.modulus;
  long E = unit_group(N).exponent, ord = dirichlet_order(chi);
  long L = std::lcm(N, ord);
  std::map<long, mpq_class> buckets;
  for (long a = 1; a <= N; ++a) {
    if (std::gcd(a, N) != 1) continue;
    long t = *dirichlet_exponent(chi, a);
    buckets[t * ord / E * (L / ord) + a * (L / N)] += 1;
  }
  return cyclo_from_exponents(L, buckets);
}

}  // namespace padl
