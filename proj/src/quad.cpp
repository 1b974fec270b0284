#include "padl/quad.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <tuple>

#include "padl/errors.hpp"

namespace padl {

namespace {

// trace dk, norm (dk^2 - dk)/4 of omega
mpz_class omega_norm(long dk) {
  mpz_class d(dk);
  return (d * d - d) / 4;
}

void egcd(long a, long b, long* g, long* s, long* t) {
  long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b) {
    long q = a / b;
    long r = a - q * b;
    a = b;
    b = r;
    long s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    long t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  *g = a;
  *s = s0;
  *t = t0;
}

long mod_inverse(long a, long m) {
  long g, s, t;
  egcd(a % m, m, &g, &s, &t);
  if (g != 1) throw precondition_error("mod_inverse: arguments not coprime");
  long r = s % m;
  if (r < 0) r += m;
  return r;
}

long mod_norm(long a, long m) {
  long r = a % m;
  if (r < 0) r += m;
  return r;
}

bool squarefree(long n) {
  n = std::labs(n);
  for (long f = 2; f * f <= n; ++f)
    if (n % (f * f) == 0) return false;
  return true;
}

// reduction loop on mpz coefficients; the result fits long for every
// discriminant the enumeration bound admits
void reduce_form(mpz_class& a, mpz_class& b, mpz_class& c, const mpz_class& D) {
  while (true) {
    mpz_class a2 = 2 * a;
    mpz_class r = b % a2;
    if (r > a) r -= a2;
    if (r <= -a) r += a2;
    b = r;
    c = (b * b - D) / (4 * a);
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (a == c && b < 0) b = -b;
}

}  // namespace

QuadOrder quad_order(long dk, long c) {
  if (dk >= 0) throw usage_error("quad_order: discriminant must be negative");
  long r = mod_norm(dk, 4);
  if (r != 0 && r != 1)
    throw usage_error("quad_order: discriminant must be 0 or 1 mod 4");
  if (r == 0) {
    long q = dk / 4;
    long qr = mod_norm(q, 4);
    if (qr == 0 || qr == 1 || !squarefree(q))
      throw usage_error("quad_order: discriminant is not fundamental");
  } else if (!squarefree(dk)) {
    throw usage_error("quad_order: discriminant is not fundamental");
  }
  if (c < 1) throw usage_error("quad_order: conductor must be positive");
  return QuadOrder{dk, c};
}

long quad_form_disc(const QuadForm& f) { return f.b * f.b - 4 * f.a * f.c; }

bool quad_form_eq(const QuadForm& f, const QuadForm& g) {
  return f.a == g.a && f.b == g.b && f.c == g.c;
}

QuadForm quad_reduce(QuadForm f) {
  mpz_class a(f.a), b(f.b), c(f.c);
  mpz_class D = b * b - 4 * a * c;
  reduce_form(a, b, c, D);
  return QuadForm{static_cast<long>(a.get_si()), static_cast<long>(b.get_si()),
                  static_cast<long>(c.get_si())};
}

QuadForm quad_principal_form(long disc) {
  if (mod_norm(disc, 4) == 0) return QuadForm{1, 0, -disc / 4};
  return QuadForm{1, 1, (1 - disc) / 4};
}

QuadForm quad_form_inverse(const QuadForm& f) {
  return quad_reduce(QuadForm{f.a, -f.b, f.c});
}

QuadForm quad_rep_coprime(const QuadForm& f, const mpz_class& m) {
  for (long s = 1; s <= 40; ++s) {
    for (long x = -s; x <= s; ++x) {
      for (long y = -s; y <= s; ++y) {
        if (std::max(std::labs(x), std::labs(y)) != s) continue;
        if (std::gcd(x, y) != 1) continue;
        long v = f.a * x * x + f.b * x * y + f.c * y * y;
        if (v == 0) continue;
        mpz_class g;
        mpz_class vz(v);
        mpz_gcd(g.get_mpz_t(), vz.get_mpz_t(), m.get_mpz_t());
        if (g != 1) continue;
        // complete (x, y) to the unimodular matrix [[x, u], [y, w]]
        long gg, s0, t0;
        egcd(x, y, &gg, &s0, &t0);
        long w = s0, u = -t0;
        long A = v;
        long B = 2 * (f.a * x * u + f.c * y * w) + f.b * (x * w + y * u);
        long C = f.a * u * u + f.b * u * w + f.c * w * w;
        return QuadForm{A, B, C};
      }
    }
  }
  throw precondition_error("quad_rep_coprime: no coprime representative found");
}

QuadForm quad_compose(const QuadForm& f0, const QuadForm& g0) {
  long D = quad_form_disc(f0);
  if (quad_form_disc(g0) != D)
    throw usage_error("quad_compose: discriminants differ");
  QuadForm f = quad_reduce(f0);
  QuadForm g = quad_rep_coprime(quad_reduce(g0), mpz_class(f.a));
  // concordant pair: B = f.b mod 2 f.a and B = g.b mod 2 g.a
  long delta = (g.b - f.b) / 2;
  long k = mod_norm(delta % g.a, g.a);
  k = (k * mod_inverse(mod_norm(f.a, g.a), g.a)) % g.a;
  mpz_class A = mpz_class(f.a) * g.a;
  mpz_class B = mpz_class(f.b) + 2 * mpz_class(f.a) * k;
  mpz_class C = (B * B - D) / (4 * A);
  reduce_form(A, B, C, mpz_class(D));
  return QuadForm{static_cast<long>(A.get_si()), static_cast<long>(B.get_si()),
                  static_cast<long>(C.get_si())};
}

QuadForm quad_form_pow(const QuadForm& f, long e) {
  long D = quad_form_disc(f);
  if (e < 0) return quad_form_pow(quad_form_inverse(f), -e);
  QuadForm r = quad_reduce(quad_principal_form(D));
  QuadForm b = quad_reduce(f);
  while (e) {
    if (e & 1) r = quad_compose(r, b);
    b = quad_compose(b, b);
    e >>= 1;
  }
  return r;
}

long ClassGroup::index_of(const QuadForm& f) const {
  auto cmp = [](const QuadForm& x, const QuadForm& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  };
  auto it = std::lower_bound(forms.begin(), forms.end(), f, cmp);
  if (it == forms.end() || !quad_form_eq(*it, f))
    throw precondition_error("ClassGroup::index_of: form is not reduced here");
  return static_cast<long>(it - forms.begin());
}

ClassGroup class_group(const QuadOrder& order, long bound) {
  long D = order.disc();
  if (-D > bound)
    throw precondition_error("class_group: discriminant exceeds the bound");
  ClassGroup cg;
  cg.order = order;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (mod_norm(b - D, 2) != 0) continue;
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      cg.forms.push_back(QuadForm{a, b, c});
    }
  }
  std::sort(cg.forms.begin(), cg.forms.end(),
            [](const QuadForm& x, const QuadForm& y) {
              return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
            });
  cg.id = cg.index_of(quad_reduce(quad_principal_form(D)));
  long h = static_cast<long>(cg.forms.size());
  auto table = std::make_shared<std::vector<long>>(h * h, -1);
  for (long i = 0; i < h; ++i)
    for (long j = i; j < h; ++j) {
      long r = cg.index_of(quad_compose(cg.forms[i], cg.forms[j]));
      (*table)[i * h + j] = r;
      (*table)[j * h + i] = r;
    }
  cg.group = abgroup_analyze(
      h, cg.id, [table, h](long i, long j) { return (*table)[i * h + j]; });
  return cg;
}

long class_number_by_formula(const QuadOrder& order) {
  QuadOrder maximal{order.dk, 1};
  long h1 = static_cast<long>(class_group(maximal).forms.size());
  if (order.c == 1) return h1;
  mpq_class q(h1 * order.c);
  long c = order.c;
  mpz_class d(order.dk);
  for (long l = 2; c > 1; l += (l == 2 ? 1 : 2)) {
    if (c % l != 0) continue;
    while (c % l == 0) c /= l;
    int kron = mpz_kronecker_si(d.get_mpz_t(), l);
    q *= mpq_class(l - kron, l);
  }
  long u = order.dk == -3 ? 3 : order.dk == -4 ? 2 : 1;
  q /= u;
  q.canonicalize();
  if (q.get_den() != 1)
    throw precondition_error("class_number_by_formula: non-integral result");
  return static_cast<long>(q.get_num().get_si());
}

Splitting splitting_type(long dk, long p) {
  if (p < 3 || p % 2 == 0)
    throw precondition_error("splitting_type: p must be an odd prime");
  mpz_class d(dk);
  int k = mpz_kronecker_si(d.get_mpz_t(), p);
  if (k > 0) return Splitting::split;
  if (k < 0) return Splitting::inert;
  return Splitting::ramified;
}

HeegnerIdeal heegner_ideal(long dk, long n) {
  if (n < 1) throw usage_error("heegner_ideal: norm must be positive");
  HeegnerIdeal hi;
  hi.dk = dk;
  hi.n = n;
  if (n == 1) {
    hi.ok = true;
    return hi;
  }
  long nrm = static_cast<long>(omega_norm(dk).get_si());
  long t = 0, mod = 1;
  long rest = n;
  for (long l = 2; rest > 1; l += (l == 2 ? 1 : 2)) {
    if (l * l > rest) l = rest;  // prime tail
    if (rest % l != 0) continue;
    long pe = 1;
    long e = 0;
    while (rest % l == 0) {
      rest /= l;
      pe *= l;
      ++e;
    }
    long root = -1;
    for (long r = 0; r < pe; ++r) {
      long v = mod_norm((r * r - dk * r + nrm) % pe, pe);
      if (v == 0) {
        root = r;
        break;
      }
    }
    if (root < 0) {
      mpz_class d(dk);
      int kron = mpz_kronecker_si(d.get_mpz_t(), l);
      if (kron == -1)
        hi.reason = "prime " + std::to_string(l) + " is inert";
      else if (kron == 0 && e >= 2)
        hi.reason = "ramified prime " + std::to_string(l) + " divides to a square";
      else
        hi.reason = "no residue class at " + std::to_string(l);
      hi.ok = false;
      return hi;
    }
    // CRT the local root into t mod (mod * pe)
    long inv = mod_inverse(mod_norm(mod, pe), pe);
    long k = mod_norm(((root - t) % pe) * inv % pe, pe);
    t += mod * k;
    mod *= pe;
  }
  hi.t = t;
  hi.ok = true;
  return hi;
}

long heegner_residue(const HeegnerIdeal& heeg, const mpz_class& x,
                     const mpz_class& y) {
  if (!heeg.ok) throw precondition_error("heegner_residue: no ideal");
  mpz_class r = (x + y * heeg.t) % heeg.n;
  if (r < 0) r += heeg.n;
  return static_cast<long>(r.get_si());
}

std::pair<mpz_class, mpz_class> quad_mul_elem(
    long dk, const std::pair<mpz_class, mpz_class>& u,
    const std::pair<mpz_class, mpz_class>& v) {
  mpz_class nrm = omega_norm(dk);
  return {u.first * v.first - u.second * v.second * nrm,
          u.first * v.second + u.second * v.first + u.second * v.second * dk};
}

QuadIdeal ideal_from_gens(
    long dk, const std::vector<std::pair<mpz_class, mpz_class>>& gens) {
  mpz_class nrm = omega_norm(dk);
  std::vector<std::pair<mpz_class, mpz_class>> all = gens;
  for (const auto& g : gens)
    all.push_back({-g.second * nrm, g.first + g.second * dk});
  // second basis vector: gcd of omega coordinates with a tracked combination
  mpz_class c = 0, bx = 0;
  for (const auto& g : all) {
    if (g.second == 0) continue;
    mpz_class gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c.get_mpz_t(),
               g.second.get_mpz_t());
    bx = s * bx + t * g.first;
    c = gg;
  }
  if (c == 0) throw precondition_error("ideal_from_gens: span has rank < 2");
  // first basis vector: gcd of the integer parts after clearing omega
  mpz_class a = 0;
  for (const auto& g : all) {
    mpz_class q = g.second / c;
    mpz_class x = g.first - q * bx;
    mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), x.get_mpz_t());
  }
  if (a == 0) throw precondition_error("ideal_from_gens: span has rank < 2");
  mpz_class b = bx % a;
  if (b < 0) b += a;
  QuadIdeal I;
  I.dk = dk;
  I.a = a;
  I.b = b;
  I.c = c;
  return I;
}

QuadIdeal ideal_mul(const QuadIdeal& x, const QuadIdeal& y) {
  if (x.dk != y.dk) throw usage_error("ideal_mul: fields differ");
  std::vector<std::pair<mpz_class, mpz_class>> gens;
  gens.push_back({x.a * y.a, 0});
  gens.push_back({x.a * y.b, x.a * y.c});
  gens.push_back({y.a * x.b, y.a * x.c});
  gens.push_back(quad_mul_elem(x.dk, {x.b, x.c}, {y.b, y.c}));
  return ideal_from_gens(x.dk, gens);
}

QuadIdeal ideal_conj(const QuadIdeal& x) {
  // conj(omega) = dk - omega
  return ideal_from_gens(x.dk, {{x.a, 0}, {x.b + x.c * x.dk, -x.c}});
}

mpz_class ideal_norm(const QuadIdeal& x) { return x.a * x.c; }

bool ideal_contains(const QuadIdeal& x, const mpz_class& u,
                    const mpz_class& v) {
  if (v % x.c != 0) return false;
  mpz_class q = v / x.c;
  return (u - q * x.b) % x.a == 0;
}

bool ideal_eq(const QuadIdeal& x, const QuadIdeal& y) {
  return x.dk == y.dk && x.a == y.a && x.b == y.b && x.c == y.c;
}

QuadIdeal form_to_ideal(const QuadOrder& order, const QuadForm& f) {
  if (quad_form_disc(f) != order.disc())
    throw usage_error("form_to_ideal: discriminant mismatch");
  if (std::gcd(f.a, order.c) != 1 || f.a <= 0)
    throw precondition_error(
        "form_to_ideal: leading coefficient must be positive and prime to the conductor");
  // b + c dk is even, so this is integral
  mpz_class m0 = (-mpz_class(f.b) - mpz_class(order.c) * order.dk) / 2;
  QuadIdeal I = ideal_from_gens(order.dk, {{f.a, 0}, {m0, order.c}});
  if (ideal_norm(I) != f.a)
    throw precondition_error("form_to_ideal: norm does not match the form");
  return I;
}

bool ideal_principal_gen(const QuadIdeal& I, mpz_class* gx, mpz_class* gy) {
  mpz_class target = ideal_norm(I);
  mpz_class nrm = omega_norm(I.dk);
  // N(x + y omega) = x^2 + dk xy + nrm y^2, minimized in x at |dk| y^2 / 4
  mpz_class ycap2 = (4 * target) / (-I.dk);
  mpz_class yb;
  mpz_sqrt(yb.get_mpz_t(), ycap2.get_mpz_t());
  for (mpz_class y = 0; y <= yb; ++y) {
    mpz_class disc = y * y * I.dk + 4 * target;
    if (disc < 0) break;
    if (mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    for (int sign = 0; sign < 2; ++sign) {
      mpz_class num = -mpz_class(I.dk) * y + (sign ? -s : s);
      if (num % 2 != 0) continue;
      mpz_class x = num / 2;
      if (!ideal_contains(I, x, y)) continue;
      if (x * x + I.dk * x * y + nrm * y * y != target) continue;
      if (gx) *gx = x;
      if (gy) *gy = y;
      return true;
    }
  }
  return false;
}

}  // namespace padl
