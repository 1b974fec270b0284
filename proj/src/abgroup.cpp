#include "padl/abgroup.hpp"

#include <numeric>
#include <utility>

#include "padl/errors.hpp"

namespace padl {

namespace {

long order_via(const std::function<long(long, long)>& mul, long id, long n,
               long x) {
  long t = 1;
  long y = x;
  while (y != id) {
    y = mul(y, x);
    ++t;
    if (t > n)
      throw precondition_error(
          "abgroup_analyze: iterate never returns, mul is not a group law");
  }
  return t;
}

}  // namespace

AbGroup abgroup_analyze(long n, long id, std::function<long(long, long)> mul) {
  if (n < 1 || id < 0 || id >= n)
    throw usage_error("abgroup_analyze: need 1 <= n and id inside 0..n-1");
  AbGroup g;
  g.n = n;
  g.id = id;
  g.mul = std::move(mul);
  g.coords.assign(n, {});
  std::vector<char> in(n, 0);
  in[id] = 1;
  std::vector<long> members = {id};
  while (static_cast<long>(members.size()) < n) {
    // element of largest order in the quotient by the span so far
    long best = -1;
    long best_ord = 0;
    for (long x = 0; x < n; ++x) {
      if (in[x]) continue;
      long t = 1;
      long y = x;
      while (!in[y]) {
        y = g.mul(y, x);
        ++t;
        if (t > n)
          throw precondition_error(
              "abgroup_analyze: iterate never meets the span, mul is not a group law");
      }
      if (t > best_ord) {
        best_ord = t;
        best = x;
      }
    }
    // some translate of best by the span has full order best_ord in the
    // whole group; its cyclic span then meets the span only in the identity
    long lift = -1;
    for (long s : members) {
      long cand = g.mul(best, s);
      if (order_via(g.mul, id, n, cand) == best_ord) {
        lift = cand;
        break;
      }
    }
    if (lift < 0)
      throw precondition_error(
          "abgroup_analyze: no independent lift, mul is not an abelian group law");
    long gi = static_cast<long>(g.gen.size());
    g.gen.push_back(lift);
    g.ord.push_back(best_ord);
    std::vector<long> grown = members;
    long pw = lift;
    for (long e = 1; e < best_ord; ++e) {
      for (long s : members) {
        long x = g.mul(s, pw);
        if (in[x])
          throw precondition_error(
              "abgroup_analyze: span collision, mul is not an abelian group law");
        in[x] = 1;
        g.coords[x] = g.coords[s];
        g.coords[x].resize(gi, 0);
        g.coords[x].push_back(e);
        grown.push_back(x);
      }
      pw = g.mul(pw, lift);
    }
    members.swap(grown);
  }
  for (long x = 0; x < n; ++x) g.coords[x].resize(g.gen.size(), 0);
  return g;
}

long abgroup_order_of(const AbGroup& g, long x) {
  long m = 1;
  for (size_t i = 0; i < g.gen.size(); ++i) {
    long e = g.coords[x][i];
    m = std::lcm(m, g.ord[i] / std::gcd(g.ord[i], e));
  }
  return m;
}

long abgroup_pow(const AbGroup& g, long x, long e) {
  long m = abgroup_order_of(g, x);
  e %= m;
  if (e < 0) e += m;
  long r = g.id;
  long b = x;
  while (e) {
    if (e & 1) r = g.mul(r, b);
    b = g.mul(b, b);
    e >>= 1;
  }
  return r;
}

long abgroup_from_coords(const AbGroup& g, const std::vector<long>& e) {
  long r = g.id;
  for (size_t i = 0; i < g.gen.size() && i < e.size(); ++i)
    r = g.mul(r, abgroup_pow(g, g.gen[i], e[i]));
  return r;
}

long abgroup_inv(const AbGroup& g, long x) {
  std::vector<long> e = g.coords[x];
  for (size_t i = 0; i < e.size(); ++i) e[i] = e[i] ? g.ord[i] - e[i] : 0;
  return abgroup_from_coords(g, e);
}

long abgroup_exponent(const AbGroup& g) {
  long m = 1;
  for (long o : g.ord) m = std::lcm(m, o);
  return m;
}

}  // namespace padl
