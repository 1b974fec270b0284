#pragma once

#include <optional>
#include <vector>

#include "padl/dirichlet.hpp"
#include "padl/weight.hpp"

namespace padl {

// q-expansion with p-adic coefficients, indices 0..nq().  weight_k and neben
// are carried metadata: the Hecke operator and the eigen depletion need the
// classical weight and the nebentype (whose modulus is the tame level).
struct QExpansion {
  long prime = 0;
  std::vector<PadicNumber> a;
  std::optional<long> weight_k;
  std::optional<DirichletChar> neben;

  long nq() const { return static_cast<long>(a.size()) - 1; }
};

QExpansion qexp_zero(long prime, long nq, long absprec);

// a_n <- a_{pn}; output range floor(nq/p)
QExpansion qexp_U(const QExpansion& f);
// a_{pn} <- a_n, other coefficients exactly zero; output range p*nq,
// truncated to cap when cap >= 0
QExpansion qexp_V(const QExpansion& f, long cap = -1);

QExpansion qexp_add(const QExpansion& f, const QExpansion& g);
QExpansion qexp_sub(const QExpansion& f, const QExpansion& g);
QExpansion qexp_scale(const QExpansion& f, const PadicNumber& c);

// U + eps(p) p^(k-1) V; needs weight and nebentype tags, p prime to the level
QExpansion qexp_Tp(const QExpansion& f);

// removal of the coefficients at indices divisible by p (index 0 included);
// each removed coefficient leaves a precision-zero slot at its own cap
QExpansion qexp_deplete(const QExpansion& f);
bool qexp_is_depleted(const QExpansion& f);

// same removal through the eigenform recipe 1 - a_p V + eps(p) p^(k-1) V^2;
// checks the T_p eigenvalue a_p on the available range first
QExpansion qexp_deplete_eigen(const QExpansion& f);

// a_n <- n a_n
QExpansion qexp_theta(const QExpansion& f);
// a_n <- nu(n) n^(-j) a_n on a depleted expansion; the n prime to p keep
// their full precision since nu(n) and n^(-j) are units
QExpansion qexp_theta_weight(const QExpansion& f, const Weight& nu, long j);

// a_n <- chi(n) a_n through the fixed Teichmuller embedding of chi values
QExpansion qexp_twist(const QExpansion& f, const DirichletChar& chi);

// Eisenstein series L(1-k, eps) + 2 sum_{n>=1} sigma_{k-1,eps}(n) q^n.
// Preconditions: eps(-1) = (-1)^k, k >= 1, and (k, eps) != (2, trivial);
// the order of eps must divide p - 1 for the coefficient embedding.
QExpansion eisenstein(long prime, long k, const DirichletChar& eps, long nq,
                      long relprec);

bool qexp_agree(const QExpansion& f, const QExpansion& g);
long qexp_min_shared_absprec(const QExpansion& f, const QExpansion& g);

}  // namespace padl
