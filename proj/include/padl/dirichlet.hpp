#pragma once

#include <optional>
#include <vector>

#include "padl/cyclo.hpp"

namespace padl {

// Multiplicative structure of (Z/N)^* as a product of cyclic pieces with
// fixed generators: smallest primitive root for odd prime powers, 3 for the
// modulus 4 piece, the pair -1, 5 for higher powers of two.  The fixed choice
// makes character labels deterministic across runs.
struct UnitGroupFactor {
  long pe = 1;                 // prime power piece of the modulus
  long gen = 1;                // generator, lifted mod pe
  long ord = 1;
  std::vector<long> dlog;      // dlog[r] for r mod pe, -1 on non-units
};

struct UnitGroup {
  long N = 1;
  std::vector<UnitGroupFactor> factors;
  long exponent = 1;  // lcm of factor orders
};

const UnitGroup& unit_group(long N);
std::vector<long> unit_dlog(long N, long n);  // coordinates along the factors

// Character of (Z/N)^*: exps[i] is the exponent of chi on generator i, taken
// mod the factor order.
struct DirichletChar {
  long modulus = 1;
  std::vector<long> exps;
};

DirichletChar dirichlet_trivial(long N);
std::vector<DirichletChar> dirichlet_all(long N);
DirichletChar dirichlet_mul(const DirichletChar& a, const DirichletChar& b);
DirichletChar dirichlet_conj(const DirichletChar& a);

// exponent t with chi(n) = zeta_E^t, E the group exponent; nullopt on
// non-units
std::optional<long> dirichlet_exponent(const DirichletChar& chi, long n);
// value in Q(zeta_M); requires the group exponent to divide M
CycloRational dirichlet_value(const DirichletChar& chi, long n, long M);
// value in the smallest ring Q(zeta_order(chi))
CycloRational dirichlet_value_min(const DirichletChar& chi, long n);
// value in Q_p through the fixed Teichmuller embedding; order must divide p-1
PadicNumber dirichlet_value_padic(const DirichletChar& chi, long n, long p,
                                  long relprec);

long dirichlet_order(const DirichletChar& chi);
bool dirichlet_is_odd(const DirichletChar& chi);  // chi(-1) = -1
long dirichlet_conductor(const DirichletChar& chi);
bool dirichlet_is_primitive(const DirichletChar& chi);
// the primitive character of modulus f inducing chi; f must be a multiple of
// the conductor dividing the modulus
DirichletChar dirichlet_restrict(const DirichletChar& chi, long f);

// Generalized Bernoulli number B_{k,chi} for the modulus as given, computed
// from Bernoulli polynomials.  Lives in Q(zeta_order(chi)).
CycloRational gen_bernoulli(long k, const DirichletChar& chi);
// L(1-k, chi) = -B_{k,chi}/k for k >= 1
CycloRational gen_bernoulli_L(long k, const DirichletChar& chi);
mpq_class bernoulli_number(long k);

// Gauss sum of a primitive character, exact in Q(zeta_lcm(N, order))
CycloRational gauss_sum(const DirichletChar& chi);

}  // namespace padl
