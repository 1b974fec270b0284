#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padl/cyclo.hpp"
#include "padl/dirichlet.hpp"
#include "padl/quad.hpp"
#include "padl/weight.hpp"

namespace padl {

// Residue size q of the distinguished prime: p^2 when p is inert, p when
// ramified.  A split prime has no single residue pairing and throws.
long residue_field_size(long dk, long p);

// Algebraic Hecke character over the group context h.  The data is a
// root-of-unity character of the finite group (exponents fexp against the
// cyclic decomposition dec) together with an integer infinity type (n, m).
// On a principal ideal with generator alpha, prime to the support, the value
// is eps(residue of alpha) * iota(alpha)^(-n) * iota(conj alpha)^(-m); the
// nebentype eps is forced to be the restriction of the finite part to the
// residue-unit kernel, and (n, m, eps) must pair trivially with the torsion
// unit of the order (hecke_unit_consistent).
//
// Root-of-unity comparisons use one fixed compatible system: zeta_m is
// zeta_M^(M/m) throughout, and the embedding sends the distinguished torsion
// unit 2 + omega (discriminants -3 and -4 at conductor 1) to the canonical
// generator of its order.  The conjugate convention is reached by the
// conjugate Heegner root dk - t together with swapped type slots, so no
// second embedding knob exists here.
//
// The deformation tags move the weight coordinates (n + m, -m) by an exact
// integer plus an analytic deviation while fixing every class mod q - 1.
// Class values of a deformed character are the base values known to absolute
// precision def_M only; principal values with integer tags stay exact.  All
// tags are zero on a classical character.
struct HeckeChar {
  HGroup h;
  AbGroup dec;             // hgroup_analyze(h), fixed at construction
  long inf_n = 0;
  long inf_m = 0;
  DirichletChar eps;       // modulus h.heeg.n
  std::vector<long> fexp;  // exponent on dec.gen[i], reduced mod dec.ord[i]
  long def_m = 0;          // integer deformation of n + m, multiple of q - 1
  long def_r = 0;          // integer deformation of -m, multiple of q - 1
  PadicNumber dev_m;       // analytic deformation parts in p^(def_M - 1) Z_p;
  PadicNumber dev_r;       // precision zero encodes an exact 0
  long def_M = 0;          // deformation proximity exponent, 0 when classical
  long cond_p = 0;         // conductor exponent at p of the finite part
};

// Whether (n, m, eps) is trivial on the torsion unit u of the order:
// eps(residue of u) * zeta_w^(m - n) = 1 with w the order of u.  This is
// exactly well-definedness of the principal formula, since u generates the
// unit ambiguity of a generator.  On failure *reason names the unit.
bool hecke_unit_consistent(const HGroup& h, long n, long m,
                           const DirichletChar& eps,
                           std::string* reason = nullptr);

// Validating constructor; throws precondition_error when the restriction to
// the residue-unit kernel differs from eps or the unit pairing fails.  The
// conductor exponent at p is computed here and cached on the result.
HeckeChar hecke_char(const HGroup& h, long n, long m, const DirichletChar& eps,
                     const std::vector<long>& fexp);

// The norm-type character: infinity type (1, 1), trivial nebentype, trivial
// finite part.  Ideal values are 1/N(alpha), avatar values are N(alpha).
HeckeChar hecke_norm_char(const HGroup& h);

// All characters with infinity type (k + j, -j), k >= 1, j >= 0, whose
// kernel restriction equals eps.  Empty when the unit pairing rejects the
// type; otherwise one character per extension of eps across the group, that
// is |H| / phi(n) of them, in lexicographic fexp order.
std::vector<HeckeChar> enumerate_chars(const HGroup& h, long k, long j,
                                       const DirichletChar& eps);

// Exponent e of the finite part at a class, value zeta_E^e with E the
// exponent of the decomposition.
long hecke_finite_exponent(const HeckeChar& chi, long hclass);

// Finite-part value on a class of the group, as a root of unity in the
// cyclotomic coefficient ring of modulus E.  For a deformed character the
// coefficients are capped at absolute precision def_M, which is all that is
// known of the deformed class value.
CycloPadic char_eval_class(const HeckeChar& chi, long hclass, long relprec);

// Value on the principal ideal generated by x + y omega.  Realized exactly
// when the infinity part collapses into the cyclotomic ring: y = 0 (rational
// generator, value eps * x^-(n+m)) or n = m (norm powers).  Requires the
// generator prime to the support n * c * p and the deformation tags integer.
CycloPadic char_eval(const HeckeChar& chi, const mpz_class& x,
                     const mpz_class& y, long relprec);

// chi times the j-th power of the norm character: infinity type shifts by
// (j, j), finite part and nebentype unchanged.
HeckeChar twist_norm(const HeckeChar& chi, long j);

// Cached least t such that the finite part is trivial on every class in the
// image of 1 + p^t local units; 0 when the group carries no local level.
long conductor_ppart(const HeckeChar& chi);

// Coordinates of the character in the weight parametrization: the pair
// (n + m, -m) read mod q - 1 (untouched by deformation) and p-adically
// (deformation folded in), plus the weight-space point of the first slot
// through the tame restriction mod p - 1.  Throws for a split prime.
struct WeightMapImage {
  long qm1 = 0;
  long mbar = 0;
  long rbar = 0;
  PadicNumber m_an;
  PadicNumber r_an;
  Weight w;
};

WeightMapImage weight_map(const HeckeChar& chi, long relprec);

// The weight through which the avatar acts on rational local units; its
// value at r is the avatar value at r.
Weight hecke_avatar_weight(const HeckeChar& chi, long relprec);

// Avatar value on a rational p-local unit r.  The local exponents enter
// with positive sign, so the norm character gives r^2 here and 1/r^2 on the
// ideal (r).
PadicNumber avatar_eval(const HeckeChar& chi, long r, long relprec);

// Avatar value on the local unit x + y omega for a character with exact
// integer tags: the finite-part factor at the class of the datum in W times
// the local power, the latter realized under the same collapse rule as
// char_eval (y = 0 or n = m).
CycloPadic avatar_eval_local(const HeckeChar& chi, const mpz_class& x,
                             const mpz_class& y, long relprec);

// Deformation of the weight coordinates by (dm_int + dm_dev, dr_int +
// dr_dev) at proximity exponent M >= 2.  The integer parts must be
// multiples of q - 1 and each full deviation must sit in p^(M - 1) Z_p;
// deviations of precision zero are exact zeros.  Deforming by zero returns
// chi itself; two deformations compose additively with the smaller M.
HeckeChar deform_char(const HeckeChar& chi, long dm_int,
                      const PadicNumber& dm_dev, long dr_int,
                      const PadicNumber& dr_dev, long M);

// For a rational prime l prime to the support, checks that the class of the
// ideal (l) pairs with the finite part exactly through the nebentype:
// finite value at the kernel class of l equals eps(l).  The full ideal
// value is then eps(l) * l^-(n+m); the adelic restriction statement carries
// the archimedean factor, which flips the sign of the norm exponent there.
bool hecke_rational_check(const HeckeChar& chi, long ell);

}  // namespace padl
