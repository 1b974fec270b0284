#pragma once

#include <string>
#include <vector>

#include "padl/cyclo.hpp"
#include "padl/hecke.hpp"
#include "padl/qexp.hpp"
#include "padl/valuation.hpp"

namespace padl {

// Evaluation data for the finite-sum assembly: one value per class of the
// extension group, computed at a fixed weight index nu.  The geometric
// evaluation at CM points is behind this interface; the assembly code only
// relies on the context fields and the per-class values.
struct CMOracle {
  long prime = 0;
  Splitting cas = Splitting::inert;
  long level_n = 0;
  long weight_k = 0;
  long nu = 0;
  std::vector<PadicNumber> values;
  std::string id;
};

// Seeded synthetic oracle with unit values mod p^relprec, one per class.
CMOracle mock_oracle(const HGroup& h, long weight_k, long nu,
                     unsigned long seed, long relprec);

// A finite-sum value graded by an implicit period: the pair stands for
// value * period^omega_exp.  The period itself is never materialized; its
// valuation is what the ledger tracks.  certificate is the least coordinate
// absprec of the sum.
struct LValue {
  CycloPadic value;
  mpq_class omega_exp;
  long certificate = 0;
  std::string provenance;
};

// Normalized sum (1/phi(N)) sum_a finite(chi)^(-1)(a) * oracle(a) over the
// extension group, graded by omega_exp = k + 2 nu.  Context must match and
// the deformation tags must be integers; no admissibility gate, so the
// class-number collapse for a trivial finite part is visible here.
LValue lp_raw_sum(const HeckeChar& chi, const CMOracle& o, long relprec);

// lp_raw_sum behind the admissibility gate: the conductor p-part must reach
// the minimal level of the radius table for the case.
LValue lp_value(const HeckeChar& chi, const CMOracle& o, long relprec);

// Remark-style well-posedness surrogate: multiplying every summand by the
// weight avatar at r and translating the class by the principal class of
// (r) leaves the sum fixed, for r = 1 mod N prime to p.
bool lp_well_posed(const HeckeChar& chi, const CMOracle& o, long r,
                   long relprec);

// Sum of finite(chi)^(-1) over the classes of local units congruent to
// 1 mod p^m, for a character claimed to have conductor p-part exactly n.
// When the claim holds the restriction is nontrivial and the sum vanishes;
// a character that is actually trivial at depth m instead sums to the
// subgroup order, and the verdict reports it rather than throwing.
struct OrthVerdict {
  bool vanished = false;
  long subgroup_size = 0;
};
OrthVerdict orthogonality_vanish(const HeckeChar& chi, long n, long m);

// Classical-side data for the interpolation comparison: per-class values
// at the full level plus arbitrary values at the two dropped levels, and
// the Euler coefficients.
struct InterpolationData {
  PadicNumber ap;
  PadicNumber eps_p;
  std::vector<PadicNumber> at_n;
  std::vector<PadicNumber> at_n1;
  std::vector<PadicNumber> at_n2;
};

struct InterpReport {
  bool equal = false;
  LValue lhs;
  LValue rhs;
};

// LHS: lp_value of the depleted combination v_n - a_p v_{n-1} +
// eps(p) p^(k-1) v_{n-2} pulled back through the level drops.  RHS: the
// level-n sum alone, graded by omega_exp = -(k+2 nu).  Equality is exactly
// the vanishing of both dropped-level sums.
InterpReport interpolation_check(const HeckeChar& chi, const HGroup& h1,
                                 const HGroup& h2, const InterpolationData& d,
                                 long relprec);

// Kronecker-limit style assembly for a type (1,1) character: the period
// times the sum over representative forms of norm * finite(chi)^(-1) * log
// datum, one log value per form class.  The point sits outside the
// interpolation range, so there is no radius gate; instead the finite part
// must factor through the class group (level-0 group, trivial nebentype).
LValue kronecker_assemble(const HeckeChar& chi,
                          const std::vector<PadicNumber>& logs, long relprec);

// The same data spread over the extension group: per-class value
// norm(project(a)) * log(project(a)).  Summing finite(chi)^(-1) against
// these over the whole group and dividing by phi(N) collapses onto the
// class-group sum of kronecker_assemble.
CMOracle kronecker_oracle(const HeckeChar& chi,
                          const std::vector<PadicNumber>& logs, long relprec);

// Heegner-cycle style assembly for a type (k-1-j, 1+j) character:
// (period^(r-2j)/j!) times the collapsed sum of finite(chi)^(-1) * G_j.
LValue gross_zagier_assemble(const HeckeChar& chi, long j,
                             const std::vector<PadicNumber>& gj,
                             long relprec);

// The two-term Euler factor applied through V: g - (a_p/p) V(g) +
// eps_p p^(k-3) V^2(g).  For g satisfying U(g) = (a_p/p) g -
// eps_p p^(k-3) V(g) this equals the depletion of g.
QExpansion euler_depleted_combination(const QExpansion& g,
                                      const PadicNumber& ap,
                                      const PadicNumber& eps_p, long k);

// Polynomial family of oracles in one weight variable u: coefficient d
// holds one value per class, eval at u is sum_d coeffs[d][a] u^d.
struct CMOracleFamily {
  long prime = 0;
  Splitting cas = Splitting::inert;
  long level_n = 0;
  long weight_k = 0;
  long nu = 0;
  long degree = 0;
  std::vector<std::vector<PadicNumber>> coeffs;
  std::string id;
};

CMOracleFamily mock_oracle_family(const HGroup& h, long weight_k, long nu,
                                  long degree, unsigned long seed,
                                  long relprec);

// Specialization at an integer weight u.
CMOracle oracle_specialize(const CMOracleFamily& fam, long u, long relprec);

// Coefficient-wise assembly: entry d is lp_value against coefficient d.
std::vector<LValue> lp_two_var(const HeckeChar& chi,
                               const CMOracleFamily& fam, long relprec);

// Evaluate the assembled polynomial at u.
LValue lp_two_var_at(const HeckeChar& chi, const CMOracleFamily& fam, long u,
                     long relprec);

// Finite-difference consistency at degree+1 unit-spaced weights: the d-th
// forward difference of the pointwise values at u = 0..D must match the
// same difference of the assembled polynomial, exactly.
bool lp_family_consistent(const HeckeChar& chi, const CMOracleFamily& fam,
                          long relprec);

}  // namespace padl
