#pragma once

#include <vector>

#include "padl/qexp.hpp"
#include "padl/weight.hpp"

namespace padl {

// Graded section at the cusp: comp[j] is the q-expansion multiplying the
// degree-j basis vector of the weight-w graded module.  All components share
// the prime; val_floor, when nonempty, records a certified lower bound on the
// coefficient valuations of comp[j] and is carried for truncation-error
// accounting.
struct WSection {
  Weight base;
  std::vector<QExpansion> comp;
  std::vector<long> val_floor;

  long degree() const { return static_cast<long>(comp.size()) - 1; }
};

WSection wsection_from_qexp(const QExpansion& f, const Weight& w);
// component-wise agreement at shared precision; slots present on one side
// only must be indistinguishable from zero
bool wsection_agree(const WSection& a, const WSection& b);

// one application of the connection: base weight moves up by 2 and
// comp'[j] = theta(comp[j]) + (w_analytic - (j-1)) * comp[j-1]
WSection nabla_step(const WSection& s);

// graded V and U: (S|V)_j = p^{-j} V(comp[j]), (S|U)_j = p^j U(comp[j]).
// V is capped at the input coefficient range so shapes stay comparable.
WSection wsection_V(const WSection& s);
WSection wsection_U(const WSection& s);

// Certificate attached to an interpolated-power computation.  bound[j] is a
// proven lower bound for the coefficient valuations of component j computed
// from the congruence pattern of the scalar binom(s,j)*prod(u+s-1-i); the
// tail entries j in (J, scan_end] were checked against target and everything
// beyond scan_end is covered by a monotone envelope.
struct NablaReport {
  long J = 0;
  long target = 0;          // required valuation for discarded components
  long scan_end = 0;
  std::vector<long> bound;  // indices 0..scan_end
  bool classical_cutoff = false;
};

// interpolated power of the connection on a depleted input:
// component j is binom(s,j) * prod_{i<j}(u+s-1-i) * (a_n -> nu(n) n^{-j} a_n)
// with u, s the analytic parameters of k and nu.  J < 0 selects the smallest
// truncation whose discarded tail is certified below the working precision;
// an explicit J that discards uncertified components raises precision_error
// naming the smallest admissible value.
WSection nabla_nu(const QExpansion& f, const Weight& k, const Weight& nu,
                  long J = -1, NablaReport* report = nullptr);

// extension of nabla_nu to graded inputs: a pure slot-j component at base w
// contributes binom(s,i) * prod_{t<i}(w+s-j-1-t) * theta-twist into slot j+i
WSection nabla_nu_section(const WSection& s, const Weight& nu, long J = -1);

// degree-0 projection of nabla_nu: a_n -> nu(n) a_n on a depleted input,
// guarded by the same weight admissibility checks
QExpansion theta_nu_split(const QExpansion& f, const Weight& k,
                          const Weight& nu);

struct CommutationReport {
  bool theta_V_ok = false;
  bool theta_U_ok = false;
  bool section_V_ok = false;
  bool section_U_ok = false;
  long agree_absprec = 0;

  bool all_ok() const {
    return theta_V_ok && theta_U_ok && section_V_ok && section_U_ok;
  }
};

// checks theta(F|V) = p (theta F)|V and theta(F|U) = (1/p)(theta F)|U on
// coefficients, and the same identities for nabla_step against the graded
// V and U on a two-component section built from F
CommutationReport check_commutation(const QExpansion& f, const Weight& w);

// primitive chain of a depleted input in the degree-r graded module at base
// weight -r: component j is [r!/(r-j)!] * (a_n -> n^{-j-1} a_n).  Components
// are stored unsigned; the alternating signs of the symmetric-power basis
// are applied only where a cross-check needs them.
WSection coleman_primitive(const QExpansion& f_dep, long r);

// truncated Laurent series over Q_p, c[i] multiplying T^(low + i)
struct LaurentSeries {
  long prime = 0;
  long low = 0;
  std::vector<PadicNumber> c;

  long high() const { return low + static_cast<long>(c.size()) - 1; }
};

enum class Region { disk, annulus };

struct ColemanLog {
  PadicNumber constant;  // log_p of the dominant coefficient, Iwasawa branch
  long residue = 0;      // exponent of the dominant monomial
  LaurentSeries tail;    // log(1 + h) as a series
};

// decomposes a unit g = a T^n (1 + h) with |h| < 1 checked coefficient-wise
// and returns (log_p(a), n, log(1+h)); disks require n = 0
ColemanLog coleman_log(const LaurentSeries& g, Region kind);

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries laurent_scale(const LaurentSeries& a, const mpq_class& q);

}  // namespace padl
