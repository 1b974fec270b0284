#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "padl/abgroup.hpp"

namespace padl {

// Order Z + c*O_K inside the imaginary quadratic field of fundamental
// discriminant dk.  All ideal arithmetic below uses the basis 1, omega of
// O_K with omega = (dk + sqrt(dk))/2, so Tr(omega) = dk and
// N(omega) = (dk^2 - dk)/4.
struct QuadOrder {
  long dk = -3;
  long c = 1;
  long disc() const { return c * c * dk; }
};

// validates dk < 0 fundamental and c >= 1
QuadOrder quad_order(long dk, long c);

// primitive positive definite binary form a x^2 + b xy + c y^2
struct QuadForm {
  long a = 1;
  long b = 1;
  long c = 1;
};

long quad_form_disc(const QuadForm& f);
bool quad_form_eq(const QuadForm& f, const QuadForm& g);
QuadForm quad_reduce(QuadForm f);
QuadForm quad_principal_form(long disc);
QuadForm quad_form_inverse(const QuadForm& f);
// Gaussian composition; inputs may be any forms of one discriminant
QuadForm quad_compose(const QuadForm& f, const QuadForm& g);
QuadForm quad_form_pow(const QuadForm& f, long e);
// equivalent form whose leading coefficient is nonzero and prime to m
QuadForm quad_rep_coprime(const QuadForm& f, const mpz_class& m);

struct ClassGroup {
  QuadOrder order;
  std::vector<QuadForm> forms;  // reduced forms sorted by (a, b, c)
  long id = 0;                  // index of the principal form
  AbGroup group;                // composition on form indices
  long index_of(const QuadForm& reduced) const;
};

// enumerates all reduced forms of discriminant c^2 dk and tabulates
// composition; throws when |disc| exceeds bound
ClassGroup class_group(const QuadOrder& order, long bound = 1000000);

// h(O_c) through the conductor formula from h(O_K); the maximal order
// count comes from form enumeration, so the two routes are independent
// for every c > 1
long class_number_by_formula(const QuadOrder& order);

enum class Splitting { split, inert, ramified };

// behaviour of an odd prime p in O_K
Splitting splitting_type(long dk, long p);

// Integral O_K-ideal of norm n with cyclic quotient, stored through a root
// t of x^2 - dk x + N(omega) mod n.  The ideal is (n, omega - t) and
// x + y omega reduces to x + y t in Z/n.  Failure to exist is a value,
// not an error.
struct HeegnerIdeal {
  long dk = 0;
  long n = 1;
  long t = 0;
  bool ok = false;
  std::string reason;
};

HeegnerIdeal heegner_ideal(long dk, long n);
long heegner_residue(const HeegnerIdeal& heeg, const mpz_class& x,
                     const mpz_class& y);
// generator/order pairs for (O_K / (n, omega - t))^* = (Z/n)^*
std::vector<std::pair<long, long>> residue_units(const HeegnerIdeal& heeg);

// nonzero O_K-ideal in Hermite form Z a + Z (b + c omega), 0 <= b < a,
// norm a c
struct QuadIdeal {
  long dk = 0;
  mpz_class a = 1, b = 0, c = 1;
};

std::pair<mpz_class, mpz_class> quad_mul_elem(
    long dk, const std::pair<mpz_class, mpz_class>& u,
    const std::pair<mpz_class, mpz_class>& v);

// O_K-span of the listed elements x + y omega; throws on the zero span
QuadIdeal ideal_from_gens(
    long dk, const std::vector<std::pair<mpz_class, mpz_class>>& gens);
QuadIdeal ideal_mul(const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal ideal_conj(const QuadIdeal& x);
mpz_class ideal_norm(const QuadIdeal& x);
bool ideal_contains(const QuadIdeal& x, const mpz_class& u, const mpz_class& v);
bool ideal_eq(const QuadIdeal& x, const QuadIdeal& y);
// the O_K-ideal attached to a form of discriminant c^2 dk whose leading
// coefficient is prime to the conductor; its norm equals that coefficient
QuadIdeal form_to_ideal(const QuadOrder& order, const QuadForm& f);
// exhaustive search for a generator; true iff the ideal is principal
bool ideal_principal_gen(const QuadIdeal& x, mpz_class* gx, mpz_class* gy);

// (O_K/p^level)^* divided by the scalar classes (Z/p^level)^*, for p inert
// or ramified.  Canonical representative of a class is 1 + z omega when the
// scalar part is invertible, else w + omega with p | w (inert only).
struct WGroup {
  long dk = 0;
  long p = 0;
  long level = 0;
  long pn = 1;
  Splitting type = Splitting::inert;
  std::vector<std::pair<long, long>> reps;
  AbGroup group;
  std::vector<long> u_level;  // largest t <= level with the class in the
                              // image of 1 + p^t O_K
  long index_of(long x, long y) const;
};

WGroup wgroup(long dk, long p, long level);

// Extension of Pic(O_c) by (Z/n)^* and, when a level is given, by the
// p-local classes W.  Elements are exponent digits against the cyclic
// decomposition of Pic; wrapping digit t multiplies the kernel part by
// rho[t], the residue of an actual principal generator of the t-th
// representative ideal raised to its order.  |H| = h(O_c) phi(n) |W| by
// construction.
struct HGroup {
  QuadOrder order;
  HeegnerIdeal heeg;
  long p = 0;
  long level = 0;
  ClassGroup pic;
  WGroup w;
  std::vector<long> radix;  // pic factor orders, unit factor orders, w factor orders
  size_t npic = 0;
  size_t nunit = 0;
  std::vector<std::vector<long>> rho;  // kernel digits of each lift relation
  std::vector<long> rho_resn;          // the same relations as residues mod n
  long n = 1;
  std::function<long(long, long)> mul;
  std::vector<long> digits(long x) const;
  long index(const std::vector<long>& d) const;
};

// p is a coprimality constraint on the chosen representatives whenever
// p > 0; the W factor is attached only when level >= 1
HGroup hgroup(const QuadOrder& order, const HeegnerIdeal& heeg, long p = 0,
              long level = 0);
// cyclic decomposition of H itself, for character enumeration
AbGroup hgroup_analyze(const HGroup& h);
long hgroup_id(const HGroup& h);
long hgroup_mul(const HGroup& h, long x, long y);
long hgroup_inv(const HGroup& h, long x);
long hgroup_pow(const HGroup& h, long x, long e);
long hgroup_kernel_unit(const HGroup& h, long r);
long hgroup_kernel_w(const HGroup& h, long widx);
long hgroup_project_pic(const HGroup& h, long x);
// section of the projection, kernel digits zero
long hgroup_class_lift(const HGroup& h, long form_index);
// level-lowering homomorphism; both groups must share order, ideal, and p,
// with to.level < from.level
long hgroup_drop(const HGroup& from, const HGroup& to, long x);

}  // namespace padl
