#include "padl/checks.hpp"

#include <chrono>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "padl/cyclo.hpp"
#include "padl/dirichlet.hpp"
#include "padl/errors.hpp"
#include "padl/hecke.hpp"
#include "padl/lfun.hpp"
#include "padl/nabla.hpp"
#include "padl/padic.hpp"
#include "padl/qexp.hpp"
#include "padl/quad.hpp"
#include "padl/valuation.hpp"
#include "padl/weight.hpp"

namespace padl {

namespace {

double lap(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt_q(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

QExpansion random_series(long p, long nq, long relprec, std::mt19937_64& rng) {
  QExpansion f;
  f.prime = p;
  f.a.resize(static_cast<size_t>(nq) + 1);
  for (long n = 0; n <= nq; ++n)
    f.a[static_cast<size_t>(n)] =
        padic_from_long(p, 1 + static_cast<long>(rng() % 997), relprec);
  return f;
}

// U V = id, U kills depletion, and the eigenform depletion recipe agrees
// with the direct one, on 200 coefficients at 20 digits
CriterionResult crit_operator_identities() {
  CriterionResult r{1, "U and V operator identities", true, false, 0, 1.0, {}};
  DirichletChar triv = dirichlet_trivial(1);
  for (long p : {5L, 7L}) {
    auto t0 = std::chrono::steady_clock::now();
    QExpansion f = eisenstein(p, 4, triv, 200, 20);
    bool uv = qexp_agree(qexp_U(qexp_V(f)), f);
    QExpansion dep = qexp_deplete(f);
    QExpansion udep = qexp_U(dep);
    bool ukill = qexp_agree(udep, qexp_zero(p, udep.nq(), 20));
    bool eigen = qexp_agree(dep, qexp_deplete_eigen(f));
    double sec = lap(t0);
    bool ok = uv && ukill && eigen && sec < r.bound;
    r.pass = r.pass && ok;
    std::ostringstream d;
    d << "p = " << p << ": UV = id " << (uv ? "ok" : "BAD")
      << ", U(depletion) = 0 " << (ukill ? "ok" : "BAD")
      << ", eigen recipe " << (eigen ? "ok" : "BAD") << "  (" << sec << "s)";
    r.detail.push_back(d.str());
    r.seconds += sec;
  }
  return r;
}

// the interpolated power at an integer weight m is the m-fold single step,
// for both declared base weights, on 100 coefficients
CriterionResult crit_classical_specialization() {
  CriterionResult r{2, "classical specialization of interpolated powers",
                    true, false, 0, 10.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  DirichletChar triv = dirichlet_trivial(1);
  for (long p : {5L, 7L}) {
    QExpansion dep = qexp_deplete(eisenstein(p, 4, triv, 100, 10));
    for (long k : {2L, 4L}) {
      Weight kw = classical_weight(p, k, 10);
      WSection iter = wsection_from_qexp(dep, kw);
      for (long m = 1; m <= 5; ++m) {
        iter = nabla_step(iter);
        WSection direct = nabla_nu(dep, kw, classical_weight(p, m, 10));
        if (!wsection_agree(direct, iter)) {
          r.pass = false;
          std::ostringstream d;
          d << "mismatch at p = " << p << ", k = " << k << ", m = " << m;
          r.detail.push_back(d.str());
        }
      }
    }
  }
  r.seconds = lap(t0);
  r.pass = r.pass && r.seconds < r.bound;
  return r;
}

CriterionResult crit_commutation() {
  CriterionResult r{3, "connection commutation with U and V", true, false, 0,
                    5.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(31337);
  long bad = 0;
  for (int t = 0; t < 50; ++t) {
    long p = (t % 2 == 0) ? 5 : 7;
    QExpansion f = qexp_deplete(random_series(p, 40, 10, rng));
    Weight w = classical_weight(p, static_cast<long>(rng() % 6), 10);
    if (!check_commutation(f, w).all_ok()) ++bad;
  }
  r.seconds = lap(t0);
  if (bad > 0) {
    r.pass = false;
    r.detail.push_back("failures on " + std::to_string(bad) +
                       " of 50 random depleted series");
  }
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back("50 random depleted series, both operator directions");
  return r;
}

// derivative relations of the primitive chain for r <= 4, and the degree-0
// match of the chain top against negative interpolated powers wherever the
// even-weight gate admits the declared weight r + 2
CriterionResult crit_primitive_chain() {
  CriterionResult r{4, "primitive chain and interpolated-power match", true,
                    false, 0, 10.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  DirichletChar triv = dirichlet_trivial(1);
  for (long p : {5L, 7L}) {
    QExpansion f = qexp_deplete(eisenstein(p, 4, triv, 60, 12));
    for (long rr = 0; rr <= 4; ++rr) {
      WSection g = coleman_primitive(f, rr);
      bool chain = g.degree() == rr &&
                   qexp_agree(qexp_theta(g.comp[0]), f);
      for (long j = 1; j <= rr; ++j)
        chain = chain &&
                qexp_agree(qexp_theta(g.comp[static_cast<size_t>(j)]),
                           qexp_scale(g.comp[static_cast<size_t>(j - 1)],
                                      padic_from_long(p, rr - j + 1, 12)));
      bool match = true;
      if (rr % 2 == 0) {
        Weight kw = classical_weight(p, rr + 2, 12);
        mpz_class rfact;
        mpz_fac_ui(rfact.get_mpz_t(), static_cast<unsigned long>(rr));
        for (long j = 0; j <= rr; ++j) {
          WSection s = wsection_from_qexp(g.comp[static_cast<size_t>(rr)],
                                          classical_weight(p, -rr, 12));
          for (long t = 0; t < rr - j; ++t) s = nabla_step(s);
          WSection w = nabla_nu(f, kw, classical_weight(p, -1 - j, 12));
          match = match &&
                  qexp_agree(s.comp[0],
                             qexp_scale(w.comp[0],
                                        padic_from_mpq(p, mpq_class(rfact),
                                                       12)));
        }
      }
      if (!(chain && match)) {
        r.pass = false;
        std::ostringstream d;
        d << "p = " << p << ", r = " << rr << ": chain "
          << (chain ? "ok" : "BAD") << ", degree-0 match "
          << (match ? "ok" : "BAD");
        r.detail.push_back(d.str());
      }
    }
  }
  r.seconds = lap(t0);
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back(
      "chain relations r <= 4; interpolated-power match at even r");
  return r;
}

CriterionResult crit_group_orders() {
  CriterionResult r{5, "extension group order vs class number", true, false,
                    0, 30.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  const long dks[] = {-3,  -4,  -7,  -8,  -11, -15, -19, -20, -23,
                      -24, -31, -35, -39, -40, -43, -47, -51, -52,
                      -55, -56, -59, -67, -71, -79, -2003};
  long checked = 0, composite_conductors = 0, idx = 0;
  for (long dk : dks) {
    // alternate between the maximal order and the largest conductor that
    // keeps c^2 |dk| within range, so the sweep spans the whole list
    long c = 1;
    if (idx++ % 2 == 1)
      for (long cc : {7L, 5L, 4L, 3L, 2L})
        if (c == 1 && cc * cc * (-dk) <= 100000) c = cc;
    long used_n = 0;
    for (long N = 2; N <= 13 && used_n == 0; ++N) {
      if (std::gcd(c, N) != 1) continue;
      if (heegner_ideal(dk, N).ok) used_n = N;
    }
    if (used_n == 0) continue;
    QuadOrder o = quad_order(dk, c);
    ClassGroup cg = class_group(o);
    long h_enum = static_cast<long>(cg.forms.size());
    long h_formula = class_number_by_formula(o);
    HGroup h = hgroup(o, heegner_ideal(dk, used_n));
    bool ok = h_enum == h_formula && h.n == euler_phi(used_n) * h_enum;
    if (!ok) {
      r.pass = false;
      std::ostringstream d;
      d << "mismatch at (dk, c, N) = (" << dk << ", " << c << ", " << used_n
        << "): |H| = " << h.n << ", h = " << h_enum << " (formula "
        << h_formula << ")";
      r.detail.push_back(d.str());
    }
    ++checked;
    if (c > 1) ++composite_conductors;
  }
  r.seconds = lap(t0);
  if (checked < 20) {
    r.pass = false;
    r.detail.push_back("only " + std::to_string(checked) +
                       " triples available");
  }
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back(std::to_string(checked) + " triples, " +
                     std::to_string(composite_conductors) +
                     " with conductor above one, both class-number routes");
  return r;
}

CriterionResult crit_valuation_tables() {
  CriterionResult r{6, "valuation table formulas and minimal levels", true,
                    false, 0, 1.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  for (long p : {3L, 5L, 7L, 13L}) {
    for (long n = 1; n <= 4; ++n) {
      mpz_class pn1 = ipow(p, n - 1);
      mpz_class pn = pn1 * p;
      ValProfile in = canonical_valuations(p, Splitting::inert, n);
      ValProfile ra = canonical_valuations(p, Splitting::ramified, n);
      bool ok = in.hdg == mpq_class(mpz_class(1), pn1 * (p + 1)) &&
                ra.hdg == mpq_class(mpz_class(1), 2 * pn) &&
                in.delta == mpq_class(mpz_class(1), pn1 * (p * p - 1)) &&
                ra.delta == mpq_class(mpz_class(1), 2 * pn * (p - 1)) &&
                in.period == in.delta && ra.period == ra.delta;
      if (!ok) {
        r.pass = false;
        r.detail.push_back("formula mismatch at p = " + std::to_string(p) +
                           ", n = " + std::to_string(n));
      }
    }
  }
  if (radius_params(true, 5).n_inert != 2 ||
      radius_params(false, 5).n_inert != 3) {
    r.pass = false;
    r.detail.push_back("minimal inert level at p = 5 off");
  }
  r.seconds = lap(t0);
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back(
      "all four height formulas, p in {3,5,7,13}, n <= 4; minimal levels");
  return r;
}

// The multiset tail estimate is false as stated, so this criterion fails by
// design and reports the minimal counterexamples; the failure is recorded as
// a documented defect and does not fail the run.
CriterionResult crit_inequality_sweeps() {
  CriterionResult r{7, "convergence inequality sweeps", true, false, 0, 60.0,
                    {}};
  auto t0 = std::chrono::steady_clock::now();
  for (long p : {5L, 7L, 11L}) {
    IneqReport rep = check_inequalities(p, 100000, 10);
    if (!rep.all_hold) {
      r.pass = false;
      r.documented = true;
      size_t shown = 0;
      for (const IneqFailure& f : rep.failures) {
        if (shown++ >= 2) break;
        r.detail.push_back("p = " + std::to_string(p) + ": " + f.check +
                           " violated at " + f.witness + ", margin " +
                           fmt_q(f.margin));
      }
    }
  }
  r.seconds = lap(t0);
  if (!r.pass)
    r.detail.push_back(
        "documented defect: the repeated-entry tail estimate is false as "
        "stated; distinct-entry and per-term forms hold (see module tests)");
  if (r.seconds >= r.bound) {
    r.pass = false;
    r.documented = false;
  }
  return r;
}

CriterionResult crit_assembly_laws() {
  CriterionResult r{8, "level-sum assembly laws", true, false, 0, 30.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  struct Ctx {
    long dk, N, p, rr;
  };
  const Ctx ctxs[] = {{-8, 3, 5, 76},
                      {-8, 3, 7, 148},
                      {-15, 2, 5, 51},
                      {-7, 2, 7, 99}};
  std::mt19937_64 rng(2024);
  for (const Ctx& c : ctxs) {
    HeegnerIdeal heeg = heegner_ideal(c.dk, c.N);
    QuadOrder o = quad_order(c.dk, 1);
    HGroup h2 = hgroup(o, heeg, c.p, 2);
    HGroup h1 = hgroup(o, heeg, c.p, 1);
    HGroup h0 = hgroup(o, heeg, c.p, 0);
    AbGroup dec = hgroup_analyze(h2);

    HeckeChar orth{}, interp{};
    bool have_orth = false, have_interp = false;
    std::vector<long> f(dec.ord.size(), 0);
    while (!(have_orth && have_interp)) {
      try {
        if (!have_orth) {
          HeckeChar cand = hecke_char(h2, 2, 0, dirichlet_trivial(c.N), f);
          if (conductor_ppart(cand) == 2) {
            orth = cand;
            have_orth = true;
          }
        }
        if (!have_interp) {
          HeckeChar cand = hecke_char(h2, 4, 0, dirichlet_trivial(c.N), f);
          if (conductor_ppart(cand) == 2) {
            interp = cand;
            have_interp = true;
          }
        }
      } catch (const precondition_error&) {
      }
      size_t i = 0;
      while (i < f.size() && ++f[i] == dec.ord[i]) f[i++] = 0;
      if (i == f.size()) break;
    }
    if (!(have_orth && have_interp)) {
      r.pass = false;
      r.detail.push_back("no full-level character found in context " +
                         std::to_string(c.dk));
      continue;
    }

    bool orth_ok = orthogonality_vanish(orth, 2, 0).vanished &&
                   orthogonality_vanish(orth, 2, 1).vanished;
    bool wp_ok = true, interp_ok = true;
    for (unsigned long seed = 0; seed < 10; ++seed) {
      CMOracle omock = mock_oracle(h2, 2, 0, seed, 8);
      wp_ok = wp_ok && lp_well_posed(orth, omock, c.rr, 8);

      InterpolationData d;
      d.ap = padic_from_long(c.p, 1 + static_cast<long>(rng() % 500), 8);
      d.eps_p = padic_from_long(c.p, (rng() % 2 == 0) ? 1 : -1, 8);
      d.at_n = mock_oracle(h2, 4, 0, 100 + seed, 8).values;
      d.at_n1 = mock_oracle(h1, 4, 0, 200 + seed, 8).values;
      d.at_n2 = mock_oracle(h0, 4, 0, 300 + seed, 8).values;
      interp_ok = interp_ok && interpolation_check(interp, h1, h0, d, 8).equal;
    }
    if (!(orth_ok && wp_ok && interp_ok)) {
      r.pass = false;
      std::ostringstream d;
      d << "context (" << c.dk << ", " << c.N << ", " << c.p
        << "): orthogonality " << (orth_ok ? "ok" : "BAD") << ", twist "
        << (wp_ok ? "ok" : "BAD") << ", interpolation "
        << (interp_ok ? "ok" : "BAD");
      r.detail.push_back(d.str());
    }
  }
  r.seconds = lap(t0);
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back(
      "orthogonality, twist invariance, interpolation cancellation; 10 "
      "oracles per context, inert and ramified at p in {5,7}");
  return r;
}

CriterionResult crit_family_differences() {
  CriterionResult r{9, "polynomial family finite differences", true, false, 0,
                    30.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  struct Ctx {
    long dk, N, p;
  };
  for (const Ctx& c : {Ctx{-8, 3, 5}, Ctx{-7, 2, 7}}) {
    HGroup h = hgroup(quad_order(c.dk, 1), heegner_ideal(c.dk, c.N), c.p, 2);
    AbGroup dec = hgroup_analyze(h);
    HeckeChar chi{};
    bool have = false;
    std::vector<long> f(dec.ord.size(), 0);
    while (!have) {
      try {
        HeckeChar cand = hecke_char(h, 2, 0, dirichlet_trivial(c.N), f);
        if (conductor_ppart(cand) == 2) {
          chi = cand;
          have = true;
        }
      } catch (const precondition_error&) {
      }
      size_t i = 0;
      while (i < f.size() && ++f[i] == dec.ord[i]) f[i++] = 0;
      if (i == f.size()) break;
    }
    for (long deg = 0; deg <= 4; ++deg) {
      CMOracleFamily fam =
          mock_oracle_family(h, 2, 0, deg, 1000 + static_cast<unsigned long>(deg), 8);
      if (!lp_family_consistent(chi, fam, 8)) {
        r.pass = false;
        r.detail.push_back("difference mismatch at degree " +
                           std::to_string(deg) + " in context " +
                           std::to_string(c.dk));
      }
    }
  }
  r.seconds = lap(t0);
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back("degrees 0..4, coefficients vs forward differences");
  return r;
}

CriterionResult crit_eisenstein_constants() {
  CriterionResult r{10, "Eisenstein constant and Gauss-sum norms", true,
                    false, 0, 10.0, {}};
  auto t0 = std::chrono::steady_clock::now();
  DirichletChar triv = dirichlet_trivial(1);
  QExpansion e4 = eisenstein(5, 4, triv, 10, 20);
  CycloRational lval = gen_bernoulli_L(4, triv);
  bool const_ok = cyclo_eq(lval, cyclo_from_mpq(1, mpq_class(1, 120))) &&
                  padic_agree(e4.a[0],
                              padic_from_mpq(5, mpq_class(1, 120), 20));
  if (!const_ok) {
    r.pass = false;
    r.detail.push_back("weight-4 constant term does not match the L-value");
  }
  long primitive_count = 0;
  for (long N = 1; N <= 12; ++N) {
    for (const DirichletChar& chi : dirichlet_all(N)) {
      if (!dirichlet_is_primitive(chi)) continue;
      ++primitive_count;
      CycloRational prod =
          cyclo_mul(gauss_sum(chi), gauss_sum(dirichlet_conj(chi)));
      mpq_class expect = dirichlet_is_odd(chi) ? mpq_class(-N) : mpq_class(N);
      if (!cyclo_eq(prod, cyclo_from_mpq(prod.M, expect))) {
        r.pass = false;
        r.detail.push_back("Gauss-sum norm off at modulus " +
                           std::to_string(N));
      }
    }
  }
  r.seconds = lap(t0);
  r.pass = r.pass && r.seconds < r.bound;
  r.detail.push_back("constant term 1/120 in Z_5; " +
                     std::to_string(primitive_count) +
                     " primitive characters of modulus <= 12");
  return r;
}

}  // namespace

std::vector<CriterionResult> run_criteria() {
  return {crit_operator_identities(), crit_classical_specialization(),
          crit_commutation(),         crit_primitive_chain(),
          crit_group_orders(),        crit_valuation_tables(),
          crit_inequality_sweeps(),   crit_assembly_laws(),
          crit_family_differences(),  crit_eisenstein_constants()};
}

int run_criteria_table(std::ostream& os) {
  std::vector<CriterionResult> all = run_criteria();
  int undocumented = 0, passed = 0, documented = 0;
  for (const CriterionResult& c : all) {
    std::ostringstream head;
    head << "[" << (c.index < 10 ? " " : "") << c.index << "/10] " << c.name;
    std::string line = head.str();
    while (line.size() < 56) line.push_back('.');
    os << line << (c.pass ? " PASS" : " FAIL");
    if (!c.pass && c.documented) os << " (documented defect)";
    {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(2);
      t << "  " << c.seconds << "s / " << c.bound << "s";
      os << t.str() << "\n";
    }
    for (const std::string& d : c.detail) os << "        " << d << "\n";
    if (c.pass)
      ++passed;
    else if (c.documented)
      ++documented;
    else
      ++undocumented;
  }
  os << passed << " passed, " << (documented + undocumented) << " failed";
  if (documented > 0)
    os << " (" << documented
       << " reproducing a documented defect of the source estimates; such "
          "failures do not fail the run)";
  os << "\n";
  return undocumented;
}

}  // namespace padl
