// Command-line frontend: every feature of the library as a batch subcommand
// with deterministic JSON or CSV output.  Exit codes: 0 ok, 1 usage or input
// error, 2 violated precondition, 3 precision-certificate failure.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padl/abgroup.hpp"
#include "padl/checks.hpp"
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

using nlohmann::json;
using namespace padl;

namespace {

std::string fmt_q(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// relative output paths can be redirected wholesale; this is the only
// environment influence on a run
std::string resolve_out(const std::string& path) {
  if (path.empty() || path == "-" || path.front() == '/') return path;
  const char* dir = std::getenv("PADL_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string d(dir);
  if (d.back() != '/') d.push_back('/');
  return d + path;
}

// write-then-rename so readers never observe a partial file
void emit_text(const std::string& body, const std::string& out) {
  std::string path = resolve_out(out);
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw usage_error("cannot open output path " + tmp);
    os << body;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw usage_error("cannot move output into place at " + path);
}

void emit_json(const json& j, const std::string& out) {
  emit_text(j.dump(2) + "\n", out);
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw usage_error("cannot read input file " + path);
  return json::parse(is);
}

json qexp_out(const QExpansion& f) {
  json j;
  j["prime"] = f.prime;
  j["weight"] = f.weight_k.has_value() ? json(*f.weight_k) : json(nullptr);
  if (f.neben.has_value()) {
    j["neben"] = {{"modulus", f.neben->modulus}, {"exps", f.neben->exps}};
  } else {
    j["neben"] = nullptr;
  }
  std::vector<std::string> a;
  a.reserve(f.a.size());
  for (const PadicNumber& x : f.a) a.push_back(padic_to_string(x));
  j["a"] = a;
  return j;
}

QExpansion qexp_in(const json& j) {
  QExpansion f;
  f.prime = j.at("prime").get<long>();
  if (j.contains("weight") && !j.at("weight").is_null())
    f.weight_k = j.at("weight").get<long>();
  if (j.contains("neben") && !j.at("neben").is_null()) {
    DirichletChar eps;
    eps.modulus = j.at("neben").at("modulus").get<long>();
    eps.exps = j.at("neben").at("exps").get<std::vector<long>>();
    f.neben = eps;
  }
  for (const auto& s : j.at("a")) {
    PadicNumber x = padic_parse(s.get<std::string>());
    if (x.prime != f.prime)
      throw usage_error("coefficient prime differs from the series prime");
    f.a.push_back(x);
  }
  if (f.a.empty()) throw usage_error("series needs at least one coefficient");
  return f;
}

// graded sections are reports: valuation floors stay internal, and the
// per-component form tags are dropped since the base weight line already
// carries the weight and the components are not classical forms of it
json wsection_out(const WSection& s) {
  json j;
  j["base"] = weight_to_string(s.base);
  json comps = json::array();
  for (const QExpansion& c : s.comp) {
    std::vector<std::string> a;
    a.reserve(c.a.size());
    for (const PadicNumber& x : c.a) a.push_back(padic_to_string(x));
    comps.push_back(json{{"prime", c.prime}, {"a", a}});
  }
  j["comp"] = comps;
  return j;
}

long min_absprec(const QExpansion& f) {
  long best = f.a.front().absprec();
  for (const PadicNumber& x : f.a)
    if (x.absprec() < best) best = x.absprec();
  return best;
}

QExpansion cap_qexp(const QExpansion& f, long absprec) {
  QExpansion g = f;
  for (PadicNumber& x : g.a)
    x = padic_add(x, padic_prec_zero(g.prime, absprec));
  return g;
}

DirichletChar pick_eps(long N, long idx) {
  if (idx < 0) return dirichlet_trivial(N);
  std::vector<DirichletChar> all = dirichlet_all(N);
  if (idx >= static_cast<long>(all.size()))
    throw usage_error("character index out of range for modulus " +
                      std::to_string(N));
  return all[static_cast<size_t>(idx)];
}

struct GroupSpec {
  long D = -3;
  long N = 1;
  long c = 1;
  long p = 0;
  long level = 0;
};

HGroup build_group(const GroupSpec& g) {
  HeegnerIdeal heeg = heegner_ideal(g.D, g.N);
  if (!heeg.ok)
    throw precondition_error("no suitable ideal of norm " +
                             std::to_string(g.N) + ": " + heeg.reason);
  return hgroup(quad_order(g.D, g.c), heeg, g.p, g.level);
}

// first character of the requested type whose conductor p-part matches,
// walking exponent tuples in a fixed order
HeckeChar char_by_conductor(const HGroup& h, long n, long m,
                            const DirichletChar& eps, long cond) {
  AbGroup dec = hgroup_analyze(h);
  std::vector<long> f(dec.ord.size(), 0);
  while (true) {
    try {
      HeckeChar cand = hecke_char(h, n, m, eps, f);
      if (conductor_ppart(cand) == cond) return cand;
    } catch (const precondition_error&) {
    }
    size_t i = 0;
    while (i < f.size() && ++f[i] == dec.ord[i]) f[i++] = 0;
    if (i == f.size()) break;
  }
  throw precondition_error("no character of the requested type has conductor "
                           "p-part " +
                           std::to_string(cond));
}

json char_out(const HeckeChar& chi) {
  return json{{"type", {chi.inf_n, chi.inf_m}},
              {"eps_modulus", chi.eps.modulus},
              {"eps_exps", chi.eps.exps},
              {"fexp", chi.fexp},
              {"conductor_p", conductor_ppart(chi)}};
}

json lvalue_out(const LValue& v, long p, Splitting cas, long level) {
  json j;
  j["modulus"] = v.value.M;
  std::vector<std::string> coords;
  for (const PadicNumber& x : v.value.c) coords.push_back(padic_to_string(x));
  j["coords"] = coords;
  j["omega_exponent"] = fmt_q(v.omega_exp);
  json cert;
  cert["coord_absprec"] = v.certificate;
  if (level >= 1) {
    mpq_class per = canonical_valuations(p, cas, level).period;
    cert["period_valuation"] = fmt_q(per);
    cert["shift_valuation"] = fmt_q(mpq_class(per * v.omega_exp));
  } else {
    cert["period_valuation"] = nullptr;
    cert["shift_valuation"] = nullptr;
  }
  j["certificate"] = cert;
  j["provenance"] = v.provenance;
  return j;
}

// ---- subcommand runners ----

struct ClassgroupCfg {
  long D = -3;
  long c = 1;
  std::string out;
};

int run_classgroup(const ClassgroupCfg& cfg) {
  QuadOrder o = quad_order(cfg.D, cfg.c);
  ClassGroup cg = class_group(o);
  json forms = json::array();
  for (const QuadForm& f : cg.forms) forms.push_back({f.a, f.b, f.c});
  AbGroup dec = abgroup_analyze(cg.group.n, cg.group.id, cg.group.mul);
  emit_json(json{{"discriminant", cfg.D},
                 {"conductor", cfg.c},
                 {"order_discriminant", o.disc()},
                 {"class_number", cg.forms.size()},
                 {"class_number_formula", class_number_by_formula(o)},
                 {"cyclic_orders", dec.ord},
                 {"forms", forms}},
            cfg.out);
  return 0;
}

struct HgroupCfg {
  GroupSpec g;
  std::string out;
};

int run_hgroup(const HgroupCfg& cfg) {
  HGroup h = build_group(cfg.g);
  emit_json(json{{"discriminant", cfg.g.D},
                 {"N", cfg.g.N},
                 {"conductor", cfg.g.c},
                 {"p", cfg.g.p},
                 {"level", cfg.g.level},
                 {"order", h.n},
                 {"class_number", h.pic.forms.size()},
                 {"phi_N", euler_phi(cfg.g.N)},
                 {"w_order", cfg.g.level > 0 ? h.w.group.n : 1},
                 {"cyclic_orders", hgroup_analyze(h).ord},
                 {"heegner_root", h.heeg.t}},
            cfg.out);
  return 0;
}

struct CharsCfg {
  GroupSpec g;
  long k = 1;
  long j = 0;
  long eps = -1;
  std::string out;
};

int run_chars(const CharsCfg& cfg) {
  HGroup h = build_group(cfg.g);
  DirichletChar eps = pick_eps(cfg.g.N, cfg.eps);
  std::vector<HeckeChar> chars = enumerate_chars(h, cfg.k, cfg.j, eps);
  json arr = json::array();
  for (const HeckeChar& chi : chars) arr.push_back(char_out(chi));
  emit_json(json{{"discriminant", cfg.g.D},
                 {"N", cfg.g.N},
                 {"conductor", cfg.g.c},
                 {"p", cfg.g.p},
                 {"level", cfg.g.level},
                 {"k", cfg.k},
                 {"j", cfg.j},
                 {"count", chars.size()},
                 {"chars", arr}},
            cfg.out);
  return 0;
}

struct EisCfg {
  long p = 5;
  long k = 4;
  long N = 1;
  long eps = -1;
  long nq = 50;
  long prec = 10;
  std::string out;
};

int run_eisenstein(const EisCfg& cfg) {
  emit_json(qexp_out(eisenstein(cfg.p, cfg.k, pick_eps(cfg.N, cfg.eps),
                                cfg.nq, cfg.prec)),
            cfg.out);
  return 0;
}

struct DepleteCfg {
  std::string in;
  std::string mode = "plain";
  std::string out;
};

int run_deplete(const DepleteCfg& cfg) {
  QExpansion f = qexp_in(load_json(cfg.in));
  if (cfg.mode == "plain") {
    emit_json(qexp_out(qexp_deplete(f)), cfg.out);
  } else if (cfg.mode == "eigen") {
    emit_json(qexp_out(qexp_deplete_eigen(f)), cfg.out);
  } else {
    throw usage_error("mode must be plain or eigen");
  }
  return 0;
}

struct NablaCfg {
  std::string in;
  long steps = -1;
  long nu_classical = std::numeric_limits<long>::min();
  std::string out;
};

int run_nabla(const NablaCfg& cfg) {
  QExpansion f = qexp_in(load_json(cfg.in));
  if (!f.weight_k.has_value())
    throw usage_error("input series carries no weight tag");
  bool by_steps = cfg.steps >= 0;
  bool by_nu = cfg.nu_classical != std::numeric_limits<long>::min();
  if (by_steps == by_nu)
    throw usage_error("give exactly one of --steps and --nu-classical");

  // both routes report coefficients at the input precision floor, so a
  // classical interpolation and the matching step count emit identical files
  long floor_prec = min_absprec(f);
  Weight kw = classical_weight(f.prime, *f.weight_k, 20);
  WSection s;
  if (by_steps) {
    s = wsection_from_qexp(f, kw);
    for (long t = 0; t < cfg.steps; ++t) s = nabla_step(s);
  } else {
    s = nabla_nu(f, kw, classical_weight(f.prime, cfg.nu_classical, 20));
  }
  for (QExpansion& c : s.comp) c = cap_qexp(c, floor_prec);
  emit_json(wsection_out(s), cfg.out);
  return 0;
}

struct ColemanCfg {
  std::string in;
  long r = 0;
  std::string out;
};

int run_coleman(const ColemanCfg& cfg) {
  QExpansion f = qexp_in(load_json(cfg.in));
  emit_json(wsection_out(coleman_primitive(f, cfg.r)), cfg.out);
  return 0;
}

struct ValCfg {
  long p = 5;
  std::string cas = "inert";
  long n = 1;
  bool analytic = false;
  std::string out;
};

int run_valuations(const ValCfg& cfg) {
  Splitting s;
  if (cfg.cas == "inert") {
    s = Splitting::inert;
  } else if (cfg.cas == "ramified") {
    s = Splitting::ramified;
  } else {
    throw usage_error("case must be inert or ramified");
  }
  ValProfile v = canonical_valuations(cfg.p, s, cfg.n);
  RadiusParams rp = radius_params(!cfg.analytic, cfg.p);
  emit_text(valuation_csv_header() + "\n" + valuation_csv_row(v, rp) + "\n",
            cfg.out);
  return 0;
}

struct LsumCfg {
  std::string oracle;
  GroupSpec g;
  long weight = 2;
  long nu = 0;
  long mock_seed = -1;
  std::string dump_oracle;
  long ntype = 2;
  long mtype = 0;
  long eps = -1;
  std::string fexp;
  long cond = -1;
  long prec = 8;
  long min_prec = 0;
  bool raw = false;
  std::string out;
};

std::vector<long> parse_fexp(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

json oracle_file_out(const CMOracle& o, const GroupSpec& g) {
  json vals = json::array();
  for (size_t a = 0; a < o.values.size(); ++a)
    vals.push_back({{"elem", a},
                    {"tag", "n"},
                    {"value", padic_to_string(o.values[a])}});
  return json{{"context",
               {{"D", g.D},
                {"N", g.N},
                {"c", g.c},
                {"p", g.p},
                {"level", g.level},
                {"weight", o.weight_k},
                {"nu", o.nu},
                {"id", o.id}}},
              {"values", vals}};
}

std::vector<PadicNumber> collect_tag(const json& entries, const char* tag,
                                     long size, long prime) {
  std::vector<std::optional<PadicNumber>> slot(static_cast<size_t>(size));
  for (const auto& e : entries) {
    if (e.at("tag").get<std::string>() != tag) continue;
    long a = e.at("elem").get<long>();
    if (a < 0 || a >= size)
      throw usage_error("oracle element index out of range for tag " +
                        std::string(tag));
    if (slot[static_cast<size_t>(a)].has_value())
      throw usage_error("duplicate oracle entry for tag " + std::string(tag));
    PadicNumber x = padic_parse(e.at("value").get<std::string>());
    if (x.prime != prime) throw usage_error("oracle value at a wrong prime");
    slot[static_cast<size_t>(a)] = x;
  }
  std::vector<PadicNumber> out;
  for (long a = 0; a < size; ++a) {
    if (!slot[static_cast<size_t>(a)].has_value())
      throw usage_error("oracle is missing element " + std::to_string(a) +
                        " for tag " + std::string(tag));
    out.push_back(*slot[static_cast<size_t>(a)]);
  }
  return out;
}

int run_lsum(const LsumCfg& cfg_in) {
  LsumCfg cfg = cfg_in;
  json oracle_doc;
  bool from_file = !cfg.oracle.empty();
  if (from_file) {
    oracle_doc = load_json(cfg.oracle);
    const json& cx = oracle_doc.at("context");
    cfg.g.D = cx.at("D").get<long>();
    cfg.g.N = cx.at("N").get<long>();
    cfg.g.c = cx.value("c", 1L);
    cfg.g.p = cx.at("p").get<long>();
    cfg.g.level = cx.at("level").get<long>();
    cfg.weight = cx.at("weight").get<long>();
    cfg.nu = cx.at("nu").get<long>();
  } else if (cfg.mock_seed < 0) {
    throw usage_error("give either --oracle FILE or --mock-seed SEED");
  }

  HGroup h = build_group(cfg.g);
  DirichletChar eps = pick_eps(cfg.g.N, cfg.eps);
  HeckeChar chi =
      cfg.fexp.empty()
          ? char_by_conductor(h, cfg.ntype, cfg.mtype, eps,
                              cfg.cond >= 0 ? cfg.cond : cfg.g.level)
          : hecke_char(h, cfg.ntype, cfg.mtype, eps, parse_fexp(cfg.fexp));
  Splitting cas = splitting_type(cfg.g.D, cfg.g.p);

  CMOracle o;
  if (from_file) {
    o.prime = cfg.g.p;
    o.cas = cas;
    o.level_n = cfg.g.level;
    o.weight_k = cfg.weight;
    o.nu = cfg.nu;
    o.id = oracle_doc.at("context").value("id", std::string("file"));
    o.values = collect_tag(oracle_doc.at("values"), "n", h.n, cfg.g.p);
  } else {
    o = mock_oracle(h, cfg.weight, cfg.nu,
                    static_cast<unsigned long>(cfg.mock_seed), cfg.prec);
    if (!cfg.dump_oracle.empty())
      emit_json(oracle_file_out(o, cfg.g), cfg.dump_oracle);
  }

  json result;
  result["character"] = char_out(chi);
  if (from_file && oracle_doc.contains("interpolation")) {
    GroupSpec g1 = cfg.g, g0 = cfg.g;
    g1.level = cfg.g.level - 1;
    g0.level = cfg.g.level - 2;
    HGroup h1 = build_group(g1);
    HGroup h0 = build_group(g0);
    InterpolationData d;
    d.ap = padic_parse(
        oracle_doc.at("interpolation").at("ap").get<std::string>());
    d.eps_p = padic_parse(
        oracle_doc.at("interpolation").at("eps_p").get<std::string>());
    d.at_n = o.values;
    d.at_n1 = collect_tag(oracle_doc.at("values"), "n-1", h1.n, cfg.g.p);
    d.at_n2 = collect_tag(oracle_doc.at("values"), "n-2", h0.n, cfg.g.p);
    InterpReport rep = interpolation_check(chi, h1, h0, d, cfg.prec);
    result["mode"] = "interpolation";
    result["equal"] = rep.equal;
    result["lhs"] = lvalue_out(rep.lhs, cfg.g.p, cas, cfg.g.level);
    result["rhs"] = lvalue_out(rep.rhs, cfg.g.p, cas, cfg.g.level);
    if (rep.lhs.certificate < cfg.min_prec ||
        rep.rhs.certificate < cfg.min_prec)
      throw precision_error("certificate below the requested floor");
  } else {
    LValue v = cfg.raw ? lp_raw_sum(chi, o, cfg.prec)
                       : lp_value(chi, o, cfg.prec);
    result["mode"] = cfg.raw ? "raw" : "value";
    result["value"] = lvalue_out(v, cfg.g.p, cas, cfg.g.level);
    if (v.certificate < cfg.min_prec)
      throw precision_error("certificate " + std::to_string(v.certificate) +
                            " below the requested floor " +
                            std::to_string(cfg.min_prec));
  }
  emit_json(result, cfg.out);
  return 0;
}

void add_group_flags(CLI::App* sub, GroupSpec& g) {
  sub->add_option("--D", g.D, "fundamental discriminant, negative");
  sub->add_option("--N", g.N, "norm of the auxiliary ideal");
  sub->add_option("--c", g.c, "conductor prime to p");
  sub->add_option("--p", g.p, "odd prime, 0 for none");
  sub->add_option("--level", g.level, "p-power level exponent");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for level sums at a non-split prime"};
  app.require_subcommand(1);

  ClassgroupCfg cg;
  CLI::App* s_cg = app.add_subcommand("classgroup", "reduced forms and composition");
  s_cg->add_option("--D", cg.D, "fundamental discriminant")->required();
  s_cg->add_option("--c", cg.c, "order conductor");
  s_cg->add_option("--out", cg.out, "output path, stdout when absent");

  HgroupCfg hg;
  CLI::App* s_hg = app.add_subcommand("hgroup", "extension group of a class group");
  add_group_flags(s_hg, hg.g);
  s_hg->get_option("--D")->required();
  s_hg->get_option("--N")->required();
  s_hg->add_option("--out", hg.out, "output path");

  CharsCfg ch;
  CLI::App* s_ch = app.add_subcommand("chars", "characters of a fixed infinity type");
  add_group_flags(s_ch, ch.g);
  s_ch->get_option("--D")->required();
  s_ch->get_option("--N")->required();
  s_ch->add_option("--k", ch.k, "weight of the type (k+j, -j)")->required();
  s_ch->add_option("--j", ch.j, "twist index of the type");
  s_ch->add_option("--eps", ch.eps, "nebentype index, trivial when absent");
  s_ch->add_option("--out", ch.out, "output path");

  EisCfg ei;
  CLI::App* s_ei = app.add_subcommand("eisenstein", "Eisenstein q-expansion");
  s_ei->add_option("--p", ei.p, "prime of the coefficient ring")->required();
  s_ei->add_option("--k", ei.k, "weight")->required();
  s_ei->add_option("--N", ei.N, "nebentype modulus");
  s_ei->add_option("--eps", ei.eps, "nebentype index, trivial when absent");
  s_ei->add_option("--nq", ei.nq, "coefficient range");
  s_ei->add_option("--prec", ei.prec, "relative precision");
  s_ei->add_option("--out", ei.out, "output path");

  DepleteCfg de;
  CLI::App* s_de = app.add_subcommand("deplete", "remove p-divisible coefficients");
  s_de->add_option("--in", de.in, "input series")->required();
  s_de->add_option("--mode", de.mode, "plain or eigen");
  s_de->add_option("--out", de.out, "output path");

  NablaCfg na;
  CLI::App* s_na = app.add_subcommand("nabla", "connection powers at the cusp");
  s_na->add_option("--in", na.in, "input series, depleted, with weight tag")
      ->required();
  s_na->add_option("--steps", na.steps, "apply the single step this many times");
  s_na->add_option("--nu-classical", na.nu_classical,
                   "interpolated power at an integer weight");
  s_na->add_option("--out", na.out, "output path");

  ColemanCfg co;
  CLI::App* s_co = app.add_subcommand("coleman", "primitive chain of a depleted series");
  s_co->add_option("--in", co.in, "input series, depleted")->required();
  s_co->add_option("--r", co.r, "chain depth")->required();
  s_co->add_option("--out", co.out, "output path");

  ValCfg va;
  CLI::App* s_va = app.add_subcommand("valuations", "height and radius table row");
  s_va->add_option("--p", va.p, "odd prime")->required();
  s_va->add_option("--case", va.cas, "inert or ramified");
  s_va->add_option("--n", va.n, "level exponent");
  s_va->add_flag("--analytic", va.analytic, "radius row for analytic weights");
  s_va->add_option("--out", va.out, "output path");

  LsumCfg ls;
  CLI::App* s_ls = app.add_subcommand("lsum", "assembled level sum of an oracle");
  s_ls->add_option("--oracle", ls.oracle, "oracle file; context read from it");
  add_group_flags(s_ls, ls.g);
  s_ls->add_option("--weight", ls.weight, "oracle weight, mock mode");
  s_ls->add_option("--nu", ls.nu, "oracle twist index, mock mode");
  s_ls->add_option("--mock-seed", ls.mock_seed, "seed for the mock oracle");
  s_ls->add_option("--dump-oracle", ls.dump_oracle,
                   "write the mock oracle to this path");
  s_ls->add_option("--ntype", ls.ntype, "first infinity-type entry");
  s_ls->add_option("--mtype", ls.mtype, "second infinity-type entry");
  s_ls->add_option("--eps", ls.eps, "nebentype index, trivial when absent");
  s_ls->add_option("--fexp", ls.fexp, "finite part as comma-joined exponents");
  s_ls->add_option("--cond", ls.cond,
                   "pick the first character with this conductor p-part");
  s_ls->add_option("--prec", ls.prec, "working relative precision");
  s_ls->add_option("--min-prec", ls.min_prec,
                   "fail with the precision status below this certificate");
  s_ls->add_flag("--raw", ls.raw, "skip the admissibility gate");
  s_ls->add_option("--out", ls.out, "output path");

  CLI::App* s_ck = app.add_subcommand("check", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*s_cg) return run_classgroup(cg);
    if (*s_hg) return run_hgroup(hg);
    if (*s_ch) return run_chars(ch);
    if (*s_ei) return run_eisenstein(ei);
    if (*s_de) return run_deplete(de);
    if (*s_na) return run_nabla(na);
    if (*s_co) return run_coleman(co);
    if (*s_va) return run_valuations(va);
    if (*s_ls) return run_lsum(ls);
    if (*s_ck) return run_criteria_table(std::cout) == 0 ? 0 : 2;
  } catch (const precision_error& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return 3;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
