#include "dmf/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dmf/cochain_cache.hpp"
#include "dmf/factor.hpp"
#include "dmf/hecke.hpp"
#include "dmf/invariants.hpp"
#include "dmf/maeda.hpp"
#include "dmf/reps.hpp"

namespace dmf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kSchema = 1;

// field elements as base-p digit vectors, polynomials lowest degree first
json elt_json(const GF& F, Elt a) { return F.digits(a); }

json poly_json(const GF& F, const Poly& a) {
  json out = json::array();
  for (Elt x : a) out.push_back(elt_json(F, x));
  return out;
}

json bipoly_json(const GF& F, const BiPoly& f) {
  json out = json::array();
  for (const auto& c : f) out.push_back(poly_json(F, c));
  return out;
}

json galois_json(const GaloisCertificate& g) {
  json types = json::array();
  for (const auto& [parts, n] : g.types) types.push_back({{"cycle_type", parts}, {"count", n}});
  return {{"degree", g.degree},
          {"trials", g.trials},
          {"full_cycle", g.saw_full_cycle},
          {"transposition", g.saw_transposition},
          {"large_prime_cycle", g.saw_prime_cycle},
          {"certified", g.certified},
          {"confidence", g.confidence},
          {"verdict", g.verdict},
          {"cycle_types", types}};
}

json factor_json(const GF& F, const BiPoly& f, int mult) {
  return {{"degree", bipoly::deg(f)},
          {"multiplicity", mult},
          {"coefficients", bipoly_json(F, f)},
          {"text", bipoly::to_string(F, f)}};
}

json residual_json(const GF& F, const std::vector<ResidualFactor>& rs) {
  json out = json::array();
  for (const auto& r : rs) {
    json j = factor_json(F, r.f, r.mult);
    j["galois"] = galois_json(r.galois);
    out.push_back(std::move(j));
  }
  return out;
}

json poly_list_json(const GF& F, const std::vector<Poly>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back({{"coefficients", poly_json(F, a)}, {"text", poly::to_string(F, a)}});
  return out;
}

template <class T>
T param(const JobConfig& c, const char* name) {
  if (!c.params.contains(name)) throw UsageError(c.command + ": missing --" + std::string(name));
  return c.params.at(name).get<T>();
}

void check_weight(std::uint32_t q, int k, int l) {
  if (k < 0) throw UsageError("k must be non-negative");
  const int qm1 = static_cast<int>(q) - 1;
  if (q % 2 == 1 && k % 2 != 0)
    throw UsageError("space is zero by odd-weight vanishing (k = " + std::to_string(k) + " odd, q odd)");
  if (((k - 2 * l) % qm1 + qm1) % qm1 != 0)
    throw UsageError("space is zero: k must be congruent to 2l modulo q-1");
}

// "t", "t-c", "t+c" with c an element index in [0, q)
Elt parse_prime(const GF& F, const std::string& s) {
  std::string x;
  for (char ch : s)
    if (ch != ' ') x += ch;
  if (x == "t") return 0;
  if (x.size() > 2 && x[0] == 't' && (x[1] == '-' || x[1] == '+')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(x.substr(2), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == x.size() - 2 && v < F.size()) {
      const Elt c = static_cast<Elt>(v);
      return x[1] == '-' ? c : F.neg(c);
    }
  }
  throw UsageError("prime must be t, t-c or t+c with 0 <= c < q (got '" + s + "')");
}

struct Ctx {
  const JobConfig& cfg;
  GFPtr F;
  std::unique_ptr<JsonStore> store;
  bool cochain_hit = true;

  CochainSpace cochains(int k, int l) {
    if (!store) {
      cochain_hit = false;
      return cochain_space(cfg.q, k, l);
    }
    bool hit = false;
    CochainSpace S = cached_cochain_space(*store, cfg.q, k, l, &hit);
    cochain_hit = cochain_hit && hit;
    return S;
  }
};

json do_rep_info(Ctx& x, bool&) {
  const int k = param<int>(x.cfg, "k");
  const int m = param<int>(x.cfg, "m");
  const bool dual = x.cfg.params.value("dual", false);
  if (k < 0) throw UsageError("k must be non-negative");
  const int qm1 = static_cast<int>(x.cfg.q) - 1;
  json cons = json::array();
  for (const auto& c : decompose_delta(x.cfg.q, k, m)) {
    // (L_k' ⊗ det^m')^* ≅ L_k' ⊗ det^{-k'-m'}
    const int mm = ((dual ? -c.k - c.m : c.m) % qm1 + qm1) % qm1;
    cons.push_back({{"k", c.k}, {"m", mm}});
  }
  return {{"dim", k + 1},
          {"dual", dual},
          {"lk_dim", lk_dim(x.cfg.p, static_cast<std::uint64_t>(k))},
          {"lk_xexps", lk_basis(x.cfg.q, k).xexps},
          {"e_set", e_set(x.cfg.p, k)},
          {"constituents", cons}};
}

json do_dim(Ctx& x, bool& passed) {
  const int lo = param<int>(x.cfg, "k_lo"), hi = param<int>(x.cfg, "k_hi");
  const std::string method = x.cfg.params.value("method", "all");
  if (lo < 0 || hi < lo) throw UsageError("k-range must be lo..hi with 0 <= lo <= hi");
  const std::uint32_t q = x.cfg.q;
  const bool closed_ok = q == 2 || q == 3 || q == 5;
  const bool want_closed = method == "closed" || (method == "all" && closed_ok);
  const bool want_inv = method == "invariants" || method == "all";
  const bool want_k0 = method == "k0" || method == "all";
  if (method == "closed" && !closed_ok) throw UsageError("closed formulas exist only for q in {2, 3, 5}");
  json rows = json::array();
  for (int k = lo; k <= hi; ++k) {
    json row{{"k", k}};
    std::vector<std::int64_t> vals;
    if (want_closed) vals.push_back(row["closed"] = dim_lk_closed(q, k));
    if (want_inv) vals.push_back(row["invariants"] = hom_st_dim_lk(q, k));
    if (want_k0) vals.push_back(row["k0"] = dim_lk_k0(q, k));
    bool agree = true;
    for (auto v : vals) agree = agree && v == vals.front();
    row["agree"] = agree;
    passed = passed && agree;
    rows.push_back(std::move(row));
  }
  return {{"method", method}, {"rows", rows}, {"all_agree", passed}};
}

json do_cochain(Ctx& x, bool&) {
  const int k = param<int>(x.cfg, "k"), l = param<int>(x.cfg, "l");
  check_weight(x.cfg.q, k, l);
  CochainSpace S = x.cochains(k, l);
  json basis = json::array();
  for (const auto& v : S.basis) {
    json row = json::array();
    for (Elt e : v) row.push_back(elt_json(*x.F, e));
    basis.push_back(std::move(row));
  }
  return {{"dim", S.dim()}, {"support_bound", S.support_bound}, {"pivots", S.pivots}, {"basis", basis}};
}

json do_hecke_charpoly(Ctx& x, bool&) {
  const int k = param<int>(x.cfg, "k"), l = param<int>(x.cfg, "l");
  check_weight(x.cfg.q, k, l);
  const Elt c = parse_prime(*x.F, x.cfg.params.value("prime", std::string("t")));
  CochainSpace S = x.cochains(k, l);
  HeckeMatrix H = hecke_matrix(S, c);
  BiPoly cp = hecke_charpoly(*x.F, H);
  FactorOptions fo;
  fo.seed = x.cfg.seed;
  fo.galois_trials = x.cfg.params.value("galois_trials", std::size_t{500});
  FactoredCharPoly fc = bivariate_factor(*x.F, cp, fo);
  json factors = json::array(), certs = json::array();
  for (const auto& f : fc.factors) {
    factors.push_back(factor_json(*x.F, f.f, f.mult));
    if (bipoly::deg(f.f) >= 2 && fo.galois_trials > 0) {
      json g = galois_json(f.galois);
      g["factor"] = bipoly::to_string(*x.F, f.f);
      certs.push_back(std::move(g));
    }
  }
  const Poly prime_poly{x.F->neg(c), 1};
  return {{"dim", S.dim()},
          {"alpha", H.alpha},
          {"prime", poly::to_string(*x.F, prime_poly)},
          {"charpoly", bipoly_json(*x.F, cp)},
          {"charpoly_text", bipoly::to_string(*x.F, cp)},
          {"factors", factors},
          {"galois_certificates", certs}};
}

json do_hecke_check(Ctx& x, bool& passed) {
  const std::string kind = param<std::string>(x.cfg, "kind");
  const int k = param<int>(x.cfg, "k"), l = param<int>(x.cfg, "l");
  check_weight(x.cfg.q, k, l);
  IntertwineReport r;
  if (kind == "ds")
    r = check_ds_intertwine(x.cfg.q, k, l, param<int>(x.cfg, "s"));
  else if (kind == "frobenius")
    r = check_frobenius(x.cfg.q, k, l);
  else
    throw UsageError("--kind must be ds or frobenius");
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"source", bipoly::to_string(*x.F, p.source)},
                     {"target", bipoly::to_string(*x.F, p.target)},
                     {"multiplicity", p.mult},
                     {"map_nonzero", p.map_nonzero},
                     {"divides_target", p.divides},
                     {"matched", !p.map_nonzero || p.divides}});
  passed = r.ok();
  return {{"kind", r.kind},
          {"source", {{"k", r.k_src}, {"l", r.l_src}, {"dim", r.dim_src}}},
          {"target", {{"k", r.k_tgt}, {"l", r.l_tgt}, {"dim", r.dim_tgt}}},
          {"s", r.s},
          {"zero_map", r.zero_map},
          {"image_in_space", r.image_in_space},
          {"commutes", r.commutes},
          {"pairs", pairs},
          {"detail", r.detail},
          {"verdict", passed ? "pass" : "fail"}};
}

void check_n(const JobConfig& c, int n, bool verify) {
  if (c.q != 3) throw UsageError("maeda commands work over F_3 (use --q 3)");
  if (n < 2) throw UsageError("n must be at least 2");
  if (!verify && n > 12) throw UsageError("maeda predict supports n <= 12");
  if (verify && n >= 5 && !c.extended) throw UsageError("maeda verify for n >= 5 needs --extended");
  if (verify && n > 6) throw UsageError("maeda verify supports n <= 6");
}

json do_maeda_predict(Ctx& x, bool&) {
  const int n = param<int>(x.cfg, "n");
  check_n(x.cfg, n, false);
  SpecialPrediction P = special_eigenvalues(n);
  return {{"n", n},
          {"k", P.k},
          {"l", P.l},
          {"count", P.eigenvalues.size()},
          {"s_n", s_n_formula(n)},
          {"signs", P.signs},
          {"predicted", poly_list_json(*x.F, P.eigenvalues)}};
}

json do_maeda_verify(Ctx& x, bool& passed) {
  const int n = param<int>(x.cfg, "n");
  check_n(x.cfg, n, true);
  MaedaOptions mo;
  mo.seed = x.cfg.seed;
  mo.galois_trials = x.cfg.params.value("galois_trials", std::size_t{200});
  MaedaReport R = verify_weight(n, mo);
  passed = R.pass();
  return {{"n", R.n},
          {"k", R.k},
          {"l", R.l},
          {"dim", R.dim},
          {"dim_opposite", R.dim_opposite},
          {"predicted", poly_list_json(*x.F, R.predicted)},
          {"found_linear", poly_list_json(*x.F, R.found_linear)},
          {"stripped_single_cusp", R.stripped_single_cusp},
          {"residual_factors", residual_json(*x.F, R.residual)},
          {"opposite_linear", poly_list_json(*x.F, R.opposite_linear)},
          {"opposite_residual_factors", residual_json(*x.F, R.opposite_residual)},
          {"galois_all_certified", R.galois_all_certified},
          {"diff", R.diff},
          {"verdict", passed ? "pass" : "fail"}};
}

void atomic_write(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot write " + p.string());
  }
}

}  // namespace

json ResultRecord::to_json() const {
  return {{"schema", kSchema},     {"command", command},         {"inputs", inputs},
          {"outputs", outputs},    {"wall_time", wall_time},     {"code_version", code_version},
          {"cache_hit", cache_hit}, {"verdict", passed ? "pass" : "fail"}};
}

ResultRecord run(const JobConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint32_t p = 0, e = 0;
  {
    std::uint32_t q = cfg.q;
    for (std::uint32_t d = 2; d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    if (cfg.q < 2 || p == 0) throw UsageError("q must be a prime power");
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    if (q != 1) throw UsageError("q = " + std::to_string(cfg.q) + " is not a prime power");
    if (cfg.q > 64) throw UsageError("q must be at most 64");
  }
  JobConfig c = cfg;
  c.p = p;
  c.e = e;

  ResultRecord rec;
  rec.command = c.command;
  rec.code_version = kCodeVersion;
  rec.inputs = c.params;
  rec.inputs["q"] = c.q;
  rec.inputs["seed"] = c.seed;
  rec.inputs["extended"] = c.extended;

  Ctx x{c, gf_of(c.q), nullptr};
  if (c.use_cache) x.store = std::make_unique<JsonStore>(c.cache_dir.empty() ? default_cache_dir() : c.cache_dir, c.warn);

  const json key{{"kind", "result"}, {"command", c.command}, {"inputs", rec.inputs}, {"version", kCodeVersion}};
  if (x.store)
    if (auto hit = x.store->get(key); hit && hit->contains("outputs") && hit->contains("passed")) {
      rec.outputs = (*hit)["outputs"];
      rec.passed = (*hit)["passed"].get<bool>();
      rec.cache_hit = true;
      rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rec;
    }

  using Handler = json (*)(Ctx&, bool&);
  static const std::map<std::string, Handler> handlers{
      {"rep info", do_rep_info},           {"dim", do_dim},
      {"cochain", do_cochain},             {"hecke charpoly", do_hecke_charpoly},
      {"hecke check", do_hecke_check},     {"maeda predict", do_maeda_predict},
      {"maeda verify", do_maeda_verify}};
  auto it = handlers.find(c.command);
  if (it == handlers.end()) throw UsageError("unknown command '" + c.command + "'");
  try {
    rec.outputs = it->second(x, rec.passed);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("bad parameter: ") + ex.what());
  }
  if (x.store) x.store->put(key, {{"outputs", rec.outputs}, {"passed", rec.passed}});
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::string dim_csv(const ResultRecord& r) {
  std::ostringstream os;
  os << "q,k,closed,invariants,k0,agree\n";
  const auto q = r.inputs.at("q").get<std::uint32_t>();
  for (const auto& row : r.outputs.at("rows")) {
    os << q << ',' << row.at("k").get<int>();
    for (const char* m : {"closed", "invariants", "k0"}) {
      os << ',';
      if (row.contains(m)) os << row.at(m).get<std::int64_t>();
    }
    os << ',' << (row.at("agree").get<bool>() ? "true" : "false") << '\n';
  }
  return os.str();
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic cochains, Hecke operators and special eigenvalues over F_q[t]", "dmf"};
  app.require_subcommand(1);
  app.fallthrough();

  JobConfig cfg;
  std::string cache_dir, format, out_path;
  bool no_cache = false;
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--cache-dir", cache_dir, "cache directory (default: $DMF_CACHE_DIR or ~/.cache/dmf)");
  app.add_flag("--no-cache", no_cache, "neither read nor write the cache");
  app.add_option("--format", format, "json or csv (csv only for dim)")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "also write the result record to this file");
  app.add_flag("--extended", cfg.extended, "allow long-running jobs");

  json& P = cfg.params;
  int k = 0, l = 0, m = 0, n = 0, s = 0;
  std::string k_range, method = "all", prime = "t", kind;
  bool dual = false;
  std::size_t trials = 0;

  auto add_q = [&](CLI::App* a) { a->add_option("--q", cfg.q, "field size")->required(); };

  auto* rep = app.add_subcommand("rep", "representation data");
  rep->require_subcommand(1);
  rep->fallthrough();
  auto* rep_info = rep->add_subcommand("info", "dimension, L_k and constituents of Δ_k ⊗ det^m");
  add_q(rep_info);
  rep_info->add_option("--k", k)->required();
  rep_info->add_option("--m", m)->capture_default_str();
  rep_info->add_flag("--dual", dual);

  auto* dim = app.add_subcommand("dim", "Steinberg multiplicities in L_k by several methods");
  add_q(dim);
  dim->add_option("--k-range", k_range, "lo..hi")->required();
  dim->add_option("--method", method)->check(CLI::IsMember({"closed", "invariants", "k0", "all"}))->capture_default_str();

  auto* coch = app.add_subcommand("cochain", "invariant harmonic cochains");
  add_q(coch);
  coch->add_option("--k", k)->required();
  coch->add_option("--l", l)->required();

  auto* hecke = app.add_subcommand("hecke", "Hecke operators");
  hecke->require_subcommand(1);
  hecke->fallthrough();
  auto* hcp = hecke->add_subcommand("charpoly", "factored characteristic polynomial of T_p");
  add_q(hcp);
  hcp->add_option("--k", k)->required();
  hcp->add_option("--l", l)->required();
  hcp->add_option("--prime", prime, "t, t-c or t+c")->capture_default_str();
  hcp->add_option("--galois-trials", trials, "Frobenius samples per factor (default 500)");
  auto* hck = hecke->add_subcommand("check", "compare Hecke data across an intertwining map");
  add_q(hck);
  hck->add_option("--kind", kind)->required()->check(CLI::IsMember({"ds", "frobenius"}));
  hck->add_option("--k", k)->required();
  hck->add_option("--l", l)->required();
  hck->add_option("--s", s, "hyperderivative order (ds only)");

  auto* maeda = app.add_subcommand("maeda", "special eigenvalues at weights 1 + 3^n");
  maeda->require_subcommand(1);
  maeda->fallthrough();
  auto* mp = maeda->add_subcommand("predict", "predicted special eigenvalues");
  mp->add_option("--n", n)->required();
  auto* mv = maeda->add_subcommand("verify", "compare predictions with the Hecke charpoly");
  mv->add_option("--n", n)->required();
  mv->add_option("--galois-trials", trials, "Frobenius samples per factor (default 200)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (rep_info->parsed()) {
      cfg.command = "rep info";
      P = {{"k", k}, {"m", m}, {"dual", dual}};
    } else if (dim->parsed()) {
      cfg.command = "dim";
      const auto dots = k_range.find("..");
      int lo = 0, hi = 0;
      try {
        if (dots == std::string::npos) throw std::invalid_argument("");
        lo = std::stoi(k_range.substr(0, dots));
        hi = std::stoi(k_range.substr(dots + 2));
      } catch (const std::exception&) {
        throw UsageError("--k-range must look like lo..hi");
      }
      P = {{"k_lo", lo}, {"k_hi", hi}, {"method", method}};
    } else if (coch->parsed()) {
      cfg.command = "cochain";
      P = {{"k", k}, {"l", l}};
    } else if (hcp->parsed()) {
      cfg.command = "hecke charpoly";
      P = {{"k", k}, {"l", l}, {"prime", prime}};
      if (trials) P["galois_trials"] = trials;
    } else if (hck->parsed()) {
      cfg.command = "hecke check";
      P = {{"kind", kind}, {"k", k}, {"l", l}};
      if (kind == "ds") {
        if (hck->count("--s") == 0) throw UsageError("hecke check --kind ds needs --s");
        P["s"] = s;
      }
    } else if (mp->parsed() || mv->parsed()) {
      cfg.command = mp->parsed() ? "maeda predict" : "maeda verify";
      cfg.q = 3;
      P = {{"n", n}};
      if (mv->parsed() && trials) P["galois_trials"] = trials;
    }
    if (format.empty()) format = cfg.command == "dim" ? "csv" : "json";
    if (format == "csv" && cfg.command != "dim") throw UsageError("--format csv is only available for dim");
    cfg.format = format;
    cfg.use_cache = !no_cache;
    cfg.cache_dir = cache_dir;
    cfg.warn = [&err](const std::string& m) { err << m << '\n'; };

    ResultRecord rec = run(cfg);
    if (format == "csv")
      out << dim_csv(rec);
    else
      out << rec.to_json().dump(2) << '\n';
    if (!out_path.empty()) atomic_write(out_path, rec.to_json().dump(2) + "\n");
    if (!rec.passed) err << "verification failed\n";
    return rec.passed ? 0 : 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dmf
