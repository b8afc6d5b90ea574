#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <map>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gaussum/charsums.hpp"
#include "gaussum/equidist.hpp"
#include "gaussum/identities.hpp"
#include "gaussum/relations.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace gaussum;

// exit codes: 0 ok, 1 tolerance failure, 2 usage/parse error
constexpr int kOk = 0;
constexpr int kToleranceFailure = 1;
constexpr int kUsageError = 2;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_tuple(const std::vector<int64_t>& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    if (cur.empty()) continue;
    out.push_back(std::stoll(cur));
  }
  return out;
}

// "(1,-1)" or "1,-1"
std::vector<int64_t> parse_c_tuple(std::string text) {
  if (!text.empty() && text.front() == '(') text = text.substr(1, text.size() - 2);
  return parse_int_list(text);
}

// "5..97" or a comma list; primes only are kept for ranges
std::vector<int64_t> parse_prime_spec(const std::string& text) {
  const auto dots = text.find("..");
  std::vector<int64_t> out;
  if (dots == std::string::npos) {
    out = parse_int_list(text);
    for (int64_t v : out)
      if (!is_prime(v)) throw std::invalid_argument(std::to_string(v) + " is not prime");
    return out;
  }
  const int64_t lo = std::stoll(text.substr(0, dots));
  const int64_t hi = std::stoll(text.substr(dots + 2));
  for (int64_t v = lo; v <= hi; ++v)
    if (is_prime(v)) out.push_back(v);
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  os << content;
}

void emit_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text(out_path, content);
}

// one manifest per file-writing run; identical manifests imply bit-identical CSV
void emit_manifest(const std::string& out_path, const std::string& manifest_path, json config) {
  std::string path = manifest_path;
  if (path.empty()) {
    if (out_path.empty()) return;
    path = out_path + ".manifest.json";
  }
  json manifest;
  manifest["version"] = {{"gaussum", kVersion}};
  manifest["config"] = std::move(config);
  write_text(path, manifest.dump(2) + "\n");
}

int cmd_verify(const std::vector<int64_t>& fields, double tol, int64_t jacobi_tuples,
               int64_t lift_cap) {
  if (fields.empty()) {
    std::cerr << "error: empty field list\n";
    return kUsageError;
  }
  IdentitySuiteOptions opt;
  opt.jacobi_max_tuples = jacobi_tuples;
  opt.lifting_order_cap = lift_cap;
  bool ok = true;
  std::printf("%-8s %-18s %14s %10s %10s\n", "field", "identity", "residual", "sweep", "seconds");
  for (int64_t q : fields) {
    for (const auto& rep : run_identity_suite(q, opt)) {
      const bool pass = rep.residual <= tol;
      ok = ok && pass;
      std::printf("%-8s %-18s %14.3e %10" PRId64 " %10.3f%s\n", rep.field.c_str(),
                  rep.identity.c_str(), rep.residual, rep.sweep_size, rep.seconds,
                  pass ? "" : "  FAIL");
    }
  }
  std::printf("%s (tolerance %.1e)\n", ok ? "all identities within tolerance" : "TOLERANCE FAILURE",
              tol);
  return ok ? kOk : kToleranceFailure;
}

int cmd_gauss(int64_t field, int64_t index, bool all, const std::string& alpha_spec,
              const std::string& out_path) {
  const auto [p, f] = split_prime_power(field);
  const FieldCtx ctx = make_field(p, f, 1);
  FieldCtx::Elem alpha = ctx.one();
  if (!alpha_spec.empty()) {
    if (alpha_spec.rfind("g^", 0) == 0)
      alpha = ctx.gen_pow(std::stoll(alpha_spec.substr(2)));
    else
      alpha = ctx.element_from_code(std::stoll(alpha_spec));
    if (ctx.is_zero(alpha)) throw std::invalid_argument("alpha must be nonzero");
  }
  std::string csv = "index,re,im,abs\n";
  auto row = [&](int64_t e, std::complex<double> g) {
    csv += std::to_string(e) + "," + fmt_double(g.real()) + "," + fmt_double(g.imag()) + "," +
           fmt_double(std::abs(g)) + "\n";
  };
  if (all) {
    const auto g = gauss_all_cached(ctx, alpha);
    for (int64_t e = 0; e < ctx.mult_order(); ++e) row(e, g[e]);
  } else {
    row(index, gauss_sum(ctx, mult_char(ctx, index), alpha));
  }
  emit_output(out_path, csv);
  return kOk;
}

int cmd_weyl(int64_t q, const std::string& entries_text, const std::string& c_spec, int64_t c_max,
             int64_t m_min, int64_t m_max, int calib, int threads, uint64_t seed,
             const std::string& out_path, const std::string& manifest_path) {
  const auto [p, f] = split_prime_power(q);
  const MonomialConfig config = parse_monomial_config(entries_text, p, q);

  std::vector<std::vector<int64_t>> c_list;
  if (!c_spec.empty()) {
    auto c = parse_c_tuple(c_spec);
    if (c.size() != config.entries.size())
      throw std::invalid_argument("c arity must match the number of entries");
    c_list.push_back(std::move(c));
  } else {
    // all 0 < ||c||_inf <= c_max, row-major
    const int64_t n = static_cast<int64_t>(config.entries.size());
    std::vector<int64_t> c(n, -c_max);
    while (true) {
      if (std::any_of(c.begin(), c.end(), [](int64_t v) { return v != 0; })) c_list.push_back(c);
      int64_t l = n - 1;
      while (l >= 0 && c[l] == c_max) c[l--] = -c_max;
      if (l < 0) break;
      ++c[l];
    }
  }

  std::string csv = "m,q,c,re,im,abs,s_size,a,rhs\n";
  std::map<int64_t, double> window_max;  // discrepancy proxy per level
  for (const auto& c : c_list) {
    for (const auto& rep : weyl_series(config, c, m_min, m_max, threads, calib)) {
      csv += std::to_string(rep.m) + "," + std::to_string(q) + ",\"" + fmt_tuple(rep.c) + "\"," +
             fmt_double(rep.sigma.real()) + "," + fmt_double(rep.sigma.imag()) + "," +
             fmt_double(std::abs(rep.sigma)) + "," + std::to_string(rep.s_size) + "," +
             std::to_string(rep.a_const) + "," + (rep.rhs ? fmt_double(*rep.rhs) : "") + "\n";
      auto [it, fresh] = window_max.emplace(rep.m, 0.0);
      it->second = std::max(it->second, std::abs(rep.sigma));
    }
  }
  if (c_spec.empty()) {
    // equidistribution verdict statistic: max |Sigma| over the c-window
    for (const auto& [m, proxy] : window_max)
      std::cerr << "discrepancy proxy m=" << m << ": " << fmt_double(proxy) << "\n";
  }
  emit_output(out_path, csv);
  emit_manifest(out_path, manifest_path,
                json{{"command", "weyl"},
                     {"q", q},
                     {"entries", to_text(config)},
                     {"c", c_spec},
                     {"c_max", c_max},
                     {"m_min", m_min},
                     {"m_max", m_max},
                     {"calibration_levels", calib},
                     {"threads", threads},
                     {"seed", seed},
                     {"tolerances", {{"identity", 1e-8}}},
                     {"output", out_path}});
  return kOk;
}

int cmd_sweep_q(const std::string& prime_spec, const std::string& entries_text,
                const std::string& c_spec, int64_t a_cap, int threads, uint64_t seed,
                const std::string& out_path, const std::string& manifest_path) {
  const std::vector<int64_t> primes = parse_prime_spec(prime_spec);
  if (primes.empty()) throw std::invalid_argument("empty prime list");

  std::string csv = "q,c,re,im,abs,s_size,a\n";
  for (int64_t q : primes) {
    // the grammar token q-1 expands per prime
    std::string text = entries_text;
    const std::string token = "q-1";
    for (size_t at = text.find(token); at != std::string::npos; at = text.find(token, at))
      text = text.replace(at, token.size(), std::to_string(q - 1));
    const MonomialConfig config = parse_monomial_config(text, q, q);
    enforce_exponent_cap(config, a_cap);
    auto c = parse_c_tuple(c_spec);
    if (c.size() != config.entries.size())
      throw std::invalid_argument("c arity must match the number of entries");
    if (double(q) <= 1.0 + double(a_constant(config))) {
      std::cerr << "note: skipping inadmissible prime q=" << q << " (q <= 1 + a)\n";
      continue;
    }
    const FieldCtx ctx = make_field(q, 1, 1);
    const auto cache = gauss_all_cached(ctx);
    const WeylReport rep = weyl_sum(config, c, ctx, cache, threads);
    csv += std::to_string(q) + ",\"" + fmt_tuple(rep.c) + "\"," + fmt_double(rep.sigma.real()) +
           "," + fmt_double(rep.sigma.imag()) + "," + fmt_double(std::abs(rep.sigma)) + "," +
           std::to_string(rep.s_size) + "," + std::to_string(rep.a_const) + "\n";
  }
  emit_output(out_path, csv);
  emit_manifest(out_path, manifest_path,
                json{{"command", "sweep-q"},
                     {"primes", prime_spec},
                     {"entries", entries_text},
                     {"c", c_spec},
                     {"a_cap", a_cap},
                     {"threads", threads},
                     {"seed", seed},
                     {"output", out_path}});
  return kOk;
}

json move_to_json(const Move& mv) {
  json j;
  j["kind"] = kind_name(mv.kind);
  j["eta"] = to_string(mv.eta);
  j["a"] = mv.a;
  if (mv.kind == Move::Kind::R) j["d"] = mv.d;
  j["exponent"] = mv.exponent;
  return j;
}

int cmd_decompose(const std::string& text, int64_t p, int64_t q, bool crosscheck,
                  const std::string& m_levels, int64_t samples, uint64_t seed,
                  const std::string& out_path) {
  const GaussMonomial x = parse_monomial(text, p, q);
  const DecomposeResult res = decompose(x);

  json j;
  j["input"] = to_text(x);
  j["p"] = p;
  j["q"] = q;
  j["r"] = x.r;
  j["verdict"] = res.in_h ? "InH" : "NotInH";
  j["mu_history"] = res.mu_history;
  if (res.in_h) {
    if (!verify_decomposition(x, res.decomposition))
      throw std::logic_error("internal error: certificate failed exact verification");
    j["moves"] = json::array();
    for (const auto& mv : res.decomposition.moves) j["moves"].push_back(move_to_json(mv));
    const auto [pp, f] = split_prime_power(q);
    const FieldCtx level1 = make_field(pp, f, 1);
    const ConstancyData cd = derive_constancy(res.decomposition, x.r, p, level1, level1);
    j["t_constants"] = cd.t_const;
    j["D"] = {{"re", cd.d_value.real()}, {"im", cd.d_value.imag()}};
    if (crosscheck) {
      j["crosscheck"] = json::array();
      for (int64_t m : parse_int_list(m_levels)) {
        const FieldCtx ctx = make_field(pp, f, m);
        const double dev = numeric_crosscheck(x, res.decomposition, ctx, level1, samples, seed);
        j["crosscheck"].push_back({{"m", m}, {"deviation", dev}});
      }
    }
  } else {
    j["witness"] = {
        {"kind", res.witness.kind == NotInHWitness::Kind::Independent ? "independent" : "blocked"},
        {"detail", res.witness.detail},
        {"pivot_trace", res.witness.pivot_trace}};
  }
  const std::string payload = j.dump(2) + "\n";
  emit_output(out_path, payload);
  if (!out_path.empty()) std::cout << (res.in_h ? "InH" : "NotInH") << "\n";
  return kOk;
}

int cmd_jacobi(const std::string& preset_name, int64_t q, int64_t n, const std::string& d_spec,
               int64_t free_count, const std::string& etas_spec, int64_t m_min, int64_t m_max,
               int64_t c_max, int threads, const std::string& out_path,
               const std::string& manifest_path) {
  JacobiPresetSpec spec;
  spec.preset = parse_preset(preset_name);
  spec.n = n;
  spec.free_count = free_count;
  if (!d_spec.empty()) spec.d = parse_int_list(d_spec);
  if (!etas_spec.empty()) {
    std::stringstream groups(etas_spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
      std::vector<LimitCharacter> etas;
      std::stringstream items(group);
      std::string item;
      while (std::getline(items, item, ',')) etas.push_back(parse_limit_char(item));
      spec.fixed_etas.push_back(std::move(etas));
    }
  }
  const auto [p, f] = split_prime_power(q);

  std::string csv = "m,c,re,im,abs,s_size\n";
  for (const auto& row : jacobi_preset_series(spec, p, q, m_min, m_max, c_max, threads)) {
    csv += std::to_string(row.m) + ",\"" + fmt_tuple(row.c) + "\"," +
           fmt_double(row.sigma.real()) + "," + fmt_double(row.sigma.imag()) + "," +
           fmt_double(std::abs(row.sigma)) + "," + std::to_string(row.s_size) + "\n";
  }
  emit_output(out_path, csv);
  emit_manifest(out_path, manifest_path,
                json{{"command", "jacobi"},
                     {"preset", preset_name},
                     {"q", q},
                     {"n", n},
                     {"d", d_spec},
                     {"free_count", free_count},
                     {"etas", etas_spec},
                     {"m_min", m_min},
                     {"m_max", m_max},
                     {"c_max", c_max},
                     {"threads", threads},
                     {"output", out_path}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss sums over finite fields: identity verification, Weyl-sum "
               "equidistribution experiments, and relation decomposition"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file");

  // verify
  auto* verify = app.add_subcommand("verify", "run the identity suite over a field list");
  std::vector<int64_t> fields{5, 7, 9, 13, 25, 27};
  double tol = 1e-8;
  int64_t jacobi_tuples = 4000, lift_cap = 1 << 15;
  verify->add_option("--fields", fields, "prime power field sizes")->delimiter(',');
  verify->add_option("--tol", tol, "residual tolerance");
  verify->add_option("--jacobi-tuples", jacobi_tuples, "jacobi sweep budget per field");
  verify->add_option("--lift-cap", lift_cap, "largest tower order for lifting checks");

  // gauss
  auto* gauss = app.add_subcommand("gauss", "dump Gauss sums (single or batch)");
  int64_t g_field = 5, g_index = 0;
  bool g_all = false;
  std::string g_alpha, g_out;
  gauss->add_option("--field", g_field, "field size q^m")->required();
  gauss->add_option("--index", g_index, "character index");
  gauss->add_flag("--all", g_all, "dump the whole character sweep");
  gauss->add_option("--alpha", g_alpha, "additive twist: element code or g^k");
  gauss->add_option("--out", g_out, "output CSV path (default stdout)");

  // weyl
  auto* weyl = app.add_subcommand("weyl", "Weyl sums of normalized Gauss-sum tuples over levels");
  int64_t w_q = 3, w_cmax = 3, w_mmin = 1, w_mmax = 6;
  int w_calib = 2, w_threads = 0;
  uint64_t w_seed = 1;
  std::string w_entries, w_c, w_out, w_manifest;
  weyl->add_option("--q", w_q, "level-1 field size")->required();
  weyl->add_option("--entries", w_entries, "monomial config, e.g. \"[eta=0/1; a=(1)]*[eta=0/1; a=(2)]\"")
      ->required();
  weyl->add_option("--c", w_c, "single exponent tuple, e.g. \"(1,-1)\"");
  weyl->add_option("--cmax", w_cmax, "window: all 0 < ||c||_inf <= cmax (when --c absent)");
  weyl->add_option("--m-min", w_mmin, "first level");
  weyl->add_option("--m-max", w_mmax, "last level");
  weyl->add_option("--calib", w_calib, "levels used to fit the bound constant");
  weyl->add_option("--threads", w_threads, "parallelism degree (0 = cores)");
  weyl->add_option("--seed", w_seed, "recorded in the manifest");
  weyl->add_option("--out", w_out, "output CSV path (default stdout)");
  weyl->add_option("--manifest", w_manifest, "manifest JSON path");

  // sweep-q
  auto* sweep = app.add_subcommand("sweep-q", "|Sigma_1| across primes of increasing size");
  std::string s_primes = "5..97", s_entries, s_c = "(1,-1)", s_out, s_manifest;
  int64_t s_acap = 8;
  int s_threads = 0;
  uint64_t s_seed = 1;
  sweep->add_option("--primes", s_primes, "range lo..hi or comma list");
  sweep->add_option("--entries", s_entries, "config; a-entries may use the token q-1")->required();
  sweep->add_option("--c", s_c, "exponent tuple");
  sweep->add_option("--amax", s_acap, "uniform cap A on |a_ij|");
  sweep->add_option("--threads", s_threads, "parallelism degree (0 = cores)");
  sweep->add_option("--seed", s_seed, "recorded in the manifest");
  sweep->add_option("--out", s_out, "output CSV path (default stdout)");
  sweep->add_option("--manifest", s_manifest, "manifest JSON path");

  // decompose
  auto* dec = app.add_subcommand("decompose", "decide membership in the relation subgroup");
  std::string d_text, d_levels = "1,2", d_out;
  int64_t d_p = 0, d_q = 0, d_samples = 0;
  uint64_t d_seed = 1;
  bool d_crosscheck = false;
  dec->add_option("monomial", d_text, "e.g. \"[eta=0/1; a=(2)]*[eta=0/1; a=(1); exp=-1]\"")
      ->required();
  dec->add_option("--p", d_p, "characteristic")->required();
  dec->add_option("--q", d_q, "base field size p^f")->required();
  dec->add_flag("--crosscheck", d_crosscheck, "append numeric constancy deviations");
  dec->add_option("--m-levels", d_levels, "levels for the crosscheck");
  dec->add_option("--samples", d_samples, "crosscheck sample budget (0 = full enumeration)");
  dec->add_option("--seed", d_seed, "crosscheck sampling seed");
  dec->add_option("--out", d_out, "certificate JSON path (default stdout)");

  // jacobi
  auto* jac = app.add_subcommand("jacobi", "corollary-derived normalized Jacobi experiments");
  std::string j_preset = "all_free", j_d, j_etas, j_out, j_manifest;
  int64_t j_q = 3, j_n = 2, j_free = 1, j_mmin = 1, j_mmax = 4, j_cmax = 3;
  int j_threads = 0;
  jac->add_option("--preset", j_preset, "all_free | fixed_tail | powers");
  jac->add_option("--q", j_q, "base field size")->required();
  jac->add_option("--n", j_n, "all_free: number of free characters");
  jac->add_option("--d", j_d, "powers: comma list of exponents");
  jac->add_option("--free-count", j_free, "fixed_tail: number of free characters");
  jac->add_option("--etas", j_etas, "fixed_tail: groups 'u/v,u/v;u/v' of fixed characters");
  jac->add_option("--m-min", j_mmin, "first level");
  jac->add_option("--m-max", j_mmax, "last level");
  jac->add_option("--cmax", j_cmax, "Weyl window bound");
  jac->add_option("--threads", j_threads, "parallelism degree (0 = cores)");
  jac->add_option("--out", j_out, "output CSV path (default stdout)");
  jac->add_option("--manifest", j_manifest, "manifest JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (verify->parsed())
      return cmd_verify(fields, tol, jacobi_tuples, lift_cap);
    if (gauss->parsed()) return cmd_gauss(g_field, g_index, g_all, g_alpha, g_out);
    if (weyl->parsed())
      return cmd_weyl(w_q, w_entries, w_c, w_cmax, w_mmin, w_mmax, w_calib, w_threads, w_seed,
                      w_out, w_manifest);
    if (sweep->parsed())
      return cmd_sweep_q(s_primes, s_entries, s_c, s_acap, s_threads, s_seed, s_out, s_manifest);
    if (dec->parsed())
      return cmd_decompose(d_text, d_p, d_q, d_crosscheck, d_levels, d_samples, d_seed, d_out);
    if (jac->parsed())
      return cmd_jacobi(j_preset, j_q, j_n, j_d, j_free, j_etas, j_mmin, j_mmax, j_cmax, j_threads,
                        j_out, j_manifest);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsageError;
  }
  return kOk;
}
