#include "gaussum/equidist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gaussum/charsums.hpp"
#include "gaussum/summation.hpp"

namespace gaussum {

TSpec t_one() { return {TSpec::Kind::One, 1}; }
TSpec t_constant(int64_t c) { return {TSpec::Kind::Constant, c}; }
TSpec t_gen_power(int64_t s) { return {TSpec::Kind::GenPower, s}; }

int64_t t_dlog(const TSpec& t, const FieldCtx& ctx) {
  const int64_t M = ctx.mult_order();
  switch (t.kind) {
    case TSpec::Kind::One:
      return 0;
    case TSpec::Kind::Constant: {
      const auto elem = ctx.from_int(t.value);
      if (ctx.is_zero(elem)) throw std::invalid_argument("t constant is zero mod p");
      return ctx.dlog(elem);
    }
    case TSpec::Kind::GenPower: {
      const int64_t ratio = M / (ctx.q() - 1);
      return ((t.value % M) + M) % M * ratio % M;
    }
  }
  throw std::logic_error("unreachable");
}

std::string to_string(const TSpec& t) {
  switch (t.kind) {
    case TSpec::Kind::One:
      return "1";
    case TSpec::Kind::Constant:
      return std::to_string(t.value);
    case TSpec::Kind::GenPower:
      return "g^" + std::to_string(t.value);
  }
  return "?";
}

void validate(const MonomialConfig& config) {
  if (config.r < 1) throw std::invalid_argument("config dimension r must be >= 1");
  if (config.entries.empty()) throw std::invalid_argument("config has no entries");
  const auto [p, f] = split_prime_power(config.q);
  if (p != config.p) throw std::invalid_argument("config q is not a power of config p");
  for (const auto& entry : config.entries) {
    if (static_cast<int64_t>(entry.a.size()) != config.r)
      throw std::invalid_argument("entry a-tuple has wrong arity");
    if (std::all_of(entry.a.begin(), entry.a.end(), [](int64_t v) { return v == 0; }))
      throw std::invalid_argument("entry a-tuple is zero");
    if ((config.q - 1) % entry.eta.den != 0)
      throw std::invalid_argument("eta " + to_string(entry.eta) + " is not defined over F_q");
    if (!entry.t.empty() && static_cast<int64_t>(entry.t.size()) != config.r)
      throw std::invalid_argument("entry t-tuple has wrong arity");
    for (const auto& t : entry.t)
      if (t.kind == TSpec::Kind::Constant && t.value % config.p == 0)
        throw std::invalid_argument("t constant is zero mod p");
  }
}

namespace {

class ConfigParser {
 public:
  ConfigParser(const std::string& text, int64_t p, int64_t q) : text_(text), p_(p), q_(q) {}

  MonomialConfig parse() {
    MonomialConfig config;
    config.p = p_;
    config.q = q_;
    skip_ws();
    config.entries.push_back(parse_entry());
    skip_ws();
    while (!done()) {
      expect('*');
      skip_ws();
      config.entries.push_back(parse_entry());
      skip_ws();
    }
    config.r = static_cast<int64_t>(config.entries.front().a.size());
    validate(config);
    return config;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("config parse error at position " + std::to_string(pos_) + ": " +
                                what);
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  int64_t parse_int() {
    skip_ws();
    const size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    const size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }
  void expect_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) != 0) fail("expected '" + w + "'");
    pos_ += w.size();
  }
  TSpec parse_t() {
    skip_ws();
    if (peek() == 'g') {
      ++pos_;
      expect('^');
      return t_gen_power(parse_int());
    }
    const int64_t c = parse_int();
    return (c == 1) ? t_one() : t_constant(c);
  }

  MonomialEntry parse_entry() {
    MonomialEntry entry;
    expect('[');
    expect_word("eta");
    skip_ws();
    expect('=');
    const int64_t u = parse_int();
    skip_ws();
    int64_t v = 1;
    if (peek() == '/') {
      ++pos_;
      v = parse_int();
    }
    try {
      entry.eta = limit_char(u, v);
    } catch (const std::invalid_argument& err) {
      fail(err.what());
    }
    skip_ws();
    expect(';');
    expect_word("a");
    skip_ws();
    expect('=');
    skip_ws();
    expect('(');
    entry.a.push_back(parse_int());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      entry.a.push_back(parse_int());
      skip_ws();
    }
    expect(')');
    skip_ws();
    if (peek() == ';') {
      ++pos_;
      expect_word("t");
      skip_ws();
      expect('=');
      skip_ws();
      expect('(');
      entry.t.push_back(parse_t());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        entry.t.push_back(parse_t());
        skip_ws();
      }
      expect(')');
      skip_ws();
    }
    expect(']');
    return entry;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int64_t p_, q_;
};

}  // namespace

MonomialConfig parse_monomial_config(const std::string& text, int64_t p, int64_t q) {
  return ConfigParser(text, p, q).parse();
}

std::string to_text(const MonomialConfig& config) {
  std::string out;
  for (size_t i = 0; i < config.entries.size(); ++i) {
    if (i > 0) out += " * ";
    const auto& entry = config.entries[i];
    out += "[eta=" + to_string(entry.eta) + "; a=(";
    for (size_t l = 0; l < entry.a.size(); ++l) {
      if (l > 0) out += ",";
      out += std::to_string(entry.a[l]);
    }
    out += ")";
    if (!entry.t.empty()) {
      out += "; t=(";
      for (size_t l = 0; l < entry.t.size(); ++l) {
        if (l > 0) out += ",";
        out += to_string(entry.t[l]);
      }
      out += ")";
    }
    out += "]";
  }
  return out;
}

int64_t a_constant(const MonomialConfig& config) {
  int64_t a = 0;
  for (const auto& entry : config.entries) {
    int64_t best = 0;
    for (int64_t v : entry.a)
      if (v != 0 && (best == 0 || std::abs(v) < best)) best = std::abs(v);
    a += best;
  }
  return a;
}

void enforce_exponent_cap(const MonomialConfig& config, int64_t cap) {
  for (const auto& entry : config.entries)
    for (int64_t v : entry.a)
      if (std::abs(v) > cap)
        throw std::invalid_argument(
            "exponent cap violated: |" + std::to_string(v) + "| > " + std::to_string(cap) +
            " (uniform equidistribution in q needs bounded exponents)");
}

PrimitiveSplit primitive_decompose(std::span<const int64_t> a) {
  int64_t g = 0;
  for (int64_t v : a) g = std::gcd(g, std::abs(v));
  if (g == 0) throw std::invalid_argument("zero tuple has no primitive decomposition");
  int64_t sign = 0;
  for (int64_t v : a) {
    if (v != 0) {
      sign = v > 0 ? 1 : -1;
      break;
    }
  }
  PrimitiveSplit out;
  out.mu = sign * g;
  out.b.reserve(a.size());
  for (int64_t v : a) out.b.push_back(v / out.mu);
  return out;
}

namespace {

std::vector<int64_t> eta_indices(const MonomialConfig& config, const FieldCtx& ctx) {
  std::vector<int64_t> out;
  out.reserve(config.entries.size());
  for (const auto& entry : config.entries) out.push_back(realize(entry.eta, ctx.mult_order()));
  return out;
}

// index of eta_i * chi^{a_i} at the context level
int64_t monomial_index(const std::vector<int64_t>& a, int64_t eta_index,
                       std::span<const int64_t> chi, int64_t M) {
  int64_t acc = eta_index;
  for (size_t l = 0; l < a.size(); ++l) acc += ((a[l] % M) + M) % M * chi[l] % M;
  return acc % M;
}

}  // namespace

SEnumeration enumerate_S(const MonomialConfig& config, const FieldCtx& ctx) {
  validate(config);
  const int64_t M = ctx.mult_order();
  const int64_t r = config.r;
  const auto etas = eta_indices(config, ctx);

  SEnumeration out;
  out.r = r;
  out.t_count = 1;
  for (int64_t l = 0; l < r; ++l) {
    if (out.t_count > (int64_t{1} << 22) / M)
      throw std::invalid_argument("T_m too large to enumerate");
    out.t_count *= M;
  }

  std::vector<int64_t> chi(r, 0);
  for (int64_t flat = 0; flat < out.t_count; ++flat) {
    int64_t v = flat;
    for (int64_t l = r - 1; l >= 0; --l) {
      chi[l] = v % M;
      v /= M;
    }
    bool in_s = true;
    for (size_t i = 0; i < config.entries.size(); ++i) {
      if (monomial_index(config.entries[i].a, etas[i], chi, M) == 0) {
        in_s = false;
        break;
      }
    }
    if (in_s) out.flat_tuples.insert(out.flat_tuples.end(), chi.begin(), chi.end());
  }

  // |T \ S| <= a * (q^m-1)^{r-1}, from the per-entry solution count
  const int64_t excluded = out.t_count - out.size();
  int64_t tail = 1;
  for (int64_t l = 0; l < r - 1; ++l) tail *= M;
  if (excluded > a_constant(config) * tail)
    throw std::logic_error("S_m exclusion count exceeds the a-bound");
  return out;
}

std::vector<std::complex<double>> phi(const MonomialConfig& config, std::span<const int64_t> chi,
                                      const FieldCtx& ctx,
                                      const std::vector<std::complex<double>>& gauss_cache) {
  const int64_t M = ctx.mult_order();
  const auto etas = eta_indices(config, ctx);
  const double norm = 1.0 / std::sqrt(double(ctx.order()));
  std::vector<std::complex<double>> out;
  out.reserve(config.entries.size());
  for (size_t i = 0; i < config.entries.size(); ++i) {
    const auto& entry = config.entries[i];
    const int64_t idx = monomial_index(entry.a, etas[i], chi, M);
    if (idx == 0) throw std::domain_error("chi outside S_m");
    int64_t twist = 0;
    if (!entry.t.empty())
      for (int64_t l = 0; l < config.r; ++l)
        twist = (twist + chi[l] * t_dlog(entry.t[l], ctx)) % M;
    out.push_back(norm * ctx.root_of_unity(twist) * gauss_cache[idx]);
  }
  return out;
}

namespace {

std::complex<double> torus_power(std::complex<double> z, int64_t c) {
  if (c < 0) {
    z = std::conj(z);
    c = -c;
  }
  std::complex<double> acc{1.0, 0.0};
  while (c > 0) {
    if (c & 1) acc *= z;
    z *= z;
    c >>= 1;
  }
  return acc;
}

}  // namespace

WeylReport weyl_sum(const MonomialConfig& config, std::span<const int64_t> c, const FieldCtx& ctx,
                    const std::vector<std::complex<double>>& gauss_cache, int threads) {
  validate(config);
  if (c.size() != config.entries.size())
    throw std::invalid_argument("c must have one exponent per entry");

  WeylReport report;
  report.m = ctx.level();
  report.c.assign(c.begin(), c.end());
  report.a_const = a_constant(config);

  const SEnumeration s = enumerate_S(config, ctx);
  report.s_size = s.size();
  if (s.size() == 0) throw std::domain_error("S_m is empty at this level");

  if (std::all_of(c.begin(), c.end(), [](int64_t v) { return v == 0; })) {
    report.sigma = {1.0, 0.0};  // the trivial character integrates to 1 exactly
    return report;
  }

  const int64_t M = ctx.mult_order();
  const auto etas = eta_indices(config, ctx);
  const double norm = 1.0 / std::sqrt(double(ctx.order()));
  // per-entry t dlogs, resolved once
  std::vector<std::vector<int64_t>> tdlogs(config.entries.size());
  for (size_t i = 0; i < config.entries.size(); ++i) {
    if (config.entries[i].t.empty()) continue;
    tdlogs[i].reserve(config.r);
    for (const auto& t : config.entries[i].t) tdlogs[i].push_back(t_dlog(t, ctx));
  }

  const auto term = [&](int64_t ti) {
    const auto chi = s.tuple(ti);
    std::complex<double> prod{1.0, 0.0};
    for (size_t i = 0; i < config.entries.size(); ++i) {
      if (c[i] == 0) continue;
      const int64_t idx = monomial_index(config.entries[i].a, etas[i], chi, M);
      int64_t twist = 0;
      if (!tdlogs[i].empty())
        for (int64_t l = 0; l < config.r; ++l) twist = (twist + chi[l] * tdlogs[i][l]) % M;
      const std::complex<double> z = norm * ctx.root_of_unity(twist) * gauss_cache[idx];
      prod *= torus_power(z, c[i]);
    }
    return prod;
  };
  report.sigma = parallel_term_sum(s.size(), term, threads) / double(s.size());
  return report;
}

double bound_rhs(int64_t a_const, double a_fit, int64_t q, int64_t m, int64_t r) {
  const double N = std::pow(double(q), double(m)) - 1.0;
  if (N <= double(a_const))
    throw std::invalid_argument("bound requires q^m > 1 + a");
  const double n_pow_r1 = std::pow(N, double(r - 1));
  const double numer = a_fit * n_pow_r1 * N * std::pow(double(q), -0.5 * double(m)) +
                       double(a_const) * n_pow_r1;
  return numer / (n_pow_r1 * (N - double(a_const)));
}

std::vector<WeylReport> weyl_series(const MonomialConfig& config, std::span<const int64_t> c,
                                    int64_t m_first, int64_t m_last, int threads,
                                    int calibration_levels, int64_t table_budget) {
  validate(config);
  const auto [p, f] = split_prime_power(config.q);
  std::vector<WeylReport> out;
  double a_fit = 0.0;
  int calibrated = 0;
  for (int64_t m = m_first; m <= m_last; ++m) {
    const FieldCtx ctx = make_field(p, f, m, m, table_budget);
    const auto cache = gauss_all_cached(ctx);
    WeylReport rep;
    try {
      rep = weyl_sum(config, c, ctx, cache, threads);
    } catch (const std::domain_error&) {
      continue;  // S_m empty: level inadmissible, skip
    }
    const double N = double(ctx.mult_order());
    if (calibrated < calibration_levels) {
      const double fit = std::abs(rep.sigma) * (N - double(rep.a_const)) *
                         std::pow(N, double(config.r - 1)) * std::sqrt(double(ctx.order())) /
                         std::pow(N, double(config.r));
      a_fit = std::max(a_fit, fit);
      ++calibrated;
    } else {
      rep.a_fit = a_fit;
      rep.rhs = bound_rhs(rep.a_const, a_fit, config.q, m, config.r);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

IndependenceResult check_independence(const MonomialConfig& config) {
  validate(config);
  IndependenceResult res;

  // group entries by primitive direction, in lexicographic b order
  std::map<std::vector<int64_t>, std::vector<size_t>> groups;
  std::vector<PrimitiveSplit> splits(config.entries.size());
  for (size_t i = 0; i < config.entries.size(); ++i) {
    splits[i] = primitive_decompose(config.entries[i].a);
    groups[splits[i].b].push_back(i);
  }

  for (const auto& [b, members] : groups) {
    // v_i = sum of the mu_i-th roots of eta_i, as 0/1 vectors over the
    // distinct limit characters of the group
    std::vector<std::vector<LimitCharacter>> roots(members.size());
    std::set<LimitCharacter> support;
    for (size_t k = 0; k < members.size(); ++k) {
      const size_t i = members[k];
      roots[k] = roots_mu_signed(config.entries[i].eta, splits[i].mu, config.p);
      support.insert(roots[k].begin(), roots[k].end());
    }
    std::vector<LimitCharacter> basis(support.begin(), support.end());
    const size_t rows = members.size(), cols = basis.size();

    // fraction-free elimination on [matrix | identity]; a row whose matrix
    // part vanishes certifies a dependency through its identity part
    std::vector<std::vector<__int128>> mat(rows, std::vector<__int128>(cols + rows, 0));
    for (size_t k = 0; k < rows; ++k) {
      for (const auto& xi : roots[k]) {
        const size_t j = std::lower_bound(basis.begin(), basis.end(), xi) - basis.begin();
        mat[k][j] += 1;
      }
      mat[k][cols + k] = 1;
    }

    std::vector<std::string> trace;
    std::vector<bool> used(rows, false);
    for (size_t col = 0; col < cols; ++col) {
      size_t pivot = rows;
      for (size_t k = 0; k < rows; ++k) {
        if (!used[k] && mat[k][col] != 0) {
          pivot = k;
          break;
        }
      }
      if (pivot == rows) continue;
      used[pivot] = true;
      trace.push_back("pivot col " + to_string(basis[col]) + " -> entry " +
                      std::to_string(members[pivot]));
      for (size_t k = 0; k < rows; ++k) {
        if (k == pivot || mat[k][col] == 0) continue;
        const __int128 pv = mat[pivot][col];
        const __int128 kv = mat[k][col];
        for (size_t j = 0; j < cols + rows; ++j) mat[k][j] = mat[k][j] * pv - mat[pivot][j] * kv;
      }
    }

    for (size_t k = 0; k < rows; ++k) {
      if (used[k]) continue;
      bool zero = true;
      for (size_t j = 0; j < cols; ++j)
        if (mat[k][j] != 0) {
          zero = false;
          break;
        }
      if (!zero) continue;
      // dependency found
      std::vector<int64_t> kernel(rows);
      int64_t g = 0;
      for (size_t j = 0; j < rows; ++j) {
        kernel[j] = static_cast<int64_t>(mat[k][cols + j]);
        g = std::gcd(g, std::abs(kernel[j]));
      }
      for (auto& v : kernel) v /= g;
      for (const auto& v : kernel) {
        if (v != 0) {
          if (v < 0)
            for (auto& w : kernel) w = -w;
          break;
        }
      }
      res.independent = false;
      res.group_b = b;
      res.group_entries.assign(members.begin(), members.end());
      res.kernel = kernel;
      res.pivot_trace = std::move(trace);
      return res;
    }
    res.pivot_trace.insert(res.pivot_trace.end(), trace.begin(), trace.end());
  }
  return res;
}

JacobiPreset parse_preset(const std::string& name) {
  if (name == "jacobi_all_free" || name == "all_free") return JacobiPreset::AllFree;
  if (name == "jacobi_fixed_tail" || name == "fixed_tail") return JacobiPreset::FixedTail;
  if (name == "jacobi_powers" || name == "powers") return JacobiPreset::Powers;
  throw std::invalid_argument("unknown jacobi preset: " + name);
}

int64_t preset_torus_dim(const JacobiPresetSpec& spec) {
  switch (spec.preset) {
    case JacobiPreset::AllFree:
    case JacobiPreset::Powers:
      return 1;
    case JacobiPreset::FixedTail:
      return static_cast<int64_t>(spec.fixed_etas.size());
  }
  throw std::logic_error("unreachable");
}

MonomialConfig preset_config(const JacobiPresetSpec& spec, int64_t p, int64_t q) {
  MonomialConfig config;
  config.p = p;
  config.q = q;
  switch (spec.preset) {
    case JacobiPreset::AllFree: {
      if (spec.n < 2) throw std::invalid_argument("all_free preset needs n >= 2");
      config.r = spec.n;
      for (int64_t i = 0; i < spec.n; ++i) {
        MonomialEntry entry;
        entry.eta = limit_char(0, 1);
        entry.a.assign(config.r, 0);
        entry.a[i] = 1;
        config.entries.push_back(entry);
      }
      MonomialEntry all;
      all.eta = limit_char(0, 1);
      all.a.assign(config.r, 1);
      config.entries.push_back(all);
      break;
    }
    case JacobiPreset::Powers: {
      if (spec.d.size() < 2) throw std::invalid_argument("powers preset needs >= 2 exponents");
      int64_t total = 0;
      for (int64_t d : spec.d) {
        if (d < 1 || std::gcd(d, p) != 1)
          throw std::invalid_argument("powers preset exponents must be positive and prime to p");
        total += d;
      }
      config.r = 1;
      std::vector<int64_t> distinct(spec.d.begin(), spec.d.end());
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (int64_t d : distinct) {
        MonomialEntry entry;
        entry.eta = limit_char(0, 1);
        entry.a = {d};
        config.entries.push_back(entry);
      }
      MonomialEntry denom;
      denom.eta = limit_char(0, 1);
      denom.a = {total};
      config.entries.push_back(denom);
      break;
    }
    case JacobiPreset::FixedTail: {
      if (spec.free_count < 1) throw std::invalid_argument("fixed_tail preset needs >= 1 free character");
      if (spec.fixed_etas.empty()) throw std::invalid_argument("fixed_tail preset needs fixed characters");
      config.r = spec.free_count;
      for (int64_t l = 0; l < spec.free_count; ++l) {
        MonomialEntry entry;
        entry.eta = limit_char(0, 1);
        entry.a.assign(config.r, 0);
        entry.a[l] = 1;
        config.entries.push_back(entry);
      }
      std::set<LimitCharacter> seen;
      for (const auto& etas : spec.fixed_etas) {
        if (etas.empty()) throw std::invalid_argument("fixed_tail preset: empty eta list");
        LimitCharacter prod = limit_char(0, 1);
        for (const auto& eta : etas) {
          if (is_trivial(eta))
            throw std::invalid_argument("fixed_tail preset requires nontrivial fixed characters");
          prod = lc_mul(prod, eta);
        }
        if (!seen.insert(prod).second)
          throw std::invalid_argument("fixed_tail preset: products of fixed characters must be distinct");
        MonomialEntry entry;
        entry.eta = prod;
        entry.a.assign(config.r, 1);
        config.entries.push_back(entry);
      }
      break;
    }
  }
  validate(config);
  return config;
}

std::vector<std::vector<std::complex<double>>> jacobi_preset_values(const JacobiPresetSpec& spec,
                                                                    int64_t p, int64_t q,
                                                                    const FieldCtx& ctx) {
  const MonomialConfig config = preset_config(spec, p, q);
  const auto cache = gauss_all_cached(ctx);
  const SEnumeration s = enumerate_S(config, ctx);
  const int64_t M = ctx.mult_order();
  const double norm = 1.0 / std::sqrt(double(ctx.order()));

  // FixedTail translation factors: q^{-m e_i / 2} prod_j G_m(eta_ij), taken
  // directly from the level-m cache.
  std::vector<std::complex<double>> factors;
  if (spec.preset == JacobiPreset::FixedTail) {
    for (const auto& etas : spec.fixed_etas) {
      std::complex<double> f{1.0, 0.0};
      for (const auto& eta : etas) f *= norm * cache[realize(eta, M)];
      factors.push_back(f);
    }
  }

  // Powers: distinct exponents with multiplicities
  std::vector<int64_t> distinct(spec.d.begin(), spec.d.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int64_t> multiplicity;
  for (int64_t d : distinct)
    multiplicity.push_back(std::count(spec.d.begin(), spec.d.end(), d));

  std::vector<std::vector<std::complex<double>>> out;
  out.reserve(s.size());
  for (int64_t ti = 0; ti < s.size(); ++ti) {
    const auto coords = phi(config, s.tuple(ti), ctx, cache);
    std::vector<std::complex<double>> val;
    switch (spec.preset) {
      case JacobiPreset::AllFree: {
        std::complex<double> z{1.0, 0.0};
        for (int64_t i = 0; i < spec.n; ++i) z *= coords[i];
        val.push_back(z * std::conj(coords[spec.n]));
        break;
      }
      case JacobiPreset::Powers: {
        std::complex<double> z{1.0, 0.0};
        for (size_t j = 0; j < distinct.size(); ++j)
          z *= torus_power(coords[j], multiplicity[j]);
        val.push_back(z * std::conj(coords[distinct.size()]));
        break;
      }
      case JacobiPreset::FixedTail: {
        std::complex<double> free_part{1.0, 0.0};
        for (int64_t l = 0; l < spec.free_count; ++l) free_part *= coords[l];
        for (size_t i = 0; i < spec.fixed_etas.size(); ++i)
          val.push_back(factors[i] * free_part * std::conj(coords[spec.free_count + i]));
        break;
      }
    }
    out.push_back(std::move(val));
  }
  return out;
}

std::vector<PresetRow> jacobi_preset_series(const JacobiPresetSpec& spec, int64_t p, int64_t q,
                                            int64_t m_first, int64_t m_last, int64_t c_max,
                                            int threads) {
  if (c_max < 1) throw std::invalid_argument("c_max must be >= 1");
  const int64_t dim = preset_torus_dim(spec);
  const auto [pp, f] = split_prime_power(q);
  if (pp != p) throw std::invalid_argument("q is not a power of p");

  std::vector<PresetRow> out;
  for (int64_t m = m_first; m <= m_last; ++m) {
    const FieldCtx ctx = make_field(p, f, m);
    std::vector<std::vector<std::complex<double>>> values;
    try {
      values = jacobi_preset_values(spec, p, q, ctx);
    } catch (const std::domain_error&) {
      continue;
    }
    if (values.empty()) continue;

    // enumerate c with 0 < ||c||_inf <= c_max in row-major order
    std::vector<int64_t> c(dim, -c_max);
    while (true) {
      if (std::any_of(c.begin(), c.end(), [](int64_t v) { return v != 0; })) {
        const auto term = [&](int64_t i) {
          std::complex<double> z{1.0, 0.0};
          for (int64_t j = 0; j < dim; ++j) z *= torus_power(values[i][j], c[j]);
          return z;
        };
        PresetRow row;
        row.m = m;
        row.c = c;
        row.s_size = static_cast<int64_t>(values.size());
        row.sigma = parallel_term_sum(row.s_size, term, threads) / double(row.s_size);
        out.push_back(std::move(row));
      }
      int64_t l = dim - 1;
      while (l >= 0 && c[l] == c_max) {
        c[l] = -c_max;
        --l;
      }
      if (l < 0) break;
      ++c[l];
    }
  }
  return out;
}

}  // namespace gaussum
