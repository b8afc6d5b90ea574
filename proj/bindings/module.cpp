#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "gaussum/charsums.hpp"
#include "gaussum/equidist.hpp"
#include "gaussum/identities.hpp"
#include "gaussum/relations.hpp"

namespace py = pybind11;
using namespace gaussum;

namespace {

py::dict report_to_dict(const WeylReport& rep, int64_t q) {
  py::dict d;
  d["m"] = rep.m;
  d["q"] = q;
  d["c"] = rep.c;
  d["sigma"] = rep.sigma;
  d["abs_sigma"] = std::abs(rep.sigma);
  d["s_size"] = rep.s_size;
  d["a"] = rep.a_const;
  d["a_fit"] = rep.a_fit ? py::cast(*rep.a_fit) : py::none();
  d["rhs"] = rep.rhs ? py::cast(*rep.rhs) : py::none();
  return d;
}

py::dict move_to_dict(const Move& mv) {
  py::dict d;
  d["kind"] = kind_name(mv.kind);
  d["eta"] = to_string(mv.eta);
  d["a"] = mv.a;
  if (mv.kind == Move::Kind::R) d["d"] = mv.d;
  d["exponent"] = mv.exponent;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gauss sums over finite fields: exact character algebra, batch DFT "
            "evaluation, Weyl-sum equidistribution experiments and the relation "
            "decomposition algorithm";

  py::class_<FieldCtx, std::shared_ptr<FieldCtx>>(m, "Field")
      .def(py::init([](int64_t p, int64_t f, int64_t m, int64_t top_level, int64_t table_budget) {
             return std::make_shared<FieldCtx>(make_field(p, f, m, top_level, table_budget));
           }),
           py::arg("p"), py::arg("f") = 1, py::arg("m") = 1, py::arg("top_level") = 0,
           py::arg("table_budget") = FieldCtx::kDefaultTableBudget)
      .def_property_readonly("p", &FieldCtx::p)
      .def_property_readonly("q", &FieldCtx::q)
      .def_property_readonly("m", &FieldCtx::level)
      .def_property_readonly("order", &FieldCtx::order)
      .def_property_readonly("mult_order", &FieldCtx::mult_order)
      .def_property_readonly("modulus", [](const FieldCtx& f) { return f.modulus(); })
      .def_property_readonly("generator_code",
                             [](const FieldCtx& f) { return f.code(f.generator()); })
      .def("dlog", [](const FieldCtx& f, int64_t code) { return f.dlog(f.element_from_code(code)); })
      .def("trace",
           [](const FieldCtx& f, int64_t code) {
             return f.trace_to_prime(f.element_from_code(code));
           })
      .def("norm_code",
           [](const FieldCtx& f, int64_t code, int64_t target_m) {
             return f.code(f.norm_to_level(f.element_from_code(code), target_m));
           })
      .def("gen_pow_code", [](const FieldCtx& f, int64_t k) { return f.code(f.gen_pow(k)); })
      .def("__repr__", [](const FieldCtx& f) {
        return "Field(p=" + std::to_string(f.p()) + ", q=" + std::to_string(f.q()) +
               ", m=" + std::to_string(f.level()) + ")";
      });

  m.def("make_field_for_size", [](int64_t prime_power) {
    const auto [p, f] = split_prime_power(prime_power);
    return std::make_shared<FieldCtx>(make_field(p, f, 1));
  }, py::arg("prime_power"), "Field of the given size built as (p, f, 1)");

  m.def("gauss_sum",
        [](const FieldCtx& ctx, int64_t index, py::object alpha_code) {
          if (alpha_code.is_none()) return gauss_sum(ctx, index);
          return gauss_sum(ctx, mult_char(ctx, index),
                           ctx.element_from_code(alpha_code.cast<int64_t>()));
        },
        py::arg("field"), py::arg("index"), py::arg("alpha_code") = py::none());

  m.def("gauss_all",
        [](const FieldCtx& ctx) { return gauss_all_cached(ctx); }, py::arg("field"));

  m.def("jacobi_sum",
        [](const FieldCtx& ctx, const std::vector<int64_t>& indices) {
          return jacobi_sum(ctx, indices);
        },
        py::arg("field"), py::arg("indices"));

  m.def("jacobi_via_gauss",
        [](const FieldCtx& ctx, const std::vector<int64_t>& indices) {
          return jacobi_via_gauss(ctx, indices);
        },
        py::arg("field"), py::arg("indices"));

  m.def("roots_mu",
        [](const std::string& eta, int64_t mu, int64_t p) {
          std::vector<std::string> out;
          for (const auto& xi : roots_mu(parse_limit_char(eta), mu, p)) out.push_back(to_string(xi));
          return out;
        },
        py::arg("eta"), py::arg("mu"), py::arg("p"));

  m.def("roots_over_k", &roots_over_k, py::arg("e"), py::arg("d"), py::arg("group_order"));

  m.def("check_conjugation", &check_conjugation, py::arg("field"));
  m.def("check_frobenius", &check_frobenius, py::arg("field"));
  m.def("check_hd_product", &check_hd_product, py::arg("field"), py::arg("d"));
  m.def("check_hd_lifting", &check_hd_lifting, py::arg("level1"), py::arg("levelm"),
        "both fields must come from one tower (same p, f, top_level)");
  m.def("check_scaled", &check_scaled, py::arg("field"));
  m.def("check_jacobi", &check_jacobi, py::arg("field"), py::arg("n"),
        py::arg("max_tuples") = 4000);

  m.def("identity_suite",
        [](int64_t prime_power) {
          py::list out;
          for (const auto& rep : run_identity_suite(prime_power)) {
            py::dict d;
            d["field"] = rep.field;
            d["identity"] = rep.identity;
            d["residual"] = rep.residual;
            d["sweep_size"] = rep.sweep_size;
            d["seconds"] = rep.seconds;
            out.append(d);
          }
          return out;
        },
        py::arg("prime_power"));

  m.def("weyl_series",
        [](int64_t q, const std::string& entries, const std::vector<int64_t>& c, int64_t m_first,
           int64_t m_last, int threads, int calibration_levels) {
          const auto [p, f] = split_prime_power(q);
          const MonomialConfig config = parse_monomial_config(entries, p, q);
          py::list out;
          for (const auto& rep :
               weyl_series(config, c, m_first, m_last, threads, calibration_levels))
            out.append(report_to_dict(rep, q));
          return out;
        },
        py::arg("q"), py::arg("entries"), py::arg("c"), py::arg("m_first"), py::arg("m_last"),
        py::arg("threads") = 1, py::arg("calibration_levels") = 2);

  m.def("bound_rhs", &bound_rhs, py::arg("a_const"), py::arg("a_fit"), py::arg("q"), py::arg("m"),
        py::arg("r"));

  m.def("check_independence",
        [](int64_t q, const std::string& entries) {
          const auto [p, f] = split_prime_power(q);
          const auto res = check_independence(parse_monomial_config(entries, p, q));
          py::dict d;
          d["independent"] = res.independent;
          d["group_b"] = res.group_b;
          d["group_entries"] = res.group_entries;
          d["kernel"] = res.kernel;
          d["pivot_trace"] = res.pivot_trace;
          return d;
        },
        py::arg("q"), py::arg("entries"));

  m.def("decompose",
        [](const std::string& text, int64_t p, int64_t q, bool crosscheck,
           const std::vector<int64_t>& m_levels, int64_t samples, uint64_t seed) {
          const GaussMonomial x = parse_monomial(text, p, q);
          const DecomposeResult res = decompose(x);
          py::dict d;
          d["input"] = to_text(x);
          d["verdict"] = res.in_h ? "InH" : "NotInH";
          d["mu_history"] = res.mu_history;
          if (res.in_h) {
            py::list moves;
            for (const auto& mv : res.decomposition.moves) moves.append(move_to_dict(mv));
            d["moves"] = moves;
            d["verified"] = verify_decomposition(x, res.decomposition);
            const auto [pp, f] = split_prime_power(q);
            const FieldCtx level1 = make_field(pp, f, 1);
            const auto cd = derive_constancy(res.decomposition, x.r, p, level1, level1);
            d["t_constants"] = cd.t_const;
            d["D"] = cd.d_value;
            if (crosscheck) {
              py::list checks;
              for (int64_t m : m_levels) {
                const FieldCtx ctx = make_field(pp, f, m);
                py::dict c;
                c["m"] = m;
                c["deviation"] = numeric_crosscheck(x, res.decomposition, ctx, level1, samples, seed);
                checks.append(c);
              }
              d["crosscheck"] = checks;
            }
          } else {
            py::dict w;
            w["kind"] =
                res.witness.kind == NotInHWitness::Kind::Independent ? "independent" : "blocked";
            w["detail"] = res.witness.detail;
            w["pivot_trace"] = res.witness.pivot_trace;
            d["witness"] = w;
          }
          return d;
        },
        py::arg("text"), py::arg("p"), py::arg("q"), py::arg("crosscheck") = false,
        py::arg("m_levels") = std::vector<int64_t>{1, 2}, py::arg("samples") = 0,
        py::arg("seed") = 1);

  m.def("jacobi_preset_series",
        [](const std::string& preset, int64_t q, int64_t n, const std::vector<int64_t>& d,
           int64_t free_count, const std::vector<std::vector<std::string>>& etas, int64_t m_first,
           int64_t m_last, int64_t c_max, int threads) {
          JacobiPresetSpec spec;
          spec.preset = parse_preset(preset);
          spec.n = n;
          spec.d = d;
          spec.free_count = free_count;
          for (const auto& group : etas) {
            std::vector<LimitCharacter> parsed;
            for (const auto& eta : group) parsed.push_back(parse_limit_char(eta));
            spec.fixed_etas.push_back(std::move(parsed));
          }
          const auto [p, f] = split_prime_power(q);
          py::list out;
          for (const auto& row : jacobi_preset_series(spec, p, q, m_first, m_last, c_max, threads)) {
            py::dict r;
            r["m"] = row.m;
            r["c"] = row.c;
            r["sigma"] = row.sigma;
            r["abs_sigma"] = std::abs(row.sigma);
            r["s_size"] = row.s_size;
            out.append(r);
          }
          return out;
        },
        py::arg("preset"), py::arg("q"), py::arg("n") = 2, py::arg("d") = std::vector<int64_t>{},
        py::arg("free_count") = 1, py::arg("etas") = std::vector<std::vector<std::string>>{},
        py::arg("m_first") = 1, py::arg("m_last") = 4, py::arg("c_max") = 1,
        py::arg("threads") = 1);

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "0.1.0";
#endif
}
