#include "mlie/catalog.hpp"
#include "mlie/curvature.hpp"
#include "mlie/doubleext.hpp"
#include "mlie/io.hpp"
#include "mlie/liealg.hpp"
#include "mlie/search.hpp"
#include "mlie/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace mlie;

namespace {

// Brackets as {(i, j): [c_1, ..., c_n]} with 0-based indices.
LieAlgebra algebra_from_dict(int n, const std::map<std::pair<int, int>, Vector>& brackets) {
  std::vector<BracketTerm> terms;
  for (const auto& [ij, v] : brackets) terms.push_back({ij.first, ij.second, v});
  return LieAlgebra::checked(n, terms);
}

std::map<std::pair<int, int>, Vector> algebra_to_dict(const LieAlgebra& a) {
  std::map<std::pair<int, int>, Vector> out;
  for (const auto& t : a.brackets()) out[{t.i, t.j}] = t.value;
  return out;
}

py::array_t<double> tensor_to_array(const CurvatureTensor& k) {
  const py::ssize_t n = k.dim();
  py::array_t<double> out({n, n, n, n});
  auto r = out.mutable_unchecked<4>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j)
      for (py::ssize_t a = 0; a < n; ++a)
        for (py::ssize_t l = 0; l < n; ++l) r(i, j, a, l) = k(int(i), int(j), int(a), int(l));
  return out;
}

CatalogKey key_of(const std::string& name, const std::optional<std::string>& variant, const Params& params) {
  CatalogKey key{parse_algebra_name(name), std::nullopt, params};
  if (variant) key.metric_variant = parse_metric_variant(*variant);
  return key;
}

}  // namespace

PYBIND11_MODULE(mlie, m) {
  m.doc() = "Curvature of left-invariant pseudo-Riemannian metrics on Lie algebras";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<DegenerateGram>(m, "DegenerateGram", PyExc_ValueError);
  py::register_exception<NotNilpotent>(m, "NotNilpotent", PyExc_ValueError);
  py::register_exception<NotLie>(m, "NotLie", PyExc_ValueError);
  py::register_exception<NotApplicable>(m, "NotApplicable", PyExc_ValueError);
  py::register_exception<SingularK0>(m, "SingularK0", PyExc_ValueError);
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<UnknownName>(m, "UnknownName", PyExc_KeyError);
  py::register_exception<BadParams>(m, "BadParams", PyExc_ValueError);

  py::class_<LieAlgebra>(m, "LieAlgebra")
      .def(py::init<int>(), py::arg("dim"))
      .def(py::init(&algebra_from_dict), py::arg("dim"), py::arg("brackets"),
           "Brackets {(i, j): coefficients} with 0-based i, j; the Jacobi identity is checked.")
      .def_property_readonly("dim", &LieAlgebra::dim)
      .def("bracket", &LieAlgebra::bracket)
      .def("structure", py::overload_cast<int, int>(&LieAlgebra::structure, py::const_))
      .def("brackets", &algebra_to_dict)
      .def("in_basis", &LieAlgebra::in_basis)
      .def("is_nilpotent", [](const LieAlgebra& a, double tol) { return is_nilpotent(a, tol); },
           py::arg("tol") = kLinearTol)
      .def("jacobi_defect", &jacobi_defect)
      .def("center_dim", [](const LieAlgebra& a) { return center(a).dim(); })
      .def("derived_dim", [](const LieAlgebra& a) { return derived_ideal(a).dim(); })
      .def("derivations",
           [](const LieAlgebra& a, double tol) {
             std::vector<Matrix> out;
             for (auto& d : derivation_space(a, tol)) out.push_back(std::move(d.matrix));
             return out;
           },
           py::arg("tol") = kLinearTol)
      .def("nonzero_trace_derivation",
           [](const LieAlgebra& a, double tol) -> std::optional<Matrix> {
             auto d = find_nonzero_trace_derivation(a, tol);
             if (!d) return std::nullopt;
             return d->matrix;
           },
           py::arg("tol") = kLinearTol)
      .def("derivation_defect", &derivation_defect)
      .def("__eq__", &LieAlgebra::operator==);

  py::class_<MetricLieAlgebra>(m, "MetricLieAlgebra")
      .def(py::init([](const LieAlgebra& a, const Matrix& g) { return MetricLieAlgebra(a, Gram(g)); }),
           py::arg("algebra"), py::arg("gram"))
      .def_property_readonly("dim", &MetricLieAlgebra::dim)
      .def_property_readonly("algebra", &MetricLieAlgebra::algebra)
      .def_property_readonly("gram", [](const MetricLieAlgebra& ml) { return ml.gram().matrix(); })
      .def_property_readonly("scale", &MetricLieAlgebra::scale)
      .def("signature",
           [](const MetricLieAlgebra& ml) {
             const Signature s = signature(ml.gram());
             return py::make_tuple(s.minus, s.plus, s.null);
           })
      .def("levi_civita", [](const MetricLieAlgebra& ml, const Vector& u, const Vector& v) {
        return levi_civita(ml, u, v);
      })
      .def("curvature_tensor", [](const MetricLieAlgebra& ml) { return tensor_to_array(curvature_tensor(ml)); },
           "value[i, j, k, l] is the l-th coordinate of K(e_i, e_j) e_k.")
      .def("ricci_via_definition", &ricci_via_definition)
      .def("ricci_general", &ricci_general)
      .def("ricci_nilpotent", [](const MetricLieAlgebra& ml) { return ricci_nilpotent(ml); })
      .def("j1_j2", [](const MetricLieAlgebra& ml) {
        auto j = j1_j2(ml);
        return py::make_tuple(j.j1, j.j2);
      })
      .def("mean_vector", &mean_vector)
      .def("trace_q_times", [](const MetricLieAlgebra& ml, const Matrix& e) {
        const auto t = trace_q_times(ml, e);
        return py::make_tuple(t.lhs, t.rhs);
      })
      .def("in_basis", &MetricLieAlgebra::in_basis)
      .def("classify",
           [](const MetricLieAlgebra& ml, double tol, double linear_tol) {
             const CurvatureReport r = einstein_classify(ml, tol, linear_tol);
             py::dict d;
             d["verdict"] = std::string(to_string(r.verdict));
             d["einstein_lambda"] = r.einstein_lambda;
             d["ricci"] = r.ricci;
             d["ricci_form"] = r.ricci_form;
             d["scalar"] = r.scalar;
             d["flat"] = r.flat;
             d["lambda_estimate"] = r.lambda_estimate;
             d["einstein_residual"] = r.einstein_residual;
             d["curvature_max"] = r.curvature_max;
             d["route_residual"] = r.route_residual;
             d["scale"] = r.scale;
             d["nilpotent"] = r.nilpotent;
             return d;
           },
           py::arg("tol") = kVerdictTol, py::arg("linear_tol") = kLinearTol)
      .def("center_tag", [](const MetricLieAlgebra& ml) {
        return std::string(to_string(classify_subspace(ml.gram(), center(ml.algebra())).tag));
      })
      .def("derived_tag", [](const MetricLieAlgebra& ml) {
        return std::string(to_string(classify_subspace(ml.gram(), derived_ideal(ml.algebra())).tag));
      });

  py::class_<ExtensionData>(m, "ExtensionData")
      .def(py::init<Matrix, Matrix, double, Vector>(), py::arg("K"), py::arg("D"), py::arg("mu") = 0.0,
           py::arg("b"))
      .def_readonly("K", &ExtensionData::k)
      .def_readonly("D", &ExtensionData::d)
      .def_readonly("mu", &ExtensionData::mu)
      .def_readonly("b", &ExtensionData::b)
      .def_property_readonly("v_dim", &ExtensionData::v_dim)
      .def("admissibility", [](const ExtensionData& d) {
        const auto a = check_admissible(d);
        py::dict out;
        out["is_lie"] = a.is_lie;
        out["is_nilpotent"] = a.is_nilpotent;
        out["is_einstein"] = a.is_einstein;
        out["lie_residual"] = a.lie_residual;
        out["trace_residual"] = a.trace_residual;
        return out;
      })
      .def("extend", [](const ExtensionData& d) { return extend(d); })
      .def("ricci_ebar", [](const ExtensionData& d) { return ricci_ebar(d); });

  m.def("decompose", [](const MetricLieAlgebra& ml) -> py::object {
    auto dec = decompose(ml);
    if (!dec) return py::none();
    return py::make_tuple(dec->data, dec->basis_change, dec->model_residual);
  });
  m.def("two_step", &two_step_extension, py::arg("p"), py::arg("q"), py::arg("alpha"), py::arg("c"), py::arg("a"),
        py::arg("abelian_dim") = 0, py::arg("tol") = kLinearTol);

  m.def("algebra_names", [] {
    std::vector<std::string> out;
    for (AlgebraName n : all_algebra_names()) out.emplace_back(to_string(n));
    return out;
  });
  m.def("metric_variants", [] {
    std::vector<std::string> out;
    for (MetricVariant v : all_metric_variants()) out.emplace_back(to_string(v));
    return out;
  });
  m.def("make_algebra", [](const std::string& name) { return make_algebra(parse_algebra_name(name)); });
  m.def("make_metric",
        [](const std::string& name, std::optional<std::string> variant, const Params& params) {
          return make_metric(key_of(name, variant, params));
        },
        py::arg("name"), py::arg("variant") = std::nullopt, py::arg("params") = Params{});
  m.def("listed_derivation",
        [](const std::string& name) { return listed_derivation(parse_algebra_name(name)).matrix; });

  m.def("search",
        [](const LieAlgebra& a, const std::string& target, int minus, int plus, std::uint64_t seed, int restarts,
           int max_iters, double tol, int threads) {
          SearchSpec spec;
          spec.algebra = a;
          if (target == "ricci-flat") {
            spec.target = SearchTarget::RicciFlat;
          } else if (target == "einstein") {
            spec.target = SearchTarget::Einstein;
          } else {
            throw InvalidInput("target must be 'ricci-flat' or 'einstein'");
          }
          spec.minus = minus;
          spec.plus = plus;
          spec.seed = seed;
          spec.restarts = restarts;
          spec.max_iters = max_iters;
          spec.tol = tol;
          spec.threads = threads;
          SearchResult r;
          {
            py::gil_scoped_release release;
            r = run_search(spec);
          }
          py::dict d;
          d["gram"] = r.best_gram ? py::cast(r.best_gram->matrix()) : py::none();
          d["residual"] = r.residual;
          d["iterations"] = r.iterations;
          d["converged"] = r.converged;
          d["best_restart"] = r.best_restart;
          return d;
        },
        py::arg("algebra"), py::arg("target") = "ricci-flat", py::arg("minus") = 1, py::arg("plus"),
        py::arg("seed") = 0, py::arg("restarts") = 8, py::arg("max_iters") = 5000, py::arg("tol") = 1e-6,
        py::arg("threads") = 0);

  m.def("parse_algebra_file", [](const std::string& text) {
    AlgebraFile f = parse_algebra(text);
    return py::make_tuple(f.algebra, f.metric ? py::cast(f.metric->matrix()) : py::none(), f.comment);
  });

  m.def("verify",
        [](const std::vector<std::string>& only, std::uint64_t seed) {
          VerifyOptions options;
          options.only = only;
          options.seed = seed;
          VerifyReport report;
          {
            py::gil_scoped_release release;
            report = run_verification(options);
          }
          py::dict out;
          for (const auto& [id, pass] : report.criterion_status()) out[py::int_(id)] = pass;
          return out;
        },
        py::arg("only") = std::vector<std::string>{}, py::arg("seed") = VerifyOptions{}.seed);
}
