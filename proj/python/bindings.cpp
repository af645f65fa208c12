// Python bindings for the main operations: exterior algebra, Lie-algebra
// differentials, SU(3)-structure torsion analysis, the reference catalog and
// the Type IIA flow closed forms.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iiaflow/catalog.hpp"

namespace py = pybind11;
using namespace iiaflow;

namespace {

KForm form_from_terms(int degree, const std::vector<std::pair<std::vector<int>, double>>& terms) {
  nlohmann::json j = {{"degree", degree}, {"terms", nlohmann::json::array()}};
  for (const auto& [idx, c] : terms) j["terms"].push_back({{"idx", idx}, {"c", c}});
  return j.get<KForm>();
}

std::vector<std::pair<std::vector<int>, double>> form_terms(const KForm& f) {
  nlohmann::json j = f;
  std::vector<std::pair<std::vector<int>, double>> out;
  for (const auto& t : j["terms"])
    out.emplace_back(t["idx"].get<std::vector<int>>(), t["c"].get<double>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SU(3)-structure torsion and the source-free Type IIA flow on "
            "six-dimensional Lie algebras";

  py::class_<KForm>(m, "KForm")
      .def(py::init<int>(), py::arg("degree"))
      .def_static(
          "from_terms",
          [](int degree, const std::vector<std::pair<std::vector<int>, double>>& terms) {
            return form_from_terms(degree, terms);
          },
          py::arg("degree"), py::arg("terms"),
          "Build a form from [(indices, coefficient), ...] with 1-based ascending indices.")
      .def_property_readonly("degree", &KForm::degree)
      .def_property_readonly("coeffs",
                             [](const KForm& f) {
                               return std::vector<double>(f.coeffs().data(),
                                                          f.coeffs().data() + f.coeffs().size());
                             })
      .def("terms", &form_terms)
      .def("max_abs", &KForm::max_abs)
      .def("is_zero", &KForm::is_zero, py::arg("eps") = kEps)
      .def("__add__", [](const KForm& a, const KForm& b) { return a + b; })
      .def("__sub__", [](const KForm& a, const KForm& b) { return a - b; })
      .def("__mul__", [](const KForm& a, double s) { return a * s; })
      .def("__rmul__", [](const KForm& a, double s) { return s * a; })
      .def("__neg__", [](const KForm& a) { return -a; })
      .def("__repr__", [](const KForm& f) { return f.str(); })
      .def("to_json", [](const KForm& f) { return nlohmann::json(f).dump(); });

  m.def(
      "monomial",
      [](const std::vector<int>& idx, double c) {
        return form_from_terms(static_cast<int>(idx.size()), {{idx, c}});
      },
      py::arg("idx"), py::arg("c") = 1.0);

  py::class_<Metric>(m, "Metric")
      .def(py::init<const Endo&, double>(), py::arg("matrix"), py::arg("eps") = kEps)
      .def_static("identity", &Metric::identity)
      .def_property_readonly("matrix", [](const Metric& g) { return g.matrix(); })
      .def("positive_definite", &Metric::positive_definite, py::arg("eps") = kEps);

  m.def("wedge", &wedge);
  m.def("contract", &contract, py::arg("v"), py::arg("a"));
  m.def("act_on_form", &act_on_form);
  m.def("derive_action", &derive_action);
  m.def("hodge_star", &hodge_star, py::arg("g"), py::arg("orient"), py::arg("a"));
  m.def("inner", &inner);
  m.def("norm_sq", &norm_sq);
  m.def("volume_form", &volume_form);

  py::class_<LieAlgebra>(m, "LieAlgebra")
      .def_static("parse", &LieAlgebra::parse, py::arg("structure"),
                  py::arg("params") = std::map<std::string, double>{}, py::arg("eps") = kEps)
      .def_static("abelian", &LieAlgebra::abelian)
      .def("d_basis", &LieAlgebra::d_basis)
      .def("bracket", &LieAlgebra::bracket)
      .def("is_unimodular", &LieAlgebra::is_unimodular, py::arg("eps") = kEps);

  m.def("ce_d", &ce_d);
  m.def("codiff", &codiff);
  m.def("laplacian", &laplacian);

  py::class_<StableFormResult>(m, "StableFormResult")
      .def_readonly("S", &StableFormResult::s)
      .def_readonly("P", &StableFormResult::p)
      .def_readonly("definite", &StableFormResult::definite)
      .def_property_readonly("J",
                             [](const StableFormResult& r) -> py::object {
                               if (r.j) return py::cast(*r.j);
                               return py::none();
                             });
  m.def("analyze_3form", &analyze_3form, py::arg("phi"), py::arg("orient"),
        py::arg("eps") = kEps);

  py::class_<SU3Structure>(m, "SU3Structure")
      .def_readonly("omega", &SU3Structure::omega)
      .def_readonly("psi_plus", &SU3Structure::psi_plus)
      .def_readonly("psi_minus", &SU3Structure::psi_minus)
      .def_readonly("J", &SU3Structure::j)
      .def_property_readonly("g", [](const SU3Structure& s) { return s.g.matrix(); })
      .def_readonly("vol", &SU3Structure::vol);
  m.def("build_su3", &build_su3, py::arg("omega"), py::arg("psi_plus"), py::arg("eps") = kEps);
  m.def("normalize_pair", &normalize_pair, py::arg("omega"), py::arg("psi_plus"),
        py::arg("eps") = kEps);

  py::class_<SpecialReport>(m, "SpecialReport")
      .def_readonly("w2", &SpecialReport::w2)
      .def_readonly("w2_norm_sq", &SpecialReport::w2_norm_sq)
      .def_readonly("gamma", &SpecialReport::gamma)
      .def_readonly("S", &SpecialReport::s_endo)
      .def_property_readonly("c",
                             [](const SpecialReport& r) -> py::object {
                               if (r.c) return py::float_(*r.c);
                               return py::none();
                             })
      .def_readonly("spectrum", &SpecialReport::spectrum)
      .def_readonly("scal", &SpecialReport::scal)
      .def_readonly("nijenhuis_norm_sq", &SpecialReport::nijenhuis_norm_sq)
      .def_readonly("is_shf", &SpecialReport::is_shf)
      .def_readonly("is_special", &SpecialReport::is_special)
      .def_readonly("hermitian_ricci", &SpecialReport::hermitian_ricci)
      .def_readonly("torsion_free", &SpecialReport::torsion_free)
      .def("to_json", [](const SpecialReport& r) { return nlohmann::json(r).dump(); });

  m.def("torsion", &torsion, py::arg("s"), py::arg("l"), py::arg("eps") = kEps);
  m.def("special_check", &special_check, py::arg("report"), py::arg("s"), py::arg("l"),
        py::arg("eps") = kEps);
  m.def("sigma8", &sigma8, py::arg("s"), py::arg("a"), py::arg("eps") = kEps);
  m.def("sigma12", &sigma12, py::arg("s"), py::arg("t"), py::arg("eps") = kEps);
  m.def("nijenhuis_norm_sq", &nijenhuis_norm_sq);

  py::enum_<RegimeTag>(m, "RegimeTag")
      .value("SelfSimilar", RegimeTag::SelfSimilar)
      .value("Ancient", RegimeTag::Ancient)
      .value("Eternal", RegimeTag::Eternal)
      .value("Immortal", RegimeTag::Immortal);

  py::class_<FlowRegime>(m, "FlowRegime")
      .def_readonly("tag", &FlowRegime::tag)
      .def_readonly("c", &FlowRegime::c)
      .def_readonly("w2sq", &FlowRegime::w2sq)
      .def_readonly("f0", &FlowRegime::f0)
      .def("is_ancient", &FlowRegime::is_ancient);

  m.def("classify", &classify, py::arg("c"), py::arg("w2sq"), py::arg("f0"),
        py::arg("eps") = kEps);
  m.def("interval", &interval);
  m.def("a_of_t", &a_of_t);
  m.def("f_of_t", &f_of_t);
  m.def("nijenhuis_of_t", &nijenhuis_of_t);

  py::class_<FlowContext>(m, "FlowContext")
      .def_property_readonly("s0", [](const FlowContext& c) { return c.s0; })
      .def_readonly("report", &FlowContext::report)
      .def_readonly("f0", &FlowContext::f0)
      .def_readonly("stationary", &FlowContext::stationary)
      .def_readonly("regime", &FlowContext::regime)
      .def_readonly("phi0", &FlowContext::phi0)
      .def_readonly("dw2", &FlowContext::dw2)
      .def("a", &FlowContext::a)
      .def("a_prime", &FlowContext::a_prime)
      .def("f", &FlowContext::f)
      .def("nijenhuis", &FlowContext::nijenhuis);

  m.def("make_flow_context", &make_flow_context, py::arg("l"), py::arg("omega"),
        py::arg("psi_plus"), py::arg("f0") = 2.0, py::arg("eps") = kEps);
  m.def("phi_of_t", &phi_of_t);
  m.def("psi_minus_of_t", &psi_minus_of_t);
  m.def("flow_rhs", &flow_rhs, py::arg("omega"), py::arg("phi"), py::arg("l"),
        py::arg("eps") = kEps);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("t", &Trajectory::t)
      .def_readonly("phi", &Trajectory::phi)
      .def_readonly("truncated", &Trajectory::truncated)
      .def_readonly("diagnostic", &Trajectory::diagnostic);
  m.def("integrate_rk4", &integrate_rk4, py::arg("omega"), py::arg("phi0"), py::arg("l"),
        py::arg("t_end"), py::arg("dt"), py::arg("eps") = kEps);

  py::class_<AnsatzResidual>(m, "AnsatzResidual")
      .def_readonly("max_flow_residual", &AnsatzResidual::max_flow_residual)
      .def_readonly("max_f_ode_residual", &AnsatzResidual::max_f_ode_residual);
  m.def("verify_ansatz", &verify_ansatz, py::arg("ctx"), py::arg("t_samples"),
        py::arg("eps") = kEps);

  py::class_<catalog::CatalogEntry>(m, "CatalogEntry")
      .def_readonly("name", &catalog::CatalogEntry::name)
      .def_readonly("structure", &catalog::CatalogEntry::structure)
      .def_readonly("omega", &catalog::CatalogEntry::omega)
      .def_readonly("psi_plus", &catalog::CatalogEntry::psi_plus)
      .def_readonly("expected_g", &catalog::CatalogEntry::expected_g)
      .def_readonly("expected_w2", &catalog::CatalogEntry::expected_w2)
      .def_readonly("expected_gamma", &catalog::CatalogEntry::expected_gamma)
      .def_readonly("expected_s", &catalog::CatalogEntry::expected_s)
      .def_readonly("expected_c", &catalog::CatalogEntry::expected_c)
      .def_readonly("expected_w2_norm_sq", &catalog::CatalogEntry::expected_w2_norm_sq)
      .def_readonly("expected_regime", &catalog::CatalogEntry::expected_regime)
      .def("algebra", &catalog::CatalogEntry::algebra, py::arg("eps") = kEps);

  py::class_<catalog::EntryReport>(m, "EntryReport")
      .def_readonly("name", &catalog::EntryReport::name)
      .def_readonly("report", &catalog::EntryReport::report)
      .def_readonly("pass_", &catalog::EntryReport::pass)
      .def_property_readonly("diffs", [](const catalog::EntryReport& r) {
        std::vector<std::tuple<std::string, double, bool>> out;
        for (const auto& d : r.diffs) out.emplace_back(d.field, d.max_abs_diff, d.pass);
        return out;
      });

  auto cat = m.def_submodule("catalog");
  cat.def("names", &catalog::names);
  cat.def("get", &catalog::get, py::arg("name"), py::arg("param_a") = 1.0);
  cat.def("verify_entry", &catalog::verify_entry, py::arg("entry"), py::arg("eps") = kEps);
  cat.def(
      "check_adapted_basis",
      [](const catalog::CatalogEntry& e, double eps) {
        auto r = catalog::check_adapted_basis(e, eps);
        return py::dict(py::arg("matches") = r.matches, py::arg("theta") = r.theta,
                        py::arg("max_form_diff") = r.max_form_diff,
                        py::arg("s_diagonal") = r.s_diagonal);
      },
      py::arg("entry"), py::arg("eps") = kEps);
  cat.def("to_json", [](double a) { return catalog::to_json(a).dump(2); },
          py::arg("param_a") = 1.0);
}
