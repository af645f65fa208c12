#include "iiaflow/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace iiaflow {
namespace catalog {

namespace {

using M = KForm;

KForm mono(std::initializer_list<int> idx, double c = 1.0) { return KForm::monomial(idx, c); }

Endo diag(double a, double b, double c, double d, double e, double f) {
  Vec6 v;
  v << a, b, c, d, e, f;
  return v.asDiagonal();
}

KForm covector(int i, double c = 1.0) {
  KForm f(1);
  f[i - 1] = c;
  return f;
}

CatalogEntry make_e11e11() {
  CatalogEntry e;
  e.name = "e11e11";
  e.structure = "(0,-e13,-e12,0,-e46,-e45)";
  e.omega = mono({1, 4}) + mono({2, 3}) + mono({5, 6}, 2.0);
  e.psi_plus = mono({1, 2, 5}) + mono({1, 2, 6}, -1.0) + mono({1, 3, 5}, -1.0) +
               mono({1, 3, 6}, -1.0) + mono({2, 4, 5}) + mono({2, 4, 6}) + mono({3, 4, 5}) +
               mono({3, 4, 6}, -1.0);
  e.expected_g = diag(1, 1, 1, 1, 2, 2);
  e.expected_w2 = mono({2, 6}, 2.0) + mono({2, 5}, 2.0) + mono({3, 6}, 2.0) + mono({3, 5}, -2.0);
  e.expected_gamma = KForm(3);
  e.expected_s = Endo::Zero();
  e.expected_c = 2.0;
  e.expected_w2_norm_sq = 8.0;
  e.expected_regime = RegimeTag::SelfSimilar;
  return e;
}

CatalogEntry make_g5_1() {
  CatalogEntry e;
  e.name = "g5_1";
  e.structure = "(0,0,0,0,e12,e13)";
  e.omega = mono({1, 4}) + mono({2, 6}) + mono({3, 5});
  e.psi_plus = mono({1, 2, 3}) + mono({1, 5, 6}) + mono({2, 4, 5}) + mono({3, 4, 6}, -1.0);
  e.expected_g = Endo::Identity();
  e.expected_w2 = mono({2, 6}) + mono({3, 5}, -1.0);
  e.expected_gamma = mono({1, 2, 3}, 1.5) + mono({1, 5, 6}, -0.5) + mono({2, 4, 5}, -0.5) +
                     mono({3, 4, 6}, 0.5);
  e.expected_s = diag(-0.5, -0.5, -0.5, 0.5, 0.5, 0.5);
  e.expected_c = 2.0;
  e.expected_w2_norm_sq = 2.0;
  e.adapted_basis = {covector(1), covector(4), covector(3, -1.0),
                     covector(5, -1.0), covector(2), covector(6)};
  e.expected_regime = RegimeTag::Immortal;
  return e;
}

CatalogEntry make_a5_7() {
  CatalogEntry e;
  e.name = "A5_7";
  e.structure = "(e15,-e25,-e35,e45,0,0)";
  e.omega = mono({1, 3}, -1.0) + mono({2, 4}) + mono({5, 6});
  e.psi_plus = mono({1, 2, 6}, -1.0) + mono({1, 4, 5}, -1.0) + mono({2, 3, 5}, -1.0) +
               mono({3, 4, 6}, -1.0);
  e.expected_g = Endo::Identity();
  e.expected_w2 = mono({1, 4}, 2.0) + mono({2, 3}, -2.0);
  e.expected_gamma = mono({1, 2, 6}, 2.0) + mono({1, 4, 5}, -2.0) + mono({2, 3, 5}, -2.0) +
                     mono({3, 4, 6}, 2.0);
  e.expected_s = diag(0, 0, 0, 0, -2.0, 2.0);
  e.expected_c = 4.0;
  e.expected_w2_norm_sq = 8.0;
  e.adapted_basis = {covector(3), covector(1), covector(2),
                     covector(4), covector(5), covector(6)};
  e.expected_regime = RegimeTag::Eternal;
  return e;
}

CatalogEntry make_a5_17(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("catalog: A5_17 requires parameter a > 0");
  CatalogEntry e;
  e.name = "A5_17";
  e.structure = "(a*e15+e25,-e15+a*e25,-a*e35+e45,-e35-a*e45,0,0)";
  e.params = {{"a", a}};
  e.omega = mono({1, 3}) + mono({2, 4}) + mono({5, 6});
  e.psi_plus = mono({1, 2, 5}) + mono({1, 4, 6}, -1.0) + mono({2, 3, 6}) + mono({3, 4, 5}, -1.0);
  e.expected_g = Endo::Identity();
  e.expected_w2 = mono({1, 2}, -2.0 * a) + mono({3, 4}, -2.0 * a);
  e.expected_gamma = mono({1, 2, 5}, 2.0 * a * a) + mono({1, 4, 6}, 2.0 * a * a) +
                     mono({2, 3, 6}, -2.0 * a * a) + mono({3, 4, 5}, -2.0 * a * a);
  e.expected_s = diag(0, 0, 0, 0, -2.0 * a * a, 2.0 * a * a);
  e.expected_c = 4.0 * a * a;
  e.expected_w2_norm_sq = 8.0 * a * a;
  e.adapted_basis = {covector(1), covector(3), covector(2),
                     covector(4), covector(5), covector(6)};
  e.expected_regime = RegimeTag::Eternal;
  return e;
}

CatalogEntry make_g6_n3() {
  CatalogEntry e;
  e.name = "g6_N3";
  e.structure = "(0,0,0,e12,e13,e23)";
  e.omega = mono({1, 6}, 2.0) + mono({2, 5}) + mono({3, 4}, -1.0);
  e.psi_plus = mono({1, 2, 3}, -1.0) + mono({1, 4, 5}) + mono({2, 4, 6}, -2.0) +
               mono({3, 5, 6}, -2.0);
  e.expected_g = diag(1, 1, 1, 1, 1, 4);
  e.expected_w2 = mono({1, 6}, 4.0) + mono({2, 5}, -1.0) + mono({3, 4});
  // The e246/e356 coefficients are +3, forced by gamma = S_* psi+ for the
  // listed S together with dw2- = (|w2-|^2/4) psi+ + gamma.
  e.expected_gamma = mono({1, 2, 3}, -4.5) + mono({1, 4, 5}, -1.5) + mono({2, 4, 6}, 3.0) +
                     mono({3, 5, 6}, 3.0);
  e.expected_s = diag(-1.5, -1.5, -1.5, 1.5, 1.5, 1.5);
  e.expected_c = 6.0;
  e.expected_w2_norm_sq = 6.0;
  e.adapted_basis = {covector(1), covector(6, 2.0), covector(3),
                     covector(4, -1.0), covector(2), covector(5)};
  e.expected_regime = RegimeTag::Immortal;
  return e;
}

CatalogEntry make_g6_38() {
  CatalogEntry e;
  e.name = "g6_38";
  e.structure = "(e23,-e36,e26,e26-e56,e36+e46,0)";
  e.omega = mono({1, 6}, -2.0) + mono({3, 4}) + mono({2, 5}, -1.0);
  e.psi_plus = mono({1, 3, 5}, -2.0) + mono({1, 2, 4}, -2.0) + mono({2, 3, 6}) +
               mono({4, 5, 6}, -1.0);
  e.expected_g = diag(4, 1, 1, 1, 1, 1);
  e.expected_w2 = mono({1, 6}, 4.0) + mono({2, 5}, -1.0) + mono({3, 4});
  e.expected_gamma = mono({1, 2, 4}, 3.0) + mono({1, 3, 5}, 3.0) + mono({2, 3, 6}, 4.5) +
                     mono({4, 5, 6}, 1.5);
  e.expected_s = diag(1.5, -1.5, -1.5, 1.5, 1.5, -1.5);
  e.expected_c = 6.0;
  e.expected_w2_norm_sq = 6.0;
  e.adapted_basis = {covector(6), covector(1, 2.0), covector(3),
                     covector(4), covector(2, -1.0), covector(5)};
  e.expected_regime = RegimeTag::Immortal;
  return e;
}

CatalogEntry make_g6_54() {
  const double r2 = std::sqrt(2.0);
  CatalogEntry e;
  e.name = "g6_54";
  e.structure = "(e16+e35,-e26+e45,e36,-e46,0,0)";
  e.omega = mono({1, 4}) + mono({2, 3}) + mono({5, 6}, r2);
  e.psi_plus = mono({1, 2, 5}) + mono({1, 3, 6}, -r2) + mono({2, 4, 6}, r2) + mono({3, 4, 5});
  e.expected_g = diag(1, 1, 1, 1, 1, 2);
  e.expected_w2 = mono({1, 3}, r2) + mono({1, 4}, -1.0) + mono({2, 3}) + mono({2, 4}, r2);
  e.expected_gamma = mono({1, 2, 5}, -1.5) + mono({1, 3, 6}, -r2 / 2.0) +
                     mono({2, 4, 6}, r2 / 2.0) + mono({3, 4, 5}, 0.5);
  e.expected_s = diag(0.5, 0.5, -0.5, -0.5, 0.5, -0.5);
  e.expected_c = 2.0;
  e.expected_w2_norm_sq = 6.0;
  e.adapted_basis = {covector(1), covector(4), covector(2),
                     covector(3), covector(5), covector(6, r2)};
  e.expected_regime = RegimeTag::Ancient;
  return e;
}

CatalogEntry make_g6_118() {
  CatalogEntry e;
  e.name = "g6_118";
  e.structure = "(-e16+e25,-e15-e26,e36-e45,e35+e46,0,0)";
  e.omega = mono({1, 4}) + mono({2, 3}) + mono({5, 6}, -1.0);
  e.psi_plus = mono({1, 2, 6}) + mono({1, 3, 5}, -1.0) + mono({2, 4, 5}) + mono({3, 4, 6});
  e.expected_g = Endo::Identity();
  e.expected_w2 = mono({1, 2}, 2.0) + mono({3, 4}, -2.0);
  e.expected_gamma = mono({1, 2, 6}, 2.0) + mono({1, 3, 5}, 2.0) + mono({2, 4, 5}, -2.0) +
                     mono({3, 4, 6}, 2.0);
  e.expected_s = diag(0, 0, 0, 0, 2.0, -2.0);
  e.expected_c = 4.0;
  e.expected_w2_norm_sq = 8.0;
  e.adapted_basis = {covector(1), covector(4), covector(3),
                     covector(2, -1.0), covector(5, -1.0), covector(6)};
  e.expected_regime = RegimeTag::Eternal;
  return e;
}

}  // namespace

std::vector<std::string> names() {
  return {"e11e11", "g5_1", "A5_7", "A5_17", "g6_N3", "g6_38", "g6_54", "g6_118"};
}

CatalogEntry get(const std::string& name, double param_a) {
  if (name == "e11e11") return make_e11e11();
  if (name == "g5_1") return make_g5_1();
  if (name == "A5_7") return make_a5_7();
  if (name == "A5_17") return make_a5_17(param_a);
  if (name == "g6_N3") return make_g6_n3();
  if (name == "g6_38") return make_g6_38();
  if (name == "g6_54") return make_g6_54();
  if (name == "g6_118") return make_g6_118();
  throw std::invalid_argument("catalog: unknown entry '" + name + "'");
}

std::vector<CatalogEntry> all(double param_a) {
  std::vector<CatalogEntry> v;
  for (const auto& n : names()) v.push_back(get(n, param_a));
  return v;
}

EntryReport verify_entry(const CatalogEntry& e, double eps) {
  EntryReport rep;
  rep.name = e.name;
  LieAlgebra l = e.algebra(eps);
  SU3Structure s = build_su3(e.omega, e.psi_plus, eps);
  rep.report = special_check(torsion(s, l, eps), s, l, eps);

  auto add = [&](const std::string& field, double diff) {
    rep.diffs.push_back({field, diff, diff <= eps});
  };
  add("g", (s.g.matrix() - e.expected_g).cwiseAbs().maxCoeff());
  add("w2", (rep.report.w2 - e.expected_w2).max_abs());
  add("gamma", (rep.report.gamma - e.expected_gamma).max_abs());
  add("S", (rep.report.s_endo - e.expected_s).cwiseAbs().maxCoeff());
  add("c", rep.report.c ? std::abs(*rep.report.c - e.expected_c) : e.expected_c);
  add("w2_norm_sq", std::abs(rep.report.w2_norm_sq - e.expected_w2_norm_sq));
  rep.pass = true;
  for (const auto& d : rep.diffs) rep.pass = rep.pass && d.pass;
  return rep;
}

AdaptedBasisReport check_adapted_basis(const CatalogEntry& e, double eps) {
  if (e.adapted_basis.size() != 6)
    throw std::invalid_argument("check_adapted_basis: entry '" + e.name +
                                "' lists no adapted basis (S = 0)");
  Endo m;  // row k holds the coefficients of the k-th adapted covector
  for (int k = 0; k < 6; ++k)
    m.row(k) = e.adapted_basis[static_cast<std::size_t>(k)].coeffs().transpose();
  Endo minv = m.inverse();

  SU3Structure s = build_su3(e.omega, e.psi_plus, eps);
  KForm omega_f = act_on_form(minv, e.omega);
  KForm psi_f = act_on_form(minv, e.psi_plus);
  KForm psim_f = act_on_form(minv, s.psi_minus);

  KForm omega_std = KForm::monomial({1, 2}) + KForm::monomial({3, 4}) + KForm::monomial({5, 6});
  KForm psi_std = KForm::monomial({1, 3, 5}) + KForm::monomial({1, 4, 6}, -1.0) +
                  KForm::monomial({2, 3, 6}, -1.0) + KForm::monomial({2, 4, 5}, -1.0);
  KForm psim_std = KForm::monomial({1, 3, 6}) + KForm::monomial({1, 4, 5}) +
                   KForm::monomial({2, 3, 5}) + KForm::monomial({2, 4, 6}, -1.0);

  AdaptedBasisReport rep;
  rep.max_form_diff = std::max({(omega_f - omega_std).max_abs(), (psi_f - psi_std).max_abs(),
                                (psim_f - psim_std).max_abs()});
  // frame angle of psi+ against the standard pair (0 for an adapted basis)
  Metric id = Metric::identity();
  rep.theta = std::atan2(inner(id, psi_f, psim_std), inner(id, psi_f, psi_std));

  Endo sp = m * e.expected_s * minv;
  double off = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) off = std::max(off, std::abs(sp(i, j)));
  bool alternating = true;
  for (int k = 0; k < 3; ++k)
    alternating = alternating && std::abs(sp(2 * k, 2 * k) + sp(2 * k + 1, 2 * k + 1)) <= eps;
  rep.s_diagonal = off <= eps && alternating;
  rep.matches = rep.max_form_diff <= eps && rep.s_diagonal;
  return rep;
}

nlohmann::json to_json(double param_a) {
  auto endo = [](const Endo& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 6; ++i) {
      nlohmann::json r = nlohmann::json::array();
      for (int j = 0; j < 6; ++j) r.push_back(m(i, j));
      rows.push_back(r);
    }
    return rows;
  };
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : all(param_a)) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& f : e.adapted_basis) basis.push_back(f);
    entries.push_back({{"name", e.name},
                       {"structure", e.structure},
                       {"params", e.params},
                       {"omega", e.omega},
                       {"psi_plus", e.psi_plus},
                       {"expected",
                        {{"g", endo(e.expected_g)},
                         {"w2", e.expected_w2},
                         {"gamma", e.expected_gamma},
                         {"S", endo(e.expected_s)},
                         {"c", e.expected_c},
                         {"w2_norm_sq", e.expected_w2_norm_sq}}},
                       {"adapted_basis", basis},
                       {"regime", regime_name(e.expected_regime)}});
  }
  return nlohmann::json{{"entries", entries}};
}

}  // namespace catalog
}  // namespace iiaflow
