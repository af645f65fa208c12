#include "doctest.h"
#include "support.hpp"

using namespace iiaflow;
using namespace testsupport;

namespace {
KForm e(std::initializer_list<int> idx, double c = 1.0) { return KForm::monomial(idx, c); }
}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("structure equations and brackets") {
  LieAlgebra ab = LieAlgebra::abelian();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(ab.bracket_basis(i, j).cwiseAbs().maxCoeff() == 0.0);

  LieAlgebra l = g5_1();
  Vec6 b12 = l.bracket_basis(0, 1);  // [e1,e2] = -e5
  CHECK(b12[4] == -1.0);
  CHECK(b12.cwiseAbs().sum() == 1.0);
  Vec6 b13 = l.bracket_basis(0, 2);  // [e1,e3] = -e6
  CHECK(b13[5] == -1.0);
  CHECK((l.bracket_basis(1, 0) + b12).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jacobi violation is rejected naming the index") {
  std::array<KForm, 6> t{KForm(2), KForm(2), KForm(2), KForm(2), KForm(2), KForm(2)};
  t[0] = e({3, 4});
  t[4] = e({1, 2});  // d(de^5) = d(e12) = e34 ^ e2 != 0
  CHECK_THROWS_WITH_AS(LieAlgebra::from_structure_equations(t),
                       doctest::Contains("d(de^5)"), std::runtime_error);
  std::array<KForm, 6> bad{KForm(2), KForm(2), KForm(1), KForm(2), KForm(2), KForm(2)};
  CHECK_THROWS_AS(LieAlgebra::from_structure_equations(bad), std::invalid_argument);
}

TEST_CASE("tuple parser") {
  LieAlgebra l = LieAlgebra::parse("(0,-e13,-e12,0,-e46,-e45)");
  CHECK((l.d_basis(1) + e({1, 3})).max_abs() == 0.0);
  LieAlgebra p = LieAlgebra::parse("(a*e15+e25,-e15+a*e25,-a*e35+e45,-e35-a*e45,0,0)",
                                   {{"a", 2.0}});
  CHECK((p.d_basis(0) - (e({1, 5}, 2.0) + e({2, 5}))).max_abs() == 0.0);
  CHECK((p.d_basis(3) - (e({3, 5}, -1.0) + e({4, 5}, -2.0))).max_abs() == 0.0);
  LieAlgebra h = LieAlgebra::parse("(0,0,0,0,0.5*e12,e13)");
  CHECK((h.d_basis(4) - e({1, 2}, 0.5)).max_abs() == 0.0);
  CHECK_THROWS_AS(LieAlgebra::parse("(0,0,0,0,e12)"), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebra::parse("(0,0,0,0,b*e12,e13)"), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebra::parse("(0,0,0,0,2e12,e13)"), std::invalid_argument);
}

TEST_CASE("chevalley-eilenberg differential") {
  LieAlgebra ab = LieAlgebra::abelian();
  Rng rng(21);
  CHECK(ce_d(ab, random_form(rng, 3)).max_abs() == 0.0);

  LieAlgebra l = g5_1();
  CHECK((ce_d(l, e({3, 5})) + e({1, 2, 3})).max_abs() == 0.0);
  CHECK((ce_d(l, e({2, 6}) - e({3, 5})) - e({1, 2, 3}, 2.0)).max_abs() == 0.0);
}

TEST_CASE("leibniz implementation agrees with the bracket-formula oracle") {
  Rng rng(22);
  for (const auto& entry : catalog::all()) {
    LieAlgebra l = entry.algebra();
    for (int k = 1; k <= 4; ++k) {
      KForm a = random_form(rng, k);
      CHECK((ce_d(l, a) - ce_d_oracle(l, a)).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("d squared vanishes on random forms of every catalog algebra") {
  Rng rng(23);
  for (const auto& entry : catalog::all()) {
    LieAlgebra l = entry.algebra();
    for (int k = 0; k <= 4; ++k) {
      KForm a = random_form(rng, k);
      CHECK(ce_d(l, ce_d(l, a)).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("unimodularity") {
  CHECK(LieAlgebra::abelian().is_unimodular());
  CHECK(LieAlgebra::parse("(0,0,0,e12,e13,e23)").is_unimodular());  // g6_N3
  std::array<KForm, 6> aff{e({1, 2}), KForm(2), KForm(2), KForm(2), KForm(2), KForm(2)};
  LieAlgebra bad = LieAlgebra::from_structure_equations(aff);
  CHECK_FALSE(bad.is_unimodular());

  // unimodular <=> every 5-form is closed
  for (const auto& entry : catalog::all()) {
    LieAlgebra l = entry.algebra();
    double m = 0.0;
    for (int i = 0; i < form_dim(5); ++i) {
      KForm f(5);
      f[i] = 1.0;
      m = std::max(m, ce_d(l, f).max_abs());
    }
    CHECK(l.is_unimodular());
    CHECK(m < 1e-14);
  }
  double m = 0.0;
  for (int i = 0; i < form_dim(5); ++i) {
    KForm f(5);
    f[i] = 1.0;
    m = std::max(m, ce_d(bad, f).max_abs());
  }
  CHECK(m > 0.5);
}

TEST_CASE("codifferential on catalog data") {
  {
    auto entry = catalog::get("g5_1");
    LieAlgebra l = entry.algebra();
    SU3Structure s = build_su3(entry.omega, entry.psi_plus);
    CHECK((codiff(l, s.g, entry.psi_plus) - (e({2, 6}) - e({3, 5}))).max_abs() < 1e-14);
  }
  {
    auto entry = catalog::get("e11e11");
    LieAlgebra l = entry.algebra();
    SU3Structure s = build_su3(entry.omega, entry.psi_plus);
    KForm expect = e({2, 6}, 2.0) + e({2, 5}, 2.0) + e({3, 6}, 2.0) + e({3, 5}, -2.0);
    CHECK((codiff(l, s.g, entry.psi_plus) - expect).max_abs() < 1e-14);
  }
  CHECK(codiff(LieAlgebra::abelian(), Metric::identity(), e({1, 2})).max_abs() == 0.0);
  CHECK_THROWS_AS(codiff(LieAlgebra::abelian(), Metric::identity(), KForm(0)),
                  std::invalid_argument);
}

TEST_CASE("codifferential is adjoint to d on unimodular algebras") {
  Rng rng(24);
  for (const auto& entry : catalog::all()) {
    LieAlgebra l = entry.algebra();
    SU3Structure s = build_su3(entry.omega, entry.psi_plus);
    KForm orient = e({1, 2, 3, 4, 5, 6});
    for (int k = 1; k <= 5; ++k) {
      KForm a = random_form(rng, k - 1), b = random_form(rng, k);
      double lhs = wedge(ce_d(l, a), hodge_star(s.g, orient, b))[0];
      double rhs = wedge(a, hodge_star(s.g, orient, codiff(l, s.g, b)))[0];
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("laplacian") {
  Rng rng(25);
  LieAlgebra ab = LieAlgebra::abelian();
  CHECK(laplacian(ab, Metric::identity(), random_form(rng, 2)).max_abs() == 0.0);

  auto g51 = catalog::get("g5_1");
  LieAlgebra l = g51.algebra();
  SU3Structure s = build_su3(g51.omega, g51.psi_plus);
  KForm w2 = e({2, 6}) - e({3, 5});
  CHECK((laplacian(l, s.g, w2) - 2.0 * w2).max_abs() < 1e-13);

  auto n3 = catalog::get("g6_N3");
  LieAlgebra ln3 = n3.algebra();
  SU3Structure sn3 = build_su3(n3.omega, n3.psi_plus);
  CHECK((laplacian(ln3, sn3.g, n3.expected_w2) - 6.0 * n3.expected_w2).max_abs() < 1e-13);
}

TEST_CASE("laplacian commutes with d and with the codifferential") {
  Rng rng(26);
  for (const auto& name : {"g5_1", "g6_54", "g6_118"}) {
    auto entry = catalog::get(name);
    LieAlgebra l = entry.algebra();
    SU3Structure s = build_su3(entry.omega, entry.psi_plus);
    KForm a = random_form(rng, 2);
    CHECK((ce_d(l, laplacian(l, s.g, a)) - laplacian(l, s.g, ce_d(l, a))).max_abs() < 1e-11);
    KForm b = random_form(rng, 3);
    CHECK((codiff(l, s.g, laplacian(l, s.g, b)) - laplacian(l, s.g, codiff(l, s.g, b))).max_abs() <
          1e-11);
  }
}

}  // TEST_SUITE
