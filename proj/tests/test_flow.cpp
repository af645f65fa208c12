#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace iiaflow;
using namespace testsupport;

namespace {

KForm e(std::initializer_list<int> idx, double c = 1.0) { return KForm::monomial(idx, c); }

FlowContext context_for(const std::string& name, double f0 = 2.0, double param_a = 1.0) {
  auto entry = catalog::get(name, param_a);
  return make_flow_context(entry.algebra(), entry.omega, entry.psi_plus, f0);
}

// sample times strictly inside the maximal interval, clipped to a desk-scale
// window
std::vector<double> sample_times(const FlowContext& ctx, int n, double cap = 0.25) {
  auto iv = ctx.stationary ? std::make_pair(-cap, cap) : interval(ctx.regime);
  double lo = std::max(iv.first * 0.8, -cap);
  double hi = std::min(iv.second * 0.8, cap);
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) ts.push_back(lo + (hi - lo) * i / (n - 1));
  return ts;
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("classification") {
  CHECK(classify(2, 8, 2).tag == RegimeTag::SelfSimilar);
  CHECK(classify(4, 8, 2).tag == RegimeTag::Eternal);
  CHECK(classify(6, 6, 2).tag == RegimeTag::Immortal);
  CHECK(classify(2.5, 8, 2).tag == RegimeTag::Ancient);
  CHECK(classify(2, 8, 2).is_ancient());
  CHECK_THROWS_WITH_AS(classify(1.0, 8, 2), doctest::Contains("lower bound"),
                       std::runtime_error);
  CHECK_THROWS_AS(classify(2, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(classify(2, 8, 0), std::invalid_argument);
  // boundary resolution within eps
  CHECK(classify(4.0 + 1e-12, 8, 2).tag == RegimeTag::Eternal);
  CHECK(classify(2.0 - 1e-12, 8, 2).tag == RegimeTag::SelfSimilar);
}

TEST_CASE("maximal intervals") {
  auto ivE = interval(classify(4, 8, 2));
  CHECK(std::isinf(ivE.first));
  CHECK(std::isinf(ivE.second));
  auto ivA = interval(classify(2, 8, 2));  // e11e11
  CHECK(std::isinf(ivA.first));
  CHECK(ivA.second == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  auto ivI = interval(classify(6, 6, 2));  // g6_N3
  CHECK(ivI.first == doctest::Approx(-1.0 / 24.0).epsilon(1e-14));
  CHECK(std::isinf(ivI.second));
}

TEST_CASE("a(t) closed forms") {
  FlowRegime g51 = classify(2, 2, 2);
  CHECK(a_of_t(g51, 0.0) == 0.0);
  CHECK(a_of_t(g51, 0.25) == doctest::Approx(2.0).epsilon(1e-13));  // a = 8t
  CHECK(a_of_t(g51, -0.1) == doctest::Approx(-0.8).epsilon(1e-13));

  FlowRegime e11 = classify(2, 8, 2);
  CHECK(a_of_t(e11, 0.03) ==
        doctest::Approx(1.0 / std::sqrt(1.0 - 16.0 * 0.03) - 1.0).epsilon(1e-13));
  CHECK_THROWS_AS(a_of_t(e11, 0.2), std::domain_error);
  try {
    a_of_t(e11, 0.2);
  } catch (const std::domain_error& err) {
    CHECK(std::string(err.what()).find("0.0625") != std::string::npos);
  }
}

TEST_CASE("F and |N|^2 closed forms") {
  FlowRegime a57 = classify(4, 8, 2);
  CHECK(f_of_t(a57, 0.0) == doctest::Approx(2.0));
  CHECK(nijenhuis_of_t(a57, 0.0) == doctest::Approx(4.0));  // w^2/2
  CHECK(f_of_t(a57, 0.1) == doctest::Approx(2.0 * std::exp(0.8)).epsilon(1e-13));
  CHECK(nijenhuis_of_t(a57, 0.1) == doctest::Approx(4.0 * std::exp(-1.6)).epsilon(1e-13));

  // self-similar: the exponent (w^2-4c)/(2(2c-w^2)) vanishes, |N|^2 constant
  FlowRegime e11 = classify(2, 8, 2);
  CHECK(nijenhuis_of_t(e11, 0.05) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(nijenhuis_of_t(e11, -3.0) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("a(t) satisfies its own ODE at random times") {
  Rng rng(51);
  for (const auto& entry : catalog::all()) {
    FlowContext ctx = context_for(entry.name);
    auto iv = interval(ctx.regime);
    double lo = std::max(iv.first * 0.8, -0.4);
    double hi = std::min(iv.second * 0.8, 0.4);
    for (int i = 0; i < 100; ++i) {
      double t = rng.uniform(lo, hi);
      double a = ctx.a(t);
      double lhs = ctx.a_prime(t);
      double rhs = std::pow(ctx.f0, 3) *
                   std::pow(1.0 + (ctx.regime.c / ctx.f0) * a,
                            ctx.regime.w2sq / ctx.regime.c - 1.0);
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
      // eq. F^4/(F0+ca) form of the same ODE
      double f4 = std::pow(ctx.f(t), 4);
      CHECK(std::abs(lhs - f4 / (ctx.f0 + ctx.regime.c * a)) <
            1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("a(t) closed form differentiates correctly (finite differences)") {
  for (const auto& name : {"e11e11", "g5_1", "A5_7", "g6_54", "g6_N3"}) {
    FlowContext ctx = context_for(name);
    for (double t : sample_times(ctx, 7, 0.2)) {
      double h = 1e-6;
      double fd = (ctx.a(t + h) - ctx.a(t - h)) / (2.0 * h);
      CHECK(std::abs(fd - ctx.a_prime(t)) < 1e-4 * std::max(1.0, std::abs(ctx.a_prime(t))));
    }
  }
}

TEST_CASE("phi(t) and psi-(t)") {
  FlowContext ctx = context_for("g5_1");
  CHECK((phi_of_t(ctx, 0.0) - ctx.phi0).max_abs() < 1e-14);
  CHECK((psi_minus_of_t(ctx, 0.0) - ctx.s0.psi_minus).max_abs() < 1e-14);
  // phi(t) = phi0 + 8t e123 on g5_1
  KForm expect = ctx.phi0 + e({1, 2, 3}, 8.0 * 0.1);
  CHECK((phi_of_t(ctx, 0.1) - expect).max_abs() < 1e-13);

  // self-similar: phi(t)/F(t) is constant
  FlowContext sse = context_for("e11e11");
  for (double t : {-0.2, 0.0, 0.05}) {
    KForm scaled = (1.0 / sse.f(t)) * phi_of_t(sse, t);
    CHECK((scaled - (1.0 / sse.f0) * sse.phi0).max_abs() < 1e-12);
  }
}

TEST_CASE("flow context validates inputs") {
  auto entry = catalog::get("g5_1");
  CHECK_THROWS_AS(make_flow_context(entry.algebra(), entry.omega, entry.psi_plus, -1.0),
                  std::invalid_argument);
  // torsion-free data produce a stationary context
  FlowContext ab = make_flow_context(LieAlgebra::abelian(), omega_std(), psi_plus_std());
  CHECK(ab.stationary);
  CHECK(ab.a(123.0) == 0.0);
  CHECK((phi_of_t(ab, 5.0) - ab.phi0).max_abs() == 0.0);
}

TEST_CASE("flow_rhs on reference points") {
  LieAlgebra ab = LieAlgebra::abelian();
  CHECK(flow_rhs(omega_std(), psi_plus_std(), ab).max_abs() < 1e-14);

  auto g51 = catalog::get("g5_1");
  KForm rhs = flow_rhs(g51.omega, g51.psi_plus, g51.algebra());
  CHECK((rhs - e({1, 2, 3}, 8.0)).max_abs() < 1e-12);

  auto e11 = catalog::get("e11e11");
  KForm rhs2 = flow_rhs(e11.omega, e11.psi_plus, e11.algebra());
  CHECK((rhs2 - 8.0 * e11.psi_plus).max_abs() < 1e-12);
}

TEST_CASE("flow_rhs rejects non Type IIA data") {
  auto g51 = catalog::get("g5_1");
  LieAlgebra l = g51.algebra();
  CHECK_THROWS_WITH_AS(flow_rhs(g51.omega, g51.psi_plus + e({3, 5, 6}, 0.1), l),
                       doctest::Contains("closed"), std::runtime_error);
  CHECK_THROWS_WITH_AS(flow_rhs(KForm(2), g51.psi_plus, l), doctest::Contains("degenerate"),
                       std::runtime_error);
  // sign-flipped omega block: the induced metric has signature (2,4)
  KForm omega_flip = e({1, 2}) + e({3, 4}) - e({5, 6});
  CHECK_THROWS_WITH_AS(flow_rhs(omega_flip, psi_plus_std(), LieAlgebra::abelian()),
                       doctest::Contains("positive"), std::runtime_error);
}

TEST_CASE("rk4 on the abelian algebra is constant") {
  Trajectory tr = integrate_rk4(omega_std(), psi_plus_std(), LieAlgebra::abelian(), 0.1, 1e-2);
  CHECK_FALSE(tr.truncated);
  CHECK((tr.phi.back() - psi_plus_std()).max_abs() < 1e-14);
}

TEST_CASE("rk4 matches the closed form on g5_1") {
  FlowContext ctx = context_for("g5_1");
  Trajectory tr = integrate_rk4(ctx.s0.omega, ctx.phi0, ctx.algebra, 0.5, 1e-3);
  REQUIRE_FALSE(tr.truncated);
  double dev = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    dev = std::max(dev, (tr.phi[i] - phi_of_t(ctx, tr.t[i])).max_abs());
  CHECK(dev < 1e-6);
}

TEST_CASE("rk4 norm matches the self-similar closed form on e11e11") {
  FlowContext ctx = context_for("e11e11");
  Trajectory tr = integrate_rk4(ctx.s0.omega, ctx.phi0, ctx.algebra, 0.05, 1e-3);
  REQUIRE_FALSE(tr.truncated);
  for (std::size_t i = 0; i < tr.t.size(); i += 10) {
    // rescaling by the numeric norm absorbs the integration error
    auto [om_n, psi_n] = normalize_pair(ctx.s0.omega, tr.phi[i]);
    SU3Structure st = build_su3(om_n, psi_n);
    double norm = std::sqrt(norm_sq(st.g, tr.phi[i]));
    CHECK(std::abs(norm - 2.0 / std::sqrt(1.0 - 16.0 * tr.t[i])) < 1e-6);
  }
}

TEST_CASE("rk4 truncates cleanly when positivity fails") {
  FlowContext ctx = context_for("e11e11");  // t_max = 1/16
  Trajectory tr = integrate_rk4(ctx.s0.omega, ctx.phi0, ctx.algebra, 0.08, 1e-3);
  CHECK(tr.truncated);
  CHECK(tr.diagnostic.find("positivity") != std::string::npos);
  // the numeric trajectory crosses the analytic endpoint by at most a step or two
  CHECK(tr.t.back() < 1.0 / 16.0 + 2e-3);
  CHECK(tr.t.back() > 0.05);
  CHECK_THROWS_AS(integrate_rk4(ctx.s0.omega, ctx.phi0, ctx.algebra, 0.1, -1e-3),
                  std::invalid_argument);
}

TEST_CASE("verify_ansatz residuals are tiny on every entry") {
  for (const auto& entry : catalog::all()) {
    FlowContext ctx = context_for(entry.name);
    auto res = verify_ansatz(ctx, sample_times(ctx, 12, 0.25));
    CHECK(res.max_flow_residual < 1e-7);
    CHECK(res.max_f_ode_residual < 1e-5);
  }
  FlowContext g654 = context_for("g6_54");
  auto res = verify_ansatz(g654, {-0.04, -0.02, 0.0, 0.02, 0.04});
  CHECK(res.max_flow_residual < 1e-7);
  FlowContext ab = make_flow_context(LieAlgebra::abelian(), omega_std(), psi_plus_std());
  auto res0 = verify_ansatz(ab, {0.0, 1.0});
  CHECK(res0.max_flow_residual == 0.0);
}

TEST_CASE("structure validity along the flow") {
  for (const auto& name : {"g5_1", "A5_7", "e11e11", "g6_54", "g6_N3"}) {
    FlowContext ctx = context_for(name);
    for (double t : sample_times(ctx, 6, 0.2)) {
      KForm phi = phi_of_t(ctx, t);
      // |phi(t)| recomputed from scratch matches F(t)
      SU3Structure st = build_su3(ctx.s0.omega, (2.0 / ctx.f(t)) * phi);
      CHECK(std::abs(std::sqrt(norm_sq(st.g, phi)) - ctx.f(t)) < 1e-7);
      // psi-(t) recomputed as *_(g_t) psi+(t) matches its closed form
      KForm psi_t = (2.0 / ctx.f(t)) * phi;
      KForm starred = hodge_star(st.g, st.vol, psi_t);
      CHECK((starred - psi_minus_of_t(ctx, t)).max_abs() < 1e-7);
      // normalization holds at every time
      double lhs = wedge(psi_t, starred)[0];
      double rhs = (2.0 / 3.0) * wedge(wedge(ctx.s0.omega, ctx.s0.omega), ctx.s0.omega)[0];
      CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
      // w2-(t) = F_t/(F0 + c a) w2-(0)
      KForm w2t = codiff(ctx.algebra, st.g, psi_t);
      double factor = ctx.f(t) / (ctx.f0 + ctx.regime.c * ctx.a(t));
      CHECK((w2t - factor * ctx.report.w2).max_abs() < 1e-7);
    }
  }
}

TEST_CASE("nijenhuis norm decays along eternal and immortal flows") {
  for (const auto& name : {"A5_7", "g6_118", "g5_1", "g6_N3", "g6_38"}) {
    FlowContext ctx = context_for(name);
    double prev = ctx.nijenhuis(0.0);
    for (int i = 1; i <= 8; ++i) {
      double cur = ctx.nijenhuis(0.25 * i);
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(ctx.nijenhuis(40.0) < 1e-3);
  }
  // |N|^2(t) along the flow agrees with a from-scratch recomputation
  FlowContext ctx = context_for("g6_54");
  for (double t : sample_times(ctx, 5, 0.2)) {
    KForm psi_t = (2.0 / ctx.f(t)) * phi_of_t(ctx, t);
    SU3Structure st = build_su3(ctx.s0.omega, psi_t);
    double nsq = nijenhuis_norm_sq(st, ctx.algebra);
    CHECK(std::abs(nsq - ctx.nijenhuis(t)) < 1e-7 * std::max(1.0, ctx.nijenhuis(t)));
  }
}

TEST_CASE("rk4 convergence is fourth order") {
  FlowContext ctx = context_for("g6_54");
  double t_end = 0.1;
  std::vector<double> errs;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    Trajectory tr = integrate_rk4(ctx.s0.omega, ctx.phi0, ctx.algebra, t_end, dt);
    REQUIRE_FALSE(tr.truncated);
    double dev = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i)
      dev = std::max(dev, (tr.phi[i] - phi_of_t(ctx, tr.t[i])).max_abs());
    errs.push_back(dev);
  }
  double order1 = std::log2(errs[0] / errs[1]);
  double order2 = std::log2(errs[1] / errs[2]);
  CHECK(order1 > 3.5);
  CHECK(order1 < 4.5);
  CHECK(order2 > 3.5);
  CHECK(order2 < 4.5);
}

}  // TEST_SUITE
