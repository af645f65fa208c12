#include "iiaflow/flow.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iiaflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Endo omega_matrix(const KForm& omega) {
  Endo m = Endo::Zero();
  for (int i = 0; i < 6; ++i)
    for (int k = i + 1; k < 6; ++k) {
      double v = omega.coeff({i + 1, k + 1});
      m(i, k) = v;
      m(k, i) = -v;
    }
  return m;
}

// positive = definite with positive induced metric
bool type_iia_positive(const KForm& omega, const KForm& omega3, const KForm& phi, double eps) {
  StableFormResult hit = analyze_3form(phi, omega3, eps);
  if (!hit.definite) return false;
  Endo gm = omega_matrix(omega) * (*hit.j);
  Eigen::SelfAdjointEigenSolver<Endo> es(0.5 * (gm + gm.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > eps;
}

[[noreturn]] void out_of_interval(double t, const std::pair<double, double>& iv) {
  std::ostringstream os;
  os << "t = " << t << " outside the maximal interval (" << iv.first << ", " << iv.second << ")";
  throw std::domain_error(os.str());
}

void check_interval(const FlowRegime& r, double t) {
  auto iv = interval(r);
  if (!(t > iv.first && t < iv.second)) out_of_interval(t, iv);
}

}  // namespace

const char* regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::SelfSimilar: return "Ancient/SelfSimilar";
    case RegimeTag::Ancient: return "Ancient";
    case RegimeTag::Eternal: return "Eternal";
    case RegimeTag::Immortal: return "Immortal";
  }
  return "?";
}

FlowRegime classify(double c, double w2sq, double f0, double eps) {
  if (!(w2sq > 0.0)) throw std::invalid_argument("classify: |w2-|^2 must be positive");
  if (!(f0 > 0.0)) throw std::invalid_argument("classify: F0 must be positive");
  if (c < 0.25 * w2sq - eps)
    throw std::runtime_error("classify: c < |w2-|^2/4 violates the torsion lower bound");
  FlowRegime r{RegimeTag::Ancient, c, w2sq, f0};
  if (std::abs(c - 0.5 * w2sq) < eps)
    r.tag = RegimeTag::Eternal;
  else if (std::abs(c - 0.25 * w2sq) < eps)
    r.tag = RegimeTag::SelfSimilar;
  else if (c > 0.5 * w2sq)
    r.tag = RegimeTag::Immortal;
  return r;
}

std::pair<double, double> interval(const FlowRegime& r) {
  if (r.tag == RegimeTag::Eternal) return {-kInf, kInf};
  double denom = (r.w2sq - 2.0 * r.c) * r.f0 * r.f0;  // a-formula base vanishes at 1/denom
  if (denom > 0.0) return {-kInf, 1.0 / denom};
  return {1.0 / denom, kInf};
}

double a_of_t(const FlowRegime& r, double t) {
  check_interval(r, t);
  double f0 = r.f0, c = r.c;
  if (r.tag == RegimeTag::Eternal) return (f0 / c) * (std::exp(c * f0 * f0 * t) - 1.0);
  double twocw = 2.0 * c - r.w2sq;
  double base = twocw * f0 * f0 * t + 1.0;
  return (f0 / c) * (std::pow(base, c / twocw) - 1.0);
}

double a_prime_of_t(const FlowRegime& r, double t) {
  double a = a_of_t(r, t);
  return r.f0 * r.f0 * r.f0 * std::pow(1.0 + (r.c / r.f0) * a, r.w2sq / r.c - 1.0);
}

double f_of_t(const FlowRegime& r, double t) {
  double a = a_of_t(r, t);
  return r.f0 * std::pow(1.0 + (r.c / r.f0) * a, r.w2sq / (4.0 * r.c));
}

double nijenhuis_of_t(const FlowRegime& r, double t) {
  double a = a_of_t(r, t);
  return 0.5 * r.w2sq * std::pow(1.0 + (r.c / r.f0) * a, r.w2sq / (2.0 * r.c) - 2.0);
}

double FlowContext::a(double t) const { return stationary ? 0.0 : a_of_t(regime, t); }
double FlowContext::a_prime(double t) const { return stationary ? 0.0 : a_prime_of_t(regime, t); }
double FlowContext::f(double t) const { return stationary ? f0 : f_of_t(regime, t); }
double FlowContext::nijenhuis(double t) const { return stationary ? 0.0 : nijenhuis_of_t(regime, t); }

FlowContext make_flow_context(const LieAlgebra& l, const KForm& omega, const KForm& psi_plus,
                              double f0, double eps) {
  if (!(f0 > 0.0)) throw std::invalid_argument("make_flow_context: F0 must be positive");
  auto [om, psi] = normalize_pair(omega, psi_plus, eps);
  FlowContext ctx{l, build_su3(om, psi, eps), SpecialReport{}, f0};
  ctx.report = special_check(torsion(ctx.s0, l, eps), ctx.s0, l, eps);
  ctx.phi0 = (f0 / 2.0) * ctx.s0.psi_plus;
  if (ctx.report.torsion_free) {
    ctx.stationary = true;
    ctx.dw2 = KForm(3);
    ctx.star_dw2 = KForm(3);
    return ctx;
  }
  if (!ctx.report.is_special)
    throw std::runtime_error("make_flow_context: SHF structure is not special");
  ctx.regime = classify(*ctx.report.c, ctx.report.w2_norm_sq, f0, eps);
  ctx.dw2 = ce_d(l, ctx.report.w2);
  ctx.star_dw2 = hodge_star(ctx.s0.g, ctx.s0.vol, ctx.dw2);
  return ctx;
}

KForm phi_of_t(const FlowContext& ctx, double t) {
  return ctx.phi0 + (0.5 * ctx.a(t)) * ctx.dw2;
}

KForm psi_minus_of_t(const FlowContext& ctx, double t) {
  if (ctx.stationary) return ctx.s0.psi_minus;
  double a = ctx.a(t);
  double ft = ctx.f(t);
  return (ft / ctx.f0) *
         (ctx.s0.psi_minus - (a / (ctx.f0 + ctx.regime.c * a)) * ctx.star_dw2);
}

KForm flow_rhs(const KForm& omega, const KForm& phi, const LieAlgebra& l, double eps) {
  if (phi.degree() != 3) throw std::invalid_argument("flow_rhs: phi must be a 3-form");
  if (ce_d(l, phi).max_abs() > eps * std::max(1.0, phi.max_abs()))
    throw std::runtime_error("flow_rhs: not a Type IIA geometry (phi is not closed)");
  KForm omega3 = wedge(wedge(omega, omega), omega);
  if (std::abs(omega3[0]) <= eps)
    throw std::runtime_error("flow_rhs: not a Type IIA geometry (omega is degenerate)");
  if (wedge(phi, omega).max_abs() > eps * std::max(1.0, phi.max_abs() * omega.max_abs()))
    throw std::runtime_error("flow_rhs: not a Type IIA geometry (phi is not primitive)");
  StableFormResult hit = analyze_3form(phi, omega3, eps);
  if (!hit.definite)
    throw std::runtime_error("flow_rhs: not a Type IIA geometry (phi is not definite)");
  Endo j = *hit.j;
  Endo gm = omega_matrix(omega) * j;
  Metric g(0.5 * (gm + gm.transpose()),
           eps * std::max(1.0, gm.cwiseAbs().maxCoeff()));
  if (!g.positive_definite(eps))
    throw std::runtime_error("flow_rhs: not a Type IIA geometry (metric is not positive)");
  double nsq = norm_sq(g, phi);
  return ce_d(l, act_on_form(j, nsq * codiff(l, g, phi)));
}

Trajectory integrate_rk4(const KForm& omega, const KForm& phi0, const LieAlgebra& l,
                         double t_end, double dt, double eps) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_rk4: dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("integrate_rk4: t_end must be >= 0");
  KForm omega3 = wedge(wedge(omega, omega), omega);

  Trajectory traj;
  traj.t.push_back(0.0);
  traj.phi.push_back(phi0);

  auto positive = [&](const KForm& p) { return type_iia_positive(omega, omega3, p, eps); };
  auto rhs = [&](const KForm& p) { return flow_rhs(omega, p, l, eps); };

  double t = 0.0;
  KForm phi = phi0;
  while (t < t_end - 1e-15) {
    double h = std::min(dt, t_end - t);
    KForm k1(3), k2(3), k3(3), k4(3);
    bool ok = positive(phi);
    if (ok) {
      k1 = rhs(phi);
      KForm p2 = phi + (0.5 * h) * k1;
      ok = positive(p2);
      if (ok) {
        k2 = rhs(p2);
        KForm p3 = phi + (0.5 * h) * k2;
        ok = positive(p3);
        if (ok) {
          k3 = rhs(p3);
          KForm p4 = phi + h * k3;
          ok = positive(p4);
          if (ok) k4 = rhs(p4);
        }
      }
    }
    if (!ok) {
      traj.truncated = true;
      std::ostringstream os;
      os << "positivity lost near t = " << t + h << "; trajectory truncated at t = " << t;
      traj.diagnostic = os.str();
      return traj;
    }
    phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    traj.t.push_back(t);
    traj.phi.push_back(phi);
  }
  return traj;
}

AnsatzResidual verify_ansatz(const FlowContext& ctx, const std::vector<double>& t_samples,
                             double eps) {
  AnsatzResidual res;
  for (double t : t_samples) {
    KForm phi = phi_of_t(ctx, t);
    KForm lhs = flow_rhs(ctx.s0.omega, phi, ctx.algebra, eps);
    KForm target = (0.5 * ctx.a_prime(t)) * ctx.dw2;
    res.max_flow_residual =
        std::max(res.max_flow_residual, std::sqrt(norm_sq(ctx.s0.g, lhs - target)));
    if (ctx.stationary) continue;

    // dF/dt = w^2 F^5 / (4 (F0 + c a)^2) by central differences
    auto iv = interval(ctx.regime);
    double margin = std::min(t - iv.first, iv.second - t);
    double h = std::min(1e-6 * std::max(1.0, std::abs(t)), 0.1 * margin);
    double fd = (ctx.f(t + h) - ctx.f(t - h)) / (2.0 * h);
    double fc = ctx.f(t);
    double denom = ctx.f0 + ctx.regime.c * ctx.a(t);
    double expected = 0.25 * ctx.regime.w2sq * std::pow(fc, 5) / (denom * denom);
    res.max_f_ode_residual = std::max(
        res.max_f_ode_residual, std::abs(fd - expected) / std::max(1.0, std::abs(expected)));
  }
  return res;
}

}  // namespace iiaflow
