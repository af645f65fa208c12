#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "iiaflow/su3.hpp"

// The source-free Type IIA flow  d/dt phi = d J_t d^{*_t}(|phi|^2 phi)  on
// invariant data: regime classification, the closed-form solutions
// phi(t) = phi_0 + a(t)/2 dw2- with
//   a'(t) = F0^3 (1 + (c/F0) a)^{w^2/c - 1},  a(0) = 0,
// a generic right-hand-side evaluator, fixed-step RK4 integration, and the
// ansatz verifier that plays the role of an independent oracle.

namespace iiaflow {

enum class RegimeTag { SelfSimilar, Ancient, Eternal, Immortal };

const char* regime_name(RegimeTag tag);

struct FlowRegime {
  RegimeTag tag;
  double c;
  double w2sq;
  double f0;

  bool is_ancient() const { return tag == RegimeTag::Ancient || tag == RegimeTag::SelfSimilar; }
};

// Boundaries resolved at tolerance eps: |c - w^2/2| < eps -> Eternal,
// |c - w^2/4| < eps -> SelfSimilar. Throws when c < w^2/4 - eps (violates the
// torsion lower bound) or when w2sq or f0 are not positive.
FlowRegime classify(double c, double w2sq, double f0, double eps = kEps);

// Maximal existence interval; Eternal -> (-inf, +inf).
std::pair<double, double> interval(const FlowRegime& r);

// Closed forms. Each throws std::domain_error carrying the interval when t
// lies outside it.
double a_of_t(const FlowRegime& r, double t);
double a_prime_of_t(const FlowRegime& r, double t);
double f_of_t(const FlowRegime& r, double t);
double nijenhuis_of_t(const FlowRegime& r, double t);

struct FlowContext {
  LieAlgebra algebra;
  SU3Structure s0;       // normalized initial SU(3)-structure
  SpecialReport report;  // completed torsion report
  double f0 = 2.0;
  bool stationary = false;  // torsion-free initial datum: phi(t) = phi_0
  FlowRegime regime{};      // meaningful unless stationary
  KForm phi0{3};            // (F0/2) psi+_0
  KForm dw2{3};
  KForm star_dw2{3};        // *_0 dw2-

  double a(double t) const;
  double a_prime(double t) const;
  double f(double t) const;
  double nijenhuis(double t) const;
};

// Builds the flow data for a special (or torsion-free) symplectic half-flat
// initial structure; psi_plus is renormalized so that phi_0 = (F0/2) psi+.
FlowContext make_flow_context(const LieAlgebra& l, const KForm& omega, const KForm& psi_plus,
                              double f0 = 2.0, double eps = kEps);

KForm phi_of_t(const FlowContext& ctx, double t);
KForm psi_minus_of_t(const FlowContext& ctx, double t);

// d J d*(|phi|^2 phi) for a Type IIA geometry (omega, phi); throws naming the
// failed condition when (omega, phi) is not one.
KForm flow_rhs(const KForm& omega, const KForm& phi, const LieAlgebra& l, double eps = kEps);

struct Trajectory {
  std::vector<double> t;
  std::vector<KForm> phi;
  bool truncated = false;   // positivity lost before t_end
  std::string diagnostic;
};

// Classical fixed-step RK4 on the 20 coefficients of phi; every substep
// revalidates P(phi) < -eps and the trajectory is truncated cleanly when
// positivity fails (approaching an interval endpoint).
Trajectory integrate_rk4(const KForm& omega, const KForm& phi0, const LieAlgebra& l,
                         double t_end, double dt, double eps = kEps);

struct AnsatzResidual {
  double max_flow_residual = 0.0;   // max_t || flow_rhs - a'(t)/2 dw2- ||_{g_0}
  double max_f_ode_residual = 0.0;  // relative residual of dF/dt = w^2 F^5 / (4 (F0+ca)^2)
};

AnsatzResidual verify_ansatz(const FlowContext& ctx, const std::vector<double>& t_samples,
                             double eps = kEps);

}  // namespace iiaflow
