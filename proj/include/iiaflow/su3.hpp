#pragma once

#include <array>
#include <optional>
#include <utility>

#include "iiaflow/hitchin.hpp"
#include "iiaflow/liealg.hpp"

// SU(3)-structures from pairs (omega, psi+): induced J and metric,
// irreducible module projections, the torsion form w2- = d*psi+ of a
// symplectic half-flat structure, the special-structure conditions, and the
// Sigma_8 / Sigma_12 isomorphisms between symmetric endomorphisms and the
// modules Lambda^2_8 / Lambda^3_12.

namespace iiaflow {

struct SU3Structure {
  KForm omega;      // non-degenerate 2-form, d-closed in the SHF setting
  KForm psi_plus;   // definite, primitive, |psi+| = 2
  KForm psi_minus;  // J.psi+ = *psi+
  Endo j;
  Metric g;
  KForm vol;        // g-unit volume form, orientation from omega^3
};

// Derives the full structure. Orientation is taken from omega^3. Throws with
// a distinct message for: degenerate omega, non-definite psi+, non-primitive
// psi+, non-positive metric, violated normalization psi+ ^ psi- = (2/3) omega^3.
SU3Structure build_su3(const KForm& omega, const KForm& psi_plus, double eps = kEps);

// Rescales psi+ by 2/|psi+|_g until the normalization condition holds; the
// induced J (hence g) is scale-invariant, so this converges immediately for
// compatible pairs. Throws after 10 passes.
std::pair<KForm, KForm> normalize_pair(const KForm& omega, const KForm& psi_plus,
                                       double eps = kEps);

struct Proj2 {
  KForm p1, p6, p8;  // sigma = p1 + p6 + p8, mutually g-orthogonal
};
Proj2 project2(const SU3Structure& s, const KForm& sigma);

struct Proj3 {
  KForm p_re, p_im, p6, p12;
};
Proj3 project3(const SU3Structure& s, const KForm& rho);

struct SpecialReport {
  KForm w2{2};        // torsion form w2- = d*psi+, lies in Lambda^2_8
  double w2_norm_sq = 0.0;
  KForm gamma{3};     // Lambda^3_12 component of dw2-
  Endo s_endo = Endo::Zero();  // gamma = S_* psi+
  std::optional<double> c;     // Laplacian eigenvalue, absent when torsion free
  std::array<double, 3> spectrum{};  // mu_1 >= mu_2 >= mu_3 (spectrum is +-mu_i)
  double scal = 0.0;            // -|w2-|^2 / 2
  double nijenhuis_norm_sq = 0.0;
  bool is_shf = false;
  bool cond_i = false;    // Delta w2- = c w2-
  bool cond_ii = false;   // dw2- ^ w2- = 0
  bool cond_iii = false;  // |dw2-|^2 = c |w2-|^2
  bool is_special = false;
  bool hermitian_ricci = false;  // gamma = 0
  bool torsion_free = false;     // w2- = 0
};

void to_json(nlohmann::json& j, const SpecialReport& r);

// Computes w2-, gamma, S, spectrum, scalar curvature and the Nijenhuis norm.
// Requires d.omega = 0 and d.psi+ = 0 (throws "not symplectic half-flat"
// otherwise). The condition flags are left to special_check.
SpecialReport torsion(const SU3Structure& s, const LieAlgebra& l, double eps = kEps);

// Fills in the special-structure flags: the eigenvalue c is extracted as the
// Rayleigh quotient <Delta w2-, w2-> / |w2-|^2 with a residual test.
SpecialReport special_check(SpecialReport r, const SU3Structure& s, const LieAlgebra& l,
                            double eps = kEps);

// Sym(V) machinery. Sym+0: g-symmetric, J-commuting, traceless.
// Sym-: g-symmetric, J-anticommuting.
Endo project_sym_plus0(const SU3Structure& s, const Endo& x);
Endo project_sym_minus(const SU3Structure& s, const Endo& x);

// Sigma_8(A) = g(AJ., .); input must lie in Sym+0 (throws otherwise).
KForm sigma8(const SU3Structure& s, const Endo& a, double eps = kEps);
// Sigma_12(S) = S_* psi+; input must lie in Sym- (throws otherwise).
KForm sigma12(const SU3Structure& s, const Endo& t, double eps = kEps);

// Least-squares inversion of Sigma_12 over an orthonormal basis of Sym-;
// throws if the reconstruction residual exceeds eps (input outside
// Lambda^3_12).
Endo invert_sigma12(const SU3Structure& s, const KForm& rho, double eps = kEps);

struct Lemma1Result {
  bool commute;
  bool wedge_zero;
  double commutator_norm;
  double wedge_norm;
};
// A in Sym+0 and S in Sym- commute iff Sigma_8(A) ^ Sigma_12(S) = 0; both
// sides are classified as zero below `rel_threshold` times their natural
// scale.
Lemma1Result lemma1_check(const SU3Structure& s, const Endo& a, const Endo& t,
                          double rel_threshold = 1e-6);

// Spectrum identity mu1^2+mu2^2+mu3^2 = w^2/4 (c - w^2/4), plus the rank-2
// and rank-6 specializations when they apply.
bool eigen_constraint_check(const SpecialReport& r, double eps = kEps);

// |N_J|^2 with components N(e_i,e_j) = 1/4([Je_i,Je_j] - J[Je_i,e_j]
// - J[e_i,Je_j] - [e_i,e_j]) summed over a g-orthonormal frame.
double nijenhuis_norm_sq(const SU3Structure& s, const LieAlgebra& l);

}  // namespace iiaflow
