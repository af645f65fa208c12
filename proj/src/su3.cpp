#include "iiaflow/su3.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace iiaflow {

namespace {

Endo omega_matrix(const KForm& omega) {
  Endo m = Endo::Zero();
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      double v = omega.coeff({i + 1, j + 1});
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

SU3Structure build_impl(const KForm& omega, const KForm& psi_plus, double eps,
                        bool check_normalization) {
  if (omega.degree() != 2) throw std::invalid_argument("build_su3: omega must be a 2-form");
  if (psi_plus.degree() != 3) throw std::invalid_argument("build_su3: psi+ must be a 3-form");

  KForm omega3 = wedge(wedge(omega, omega), omega);
  if (std::abs(omega3[0]) <= eps)
    throw std::runtime_error("build_su3: omega is degenerate (omega^3 = 0)");

  StableFormResult hit = analyze_3form(psi_plus, omega3, eps);
  if (!hit.definite) throw std::runtime_error("build_su3: psi+ is not definite (P >= 0)");

  double prim_scale = std::max(1.0, psi_plus.max_abs() * omega.max_abs());
  if (wedge(psi_plus, omega).max_abs() > eps * prim_scale)
    throw std::runtime_error("build_su3: psi+ is not primitive (psi+ ^ omega != 0)");

  Endo j = *hit.j;
  Endo gm = omega_matrix(omega) * j;  // g = omega(., J.)
  if ((gm - gm.transpose()).cwiseAbs().maxCoeff() > eps * std::max(1.0, gm.cwiseAbs().maxCoeff()))
    throw std::runtime_error("build_su3: induced bilinear form is not symmetric");
  Metric g(0.5 * (gm + gm.transpose()));
  if (!g.positive_definite(eps))
    throw std::runtime_error("build_su3: induced metric is not positive definite");

  SU3Structure s{omega, psi_plus, act_on_form(j, psi_plus), j, g, volume_form(g, omega3)};

  KForm starred = hodge_star(g, omega3, psi_plus);
  if ((starred - s.psi_minus).max_abs() > eps * std::max(1.0, psi_plus.max_abs()))
    throw std::runtime_error("build_su3: J.psi+ and *psi+ disagree");

  if (check_normalization) {
    double lhs = wedge(psi_plus, s.psi_minus)[0];
    double rhs = (2.0 / 3.0) * omega3[0];
    if (std::abs(lhs - rhs) > eps * std::max(1.0, std::abs(rhs)))
      throw std::runtime_error(
          "build_su3: normalization psi+ ^ psi- = (2/3) omega^3 violated; rescale with "
          "normalize_pair");
  }
  return s;
}

}  // namespace

SU3Structure build_su3(const KForm& omega, const KForm& psi_plus, double eps) {
  return build_impl(omega, psi_plus, eps, true);
}

std::pair<KForm, KForm> normalize_pair(const KForm& omega, const KForm& psi_plus, double eps) {
  KForm psi = psi_plus;
  for (int pass = 0; pass < 10; ++pass) {
    SU3Structure s = build_impl(omega, psi, eps, false);
    double n = std::sqrt(norm_sq(s.g, psi));
    double lhs = wedge(psi, s.psi_minus)[0];
    double rhs = (2.0 / 3.0) * wedge(wedge(omega, omega), omega)[0];
    if (std::abs(n - 2.0) <= eps && std::abs(lhs - rhs) <= eps * std::max(1.0, std::abs(rhs)))
      return {omega, psi};
    psi *= 2.0 / n;
  }
  throw std::runtime_error("normalize_pair: did not converge in 10 passes");
}

Proj2 project2(const SU3Structure& s, const KForm& sigma) {
  if (sigma.degree() != 2) throw std::invalid_argument("project2: input must be a 2-form");
  Proj2 p{KForm(2), KForm(2), KForm(2)};
  p.p1 = (inner(s.g, sigma, s.omega) / norm_sq(s.g, s.omega)) * s.omega;

  // Lambda^2_6 = { *(alpha ^ psi+) : alpha a 1-form }
  Eigen::MatrixXd basis(form_dim(2), 6);
  for (int i = 0; i < 6; ++i) {
    KForm alpha(1);
    alpha[i] = 1.0;
    basis.col(i) = hodge_star(s.g, s.vol, wedge(alpha, s.psi_plus)).coeffs();
  }
  Eigen::MatrixXd gram2 = s.g.gram(2);
  Eigen::MatrixXd nm = basis.transpose() * gram2 * basis;
  Eigen::VectorXd rhs = basis.transpose() * gram2 * sigma.coeffs();
  Eigen::VectorXd x = nm.ldlt().solve(rhs);
  p.p6.coeffs() = basis * x;
  p.p8 = sigma - p.p1 - p.p6;
  return p;
}

Proj3 project3(const SU3Structure& s, const KForm& rho) {
  if (rho.degree() != 3) throw std::invalid_argument("project3: input must be a 3-form");
  Proj3 p{KForm(3), KForm(3), KForm(3), KForm(3)};
  p.p_re = (inner(s.g, rho, s.psi_plus) / norm_sq(s.g, s.psi_plus)) * s.psi_plus;
  p.p_im = (inner(s.g, rho, s.psi_minus) / norm_sq(s.g, s.psi_minus)) * s.psi_minus;

  // Lambda^3_6 = { alpha ^ omega }
  Eigen::MatrixXd basis(form_dim(3), 6);
  for (int i = 0; i < 6; ++i) {
    KForm alpha(1);
    alpha[i] = 1.0;
    basis.col(i) = wedge(alpha, s.omega).coeffs();
  }
  Eigen::MatrixXd gram3 = s.g.gram(3);
  Eigen::MatrixXd nm = basis.transpose() * gram3 * basis;
  Eigen::VectorXd rhs = basis.transpose() * gram3 * rho.coeffs();
  Eigen::VectorXd x = nm.ldlt().solve(rhs);
  p.p6.coeffs() = basis * x;
  p.p12 = rho - p.p_re - p.p_im - p.p6;
  return p;
}

Endo project_sym_plus0(const SU3Structure& s, const Endo& x) {
  // g-symmetrize: the g-symmetric endomorphisms are g^{-1} M with M = M^T
  Endo m = 0.5 * (s.g.matrix() * x + x.transpose() * s.g.matrix());
  Endo sym = s.g.inverse() * m;
  Endo part = 0.5 * (sym - s.j * sym * s.j);  // J-commuting part (J^{-1} = -J)
  return part - (part.trace() / 6.0) * Endo::Identity();
}

Endo project_sym_minus(const SU3Structure& s, const Endo& x) {
  Endo m = 0.5 * (s.g.matrix() * x + x.transpose() * s.g.matrix());
  Endo sym = s.g.inverse() * m;
  return 0.5 * (sym + s.j * sym * s.j);  // J-anticommuting part
}

namespace {

void require_sym(const SU3Structure& s, const Endo& a, bool anticommute, double eps,
                 const char* who) {
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  Endo ga = s.g.matrix() * a;
  if ((ga - ga.transpose()).cwiseAbs().maxCoeff() > eps * scale)
    throw std::invalid_argument(std::string(who) + ": wrong symmetry type (not g-symmetric)");
  Endo comm = anticommute ? Endo(a * s.j + s.j * a) : Endo(a * s.j - s.j * a);
  if (comm.cwiseAbs().maxCoeff() > eps * scale)
    throw std::invalid_argument(std::string(who) + ": wrong symmetry type (J relation fails)");
  if (!anticommute && std::abs(a.trace()) > eps * scale)
    throw std::invalid_argument(std::string(who) + ": wrong symmetry type (trace != 0)");
}

std::vector<Endo> sym_minus_basis(const SU3Structure& s) {
  // project the 21 elementary symmetric matrices and extract a basis of the
  // 12-dimensional image
  std::vector<Endo> cand;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      Endo m = Endo::Zero();
      m(i, j) = m(j, i) = 1.0;
      cand.push_back(project_sym_minus(s, s.g.inverse() * m));
    }
  Eigen::MatrixXd flat(36, static_cast<Eigen::Index>(cand.size()));
  for (std::size_t k = 0; k < cand.size(); ++k)
    flat.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(cand[k].data(), 36);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(flat);
  qr.setThreshold(1e-10);
  Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(36, rank);
  std::vector<Endo> basis;
  for (Eigen::Index k = 0; k < rank; ++k) {
    Endo e;
    Eigen::Map<Eigen::VectorXd>(e.data(), 36) = q.col(k);
    basis.push_back(e);
  }
  return basis;
}

std::array<double, 3> spectrum_of(const SU3Structure& s, const Endo& t) {
  // t is g-symmetric; transform to an orthonormal frame to use a symmetric
  // eigensolver
  Eigen::LLT<Endo> llt(s.g.matrix());
  Endo lt = llt.matrixL().transpose();
  Endo sym = lt * t * lt.inverse();
  Eigen::SelfAdjointEigenSolver<Endo> es(0.5 * (sym + sym.transpose()));
  auto ev = es.eigenvalues();  // ascending
  return {ev[5], ev[4], ev[3]};
}

}  // namespace

KForm sigma8(const SU3Structure& s, const Endo& a, double eps) {
  require_sym(s, a, false, eps, "sigma8");
  Endo m = (a * s.j).transpose() * s.g.matrix();  // sigma(e_i,e_j) = g(AJe_i, e_j)
  KForm r(2);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) r += KForm::monomial({i + 1, j + 1}, m(i, j));
  return r;
}

KForm sigma12(const SU3Structure& s, const Endo& t, double eps) {
  require_sym(s, t, true, eps, "sigma12");
  return derive_action(t, s.psi_plus);
}

Endo invert_sigma12(const SU3Structure& s, const KForm& rho, double eps) {
  if (rho.degree() != 3) throw std::invalid_argument("invert_sigma12: input must be a 3-form");
  std::vector<Endo> basis = sym_minus_basis(s);
  Eigen::MatrixXd b(form_dim(3), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    b.col(static_cast<Eigen::Index>(k)) = derive_action(basis[k], s.psi_plus).coeffs();
  Eigen::VectorXd x = b.colPivHouseholderQr().solve(rho.coeffs());
  Endo t = Endo::Zero();
  for (std::size_t k = 0; k < basis.size(); ++k) t += x[static_cast<Eigen::Index>(k)] * basis[k];
  KForm rebuilt(3);
  rebuilt.coeffs() = b * x;
  double resid = std::sqrt(norm_sq(s.g, rebuilt - rho));
  if (resid > eps * std::max(1.0, std::sqrt(norm_sq(s.g, rho))))
    throw std::runtime_error("invert_sigma12: residual " + std::to_string(resid) +
                             " exceeds tolerance (input not in Lambda^3_12)");
  return t;
}

double nijenhuis_norm_sq(const SU3Structure& s, const LieAlgebra& l) {
  Eigen::LLT<Endo> llt(s.g.matrix());
  Endo frame = Endo(llt.matrixL()).transpose().inverse();  // columns: ON frame
  double total = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      Vec6 fa = frame.col(a), fb = frame.col(b);
      Vec6 n = 0.25 * (l.bracket(s.j * fa, s.j * fb) - s.j * l.bracket(s.j * fa, fb) -
                       s.j * l.bracket(fa, s.j * fb) - l.bracket(fa, fb));
      Vec6 comps = frame.transpose() * s.g.matrix() * n;
      total += comps.squaredNorm();
    }
  return total;
}

SpecialReport torsion(const SU3Structure& s, const LieAlgebra& l, double eps) {
  if (ce_d(l, s.omega).max_abs() > eps * std::max(1.0, s.omega.max_abs()))
    throw std::runtime_error("torsion: not symplectic half-flat (d omega != 0)");
  if (ce_d(l, s.psi_plus).max_abs() > eps * std::max(1.0, s.psi_plus.max_abs()))
    throw std::runtime_error("torsion: not symplectic half-flat (d psi+ != 0)");

  SpecialReport r;
  r.is_shf = true;
  r.w2 = codiff(l, s.g, s.psi_plus);
  r.w2_norm_sq = norm_sq(s.g, r.w2);
  r.scal = -0.5 * r.w2_norm_sq;
  r.nijenhuis_norm_sq = nijenhuis_norm_sq(s, l);

  double w2_scale = std::max(1.0, r.w2.max_abs());
  Proj2 p2 = project2(s, r.w2);
  if (p2.p1.max_abs() > eps * w2_scale || p2.p6.max_abs() > eps * w2_scale)
    throw std::runtime_error("torsion: w2- has components outside Lambda^2_8");
  if (codiff(l, s.g, r.w2).max_abs() > eps * w2_scale)
    throw std::runtime_error("torsion: w2- is not coclosed");

  KForm dw2 = ce_d(l, r.w2);
  Proj3 p3 = project3(s, dw2);
  double dw_scale = std::max(1.0, dw2.max_abs());
  if (p3.p_im.max_abs() > eps * dw_scale || p3.p6.max_abs() > eps * dw_scale)
    throw std::runtime_error("torsion: dw2- has components outside Re + Lambda^3_12");
  double re_coeff = inner(s.g, dw2, s.psi_plus) / norm_sq(s.g, s.psi_plus);
  if (std::abs(re_coeff - 0.25 * r.w2_norm_sq) > eps * std::max(1.0, r.w2_norm_sq))
    throw std::runtime_error("torsion: Re component of dw2- is not |w2-|^2/4");
  r.gamma = p3.p12;

  if (r.gamma.max_abs() > eps * dw_scale) {
    r.s_endo = invert_sigma12(s, r.gamma, eps);
  } else {
    r.s_endo = Endo::Zero();
  }
  r.spectrum = spectrum_of(s, r.s_endo);
  return r;
}

SpecialReport special_check(SpecialReport r, const SU3Structure& s, const LieAlgebra& l,
                            double eps) {
  r.torsion_free = r.w2_norm_sq <= eps;
  double dw_scale;
  KForm dw2 = ce_d(l, r.w2);
  dw_scale = std::max(1.0, dw2.max_abs() * std::max(1.0, r.w2.max_abs()));
  r.hermitian_ricci = r.gamma.max_abs() <= eps * std::max(1.0, dw2.max_abs());

  if (r.torsion_free) {
    r.c.reset();
    r.cond_i = r.cond_ii = r.cond_iii = false;
    r.is_special = false;
    return r;
  }

  KForm lap_w2 = laplacian(l, s.g, r.w2);
  double c = inner(s.g, lap_w2, r.w2) / r.w2_norm_sq;
  r.c = c;
  double resid = std::sqrt(norm_sq(s.g, lap_w2 - c * r.w2));
  r.cond_i = resid <= eps * std::sqrt(r.w2_norm_sq);
  r.cond_ii = wedge(dw2, r.w2).max_abs() <= eps * dw_scale;
  double dw2_nsq = norm_sq(s.g, dw2);
  r.cond_iii = std::abs(dw2_nsq - c * r.w2_norm_sq) <= eps * std::max(1.0, c * r.w2_norm_sq);
  r.is_special = r.cond_i && r.cond_ii && r.cond_iii;
  return r;
}

Lemma1Result lemma1_check(const SU3Structure& s, const Endo& a, const Endo& t,
                          double rel_threshold) {
  require_sym(s, a, false, 1e-8, "lemma1_check(A)");
  require_sym(s, t, true, 1e-8, "lemma1_check(S)");
  Lemma1Result res{};
  res.commutator_norm = (a * t - t * a).cwiseAbs().maxCoeff();
  KForm sg = sigma8(s, a, 1e-8);
  KForm rho = sigma12(s, t, 1e-8);
  res.wedge_norm = wedge(sg, rho).max_abs();
  double scale_c = std::max(a.cwiseAbs().maxCoeff() * t.cwiseAbs().maxCoeff(), 1e-300);
  double scale_w = std::max(sg.max_abs() * rho.max_abs(), 1e-300);
  res.commute = res.commutator_norm <= rel_threshold * scale_c;
  res.wedge_zero = res.wedge_norm <= rel_threshold * scale_w;
  return res;
}

bool eigen_constraint_check(const SpecialReport& r, double eps) {
  if (!r.c) return r.torsion_free;  // S = 0 and c undefined: nothing to check
  double w2 = r.w2_norm_sq;
  double c = *r.c;
  double target = 0.25 * w2 * (c - 0.25 * w2);
  double sum = 0.0;
  for (double mu : r.spectrum) sum += mu * mu;
  double scale = std::max(1.0, std::abs(target));
  if (std::abs(sum - target) > eps * scale) return false;

  // rank pattern specializations
  double mu_scale = std::max({std::abs(r.spectrum[0]), std::abs(r.spectrum[1]),
                              std::abs(r.spectrum[2]), 1.0});
  int nonzero = 0;
  for (double mu : r.spectrum)
    if (std::abs(mu) > eps * mu_scale) ++nonzero;
  if (nonzero == 1) {
    double mu = r.spectrum[0];
    if (std::abs(mu * mu - 0.25 * w2 * (c - 0.25 * w2)) > eps * scale) return false;
  } else if (nonzero == 3) {
    if (std::abs(r.spectrum[0] - r.spectrum[1]) > eps * mu_scale ||
        std::abs(r.spectrum[1] - r.spectrum[2]) > eps * mu_scale)
      return true;  // identity already verified; equal-mu form does not apply
    double mu = r.spectrum[0];
    if (std::abs(mu * mu - w2 * (c - 0.25 * w2) / 12.0) > eps * scale) return false;
  }
  return true;
}

void to_json(nlohmann::json& j, const SpecialReport& r) {
  auto endo = [](const Endo& e) {
    nlohmann::json m = nlohmann::json::array();
    for (int i = 0; i < 6; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < 6; ++k) row.push_back(e(i, k));
      m.push_back(row);
    }
    return m;
  };
  j = nlohmann::json{
      {"w2", r.w2},
      {"w2_norm_sq", r.w2_norm_sq},
      {"gamma", r.gamma},
      {"S", endo(r.s_endo)},
      {"c", r.c ? nlohmann::json(*r.c) : nlohmann::json(nullptr)},
      {"spectrum", r.spectrum},
      {"scal", r.scal},
      {"nijenhuis_norm_sq", r.nijenhuis_norm_sq},
      {"flags",
       {{"is_shf", r.is_shf},
        {"cond_i", r.cond_i},
        {"cond_ii", r.cond_ii},
        {"cond_iii", r.cond_iii},
        {"is_special", r.is_special},
        {"hermitian_ricci", r.hermitian_ricci},
        {"torsion_free", r.torsion_free}}}};
}

}  // namespace iiaflow
