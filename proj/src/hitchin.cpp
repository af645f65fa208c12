#include "iiaflow/hitchin.hpp"

#include <cmath>
#include <stdexcept>

namespace iiaflow {

StableFormResult analyze_3form(const KForm& phi, const KForm& orient, double eps) {
  if (phi.degree() != 3) throw std::invalid_argument("analyze_3form: phi must be a 3-form");
  if (orient.degree() != 6 || orient[0] == 0.0)
    throw std::invalid_argument("analyze_3form: orientation 6-form must be nonzero");
  double omega_c = orient[0];

  StableFormResult res;
  res.s.setZero();
  for (int i = 0; i < 6; ++i) {
    Vec6 v = Vec6::Zero();
    v[i] = 1.0;
    KForm beta = wedge(contract(v, phi), phi);  // degree 5
    for (int j = 0; j < 6; ++j) {
      unsigned mj = 1u << j;
      unsigned mc = 0x3Fu & ~mj;
      double sign = detail::merge_sign(mc, mj);
      res.s(j, i) = beta[detail::kTables.index_of[mc]] * sign / omega_c;
    }
  }
  res.p = (res.s * res.s).trace() / 6.0;
  res.definite = res.p < -eps;
  if (res.definite) res.j = res.s / std::sqrt(-res.p);
  return res;
}

bool scale_covariance_check(const KForm& phi, const KForm& orient, double s, double eps) {
  if (s <= 0.0) throw std::invalid_argument("scale_covariance_check: scale must be positive");
  StableFormResult a = analyze_3form(phi, orient, eps);
  if (!a.definite) throw std::invalid_argument("scale_covariance_check: phi is not definite");
  StableFormResult b = analyze_3form(s * phi, orient, eps);
  if (!b.definite) return false;
  double scale = std::max(1.0, std::abs(a.p) * s * s * s * s);
  return ((*a.j) - (*b.j)).cwiseAbs().maxCoeff() <= eps &&
         std::abs(b.p - s * s * s * s * a.p) <= eps * scale;
}

}  // namespace iiaflow
