#pragma once

#include <vector>

#include "iiaflow/catalog.hpp"
#include "iiaflow/rng.hpp"

// Shared fixtures: the standard model forms of an adapted basis, random-form
// generators, and an independent Chevalley-Eilenberg differential computed
// through the bracket formula
//   (da)(x_0,...,x_k) = sum_{i<j} (-1)^{i+j} a([x_i,x_j], ..., ^x_i, ..., ^x_j, ...)
// as an oracle for the graded-Leibniz implementation.

namespace testsupport {

using namespace iiaflow;

inline KForm omega_std() {
  return KForm::monomial({1, 2}) + KForm::monomial({3, 4}) + KForm::monomial({5, 6});
}

inline KForm psi_plus_std() {
  return KForm::monomial({1, 3, 5}) + KForm::monomial({1, 4, 6}, -1.0) +
         KForm::monomial({2, 3, 6}, -1.0) + KForm::monomial({2, 4, 5}, -1.0);
}

inline KForm psi_minus_std() {
  return KForm::monomial({1, 3, 6}) + KForm::monomial({1, 4, 5}) +
         KForm::monomial({2, 3, 5}) + KForm::monomial({2, 4, 6}, -1.0);
}

inline Endo j_std() {
  Endo j = Endo::Zero();
  for (int k = 0; k < 3; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;   // J e_{2k-1} = e_{2k}
    j(2 * k, 2 * k + 1) = -1.0;  // J e_{2k}   = -e_{2k-1}
  }
  return j;
}

inline KForm random_form(Rng& rng, int degree, double lo = -1.0, double hi = 1.0) {
  KForm f(degree);
  for (int i = 0; i < form_dim(degree); ++i) f[i] = rng.uniform(lo, hi);
  return f;
}

inline Metric random_spd_metric(Rng& rng) {
  Endo r;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
  Endo m = r.transpose() * r + 0.5 * Endo::Identity();
  return Metric(m);
}

// Evaluate a k-form on k vectors (determinant of the component selection).
inline double evaluate(const KForm& a, const std::vector<Vec6>& vs) {
  if (static_cast<int>(vs.size()) != a.degree()) throw std::invalid_argument("evaluate: arity");
  int k = a.degree();
  if (k == 0) return a[0];
  double total = 0.0;
  const auto& masks = detail::kTables.masks[static_cast<std::size_t>(k)];
  for (int i = 0; i < form_dim(k); ++i) {
    if (a[i] == 0.0) continue;
    std::vector<int> idx;
    for (int b = 0; b < 6; ++b)
      if ((masks[static_cast<std::size_t>(i)] >> b) & 1u) idx.push_back(b);
    Eigen::MatrixXd m(k, k);
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) m(p, q) = vs[static_cast<std::size_t>(q)][idx[static_cast<std::size_t>(p)]];
    total += a[i] * m.determinant();
  }
  return total;
}

// Independent CE differential (bracket formula, no Leibniz rule).
inline KForm ce_d_oracle(const LieAlgebra& l, const KForm& a) {
  int k = a.degree();
  KForm r(k + 1);
  const auto& masks = detail::kTables.masks[static_cast<std::size_t>(k + 1)];
  for (int t = 0; t < form_dim(k + 1); ++t) {
    std::vector<int> idx;
    for (int b = 0; b < 6; ++b)
      if ((masks[static_cast<std::size_t>(t)] >> b) & 1u) idx.push_back(b);
    double val = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        Vec6 xi = Vec6::Zero(), xj = Vec6::Zero();
        xi[idx[i]] = 1.0;
        xj[idx[j]] = 1.0;
        std::vector<Vec6> args;
        args.push_back(l.bracket(xi, xj));
        for (std::size_t m = 0; m < idx.size(); ++m) {
          if (m == i || m == j) continue;
          Vec6 v = Vec6::Zero();
          v[idx[m]] = 1.0;
          args.push_back(v);
        }
        double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{i+j} with 0-based slots
        val += sign * evaluate(a, args);
      }
    r[t] = val;
  }
  return r;
}

inline LieAlgebra g5_1() { return LieAlgebra::parse("(0,0,0,0,e12,e13)"); }

}  // namespace testsupport
