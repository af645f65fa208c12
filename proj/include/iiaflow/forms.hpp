#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

// Exterior algebra on a fixed six-dimensional real vector space.
//
// A k-form is stored as a dense coefficient vector over the C(6,k) strictly
// increasing index tuples. Tuples are encoded as 6-bit masks (bit i set means
// index i+1 is present) and enumerated in increasing mask order; signs come
// from inversion counting when tuples are merged.

namespace iiaflow {

inline constexpr double kEps = 1e-9;

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Endo = Eigen::Matrix<double, 6, 6>;

namespace detail {

inline constexpr std::array<int, 7> kDim = {1, 6, 15, 20, 15, 6, 1};

struct MaskTables {
  // masks[k][i] = i-th mask of popcount k; index_of[m] = position of mask m
  // within its degree.
  std::array<std::array<std::uint8_t, 20>, 7> masks{};
  std::array<std::uint8_t, 64> index_of{};

  constexpr MaskTables() {
    std::array<int, 7> next{};
    for (unsigned m = 0; m < 64; ++m) {
      int k = 0;
      for (int b = 0; b < 6; ++b) k += (m >> b) & 1u;
      masks[static_cast<std::size_t>(k)][static_cast<std::size_t>(next[static_cast<std::size_t>(k)])] =
          static_cast<std::uint8_t>(m);
      index_of[m] = static_cast<std::uint8_t>(next[static_cast<std::size_t>(k)]++);
    }
  }
};

inline constexpr MaskTables kTables{};

constexpr int popcount6(unsigned m) {
  int k = 0;
  for (int b = 0; b < 6; ++b) k += (m >> b) & 1u;
  return k;
}

// Sign of sorting the concatenation of two disjoint ascending tuples.
constexpr int merge_sign(unsigned a, unsigned b) {
  int inv = 0;
  for (int bit = 0; bit < 6; ++bit)
    if ((b >> bit) & 1u) inv += popcount6(a >> (bit + 1));
  return (inv & 1) ? -1 : 1;
}

}  // namespace detail

class KForm {
 public:
  KForm() : degree_(0), c_(Eigen::VectorXd::Zero(1)) {}
  explicit KForm(int degree);

  // Basis monomial from 1-based indices, e.g. monomial({1,3,5}) = e^135.
  // Repeated indices give the zero form; unsorted indices contribute a sign.
  static KForm monomial(std::initializer_list<int> idx, double coeff = 1.0);

  int degree() const { return degree_; }
  Eigen::VectorXd& coeffs() { return c_; }
  const Eigen::VectorXd& coeffs() const { return c_; }

  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }

  // Signed coefficient of the given (1-based, possibly unsorted) tuple.
  double coeff(std::initializer_list<int> idx) const;

  double max_abs() const { return c_.size() ? c_.cwiseAbs().maxCoeff() : 0.0; }
  bool is_zero(double eps = kEps) const { return max_abs() <= eps; }

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  KForm& operator*=(double s) {
    c_ *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(double s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, double s) { return a *= s; }
  friend KForm operator-(KForm a) { return a *= -1.0; }

  std::string str() const;  // human-readable, e.g. "e26 - e35"

 private:
  int degree_;
  Eigen::VectorXd c_;
};

inline int form_dim(int degree) { return detail::kDim[static_cast<std::size_t>(degree)]; }

KForm wedge(const KForm& a, const KForm& b);
KForm contract(const Vec6& v, const KForm& a);

// a(E.,...,E.); on 2-forms this realizes J.sigma = sigma(J.,J.).
KForm act_on_form(const Endo& e, const KForm& a);

// Derivation-style action with a minus sign on each slot:
//   S_*a = -a(S.,...) - a(.,S.,..) - ... ;  derive_action(Id, a) = -deg(a) a.
KForm derive_action(const Endo& s, const KForm& a);

class Metric {
 public:
  explicit Metric(const Endo& m, double eps = kEps);
  static Metric identity() { return Metric(Endo::Identity()); }
  static Metric diagonal(const Vec6& d) { return Metric(d.asDiagonal()); }

  const Endo& matrix() const { return m_; }
  const Endo& inverse() const { return inv_; }
  double det() const { return det_; }

  bool positive_definite(double eps = kEps) const;

  // Gram matrix of the basis monomials of the given degree.
  Eigen::MatrixXd gram(int degree) const;

 private:
  Endo m_;
  Endo inv_;
  double det_;
};

// Inner product induced on k-forms (orthonormal wedge monomials have unit
// norm); a and b must have equal degree.
double inner(const Metric& g, const KForm& a, const KForm& b);
double norm_sq(const Metric& g, const KForm& a);

// g-unit volume form in the orientation class of `orient` (degree 6, nonzero).
KForm volume_form(const Metric& g, const KForm& orient);

// Hodge dual with respect to g and the orientation class of `orient`.
// Satisfies a ^ *b = <a,b> vol_g and *(*a) = (-1)^{k(6-k)} a.
KForm hodge_star(const Metric& g, const KForm& orient, const KForm& a);

// JSON schema: {"degree": k, "terms": [{"idx": [i1,...,ik], "c": x}, ...]},
// zero terms omitted, indices 1-based ascending.
void to_json(nlohmann::json& j, const KForm& f);
void from_json(const nlohmann::json& j, KForm& f);

}  // namespace iiaflow
