#include "iiaflow/forms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iiaflow {

using detail::kTables;
using detail::merge_sign;

KForm::KForm(int degree) {
  if (degree < 0 || degree > 6) throw std::invalid_argument("KForm: degree must be in 0..6");
  degree_ = degree;
  c_ = Eigen::VectorXd::Zero(form_dim(degree));
}

KForm KForm::monomial(std::initializer_list<int> idx, double coeff) {
  KForm f(static_cast<int>(idx.size()));
  unsigned mask = 0;
  int sign = 1;
  std::vector<int> v(idx);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return f;  // repeated index
      if (v[i] > v[j]) {
        std::swap(v[i], v[j]);
        sign = -sign;
      }
    }
  for (int i : v) {
    if (i < 1 || i > 6) throw std::invalid_argument("KForm::monomial: index out of range 1..6");
    mask |= 1u << (i - 1);
  }
  f.c_[kTables.index_of[mask]] = sign * coeff;
  return f;
}

double KForm::coeff(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("KForm::coeff: tuple length does not match degree");
  KForm m = monomial(idx);
  if (m.max_abs() == 0.0) return 0.0;
  for (int i = 0; i < m.c_.size(); ++i)
    if (m.c_[i] != 0.0) return c_[i] * m.c_[i];
  return 0.0;
}

KForm& KForm::operator+=(const KForm& o) {
  if (degree_ != o.degree_) throw std::invalid_argument("KForm: degree mismatch in addition");
  c_ += o.c_;
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  if (degree_ != o.degree_) throw std::invalid_argument("KForm: degree mismatch in subtraction");
  c_ -= o.c_;
  return *this;
}

std::string KForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0.0) continue;
    double v = c_[i];
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    double av = std::abs(v);
    if (av != 1.0 || degree_ == 0) os << av << (degree_ > 0 ? "*" : "");
    if (degree_ > 0) {
      os << "e";
      unsigned m = kTables.masks[static_cast<std::size_t>(degree_)][static_cast<std::size_t>(i)];
      for (int b = 0; b < 6; ++b)
        if ((m >> b) & 1u) os << (b + 1);
    }
  }
  if (first) os << "0";
  return os.str();
}

KForm wedge(const KForm& a, const KForm& b) {
  int k = a.degree() + b.degree();
  if (k > 6) throw std::invalid_argument("wedge: degree overflow (deg a + deg b > 6)");
  KForm r(k);
  const auto& ma = kTables.masks[static_cast<std::size_t>(a.degree())];
  const auto& mb = kTables.masks[static_cast<std::size_t>(b.degree())];
  for (int i = 0; i < form_dim(a.degree()); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < form_dim(b.degree()); ++j) {
      if (b[j] == 0.0) continue;
      unsigned x = ma[static_cast<std::size_t>(i)], y = mb[static_cast<std::size_t>(j)];
      if (x & y) continue;
      r[kTables.index_of[x | y]] += a[i] * b[j] * merge_sign(x, y);
    }
  }
  return r;
}

KForm contract(const Vec6& v, const KForm& a) {
  if (a.degree() < 1) throw std::invalid_argument("contract: form must have degree >= 1");
  KForm r(a.degree() - 1);
  const auto& ms = kTables.masks[static_cast<std::size_t>(a.degree())];
  for (int i = 0; i < form_dim(a.degree()); ++i) {
    if (a[i] == 0.0) continue;
    unsigned m = ms[static_cast<std::size_t>(i)];
    for (int b = 0; b < 6; ++b) {
      if (!((m >> b) & 1u) || v[b] == 0.0) continue;
      int pos = detail::popcount6(m & ((1u << b) - 1u));
      r[kTables.index_of[m & ~(1u << b)]] += ((pos & 1) ? -1.0 : 1.0) * v[b] * a[i];
    }
  }
  return r;
}

KForm act_on_form(const Endo& e, const KForm& a) {
  if (a.degree() == 0) return a;
  KForm r(a.degree());
  const auto& ms = kTables.masks[static_cast<std::size_t>(a.degree())];
  for (int i = 0; i < form_dim(a.degree()); ++i) {
    if (a[i] == 0.0) continue;
    unsigned m = ms[static_cast<std::size_t>(i)];
    KForm w(0);
    w[0] = a[i];
    for (int b = 0; b < 6; ++b) {
      if (!((m >> b) & 1u)) continue;
      KForm row(1);
      row.coeffs() = e.row(b).transpose();  // pullback of e^{b+1}
      w = wedge(w, row);
    }
    r += w;
  }
  return r;
}

KForm derive_action(const Endo& s, const KForm& a) {
  KForm r(a.degree());
  if (a.degree() == 0) return r;
  const auto& ms = kTables.masks[static_cast<std::size_t>(a.degree())];
  for (int i = 0; i < form_dim(a.degree()); ++i) {
    if (a[i] == 0.0) continue;
    unsigned m = ms[static_cast<std::size_t>(i)];
    for (int b = 0; b < 6; ++b) {
      if (!((m >> b) & 1u)) continue;
      unsigned rest = m & ~(1u << b);
      int pos_b = detail::popcount6(m & ((1u << b) - 1u));
      for (int j = 0; j < 6; ++j) {
        double sij = s(b, j);
        if (sij == 0.0) continue;
        if (j == b) {
          r[kTables.index_of[m]] -= a[i] * sij;
        } else if (!((rest >> j) & 1u)) {
          int pos_j = detail::popcount6(rest & ((1u << j) - 1u));
          double sign = ((pos_b + pos_j) & 1) ? -1.0 : 1.0;
          r[kTables.index_of[rest | (1u << j)]] -= a[i] * sij * sign;
        }
      }
    }
  }
  return r;
}

Metric::Metric(const Endo& m, double eps) : m_(m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > eps)
    throw std::invalid_argument("Metric: matrix is not symmetric");
  m_ = 0.5 * (m + m.transpose());
  det_ = m_.determinant();
  inv_ = m_.inverse();
}

bool Metric::positive_definite(double eps) const {
  Eigen::SelfAdjointEigenSolver<Endo> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > eps;
}

Eigen::MatrixXd Metric::gram(int degree) const {
  int n = form_dim(degree);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  if (degree == 0) {
    g(0, 0) = 1.0;
    return g;
  }
  const auto& ms = kTables.masks[static_cast<std::size_t>(degree)];
  std::array<int, 6> ia{}, ja{};
  for (int i = 0; i < n; ++i) {
    int ni = 0;
    for (int b = 0; b < 6; ++b)
      if ((ms[static_cast<std::size_t>(i)] >> b) & 1u) ia[static_cast<std::size_t>(ni++)] = b;
    for (int j = i; j < n; ++j) {
      int nj = 0;
      for (int b = 0; b < 6; ++b)
        if ((ms[static_cast<std::size_t>(j)] >> b) & 1u) ja[static_cast<std::size_t>(nj++)] = b;
      Eigen::MatrixXd sub(degree, degree);
      for (int p = 0; p < degree; ++p)
        for (int q = 0; q < degree; ++q)
          sub(p, q) = inv_(ia[static_cast<std::size_t>(p)], ja[static_cast<std::size_t>(q)]);
      g(i, j) = g(j, i) = sub.determinant();
    }
  }
  return g;
}

double inner(const Metric& g, const KForm& a, const KForm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("inner: degree mismatch");
  return a.coeffs().dot(g.gram(a.degree()) * b.coeffs());
}

double norm_sq(const Metric& g, const KForm& a) { return inner(g, a, a); }

namespace {

double orientation_sign(const KForm& orient) {
  if (orient.degree() != 6) throw std::invalid_argument("orientation must be a 6-form");
  double c = orient[0];
  if (c == 0.0) throw std::invalid_argument("orientation form is zero");
  return c > 0 ? 1.0 : -1.0;
}

}  // namespace

KForm volume_form(const Metric& g, const KForm& orient) {
  if (g.det() <= 0.0) throw std::invalid_argument("volume_form: metric is degenerate");
  KForm v(6);
  v[0] = orientation_sign(orient) * std::sqrt(g.det());
  return v;
}

KForm hodge_star(const Metric& g, const KForm& orient, const KForm& a) {
  if (g.det() <= 0.0 || !g.positive_definite())
    throw std::invalid_argument("hodge_star: metric is degenerate");
  double s = orientation_sign(orient) * std::sqrt(g.det());
  Eigen::VectorXd gb = g.gram(a.degree()) * a.coeffs();
  KForm r(6 - a.degree());
  const auto& ms = kTables.masks[static_cast<std::size_t>(a.degree())];
  for (int i = 0; i < form_dim(a.degree()); ++i) {
    unsigned m = ms[static_cast<std::size_t>(i)];
    unsigned mc = 0x3Fu & ~m;
    r[kTables.index_of[mc]] += merge_sign(m, mc) * gb[i] * s;
  }
  return r;
}

void to_json(nlohmann::json& j, const KForm& f) {
  j = nlohmann::json{{"degree", f.degree()}, {"terms", nlohmann::json::array()}};
  const auto& ms = kTables.masks[static_cast<std::size_t>(f.degree())];
  for (int i = 0; i < form_dim(f.degree()); ++i) {
    if (f[i] == 0.0) continue;
    std::vector<int> idx;
    for (int b = 0; b < 6; ++b)
      if ((ms[static_cast<std::size_t>(i)] >> b) & 1u) idx.push_back(b + 1);
    j["terms"].push_back({{"idx", idx}, {"c", f[i]}});
  }
}

void from_json(const nlohmann::json& j, KForm& f) {
  f = KForm(j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    auto idx = t.at("idx").get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != f.degree())
      throw std::invalid_argument("KForm json: tuple length does not match degree");
    unsigned mask = 0;
    for (std::size_t p = 0; p + 1 < idx.size(); ++p)
      if (idx[p] >= idx[p + 1]) throw std::invalid_argument("KForm json: indices must be ascending");
    for (int i : idx) {
      if (i < 1 || i > 6) throw std::invalid_argument("KForm json: index out of range");
      mask |= 1u << (i - 1);
    }
    f[kTables.index_of[mask]] += t.at("c").get<double>();
  }
}

}  // namespace iiaflow
