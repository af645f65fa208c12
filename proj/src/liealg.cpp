#include "iiaflow/liealg.hpp"

#include <cctype>
#include <stdexcept>

namespace iiaflow {

LieAlgebra LieAlgebra::from_structure_equations(const std::array<KForm, 6>& tuples, double eps) {
  for (int i = 0; i < 6; ++i)
    if (tuples[static_cast<std::size_t>(i)].degree() != 2)
      throw std::invalid_argument("structure equations: de^" + std::to_string(i + 1) +
                                  " is not a 2-form");
  LieAlgebra l(tuples);
  for (int i = 0; i < 6; ++i) {
    KForm dd = ce_d(l, tuples[static_cast<std::size_t>(i)]);
    if (dd.max_abs() > eps)
      throw std::runtime_error("not a Lie algebra: d(de^" + std::to_string(i + 1) +
                               ") != 0 (Jacobi identity fails)");
  }
  return l;
}

LieAlgebra LieAlgebra::abelian() {
  std::array<KForm, 6> z{KForm(2), KForm(2), KForm(2), KForm(2), KForm(2), KForm(2)};
  return LieAlgebra(z);
}

Vec6 LieAlgebra::bracket_basis(int i, int j) const {
  Vec6 r = Vec6::Zero();
  if (i == j) return r;
  int lo = std::min(i, j), hi = std::max(i, j);
  double sgn = (i < j) ? 1.0 : -1.0;
  for (int k = 0; k < 6; ++k) {
    double c = d_[static_cast<std::size_t>(k)].coeff({lo + 1, hi + 1});
    r[k] -= sgn * c;  // de^k(e_i,e_j) = -e^k([e_i,e_j])
  }
  return r;
}

Vec6 LieAlgebra::bracket(const Vec6& x, const Vec6& y) const {
  Vec6 r = Vec6::Zero();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (x[i] != 0.0 && y[j] != 0.0) r += x[i] * y[j] * bracket_basis(i, j);
  return r;
}

bool LieAlgebra::is_unimodular(double eps) const {
  for (int j = 0; j < 6; ++j) {
    double tr = 0.0;
    for (int i = 0; i < 6; ++i) tr += bracket_basis(j, i)[i];
    if (std::abs(tr) > eps) return false;
  }
  return true;
}

KForm ce_d(const LieAlgebra& l, const KForm& a) {
  if (a.degree() >= 6) {
    // no 7-forms; d of a 6-form would overflow, and d on 5-forms covers
    // unimodularity questions
    throw std::invalid_argument("ce_d: degree must be <= 5");
  }
  KForm r(a.degree() + 1);
  if (a.degree() == 0) return r;  // constants are closed
  const auto& masks = detail::kTables.masks[static_cast<std::size_t>(a.degree())];
  for (int i = 0; i < form_dim(a.degree()); ++i) {
    if (a[i] == 0.0) continue;
    unsigned m = masks[static_cast<std::size_t>(i)];
    int pos = 0;
    for (int b = 0; b < 6; ++b) {
      if (!((m >> b) & 1u)) continue;
      // d(e^{i1..ik}) = sum_m (-1)^{m-1} de^{im} ^ e^{rest}; the 2-form
      // de^{im} commutes past the prefix
      KForm rest(a.degree() - 1);
      rest[detail::kTables.index_of[m & ~(1u << b)]] = 1.0;
      double sgn = (pos & 1) ? -1.0 : 1.0;
      r += (a[i] * sgn) * wedge(l.d_basis(b), rest);
      ++pos;
    }
  }
  return r;
}

KForm codiff(const LieAlgebra& l, const Metric& g, const KForm& a) {
  if (a.degree() < 1) throw std::invalid_argument("codiff: degree must be >= 1");
  KForm orient = KForm::monomial({1, 2, 3, 4, 5, 6});
  return -hodge_star(g, orient, ce_d(l, hodge_star(g, orient, a)));
}

KForm laplacian(const LieAlgebra& l, const Metric& g, const KForm& a) {
  KForm r(a.degree());
  if (a.degree() >= 1) r += ce_d(l, codiff(l, g, a));
  if (a.degree() <= 5) r += codiff(l, g, ce_d(l, a));
  return r;
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t p = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip_ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eat(char c) {
    skip_ws();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return p < s.size() ? s[p] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("structure equation parse error at position " +
                                std::to_string(p) + ": " + msg);
  }
};

// term := ['+'|'-'] [ (number | ident) '*' ] 'e' digit+
KForm parse_sum(Lexer& lx, const std::map<std::string, double>& params) {
  KForm sum(2);
  bool first = true;
  for (;;) {
    double sign = 1.0;
    char c = lx.peek();
    if (c == '+') {
      lx.eat('+');
    } else if (c == '-') {
      lx.eat('-');
      sign = -1.0;
    } else if (!first) {
      break;
    }
    lx.skip_ws();
    double coef = 1.0;
    c = lx.peek();
    if (c == '0') {
      char next = (lx.p + 1 < lx.s.size()) ? lx.s[lx.p + 1] : '\0';
      if (!std::isdigit(static_cast<unsigned char>(next)) && next != '.' && next != '*') {
        // a bare zero entry
        lx.eat('0');
        if (first && (lx.peek() == ',' || lx.peek() == ')')) return sum;
        lx.fail("unexpected '0' inside a sum");
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = lx.p;
      while (lx.p < lx.s.size() &&
             (std::isdigit(static_cast<unsigned char>(lx.s[lx.p])) || lx.s[lx.p] == '.'))
        ++lx.p;
      coef = std::stod(lx.s.substr(start, lx.p - start));
      if (!lx.eat('*')) lx.fail("expected '*' after numeric coefficient");
    } else if (std::isalpha(static_cast<unsigned char>(c)) && c != 'e') {
      std::size_t start = lx.p;
      while (lx.p < lx.s.size() && std::isalnum(static_cast<unsigned char>(lx.s[lx.p]))) ++lx.p;
      std::string name = lx.s.substr(start, lx.p - start);
      auto it = params.find(name);
      if (it == params.end()) lx.fail("unbound parameter '" + name + "'");
      coef = it->second;
      if (!lx.eat('*')) lx.fail("expected '*' after parameter coefficient");
    }
    if (!lx.eat('e')) lx.fail("expected monomial 'e<ij>'");
    std::vector<int> idx;
    while (lx.p < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.p]))) {
      idx.push_back(lx.s[lx.p] - '0');
      ++lx.p;
    }
    if (idx.size() != 2) lx.fail("structure-equation monomials must have two indices");
    sum += KForm::monomial({idx[0], idx[1]}, sign * coef);
    first = false;
  }
  return sum;
}

}  // namespace

LieAlgebra LieAlgebra::parse(const std::string& tuple_string,
                             const std::map<std::string, double>& params, double eps) {
  Lexer lx(tuple_string);
  if (!lx.eat('(')) lx.fail("expected '('");
  std::array<KForm, 6> d{KForm(2), KForm(2), KForm(2), KForm(2), KForm(2), KForm(2)};
  for (int i = 0; i < 6; ++i) {
    d[static_cast<std::size_t>(i)] = parse_sum(lx, params);
    if (i < 5 && !lx.eat(',')) lx.fail("expected ','");
  }
  if (!lx.eat(')')) lx.fail("expected ')'");
  lx.skip_ws();
  if (lx.p != lx.s.size()) lx.fail("trailing characters");
  return from_structure_equations(d, eps);
}

}  // namespace iiaflow
