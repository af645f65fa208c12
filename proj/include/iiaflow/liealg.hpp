#pragma once

#include <array>
#include <map>
#include <string>

#include "iiaflow/forms.hpp"

// Six-dimensional Lie algebras presented by structure equations: the six
// 2-forms (de^1, ..., de^6). The bracket is recovered from the convention
// de^k(X,Y) = -e^k([X,Y]), and the Chevalley-Eilenberg differential extends
// the structure equations as a graded derivation.

namespace iiaflow {

class LieAlgebra {
 public:
  // Validates that every tuple entry has degree 2 and that d^2 = 0 on basis
  // covectors (the Jacobi identity); throws naming the failing index.
  static LieAlgebra from_structure_equations(const std::array<KForm, 6>& tuples,
                                             double eps = kEps);

  // Parses the 6-tuple syntax "(0,-e13,-e12,0,-e46,-e45)". Terms may carry
  // coefficients separated by '*', either numeric or a parameter symbol bound
  // through `params`, e.g. "a*e15+e25" with {{"a", 1.0}}.
  static LieAlgebra parse(const std::string& tuple_string,
                          const std::map<std::string, double>& params = {},
                          double eps = kEps);

  static LieAlgebra abelian();

  const KForm& d_basis(int i) const { return d_[static_cast<std::size_t>(i)]; }

  // [e_i, e_j] in basis coordinates (0-based arguments).
  Vec6 bracket_basis(int i, int j) const;
  Vec6 bracket(const Vec6& x, const Vec6& y) const;

  bool is_unimodular(double eps = kEps) const;

 private:
  explicit LieAlgebra(const std::array<KForm, 6>& d) : d_(d) {}
  std::array<KForm, 6> d_;
};

// Chevalley-Eilenberg differential, graded Leibniz extension of d_basis.
KForm ce_d(const LieAlgebra& l, const KForm& a);

// Codifferential d* = -*d* (valid on all degrees in dimension 6);
// orientation-independent. Requires deg(a) >= 1.
KForm codiff(const LieAlgebra& l, const Metric& g, const KForm& a);

// Hodge Laplacian dd* + d*d.
KForm laplacian(const LieAlgebra& l, const Metric& g, const KForm& a);

}  // namespace iiaflow
