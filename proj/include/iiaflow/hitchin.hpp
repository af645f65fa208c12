#pragma once

#include <optional>

#include "iiaflow/forms.hpp"

// Stable 3-form machinery: the endomorphism S_phi defined through the wedge
// pairing A(iota_v phi ^ phi) = S_phi(v) Omega, the quartic invariant
// P(phi) = tr(S^2)/6, and the induced almost complex structure
// J = S / sqrt(-P) on the definite orbit P < 0.

namespace iiaflow {

struct StableFormResult {
  Endo s;                 // S_phi, satisfies S^2 = P Id
  double p;               // quartic invariant
  bool definite;          // P < -eps
  std::optional<Endo> j;  // present iff definite
};

// `orient` is a nonzero 6-form; S and sqrt(-P) scale inversely with it, so J
// depends only on its orientation class.
StableFormResult analyze_3form(const KForm& phi, const KForm& orient, double eps = kEps);

// True iff J(s.phi) = J(phi) and P(s.phi) = s^4 P(phi), for s > 0.
bool scale_covariance_check(const KForm& phi, const KForm& orient, double s, double eps = kEps);

}  // namespace iiaflow
