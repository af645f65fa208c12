#pragma once

#include <map>
#include <string>
#include <vector>

#include "iiaflow/flow.hpp"

// The eight reference Lie algebras carrying special symplectic half-flat
// structures, with their expected torsion data embedded as literal constants,
// plus recomputation diffs and adapted-basis verification.

namespace iiaflow {
namespace catalog {

struct CatalogEntry {
  std::string name;
  std::string structure;  // 6-tuple syntax, parseable by LieAlgebra::parse
  std::map<std::string, double> params;
  KForm omega{2};
  KForm psi_plus{3};
  Endo expected_g = Endo::Identity();
  KForm expected_w2{2};
  KForm expected_gamma{3};
  Endo expected_s = Endo::Zero();
  double expected_c = 0.0;
  double expected_w2_norm_sq = 0.0;
  std::vector<KForm> adapted_basis;  // six covectors; empty when S = 0
  RegimeTag expected_regime = RegimeTag::Ancient;

  LieAlgebra algebra(double eps = kEps) const { return LieAlgebra::parse(structure, params, eps); }
};

std::vector<std::string> names();

// A5_17 takes the parameter a > 0 (default 1); other entries ignore it.
CatalogEntry get(const std::string& name, double param_a = 1.0);

std::vector<CatalogEntry> all(double param_a = 1.0);

struct FieldDiff {
  std::string field;
  double max_abs_diff;
  bool pass;
};

struct EntryReport {
  std::string name;
  std::vector<FieldDiff> diffs;
  SpecialReport report;
  bool pass = false;
};

// Recomputes g, w2-, gamma, S, c and |w2-|^2 through the Lie-algebra and
// SU(3) machinery and diffs them against the embedded expectations.
EntryReport verify_entry(const CatalogEntry& e, double eps = kEps);

struct AdaptedBasisReport {
  bool matches = false;
  double theta = 0.0;        // measured frame angle; adapted means theta = 0
  double max_form_diff = 0.0;
  bool s_diagonal = false;
};

// Expresses omega, psi+, psi- in the listed adapted basis and checks they
// equal the standard model forms with S diagonal in alternating (+mu, -mu)
// pairs. Throws for entries without a listed basis (S = 0).
AdaptedBasisReport check_adapted_basis(const CatalogEntry& e, double eps = kEps);

// Machine-readable mirror of the catalog at default parameters.
nlohmann::json to_json(double param_a = 1.0);

}  // namespace catalog
}  // namespace iiaflow
