#ifndef PSYM3_CATALOG_HPP
#define PSYM3_CATALOG_HPP

#include <map>
#include <string>
#include <vector>

#include "psym3/grid.hpp"
#include "psym3/metric.hpp"
#include "psym3/soliton.hpp"
#include "psym3/symmetry.hpp"

namespace psym3 {

struct KnownSoliton {
  SolitonKind kind = SolitonKind::Ricci;
  std::string f_source;  // potential in the expression grammar
  double lambda = 0.0;
};

// A built-in chart together with the data the engine is expected to
// reproduce on it (enforced in the tests).
struct CatalogEntry {
  std::string name;
  MetricSpec spec;
  GridSpec default_grid;  // a safe box for sampling and fitting
  std::array<ExprPtr, 3> expected_eigenvalues{};  // ascending; may vary with x
  ExprPtr expected_scalar;
  VerdictClass expected_class = VerdictClass::ConstantCurvature;
  std::vector<KnownSoliton> solitons;
  std::string description;
};

std::vector<std::string> catalog_names();

// Builds the named chart. `params` may supply the curvature scale "kappa"
// for sphere3 / hyperbolic3 (default 1; must be positive). Unknown names
// and invalid parameters throw UsageError.
CatalogEntry catalog_lookup(const std::string& name,
                            const std::map<std::string, double>& params = {});

} // namespace psym3

#endif
