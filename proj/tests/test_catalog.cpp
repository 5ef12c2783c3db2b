#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psym3/catalog.hpp"
#include "psym3/curvature.hpp"
#include "psym3/errors.hpp"
#include "psym3/symmetry.hpp"

using namespace psym3;

TEST_CASE("catalog names and error paths") {
  const auto names = catalog_names();
  CHECK(names.size() == 8);
  CHECK_THROWS_AS(catalog_lookup("minkowski"), UsageError);
  CHECK_THROWS_AS(catalog_lookup("sphere3", {{"kappa", -1.0}}), UsageError);
  CHECK_THROWS_AS(catalog_lookup("sphere3", {{"radius", 2.0}}), UsageError);
  CHECK_THROWS_AS(catalog_lookup("nil3", {{"kappa", 1.0}}), UsageError);
}

TEST_CASE("every entry reproduces its expected eigenvalues and scalar") {
  std::mt19937_64 rng(321u);
  const Tolerances tol;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 12; ++rep) {
      const Vec3 x =
          oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 2));
      const RicciSpectrum s = ricci_spectrum(b, tol.multiplicity);
      for (int k = 0; k < 3; ++k) {
        const double expected =
            e.expected_eigenvalues[k]->eval(x, e.spec.param_values);
        CHECK(std::abs(s.eigenvalues[k] - expected) <= 1e-8);
      }
      const double r = e.expected_scalar->eval(x, e.spec.param_values);
      CHECK(std::abs(b.scalar - r) <= 1e-8);
    }
  }
}

TEST_CASE("curvature scale parameter kappa") {
  std::mt19937_64 rng(12u);
  for (const double kappa : {0.5, 2.0}) {
    const CatalogEntry sp = catalog_lookup("sphere3", {{"kappa", kappa}});
    const CatalogEntry hy = catalog_lookup("hyperbolic3", {{"kappa", kappa}});
    const Vec3 x = oracles::random_point(rng, sp.default_grid.lo, sp.default_grid.hi);
    CHECK(curvature(metric_jet(sp.spec, x, 2)).scalar ==
          doctest::Approx(6.0 * kappa).epsilon(1e-10));
    const Vec3 y = oracles::random_point(rng, hy.default_grid.lo, hy.default_grid.hi);
    CHECK(curvature(metric_jet(hy.spec, y, 2)).scalar ==
          doctest::Approx(-6.0 * kappa).epsilon(1e-10));
  }
}

TEST_CASE("product entries carry exactly one zero Ricci eigenvalue") {
  std::mt19937_64 rng(765u);
  const Tolerances tol;
  for (const char* name : {"r_x_s2", "r_x_h2", "r_x_cigar"}) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 20; ++rep) {
      const Vec3 x =
          oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 2));
      const RicciSpectrum s = ricci_spectrum(b, tol.multiplicity);
      int zeros = 0;
      for (double mu : s.eigenvalues)
        if (std::abs(mu) <= 1e-8) ++zeros;
      CHECK(zeros == 1);
    }
  }
}

TEST_CASE("expected verdict classes are reproduced") {
  std::mt19937_64 rng(888u);
  const Tolerances tol;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 6; ++rep) {
      const Vec3 x =
          oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const SymmetryVerdict v = classify_point(curvature(cm.jet(x, 2)), tol);
      CHECK(v.cls == e.expected_class);
    }
  }
}

TEST_CASE("grid defaults live inside the chart domains") {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    CAPTURE(name);
    CHECK_NOTHROW(sample_grid(e.default_grid, e.spec.domain, true));
  }
}
