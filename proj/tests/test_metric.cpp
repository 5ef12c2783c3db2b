#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psym3/catalog.hpp"
#include "psym3/errors.hpp"
#include "psym3/grid.hpp"
#include "psym3/metric.hpp"

using namespace psym3;

TEST_CASE("euclidean jet: identity metric, zero derivatives") {
  const CatalogEntry e = catalog_lookup("euclidean");
  const MetricJet jet = metric_jet(e.spec, {0.3, -0.2, 0.9}, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(jet.g[i][j] == (i == j ? 1.0 : 0.0));
      for (int k = 0; k < 3; ++k) {
        CHECK(jet.dg[k][i][j] == 0.0);
        for (int l = 0; l < 3; ++l) {
          CHECK(jet.d2g[k][l][i][j] == 0.0);
          for (int m = 0; m < 3; ++m) CHECK(jet.d3g[k][l][m][i][j] == 0.0);
        }
      }
    }
}

TEST_CASE("round sphere chart at theta = pi/2") {
  const CatalogEntry e = catalog_lookup("r_x_s2");
  const double half_pi = 1.5707963267948966;
  const MetricJet jet = metric_jet(e.spec, {0.0, half_pi, 0.3}, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(jet.g[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));
  // d_theta g_phiphi = 2 sin(theta) cos(theta) = 0 at theta = pi/2
  CHECK(std::abs(jet.dg[1][2][2]) <= 1e-15);
}

TEST_CASE("jet symmetry is exact by construction") {
  const CatalogEntry e = catalog_lookup("nil3");
  const CompiledMetric cm(e.spec);
  const MetricJet jet = cm.jet({0.4, -0.7, 0.2}, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(jet.g[i][j] == jet.g[j][i]);
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          CHECK(jet.d2g[k][l][i][j] == jet.d2g[l][k][i][j]);
          CHECK(jet.d2g[k][l][i][j] == jet.d2g[k][l][j][i]);
          for (int m = 0; m < 3; ++m) {
            CHECK(jet.d3g[k][l][m][i][j] == jet.d3g[m][l][k][i][j]);
            CHECK(jet.d3g[k][l][m][i][j] == jet.d3g[l][k][m][i][j]);
          }
        }
    }
}

TEST_CASE("order caps which slots are filled") {
  const CatalogEntry e = catalog_lookup("sol3");
  const MetricJet jet = metric_jet(e.spec, {0.1, 0.1, 0.1}, 1);
  CHECK(jet.order == 1);
  CHECK(jet.dg[2][0][0] != 0.0);
  CHECK(jet.d2g[2][2][0][0] == 0.0);  // absent, zeroed
}

TEST_CASE("positive definiteness is checked at the point") {
  const MetricSpec bad = make_metric_spec(
      "bad", {"-1", "0", "0", "1", "0", "1"}, DomainBox{});
  CHECK_THROWS_AS(metric_jet(bad, {0.0, 0.0, 0.0}, 0), SingularMetricError);

  const MetricSpec indef = make_metric_spec(
      "indef", {"1", "0", "0", "x0", "0", "1"}, DomainBox{});
  CHECK_THROWS_AS(metric_jet(indef, {-0.5, 0.0, 0.0}, 0), SingularMetricError);
  CHECK_NOTHROW(metric_jet(indef, {0.5, 0.0, 0.0}, 0));
}

TEST_CASE("points outside the domain are rejected") {
  const CatalogEntry e = catalog_lookup("r_x_s2");
  CHECK_THROWS_AS(metric_jet(e.spec, {0.0, 0.1, 0.0}, 0), DomainError);
  CHECK_THROWS_AS(metric_jet(e.spec, {0.0, 3.1, 0.0}, 0), DomainError);
}

TEST_CASE("every jet slot matches finite differences of the slot below") {
  std::mt19937_64 rng(414243u);
  const double h = 1e-4;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 20; ++rep) {
      const Vec3 x =
          oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const MetricJet jet = cm.jet(x, 3);
      for (int axis = 0; axis < 3; ++axis) {
        Vec3 xp = x, xm = x;
        xp[axis] += h;
        xm[axis] -= h;
        const MetricJet jp = cm.jet(xp, 2);
        const MetricJet jm = cm.jet(xm, 2);
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) {
            const double fd0 = (jp.g[i][j] - jm.g[i][j]) / (2 * h);
            CHECK(std::abs(fd0 - jet.dg[axis][i][j]) <=
                  1e-5 * std::max(1.0, std::abs(jet.dg[axis][i][j])));
            for (int k = 0; k < 3; ++k) {
              const double fd1 = (jp.dg[k][i][j] - jm.dg[k][i][j]) / (2 * h);
              CHECK(std::abs(fd1 - jet.d2g[axis][k][i][j]) <=
                    1e-5 * std::max(1.0, std::abs(jet.d2g[axis][k][i][j])));
              for (int l = 0; l < 3; ++l) {
                const double fd2 =
                    (jp.d2g[k][l][i][j] - jm.d2g[k][l][i][j]) / (2 * h);
                CHECK(std::abs(fd2 - jet.d3g[axis][k][l][i][j]) <=
                      1e-5 * std::max(1.0, std::abs(jet.d3g[axis][k][l][i][j])));
              }
            }
          }
      }
    }
  }
}

TEST_CASE("grid sampling: ordering, counts and domain checks") {
  GridSpec spec;
  spec.lo = {0, 0, 0};
  spec.hi = {1, 1, 1};
  spec.counts = {3, 3, 3};
  DomainBox dom{{-10, -10, -10}, {10, 10, 10}};
  const auto pts = sample_grid(spec, dom);
  REQUIRE(pts.size() == 27);
  CHECK(pts[0][0] == doctest::Approx(0.25));
  CHECK(pts[0][1] == doctest::Approx(0.25));
  CHECK(pts[0][2] == doctest::Approx(0.25));
  CHECK(pts[1][2] == doctest::Approx(0.5));   // x2 fastest
  CHECK(pts[26][0] == doctest::Approx(0.75));

  GridSpec tiny = spec;
  tiny.counts = {1, 1, 1};
  CHECK_NOTHROW(sample_grid(tiny, dom));
  CHECK_THROWS_AS(sample_grid(tiny, dom, /*for_fitting=*/true), UsageError);

  // r_x_h2 grid crossing the singular locus x2 = 0
  const CatalogEntry h2 = catalog_lookup("r_x_h2");
  GridSpec crossing;
  crossing.lo = {-1, -1, -0.5};
  crossing.hi = {1, 1, 0.5};
  CHECK_THROWS_AS(sample_grid(crossing, h2.spec.domain), DomainError);
}
