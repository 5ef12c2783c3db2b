#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psym3/catalog.hpp"
#include "psym3/curvature.hpp"
#include "psym3/errors.hpp"

using namespace psym3;

namespace {

CurvatureBundle bundle_at(const std::string& name, const Vec3& x, int order = 3) {
  const CatalogEntry e = catalog_lookup(name);
  return curvature(metric_jet(e.spec, x, order));
}

double max_abs_nabla(const CurvatureBundle& b) {
  double m = 0.0;
  for (int q = 0; q < 3; ++q) m = std::max(m, max_abs(b.nabla_R[q]));
  return m;
}

double sectional(const CurvatureBundle& b, const Vec3& x, const Vec3& y) {
  double num = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          num += b.riemann04[i][j][k][l] * x[i] * y[j] * x[k] * y[l];
  const double xx = dot(x, mat_vec(b.g, x));
  const double yy = dot(y, mat_vec(b.g, y));
  const double xy = dot(x, mat_vec(b.g, y));
  return num / (xx * yy - xy * xy);
}

} // namespace

TEST_CASE("christoffel: flat chart vanishes, metric compatibility holds") {
  const CatalogEntry e = catalog_lookup("euclidean");
  const MetricJet jet = metric_jet(e.spec, {0.2, 0.4, -0.1}, 1);
  const Ten3 gamma = christoffel(jet);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(gamma[k][i][j] == 0.0);
}

TEST_CASE("christoffel golden values") {
  // product chart: Gamma^theta_phiphi = -sin(theta) cos(theta)
  const CatalogEntry s2 = catalog_lookup("r_x_s2");
  const Ten3 g1 = christoffel(metric_jet(s2.spec, {0.0, 1.0, 0.5}, 1));
  CHECK(g1[1][2][2] ==
        doctest::Approx(-std::sin(1.0) * std::cos(1.0)).epsilon(1e-12));
  CHECK(g1[1][2][2] == doctest::Approx(-0.4546487134).epsilon(1e-8));

  // upper half space: Gamma^2_22 = -1/x2
  const CatalogEntry h3 = catalog_lookup("hyperbolic3");
  const Ten3 g2 = christoffel(metric_jet(h3.spec, {0.3, -0.2, 2.0}, 1));
  CHECK(g2[2][2][2] == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("christoffel symbols make the metric parallel") {
  std::mt19937_64 rng(99u);
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const MetricJet jet = cm.jet(x, 1);
      const Ten3 gamma = christoffel(jet);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double nabla_g = jet.dg[k][i][j];
            for (int p = 0; p < 3; ++p)
              nabla_g -= gamma[p][k][i] * jet.g[p][j] +
                         gamma[p][k][j] * jet.g[i][p];
            CHECK(std::abs(nabla_g) <= 1e-10);
          }
    }
  }
}

TEST_CASE("curvature sign convention: unit sphere has sectional +1") {
  std::mt19937_64 rng(7u);
  const CatalogEntry e = catalog_lookup("sphere3");
  for (int rep = 0; rep < 10; ++rep) {
    const Vec3 p = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
    const CurvatureBundle b = curvature(metric_jet(e.spec, p, 2));
    for (int t = 0; t < 5; ++t) {
      Vec3 x{}, y{};
      std::uniform_real_distribution<double> d(-1.0, 1.0);
      for (int a = 0; a < 3; ++a) {
        x[a] = d(rng);
        y[a] = d(rng);
      }
      const double xx = dot(x, mat_vec(b.g, x)), yy = dot(y, mat_vec(b.g, y));
      const double xy = dot(x, mat_vec(b.g, y));
      if (xx * yy - xy * xy < 0.1 * xx * yy) continue;
      CHECK(sectional(b, x, y) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("flat bundle is zero") {
  const CurvatureBundle b = bundle_at("euclidean", {0.4, 0.1, -0.6});
  CHECK(max_abs(b.riemann04) == 0.0);
  CHECK(norm_g(b.ricci, b.ginv) == 0.0);
  CHECK(b.scalar == 0.0);
}

TEST_CASE("riemann symmetries and first Bianchi") {
  std::mt19937_64 rng(2024u);
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 2));
      const double scale = std::max(1.0, max_abs(b.riemann04));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
              CHECK(std::abs(b.riemann04[i][j][k][l] + b.riemann04[j][i][k][l]) <=
                    1e-9 * scale);
              CHECK(std::abs(b.riemann04[i][j][k][l] + b.riemann04[i][j][l][k]) <=
                    1e-9 * scale);
              CHECK(std::abs(b.riemann04[i][j][k][l] - b.riemann04[k][l][i][j]) <=
                    1e-9 * scale);
            }
      CHECK(first_bianchi_residual(b.riemann04) <= 1e-9 * scale);
      // ricci two ways: operator contraction vs direct
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double via04 = 0.0;
          for (int a = 0; a < 3; ++a)
            for (int bb = 0; bb < 3; ++bb)
              via04 += b.ginv[a][bb] * b.riemann04[a][i][bb][j];
          CHECK(via04 == doctest::Approx(b.ricci[i][j]).epsilon(1e-10));
        }
      // self-adjointness of S with respect to g
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double gs_ij = 0.0, gs_ji = 0.0;
          for (int p = 0; p < 3; ++p) {
            gs_ij += b.g[i][p] * b.ricci_op[p][j];
            gs_ji += b.g[j][p] * b.ricci_op[p][i];
          }
          CHECK(gs_ij == doctest::Approx(gs_ji).epsilon(1e-10));
        }
    }
  }
}

TEST_CASE("nil3 and sol3 match the frame oracle at the origin") {
  // At x = 0 the left-invariant orthonormal frames coincide with the
  // coordinate axes, so frame-oracle numbers apply verbatim.
  const oracles::LieFrameOracle nil = oracles::nil3_oracle();
  CHECK(nil.ricci(0, 0) == doctest::Approx(-0.5));
  CHECK(nil.ricci(1, 1) == doctest::Approx(-0.5));
  CHECK(nil.ricci(2, 2) == doctest::Approx(0.5));
  CHECK(nil.sectional(0, 1) == doctest::Approx(-0.75));
  CHECK(nil.sectional(0, 2) == doctest::Approx(0.25));
  CHECK(nil.scalar() == doctest::Approx(-0.5));

  const CurvatureBundle bn = bundle_at("nil3", {0.0, 0.0, 0.0}, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(bn.ricci[i][j] == doctest::Approx(nil.ricci(i, j)).epsilon(1e-12));
  CHECK(sectional(bn, {1, 0, 0}, {0, 1, 0}) == doctest::Approx(-0.75));
  CHECK(sectional(bn, {1, 0, 0}, {0, 0, 1}) == doctest::Approx(0.25));

  const oracles::LieFrameOracle sol = oracles::sol3_oracle();
  CHECK(sol.ricci(0, 0) == doctest::Approx(0.0));
  CHECK(sol.ricci(2, 2) == doctest::Approx(-2.0));
  CHECK(sol.sectional(0, 1) == doctest::Approx(1.0));
  CHECK(sol.sectional(0, 2) == doctest::Approx(-1.0));

  const CurvatureBundle bs = bundle_at("sol3", {0.0, 0.0, 0.0}, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(bs.ricci[i][j] == doctest::Approx(sol.ricci(i, j)).epsilon(1e-12));
  CHECK(sectional(bs, {1, 0, 0}, {0, 1, 0}) == doctest::Approx(1.0));
  CHECK(sectional(bs, {0, 1, 0}, {0, 0, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("scalar curvature golden values") {
  std::mt19937_64 rng(5150u);
  const std::pair<const char*, double> expected[] = {
      {"euclidean", 0.0}, {"sphere3", 6.0}, {"hyperbolic3", -6.0},
      {"r_x_s2", 2.0},    {"r_x_h2", -2.0}, {"nil3", -0.5},
      {"sol3", -2.0}};
  for (const auto& [name, r] : expected) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 2));
      CHECK(std::abs(b.scalar - r) <= 1e-7);
    }
  }
}

TEST_CASE("wedge endomorphism") {
  const Mat3 id = mat3_identity();
  const Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  const Mat3 w = wedge(e1, e2, id);
  CHECK(mat_vec(w, e2) == Vec3{1, 0, 0});   // (e1^e2) e2 = e1
  CHECK(mat_vec(w, e1) == Vec3{0, -1, 0});  // (e1^e2) e1 = -e2
  CHECK(mat_vec(w, e3) == Vec3{0, 0, 0});

  std::mt19937_64 rng(31u);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    Vec3 x{d(rng), d(rng), d(rng)}, z{d(rng), d(rng), d(rng)};
    const Mat3 wxx = wedge(x, x, id);
    CHECK(std::abs(dot(mat_vec(wxx, z), z)) <= 1e-14);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(wxx[i][j] == 0.0);
  }
}

TEST_CASE("G tensor: flat components and Riemann symmetries") {
  const Ten4 gt = g_tensor(mat3_identity());
  CHECK(gt[0][1][0][1] == 1.0);   // G_1212 with 1-based naming
  CHECK(gt[0][1][1][0] == -1.0);  // G_1221
  CHECK(gt[0][0][0][1] == 0.0);   // G_1112
  CHECK(first_bianchi_residual(gt) == 0.0);

  // sphere3: R = kappa G with kappa = 1
  std::mt19937_64 rng(8u);
  const CatalogEntry e = catalog_lookup("sphere3");
  for (int rep = 0; rep < 5; ++rep) {
    const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
    const CurvatureBundle b = curvature(metric_jet(e.spec, x, 2));
    const Ten4 g4 = g_tensor(b.g);
    Ten4 diff{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            diff[i][j][k][l] = b.riemann04[i][j][k][l] - g4[i][j][k][l];
    CHECK(norm_g(diff, b.ginv) <= 1e-8);
  }
}

TEST_CASE("3d reconstruction from S and r equals the direct curvature") {
  std::mt19937_64 rng(1234u);
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 50; ++rep) {
      const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 2));
      const Ten4 rec = reconstruct_curvature_3d(b);
      Ten4 diff{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
              diff[i][j][k][l] = rec[i][j][k][l] - b.riemann04[i][j][k][l];
      const double denom =
          norm_g(b.riemann04, b.ginv) + 1e-6 * norm_g(g_tensor(b.g), b.ginv);
      CHECK(norm_g(diff, b.ginv) / denom <= 1e-8);
    }
  }
}

TEST_CASE("hessian, gradient, laplacian") {
  const CatalogEntry eu = catalog_lookup("euclidean");
  const CurvatureBundle be = curvature(metric_jet(eu.spec, {0.5, -0.3, 0.2}, 2));

  const CompiledScalar f1(parse_expr("x0^2", {}));
  const ScalarFieldJet j1 = f1.jet({0.5, -0.3, 0.2}, {});
  const Mat3 h1 = hessian(j1, be.gamma);
  CHECK(h1[0][0] == 2.0);
  CHECK(h1[1][1] == 0.0);
  CHECK(h1[0][1] == 0.0);
  CHECK(laplacian(j1, be) == 2.0);

  // f = |x|^2 / 2 on flat space: Hess f = g
  const CompiledScalar f2(parse_expr("0.5*(x0^2+x1^2+x2^2)", {}));
  const Mat3 h2 = hessian(f2.jet({0.5, -0.3, 0.2}, {}), be.gamma);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(h2[i][j] == be.g[i][j]);

  // f = t^2/2 on the cylinder: Hess f = dt (x) dt, Lap f = 1
  const CatalogEntry s2 = catalog_lookup("r_x_s2");
  const CurvatureBundle bc = curvature(metric_jet(s2.spec, {0.7, 1.3, 0.4}, 2));
  const CompiledScalar f3(parse_expr("x0^2/2", {}));
  const ScalarFieldJet j3 = f3.jet({0.7, 1.3, 0.4}, {});
  const Mat3 h3 = hessian(j3, bc.gamma);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(h3[i][j] == doctest::Approx(i == 0 && j == 0 ? 1.0 : 0.0).epsilon(1e-14));
  CHECK(laplacian(j3, bc) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("covariant derivative of R and the second Bianchi identity") {
  std::mt19937_64 rng(606u);

  // flat: nabla R identically zero
  const CurvatureBundle be = bundle_at("euclidean", {0.1, 0.2, 0.3});
  CHECK(max_abs_nabla(be) == 0.0);
  CHECK(second_bianchi_residual(be) == 0.0);

  // constant curvature: R is parallel
  const CatalogEntry sp = catalog_lookup("sphere3");
  for (int rep = 0; rep < 5; ++rep) {
    const Vec3 x = oracles::random_point(rng, sp.default_grid.lo, sp.default_grid.hi);
    const CurvatureBundle b = curvature(metric_jet(sp.spec, x, 3));
    double m = 0.0;
    for (int q = 0; q < 3; ++q) m = std::max(m, max_abs(b.nabla_R[q]));
    CHECK(m <= 1e-8);
  }

  // everything in the catalog satisfies the second Bianchi identity
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 3));
      CHECK(second_bianchi_residual(b) <= 1e-7);
    }
  }

  // Nil is not locally symmetric
  const CatalogEntry nil = catalog_lookup("nil3");
  const CompiledMetric cm(nil.spec);
  for (int rep = 0; rep < 20; ++rep) {
    const Vec3 x = oracles::random_point(rng, nil.default_grid.lo, nil.default_grid.hi);
    const CurvatureBundle b = curvature(cm.jet(x, 3));
    double m = 0.0;
    for (int q = 0; q < 3; ++q) m = std::max(m, max_abs(b.nabla_R[q]));
    CHECK(m > 0.01);
    CHECK(second_bianchi_residual(b) <= 1e-7);
  }
}

TEST_CASE("nabla R cross-checked against stencil differencing") {
  // independent route: difference riemann04 built from exact jets, then
  // add the Christoffel correction terms at the center
  std::mt19937_64 rng(11u);
  const double h = 1e-5;
  for (const char* name : {"nil3", "sol3", "r_x_cigar"}) {
    const CatalogEntry e = catalog_lookup(name);
    const CompiledMetric cm(e.spec);
    CAPTURE(name);
    for (int rep = 0; rep < 3; ++rep) {
      const Vec3 x = oracles::random_point(rng, e.default_grid.lo, e.default_grid.hi);
      const CurvatureBundle b = curvature(cm.jet(x, 3));
      for (int m = 0; m < 3; ++m) {
        Vec3 xp = x, xm = x;
        xp[m] += h;
        xm[m] -= h;
        const CurvatureBundle bp = curvature(cm.jet(xp, 2));
        const CurvatureBundle bm = curvature(cm.jet(xm, 2));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l) {
                double v = (bp.riemann04[i][j][k][l] -
                            bm.riemann04[i][j][k][l]) / (2.0 * h);
                for (int p = 0; p < 3; ++p) {
                  v -= b.gamma[p][m][i] * b.riemann04[p][j][k][l];
                  v -= b.gamma[p][m][j] * b.riemann04[i][p][k][l];
                  v -= b.gamma[p][m][k] * b.riemann04[i][j][p][l];
                  v -= b.gamma[p][m][l] * b.riemann04[i][j][k][p];
                }
                CHECK(std::abs(v - b.nabla_R[m][i][j][k][l]) <= 1e-6);
              }
      }
    }
  }
}

TEST_CASE("jet order is enforced") {
  const CatalogEntry e = catalog_lookup("nil3");
  CHECK_THROWS_AS(christoffel(metric_jet(e.spec, {0, 0, 0}, 0)), JetOrderError);
  CHECK_THROWS_AS(curvature(metric_jet(e.spec, {0, 0, 0}, 1)), JetOrderError);
  const CurvatureBundle b2 = curvature(metric_jet(e.spec, {0, 0, 0}, 2));
  CHECK_FALSE(b2.has_third);
  CHECK_THROWS_AS(second_bianchi_residual(b2), JetOrderError);
}
