#include "psym3/frame.hpp"

#include <cmath>

#include "psym3/errors.hpp"

namespace psym3 {

namespace {

double g_dot(const Mat3& g, const Vec3& a, const Vec3& b) {
  return dot(a, mat_vec(g, b));
}

Vec3 g_normalize(const Mat3& g, const Vec3& v) {
  const double n = std::sqrt(g_dot(g, v, v));
  if (n <= 0.0) throw FrameError("cannot normalize a null vector");
  Vec3 out = v;
  for (double& c : out) c /= n;
  return out;
}

void fix_sign_largest_component(Vec3& v) {
  int a = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[a])) a = i;
  if (v[a] < 0.0)
    for (double& c : v) c = -c;
}

// Unit simple eigenvector of the Ricci operator via the reduced symmetric
// problem; well conditioned because the simple eigenvalue is isolated.
Vec3 simple_eigenvector(const CurvatureBundle& b, const RicciSpectrum& s) {
  const Mat3 l = cholesky3(b.g);
  Mat3 a{};
  for (int j = 0; j < 3; ++j) {
    const Vec3 col{b.ricci[0][j], b.ricci[1][j], b.ricci[2][j]};
    const Vec3 t = solve_lower(l, col);
    for (int i = 0; i < 3; ++i) a[i][j] = t[i];
  }
  Mat3 sym{};
  for (int i = 0; i < 3; ++i) {
    const Vec3 row{a[i][0], a[i][1], a[i][2]};
    const Vec3 t = solve_lower(l, row);
    for (int j = 0; j < 3; ++j) sym[i][j] = t[j];
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double v = 0.5 * (sym[i][j] + sym[j][i]);
      sym[i][j] = sym[j][i] = v;
    }
  const Vec3 w = sym3_eigenvector(sym, s.simple_value());
  return solve_lower_transposed(l, w);
}

Vec3 project_out(const Mat3& g, const Vec3& x, const Vec3& unit) {
  const double c = g_dot(g, unit, x);
  Vec3 out = x;
  for (int i = 0; i < 3; ++i) out[i] -= c * unit[i];
  return out;
}

} // namespace

FrameData ricci_eigenframe(const CurvatureBundle& b, double multiplicity_tol) {
  FrameData f;
  f.point = b.point;
  f.spectrum = ricci_spectrum(b, multiplicity_tol);
  if (f.spectrum.pattern != EigenPattern::Pair)
    throw FrameError(std::string("no eigenframe: spectrum is ") +
                     eigen_pattern_name(f.spectrum.pattern));
  f.L = 0.5 * f.spectrum.simple_value();
  f.mu = f.spectrum.double_value();

  Vec3 e0 = g_normalize(b.g, simple_eigenvector(b, f.spectrum));
  fix_sign_largest_component(e0);

  // e1: first coordinate axis with a usable projection into the double
  // eigenspace (the orthogonal complement of e0)
  Vec3 e1{};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 cand{};
    cand[axis] = 1.0;
    const Vec3 proj = project_out(b.g, cand, e0);
    const double n2 = g_dot(b.g, proj, proj);
    if (n2 > 1e-12 * g_dot(b.g, cand, cand)) {
      e1 = g_normalize(b.g, proj);
      f.gauge_axis = axis;
      break;
    }
  }
  if (f.gauge_axis < 0) throw FrameError("no usable gauge axis");

  // e2: complete the frame from the remaining coordinate axes
  Vec3 e2{};
  bool found = false;
  for (int axis = 0; axis < 3 && !found; ++axis) {
    Vec3 cand{};
    cand[axis] = 1.0;
    Vec3 proj = project_out(b.g, cand, e0);
    proj = project_out(b.g, proj, e1);
    const double n2 = g_dot(b.g, proj, proj);
    if (n2 > 1e-12 * g_dot(b.g, cand, cand)) {
      e2 = g_normalize(b.g, proj);
      found = true;
    }
  }
  if (!found) throw FrameError("frame completion failed");
  fix_sign_largest_component(e2);

  f.e = {e0, e1, e2};
  return f;
}

FrameData aligned_eigenframe(const CurvatureBundle& b, const FrameData& ref,
                             double multiplicity_tol) {
  FrameData f;
  f.point = b.point;
  f.spectrum = ricci_spectrum(b, multiplicity_tol);
  if (f.spectrum.pattern != EigenPattern::Pair)
    throw FrameError("pattern lost on stencil");
  f.L = 0.5 * f.spectrum.simple_value();
  f.mu = f.spectrum.double_value();
  f.gauge_axis = ref.gauge_axis;

  Vec3 e0 = g_normalize(b.g, simple_eigenvector(b, f.spectrum));
  const double align0 = g_dot(b.g, e0, ref.e[0]);
  if (std::abs(align0) < 0.5)
    throw FrameError("gauge flip detected across the stencil (e0)");
  if (align0 < 0.0)
    for (double& c : e0) c = -c;

  Vec3 e1 = project_out(b.g, ref.e[1], e0);
  if (g_dot(b.g, e1, e1) < 0.25)
    throw FrameError("gauge flip detected across the stencil (e1)");
  e1 = g_normalize(b.g, e1);

  Vec3 e2 = project_out(b.g, ref.e[2], e0);
  e2 = project_out(b.g, e2, e1);
  if (g_dot(b.g, e2, e2) < 0.25)
    throw FrameError("gauge flip detected across the stencil (e2)");
  e2 = g_normalize(b.g, e2);

  f.e = {e0, e1, e2};
  return f;
}

Ten3 connection_coefficients(const CompiledMetric& metric,
                             const FrameData& center, double h,
                             double multiplicity_tol) {
  const CurvatureBundle b = curvature(metric.jet(center.point, 2));

  // gauge-matched frames on the 6-point coordinate stencil
  std::array<std::array<FrameData, 2>, 3> stencil;
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      Vec3 q = center.point;
      q[axis] += (side == 0 ? -h : h);
      stencil[axis][side] =
          aligned_eigenframe(curvature(metric.jet(q, 2)), center,
                             multiplicity_tol);
    }
  }

  // d_a e_j^c by central differences
  double de[3][3][3];  // de[a][j][c]
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c)
        de[a][j][c] =
            (stencil[a][1].e[j][c] - stencil[a][0].e[j][c]) / (2.0 * h);

  Ten3 bc{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // (nabla_{e_i} e_j)^c = e_i^a (d_a e_j^c + Gamma^c_ab e_j^b)
      Vec3 cov{};
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) {
          double term = de[a][j][c];
          for (int bb = 0; bb < 3; ++bb)
            term += b.gamma[c][a][bb] * center.e[j][bb];
          s += center.e[i][a] * term;
        }
        cov[c] = s;
      }
      for (int k = 0; k < 3; ++k) bc[i][j][k] = g_dot(b.g, cov, center.e[k]);
    }
  return bc;
}

BianchiFrameResiduals bianchi_frame_check(const CompiledMetric& metric,
                                          const FrameData& center,
                                          const Ten3& b_coeffs, double h,
                                          double multiplicity_tol) {
  // directional derivatives of mu and L along the frame vectors
  Vec3 dmu{}, dl{};
  for (int i = 0; i < 3; ++i) {
    std::array<double, 2> mu_v{}, l_v{};
    for (int side = 0; side < 2; ++side) {
      Vec3 q = center.point;
      const double sgn = side == 0 ? -1.0 : 1.0;
      for (int c = 0; c < 3; ++c) q[c] += sgn * h * center.e[i][c];
      const CurvatureBundle bq = curvature(metric.jet(q, 2));
      const RicciSpectrum s = ricci_spectrum(bq, multiplicity_tol);
      if (s.pattern != EigenPattern::Pair ||
          s.simple_position != center.spectrum.simple_position)
        throw FrameError("pattern lost on stencil");
      mu_v[side] = s.double_value();
      l_v[side] = 0.5 * s.simple_value();
    }
    dmu[i] = (mu_v[1] - mu_v[0]) / (2.0 * h);
    dl[i] = (l_v[1] - l_v[0]) / (2.0 * h);
  }

  const double mu = center.mu;
  const double L = center.L;
  BianchiFrameResiduals out;
  out.along_e0 = std::abs((dmu[0] - dl[0]) -
                          (2.0 * L - mu) * (b_coeffs[1][0][1] + b_coeffs[2][0][2]));
  out.along_e1 = std::abs(dl[1] - (mu - 2.0 * L) * b_coeffs[0][1][0]);
  out.along_e2 = std::abs(dl[2] - (mu - 2.0 * L) * b_coeffs[0][2][0]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out.b_antisymmetry = std::max(
            out.b_antisymmetry, std::abs(b_coeffs[i][j][k] + b_coeffs[i][k][j]));
  return out;
}

EigenframeCurvatureResiduals eigenframe_curvature_check(
    const FrameData& frame, const CurvatureBundle& b) {
  // curvature in frame components
  Ten4 rf{};
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                  s += b.riemann04[i][j][k][l] * frame.e[a][i] *
                       frame.e[bb][j] * frame.e[c][k] * frame.e[d][l];
          rf[a][bb][c][d] = s;
        }

  const double mu = frame.mu;
  const double L = frame.L;
  auto pair_k = [&](int a, int bb) {
    if ((a == 1 && bb == 2) || (a == 2 && bb == 1)) return mu - L;
    return L;  // pairs containing e0
  };
  Ten4 expected{};
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb) {
      if (a == bb) continue;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const double delta =
              (a == c && bb == d ? 1.0 : 0.0) - (a == d && bb == c ? 1.0 : 0.0);
          expected[a][bb][c][d] = pair_k(a, bb) * delta;
        }
    }

  EigenframeCurvatureResiduals out;
  for (int c = 0; c < 3; ++c)
    for (int d = 0; d < 3; ++d) {
      out.block_12 = std::max(out.block_12,
                              std::abs(rf[1][2][c][d] - expected[1][2][c][d]));
      out.block_10 = std::max(out.block_10,
                              std::abs(rf[1][0][c][d] - expected[1][0][c][d]));
      out.block_20 = std::max(out.block_20,
                              std::abs(rf[2][0][c][d] - expected[2][0][c][d]));
    }
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          out.assembled = std::max(
              out.assembled, std::abs(rf[a][bb][c][d] - expected[a][bb][c][d]));
  out.scalar = std::abs(b.scalar - 2.0 * (mu + L)) /
               std::max(1.0, std::abs(b.scalar));
  return out;
}

} // namespace psym3
