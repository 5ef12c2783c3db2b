#include "psym3/curvature.hpp"

#include <cmath>

#include "psym3/errors.hpp"

namespace psym3 {

namespace {

// d_m g^ij = -(ginv . dg_m . ginv)^ij
Ten3 inverse_derivative(const Mat3& ginv, const std::array<Mat3, 3>& dg) {
  Ten3 dginv{};
  for (int m = 0; m < 3; ++m) {
    const Mat3 t = mat_mul(ginv, mat_mul(dg[m], ginv));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dginv[m][i][j] = -t[i][j];
  }
  return dginv;
}

Ten3 christoffel_from(const Mat3& ginv, const std::array<Mat3, 3>& dg) {
  Ten3 gamma{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l)
          s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        gamma[k][i][j] = 0.5 * s;
        gamma[k][j][i] = gamma[k][i][j];
      }
  return gamma;
}

// d_m Gamma^k_ij from the order-2 jet.
Ten4 christoffel_derivative(const MetricJet& jet, const Mat3& ginv,
                            const Ten3& dginv) {
  Ten4 dgamma{};
  for (int m = 0; m < 3; ++m)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          double s = 0.0;
          for (int l = 0; l < 3; ++l) {
            s += dginv[m][k][l] *
                 (jet.dg[i][j][l] + jet.dg[j][i][l] - jet.dg[l][i][j]);
            s += ginv[k][l] * (jet.d2g[m][i][j][l] + jet.d2g[m][j][i][l] -
                               jet.d2g[m][l][i][j]);
          }
          dgamma[m][k][i][j] = 0.5 * s;
          dgamma[m][k][j][i] = dgamma[m][k][i][j];
        }
  return dgamma;
}

} // namespace

Ten3 christoffel(const MetricJet& jet) {
  if (jet.order < 1) throw JetOrderError("christoffel needs jet order >= 1");
  const Mat3 ginv = inverse3(jet.g);
  return christoffel_from(ginv, jet.dg);
}

CurvatureBundle curvature(const MetricJet& jet) {
  if (jet.order < 2) throw JetOrderError("curvature needs jet order >= 2");

  CurvatureBundle b;
  b.order = jet.order;
  b.point = jet.point;
  b.g = jet.g;
  b.ginv = inverse3(jet.g);

  const Ten3 dginv = inverse_derivative(b.ginv, jet.dg);
  b.gamma = christoffel_from(b.ginv, jet.dg);
  const Ten4 dgamma = christoffel_derivative(jet, b.ginv, dginv);

  // R^a_bxy = d_x Gamma^a_yb - d_y Gamma^a_xb
  //           + Gamma^a_xm Gamma^m_yb - Gamma^a_ym Gamma^m_xb
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb)
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
          double s = dgamma[x][a][y][bb] - dgamma[y][a][x][bb];
          for (int m = 0; m < 3; ++m)
            s += b.gamma[a][x][m] * b.gamma[m][y][bb] -
                 b.gamma[a][y][m] * b.gamma[m][x][bb];
          b.riemann13[a][bb][x][y] = s;
        }

  // riemann04[i][j][k][l] = g_kp R^p_lij
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = 0.0;
          for (int p = 0; p < 3; ++p)
            s += jet.g[k][p] * b.riemann13[p][l][i][j];
          b.riemann04[i][j][k][l] = s;
        }

  // Ric_jk = R^a_kaj
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a) s += b.riemann13[a][k][a][j];
      b.ricci[j][k] = s;
    }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int p = 0; p < 3; ++p) s += b.ginv[i][p] * b.ricci[p][j];
      b.ricci_op[i][j] = s;
    }
  b.scalar = b.ricci_op[0][0] + b.ricci_op[1][1] + b.ricci_op[2][2];

  if (jet.order >= 3) {
    b.has_third = true;

    // d_n d_m g^ij
    std::array<Ten3, 3> d2ginv{};
    for (int n = 0; n < 3; ++n)
      for (int m = 0; m < 3; ++m) {
        Mat3 t1 = mat_mul(dginv[n], mat_mul(jet.dg[m], b.ginv));
        Mat3 t2 = mat_mul(b.ginv, mat_mul(jet.d2g[n][m], b.ginv));
        Mat3 t3 = mat_mul(b.ginv, mat_mul(jet.dg[m], dginv[n]));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            d2ginv[n][m][i][j] = -(t1[i][j] + t2[i][j] + t3[i][j]);
      }

    // d_n d_m Gamma^k_ij
    std::array<Ten4, 3> d2gamma{};
    for (int n = 0; n < 3; ++n)
      for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
              double s = 0.0;
              for (int l = 0; l < 3; ++l) {
                s += d2ginv[n][m][k][l] *
                     (jet.dg[i][j][l] + jet.dg[j][i][l] - jet.dg[l][i][j]);
                s += dginv[m][k][l] * (jet.d2g[n][i][j][l] +
                                       jet.d2g[n][j][i][l] -
                                       jet.d2g[n][l][i][j]);
                s += dginv[n][k][l] * (jet.d2g[m][i][j][l] +
                                       jet.d2g[m][j][i][l] -
                                       jet.d2g[m][l][i][j]);
                s += b.ginv[k][l] *
                     (jet.d3g[n][m][i][j][l] + jet.d3g[n][m][j][i][l] -
                      jet.d3g[n][m][l][i][j]);
              }
              d2gamma[n][m][k][i][j] = 0.5 * s;
              d2gamma[n][m][k][j][i] = d2gamma[n][m][k][i][j];
            }

    // d_m R^a_bxy
    Ten5 dr13{};
    for (int m = 0; m < 3; ++m)
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb)
          for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
              double s = d2gamma[m][x][a][y][bb] - d2gamma[m][y][a][x][bb];
              for (int p = 0; p < 3; ++p) {
                s += dgamma[m][a][x][p] * b.gamma[p][y][bb] +
                     b.gamma[a][x][p] * dgamma[m][p][y][bb];
                s -= dgamma[m][a][y][p] * b.gamma[p][x][bb] +
                     b.gamma[a][y][p] * dgamma[m][p][x][bb];
              }
              dr13[m][a][bb][x][y] = s;
            }

    // nabla_m R_ijkl = d_m R_ijkl - Gamma^p_mi R_pjkl - Gamma^p_mj R_ipkl
    //                  - Gamma^p_mk R_ijpl - Gamma^p_ml R_ijkp
    for (int m = 0; m < 3; ++m)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
              double s = 0.0;
              for (int p = 0; p < 3; ++p) {
                s += jet.dg[m][k][p] * b.riemann13[p][l][i][j] +
                     jet.g[k][p] * dr13[m][p][l][i][j];
                s -= b.gamma[p][m][i] * b.riemann04[p][j][k][l];
                s -= b.gamma[p][m][j] * b.riemann04[i][p][k][l];
                s -= b.gamma[p][m][k] * b.riemann04[i][j][p][l];
                s -= b.gamma[p][m][l] * b.riemann04[i][j][k][p];
              }
              b.nabla_R[m][i][j][k][l] = s;
            }

    // d_m Ric_jk, then nabla_m S^i_j and d_m r
    Ten3 dricci{};
    for (int m = 0; m < 3; ++m)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a) s += dr13[m][a][k][a][j];
          dricci[m][j][k] = s;
        }

    for (int m = 0; m < 3; ++m) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double ds = 0.0;
          for (int p = 0; p < 3; ++p)
            ds += dginv[m][i][p] * b.ricci[p][j] +
                  b.ginv[i][p] * dricci[m][p][j];
          double s = ds;
          for (int p = 0; p < 3; ++p)
            s += b.gamma[i][m][p] * b.ricci_op[p][j] -
                 b.gamma[p][m][j] * b.ricci_op[i][p];
          b.nabla_S[m][i][j] = s;
        }
      double dr = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          dr += dginv[m][j][k] * b.ricci[j][k] +
                b.ginv[j][k] * dricci[m][j][k];
      b.dscalar[m] = dr;
    }
  }

  return b;
}

Mat3 wedge(const Vec3& x, const Vec3& y, const Mat3& g) {
  const Vec3 gx = mat_vec(g, x);
  const Vec3 gy = mat_vec(g, y);
  Mat3 w{};
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb) w[a][bb] = x[a] * gy[bb] - y[a] * gx[bb];
  return w;
}

Ten4 g_tensor(const Mat3& g) {
  Ten4 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t[i][j][k][l] = g[i][k] * g[j][l] - g[i][l] * g[j][k];
  return t;
}

Ten4 reconstruct_curvature_3d(const CurvatureBundle& b) {
  const Mat3& g = b.g;
  const Mat3& ric = b.ricci;
  const double half_r = 0.5 * b.scalar;
  Ten4 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t[i][j][k][l] = g[j][l] * ric[i][k] - g[j][k] * ric[i][l] +
                          g[i][k] * ric[j][l] - g[i][l] * ric[j][k] -
                          half_r * (g[i][k] * g[j][l] - g[i][l] * g[j][k]);
  return t;
}

double first_bianchi_residual(const Ten4& r04) {
  // cyclic sum over the operator slots: <R(a,b)c + R(b,c)a + R(c,a)b, d> = 0
  double m = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb)
      for (int c = 0; c < 3; ++c)
        for (int dd = 0; dd < 3; ++dd) {
          const double s = r04[a][bb][dd][c] + r04[bb][c][dd][a] +
                           r04[c][a][dd][bb];
          m = std::max(m, std::abs(s));
        }
  return m;
}

double second_bianchi_residual(const CurvatureBundle& b) {
  if (!b.has_third)
    throw JetOrderError("second Bianchi residual needs an order-3 bundle");
  double m = 0.0;
  for (int mm = 0; mm < 3; ++mm)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            const double s = b.nabla_R[mm][i][j][k][l] +
                             b.nabla_R[i][j][mm][k][l] +
                             b.nabla_R[j][mm][i][k][l];
            m = std::max(m, std::abs(s));
          }
  return m;
}

CompiledScalar::CompiledScalar(ExprPtr e) : e_(std::move(e)) {
  for (int i = 0; i < 3; ++i) de_[i] = differentiate(e_, i);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      d2e_[i][j] = (i <= j) ? differentiate(de_[i], j) : d2e_[j][i];
}

ScalarFieldJet CompiledScalar::jet(const Vec3& x,
                                   std::span<const double> params) const {
  ScalarFieldJet f;
  f.value = e_->eval(x, params);
  for (int i = 0; i < 3; ++i) f.grad[i] = de_[i]->eval(x, params);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      f.hess[i][j] = d2e_[i][j]->eval(x, params);
      f.hess[j][i] = f.hess[i][j];
    }
  return f;
}

Mat3 hessian(const ScalarFieldJet& f, const Ten3& gamma) {
  Mat3 h{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = f.hess[i][j];
      for (int k = 0; k < 3; ++k) s -= gamma[k][i][j] * f.grad[k];
      h[i][j] = s;
    }
  return h;
}

Vec3 gradient(const ScalarFieldJet& f, const Mat3& ginv) {
  return mat_vec(ginv, f.grad);
}

double laplacian(const ScalarFieldJet& f, const CurvatureBundle& b) {
  const Mat3 h = hessian(f, b.gamma);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += b.ginv[i][j] * h[i][j];
  return s;
}

} // namespace psym3
