#include "psym3/linalg.hpp"

#include <algorithm>

#include "psym3/errors.hpp"

namespace psym3 {

Mat3 inverse3(const Mat3& m) {
  const double d = det3(m);
  if (d == 0.0) throw SingularMetricError("matrix is singular");
  Mat3 inv;
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
  return inv;
}

std::array<double, 3> leading_minors(const Mat3& m) {
  const double m1 = m[0][0];
  const double m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double m3 = det3(m);
  return {m1, m2, m3};
}

bool is_spd(const Mat3& m) {
  const auto mins = leading_minors(m);
  return mins[0] > 0.0 && mins[1] > 0.0 && mins[2] > 0.0;
}

std::array<double, 3> sym3_eigenvalues(const Mat3& a) {
  const double p1 =
      a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double diag_scale =
      a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2];
  if (p1 <= 1e-60 * std::max(1.0, diag_scale)) {
    std::array<double, 3> e{a[0][0], a[1][1], a[2][2]};
    std::sort(e.begin(), e.end());
    return e;
  }
  const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
  const double p2 = (a[0][0] - q) * (a[0][0] - q) +
                    (a[1][1] - q) * (a[1][1] - q) +
                    (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  double r = det3(b) / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double two_pi_3 = 2.0943951023931953;
  const double e_max = q + 2.0 * p * std::cos(phi);
  const double e_min = q + 2.0 * p * std::cos(phi + two_pi_3);
  const double e_mid = 3.0 * q - e_max - e_min;
  return {e_min, e_mid, e_max};
}

Vec3 sym3_eigenvector(const Mat3& a, double lambda) {
  Mat3 m = a;
  for (int i = 0; i < 3; ++i) m[i][i] -= lambda;
  const Vec3 r0{m[0][0], m[0][1], m[0][2]};
  const Vec3 r1{m[1][0], m[1][1], m[1][2]};
  const Vec3 r2{m[2][0], m[2][1], m[2][2]};
  auto cross = [](const Vec3& x, const Vec3& y) {
    return Vec3{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                x[0] * y[1] - x[1] * y[0]};
  };
  const std::array<Vec3, 3> cand{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  int best = 0;
  double best_n = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double n = dot(cand[i], cand[i]);
    if (n > best_n) {
      best_n = n;
      best = i;
    }
  }
  if (best_n <= 0.0)
    throw SingularMetricError("eigenvector is not determined (multiple eigenvalue)");
  Vec3 v = cand[best];
  const double n = std::sqrt(best_n);
  for (double& c : v) c /= n;
  return v;
}

Mat3 cholesky3(const Mat3& m) {
  Mat3 l{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0)
          throw SingularMetricError("matrix is not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

Vec3 solve_lower(const Mat3& l, const Vec3& b) {
  Vec3 x{};
  x[0] = b[0] / l[0][0];
  x[1] = (b[1] - l[1][0] * x[0]) / l[1][1];
  x[2] = (b[2] - l[2][0] * x[0] - l[2][1] * x[1]) / l[2][2];
  return x;
}

Vec3 solve_lower_transposed(const Mat3& l, const Vec3& b) {
  Vec3 x{};
  x[2] = b[2] / l[2][2];
  x[1] = (b[1] - l[2][1] * x[2]) / l[1][1];
  x[0] = (b[0] - l[1][0] * x[1] - l[2][0] * x[2]) / l[0][0];
  return x;
}

double spd_condition(const Mat3& m) {
  const auto e = sym3_eigenvalues(m);
  if (e[0] <= 0.0) return std::numeric_limits<double>::infinity();
  return e[2] / e[0];
}

} // namespace psym3
