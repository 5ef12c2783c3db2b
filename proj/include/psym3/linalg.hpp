#ifndef PSYM3_LINALG_HPP
#define PSYM3_LINALG_HPP

#include <array>
#include <cmath>

namespace psym3 {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 mat3_zero() { return Mat3{}; }

inline Mat3 mat3_identity() {
  Mat3 m{};
  m[0][0] = m[1][1] = m[2][2] = 1.0;
  return m;
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Inverse via the closed-form adjugate. Caller checks det beforehand.
Mat3 inverse3(const Mat3& m);

// Leading principal minors (m1, m2, m3); all positive iff symmetric m is SPD.
std::array<double, 3> leading_minors(const Mat3& m);

bool is_spd(const Mat3& m);

// Eigenvalues of a symmetric 3x3 matrix, ascending. Closed-form
// (trigonometric) method; no iteration.
std::array<double, 3> sym3_eigenvalues(const Mat3& a);

// Unit eigenvector for an eigenvalue of a symmetric matrix, computed from
// cross products of the rows of (a - lambda I). Requires the eigenvalue to
// be simple for a well-conditioned result.
Vec3 sym3_eigenvector(const Mat3& a, double lambda);

// Cholesky factor L with m = L L^T. Throws SingularMetricError when the
// matrix is not positive definite.
Mat3 cholesky3(const Mat3& m);

// Solve L x = b (lower triangular) and L^T x = b.
Vec3 solve_lower(const Mat3& l, const Vec3& b);
Vec3 solve_lower_transposed(const Mat3& l, const Vec3& b);

// Spectral condition number of an SPD matrix.
double spd_condition(const Mat3& m);

} // namespace psym3

#endif
