// Test-only oracles, independent of the engine's computation paths.
#ifndef PSYM3_TESTS_ORACLES_HPP
#define PSYM3_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "psym3/expr.hpp"
#include "psym3/linalg.hpp"

namespace oracles {

using psym3::Mat3;
using psym3::Vec3;

// Central difference of a scalar function of one coordinate.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_diff_axis(const std::function<double(const Vec3&)>& f,
                                Vec3 x, int axis, double h) {
  Vec3 p = x, m = x;
  p[axis] += h;
  m[axis] -= h;
  return (f(p) - f(m)) / (2.0 * h);
}

// --------------------------------------------------------------------------
// Random expression trees. Deterministic for a fixed seed. Generated trees
// stay evaluable on (-1,1)^3: log/sqrt/div arguments are guarded by 1+u^2.
// --------------------------------------------------------------------------

inline psym3::ExprPtr random_ast(std::mt19937_64& rng, int depth) {
  using psym3::BinaryOp;
  using psym3::Expr;
  using psym3::UnaryOp;
  std::uniform_int_distribution<int> leaf(0, 3);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  if (depth <= 0) {
    const int k = leaf(rng);
    if (k == 3) return Expr::constant(coef(rng));
    return Expr::var(k);
  }
  std::uniform_int_distribution<int> pick(0, 11);
  const int k = pick(rng);
  auto sub = [&](int d) { return random_ast(rng, d); };
  auto guarded = [&](psym3::ExprPtr u) {
    // 1 + u^2: positive, smooth
    return Expr::binary(BinaryOp::Add, Expr::constant(1.0),
                        Expr::binary(BinaryOp::Mul, u, u));
  };
  switch (k) {
    case 0: return Expr::binary(BinaryOp::Add, sub(depth - 1), sub(depth - 1));
    case 1: return Expr::binary(BinaryOp::Sub, sub(depth - 1), sub(depth - 1));
    case 2: return Expr::binary(BinaryOp::Mul, sub(depth - 1), sub(depth - 1));
    case 3:
      return Expr::binary(BinaryOp::Div, sub(depth - 1),
                          guarded(sub(depth - 2 < 0 ? 0 : depth - 2)));
    case 4: return Expr::unary(UnaryOp::Sin, sub(depth - 1));
    case 5: return Expr::unary(UnaryOp::Cos, sub(depth - 1));
    case 6: return Expr::unary(UnaryOp::Tanh, sub(depth - 1));
    case 7: return Expr::unary(UnaryOp::Neg, sub(depth - 1));
    case 8:
      return Expr::unary(UnaryOp::Log, guarded(sub(depth - 2 < 0 ? 0 : depth - 2)));
    case 9:
      return Expr::unary(UnaryOp::Sqrt, guarded(sub(depth - 2 < 0 ? 0 : depth - 2)));
    case 10:
      return Expr::binary(BinaryOp::Pow, guarded(sub(depth - 2 < 0 ? 0 : depth - 2)),
                          Expr::constant(static_cast<double>(
                              std::uniform_int_distribution<int>(2, 3)(rng))));
    default: return Expr::unary(UnaryOp::Sinh, sub(depth - 1));
  }
}

inline Vec3 random_point(std::mt19937_64& rng, const Vec3& lo, const Vec3& hi,
                         double shrink = 0.1) {
  Vec3 x{};
  for (int a = 0; a < 3; ++a) {
    const double margin = shrink * (hi[a] - lo[a]);
    std::uniform_real_distribution<double> d(lo[a] + margin, hi[a] - margin);
    x[a] = d(rng);
  }
  return x;
}

// --------------------------------------------------------------------------
// Curvature of a left-invariant metric from the structure constants of an
// orthonormal frame: c[i][j][k] = <[e_i, e_j], e_k>. Everything is constant,
// so the computation is pure frame algebra (no charts, no jets).
// --------------------------------------------------------------------------

struct LieFrameOracle {
  std::array<Mat3, 3> c{};  // c[i][j][k]
  std::array<Mat3, 3> B{};  // B[i][j][k] = <nabla_{e_i} e_j, e_k>

  explicit LieFrameOracle(const std::array<Mat3, 3>& structure) : c(structure) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          B[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
  }

  // <R(e_i, e_j) e_l, e_m> with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]
  double curvature(int i, int j, int l, int m) const {
    double s = 0.0;
    for (int p = 0; p < 3; ++p) {
      s += B[j][l][p] * B[i][p][m];   // nabla_i nabla_j e_l
      s -= B[i][l][p] * B[j][p][m];   // nabla_j nabla_i e_l
      s -= c[i][j][p] * B[p][l][m];   // nabla_[e_i,e_j] e_l
    }
    return s;
  }

  double sectional(int i, int j) const { return curvature(i, j, j, i); }

  double ricci(int i, int j) const {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += curvature(a, i, j, a);
    return s;
  }

  double scalar() const { return ricci(0, 0) + ricci(1, 1) + ricci(2, 2); }
};

// Heisenberg frame e1 = dx, e2 = dy + x dz, e3 = dz: [e1,e2] = e3.
inline LieFrameOracle nil3_oracle() {
  std::array<Mat3, 3> c{};
  c[0][1][2] = 1.0;
  c[1][0][2] = -1.0;
  return LieFrameOracle(c);
}

// Sol frame e1 = e^-z dx, e2 = e^z dy, e3 = dz:
// [e3,e1] = -e1, [e3,e2] = e2.
inline LieFrameOracle sol3_oracle() {
  std::array<Mat3, 3> c{};
  c[2][0][0] = -1.0;
  c[0][2][0] = 1.0;
  c[2][1][1] = 1.0;
  c[1][2][1] = -1.0;
  return LieFrameOracle(c);
}

// --------------------------------------------------------------------------
// Dense least squares by Householder QR (reference for the sparse fitter).
// Returns the minimum-residual solution; rank deficiency is tolerated by
// skipping negligible pivots.
// --------------------------------------------------------------------------

struct DenseLS {
  long rows = 0, cols = 0;
  std::vector<double> a;  // row major
  std::vector<double> b;

  double& at(long r, long c) { return a[static_cast<std::size_t>(r * cols + c)]; }
  double at(long r, long c) const {
    return a[static_cast<std::size_t>(r * cols + c)];
  }

  // Minimizes ||A x - b||. Returns x and the residual norm.
  std::pair<std::vector<double>, double> solve() const {
    std::vector<double> m = a, rhs = b;
    auto M = [&](long r, long c) -> double& {
      return m[static_cast<std::size_t>(r * cols + c)];
    };
    std::vector<long> pivot_cols;
    long row = 0;
    for (long c = 0; c < cols && row < rows; ++c) {
      double nrm = 0.0;
      for (long r = row; r < rows; ++r) nrm += M(r, c) * M(r, c);
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12) continue;
      // Householder vector for column c below `row`
      std::vector<double> v(static_cast<std::size_t>(rows - row));
      for (long r = row; r < rows; ++r) v[static_cast<std::size_t>(r - row)] = M(r, c);
      const double alpha = v[0] >= 0 ? -nrm : nrm;
      v[0] -= alpha;
      double vn = 0.0;
      for (double x : v) vn += x * x;
      if (vn > 0.0) {
        for (long cc = c; cc < cols; ++cc) {
          double dotp = 0.0;
          for (long r = row; r < rows; ++r)
            dotp += v[static_cast<std::size_t>(r - row)] * M(r, cc);
          const double f = 2.0 * dotp / vn;
          for (long r = row; r < rows; ++r)
            M(r, cc) -= f * v[static_cast<std::size_t>(r - row)];
        }
        double dotb = 0.0;
        for (long r = row; r < rows; ++r)
          dotb += v[static_cast<std::size_t>(r - row)] * rhs[static_cast<std::size_t>(r)];
        const double f = 2.0 * dotb / vn;
        for (long r = row; r < rows; ++r)
          rhs[static_cast<std::size_t>(r)] -= f * v[static_cast<std::size_t>(r - row)];
      }
      pivot_cols.push_back(c);
      ++row;
    }
    std::vector<double> x(static_cast<std::size_t>(cols), 0.0);
    for (long k = static_cast<long>(pivot_cols.size()) - 1; k >= 0; --k) {
      const long c = pivot_cols[static_cast<std::size_t>(k)];
      double s = rhs[static_cast<std::size_t>(k)];
      for (long cc = c + 1; cc < cols; ++cc)
        s -= M(k, cc) * x[static_cast<std::size_t>(cc)];
      x[static_cast<std::size_t>(c)] = s / M(k, c);
    }
    double rn = 0.0;
    for (long r = static_cast<long>(pivot_cols.size()); r < rows; ++r)
      rn += rhs[static_cast<std::size_t>(r)] * rhs[static_cast<std::size_t>(r)];
    return {x, std::sqrt(rn)};
  }
};

} // namespace oracles

#endif
