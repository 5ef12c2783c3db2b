#include "psym3/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "psym3/errors.hpp"

namespace psym3 {

const char* verdict_class_name(VerdictClass c) {
  switch (c) {
    case VerdictClass::ConstantCurvature: return "constant-curvature";
    case VerdictClass::SemiSymmetric: return "semi-symmetric";
    case VerdictClass::PseudoSymmetricConstantType:
      return "pseudo-symmetric-constant-type";
    case VerdictClass::PseudoSymmetricVariable:
      return "pseudo-symmetric-variable";
    case VerdictClass::NotPseudoSymmetric: return "not-pseudo-symmetric";
  }
  return "?";
}

const char* eigen_pattern_name(EigenPattern p) {
  switch (p) {
    case EigenPattern::AllEqual: return "all-equal";
    case EigenPattern::Pair: return "pair";
    case EigenPattern::AllDistinct: return "all-distinct";
  }
  return "?";
}

namespace {

// Operator matrix of R(d_x, d_y): M^a_b = riemann13[a][b][x][y].
// Operator matrix of (d_x ^ d_y):  W^a_b = delta^a_x g_yb - delta^a_y g_xb.

Ten4 derivation_action_k2(const Mat3& t,
                          const std::array<std::array<Mat3, 3>, 3>& op) {
  Ten4 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a)
            s -= op[x][y][a][i] * t[a][j] + op[x][y][a][j] * t[i][a];
          out[i][j][x][y] = s;
        }
  return out;
}

Ten6 derivation_action_k4(const Ten4& t,
                          const std::array<std::array<Mat3, 3>, 3>& op) {
  Ten6 out{};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const Mat3& m = op[x][y];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
              double s = 0.0;
              for (int a = 0; a < 3; ++a)
                s -= m[a][i] * t[a][j][k][l] + m[a][j] * t[i][a][k][l] +
                     m[a][k] * t[i][j][a][l] + m[a][l] * t[i][j][k][a];
              out[i][j][k][l][x][y] = s;
            }
    }
  return out;
}

std::array<std::array<Mat3, 3>, 3> curvature_operators(
    const CurvatureBundle& b) {
  std::array<std::array<Mat3, 3>, 3> op{};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb)
          op[x][y][a][bb] = b.riemann13[a][bb][x][y];
  return op;
}

std::array<std::array<Mat3, 3>, 3> wedge_operators(const Mat3& g) {
  std::array<std::array<Mat3, 3>, 3> op{};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb)
          op[x][y][a][bb] = (a == x ? g[y][bb] : 0.0) - (a == y ? g[x][bb] : 0.0);
  return op;
}

} // namespace

Ten4 curvature_action(const Mat3& t, const CurvatureBundle& b) {
  return derivation_action_k2(t, curvature_operators(b));
}

Ten6 curvature_action(const Ten4& t, const CurvatureBundle& b) {
  return derivation_action_k4(t, curvature_operators(b));
}

Ten4 q_tensor(const Mat3& t, const Mat3& g) {
  return derivation_action_k2(t, wedge_operators(g));
}

Ten6 q_tensor(const Ten4& t, const Mat3& g) {
  return derivation_action_k4(t, wedge_operators(g));
}

LEstimate estimate_L(const Ten6& rr, const Ten6& q, const Mat3& ginv,
                     double q_floor) {
  LEstimate est;
  const double qq = inner_g(q, q, ginv);
  const double qnorm = std::sqrt(std::max(0.0, qq));
  const double rrnorm = norm_g(rr, ginv);
  if (qnorm <= q_floor) {
    est.degenerate = true;
    est.residual = rrnorm;
    return est;
  }
  est.L = inner_g(rr, q, ginv) / qq;
  Ten6 diff{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
              diff[i][j][k][l][x][y] =
                  rr[i][j][k][l][x][y] - est.L * q[i][j][k][l][x][y];
  // ||Q|| enters the scale so that R.R ~ 0 with L ~ 0 (semi-symmetric
  // points) reads as a perfect fit, not as 0/0 noise
  est.residual = norm_g(diff, ginv) / std::max({rrnorm, qnorm, 1e-30});
  return est;
}

RicciSpectrum ricci_spectrum(const CurvatureBundle& b, double tol) {
  // Generalized problem Ric v = mu g v reduced with g = L L^T to the
  // symmetric matrix L^-1 Ric L^-T.
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
  // enforce exact symmetry against roundoff
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double v = 0.5 * (sym[i][j] + sym[j][i]);
      sym[i][j] = sym[j][i] = v;
    }

  RicciSpectrum s;
  s.eigenvalues = sym3_eigenvalues(sym);
  const double rho = s.spectral_radius();
  const double merge = tol * std::max(1.0, rho);
  s.tolerance_used = merge;

  const double g01 = s.eigenvalues[1] - s.eigenvalues[0];
  const double g12 = s.eigenvalues[2] - s.eigenvalues[1];
  const bool low = g01 <= merge;
  const bool high = g12 <= merge;
  if (low && high) {
    s.pattern = EigenPattern::AllEqual;
    // both pairings fit but the extremes do not: ambiguous numeration
    s.ambiguous = (s.eigenvalues[2] - s.eigenvalues[0]) > merge;
  } else if (low) {
    s.pattern = EigenPattern::Pair;
    s.simple_position = 2;
  } else if (high) {
    s.pattern = EigenPattern::Pair;
    s.simple_position = 0;
  } else {
    s.pattern = EigenPattern::AllDistinct;
  }
  return s;
}

bool semi_symmetry_condition(const RicciSpectrum& s, double r, double tol) {
  const double rho = std::max(s.spectral_radius(), std::abs(r));
  const double thr = tol * std::max(1.0, rho * rho);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double mi = s.eigenvalues[i];
      const double mj = s.eigenvalues[j];
      if (std::abs((mi - mj) * (2.0 * (mi + mj) - r)) > thr) return false;
    }
  return true;
}

SymmetryVerdict classify_point(const CurvatureBundle& b,
                               const Tolerances& tol) {
  SymmetryVerdict v;
  v.point = b.point;

  const Ten4 gt = g_tensor(b.g);
  const double r6 = b.scalar / 6.0;
  Ten4 diff{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          diff[i][j][k][l] = b.riemann04[i][j][k][l] - r6 * gt[i][j][k][l];
  const double rnorm = norm_g(b.riemann04, b.ginv);
  const double gnorm = norm_g(gt, b.ginv);  // = sqrt(12), basis independent
  v.const_curv_distance = norm_g(diff, b.ginv) / std::max(rnorm, gnorm);
  v.spectrum = ricci_spectrum(b, tol.multiplicity);

  if (v.const_curv_distance <= tol.const_curvature) {
    v.cls = VerdictClass::ConstantCurvature;
    v.in_set_U = false;
    return v;
  }
  v.in_set_U = true;

  const Ten6 rr = curvature_action(b.riemann04, b);
  const Ten6 q = q_tensor(b.riemann04, b.g);
  const double q_floor = tol.q_degenerate * std::max(1.0, rnorm);
  const LEstimate est = estimate_L(rr, q, b.ginv, q_floor);
  v.dependence_residual = est.residual;
  if (!est.degenerate) {
    v.has_L_tensor = true;
    v.L_tensor = est.L;
  }

  switch (v.spectrum.pattern) {
    case EigenPattern::AllDistinct:
      v.cls = VerdictClass::NotPseudoSymmetric;
      return v;
    case EigenPattern::AllEqual:
      // Einstein at the point; in dimension 3 that is constant curvature.
      // Reaching this branch means the tensor distance disagreed with the
      // spectrum at tolerance level; classify conservatively.
      v.cls = VerdictClass::ConstantCurvature;
      v.in_set_U = true;  // tensor route said so; keep it visible
      return v;
    case EigenPattern::Pair:
      break;
  }

  v.has_L_spectral = true;
  v.L_spectral = 0.5 * v.spectrum.simple_value();
  v.has_L = true;
  v.L = v.L_spectral;
  if (v.has_L_tensor) {
    v.crosscheck = std::abs(v.L_tensor - v.L_spectral);
    v.route_ok =
        v.crosscheck <= tol.route_crosscheck * std::max(1.0, std::abs(v.L_spectral));
  }
  const double rho = std::max(1.0, v.spectrum.spectral_radius());
  v.cls = std::abs(v.L) <= tol.semisym_L * rho
              ? VerdictClass::SemiSymmetric
              : VerdictClass::PseudoSymmetricConstantType;
  return v;
}

RegionSummary classify_region(std::span<const SymmetryVerdict> verdicts,
                              const Tolerances& tol) {
  if (verdicts.size() < 8)
    throw UsageError("region classification needs at least 8 point verdicts");
  RegionSummary s;
  s.n = static_cast<long>(verdicts.size());

  double l_sum = 0.0, l_sq = 0.0;
  long l_n = 0;
  bool first = true;
  for (const auto& v : verdicts) {
    s.class_counts[static_cast<std::size_t>(v.cls)] += 1;
    if (v.has_L) {
      l_sum += v.L;
      l_sq += v.L * v.L;
      ++l_n;
      s.L_min = l_n == 1 ? v.L : std::min(s.L_min, v.L);
      s.L_max = l_n == 1 ? v.L : std::max(s.L_max, v.L);
    }
    if (first) {
      s.residual_min = s.residual_max = v.dependence_residual;
      first = false;
    } else {
      s.residual_min = std::min(s.residual_min, v.dependence_residual);
      s.residual_max = std::max(s.residual_max, v.dependence_residual);
    }
  }

  int represented = 0;
  VerdictClass only = VerdictClass::ConstantCurvature;
  for (int c = 0; c < 5; ++c)
    if (s.class_counts[static_cast<std::size_t>(c)] > 0) {
      ++represented;
      only = static_cast<VerdictClass>(c);
    }
  s.mixed = represented != 1;
  if (!s.mixed) s.cls = only;

  if (l_n > 0) {
    s.has_L_stats = true;
    s.L_mean = l_sum / l_n;
    const double var = std::max(0.0, l_sq / l_n - s.L_mean * s.L_mean);
    s.L_stdev = std::sqrt(var);
  }

  if (!s.mixed && s.cls == VerdictClass::PseudoSymmetricConstantType) {
    const bool constant =
        s.L_stdev <= tol.region_L_constant * std::max(1.0, std::abs(s.L_mean));
    if (!constant) s.cls = VerdictClass::PseudoSymmetricVariable;
  }
  return s;
}

} // namespace psym3
