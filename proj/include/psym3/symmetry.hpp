#ifndef PSYM3_SYMMETRY_HPP
#define PSYM3_SYMMETRY_HPP

#include <span>
#include <string>
#include <vector>

#include "psym3/curvature.hpp"
#include "psym3/tensor.hpp"

namespace psym3 {

enum class VerdictClass {
  ConstantCurvature,
  SemiSymmetric,
  PseudoSymmetricConstantType,
  PseudoSymmetricVariable,
  NotPseudoSymmetric,
};

const char* verdict_class_name(VerdictClass c);

enum class EigenPattern { AllEqual, Pair, AllDistinct };

const char* eigen_pattern_name(EigenPattern p);

// Eigenvalues of the Ricci operator with multiplicity grouping. Two
// eigenvalues merge when their gap is <= tol * max(1, spectral radius).
// For a pair pattern the isolated eigenvalue is "simple"; near-triple
// spectra where both pairings fit the tolerance are flagged ambiguous and
// treated as all-equal.
struct RicciSpectrum {
  std::array<double, 3> eigenvalues{};  // ascending
  EigenPattern pattern = EigenPattern::AllEqual;
  int simple_position = -1;  // 0 or 2 in ascending order; -1 when not a pair
  double tolerance_used = 0.0;
  bool ambiguous = false;

  double spectral_radius() const {
    return std::max(std::abs(eigenvalues[0]), std::abs(eigenvalues[2]));
  }
  double simple_value() const { return eigenvalues[simple_position]; }
  double double_value() const { return eigenvalues[simple_position == 0 ? 2 : 0]; }
};

struct LEstimate {
  double L = 0.0;
  double residual = 0.0;   // ||R.R - L Q||_g / max(||R.R||_g, eps)
  bool degenerate = false; // ||Q||_g below the floor; L not meaningful
};

struct Tolerances {
  double multiplicity = 1e-6;      // eigenvalue merge, rel. spectral radius
  double const_curvature = 1e-8;   // ||R - (r/6) G||_g, rel. max(||R||,||G||)
  double q_degenerate = 1e-8;      // ||Q||_g floor, rel. max(1, ||R||_g)
  double semi_symmetric = 1e-6;    // eigenvalue condition, rel. max(1, rho^2)
  double semisym_L = 1e-8;         // |L| below this (rel.) => semi-symmetric
  double route_crosscheck = 1e-6;  // |L_tensor - L_spectral| gate
  double dependence = 1e-8;        // dependence residual gate (classify task)
  double region_L_constant = 1e-6; // stdev(L)/max(1,|mean|) for constant type
  double soliton_verify = 1e-8;    // defining residual gate (verify task)
  double identity = 1e-6;          // derived-identity gate
  double fit_degenerate = 1e-6;    // lambda-column projection floor
  double frame_stencil_rel = 1e-3; // stencil h / smallest box half-extent
  double fd_step = 1e-4;           // step for differencing exact quantities
  double frame_bianchi = 1e-5;     // frame Bianchi relation gate
  double frame_forms = 1e-7;       // eigenframe curvature form gate
  double frame_antisymmetry = 1e-6;// B_ijk + B_ikj gate
};

// R.T: the curvature operator acting as a derivation,
// (R.T)(X1..Xk; X, Y) = -sum_a T(X1, .., R(X,Y)Xa, .., Xk).
Ten4 curvature_action(const Mat3& t, const CurvatureBundle& b);
Ten6 curvature_action(const Ten4& t, const CurvatureBundle& b);

// Q(g,T): the metric wedge endomorphism acting as a derivation,
// Q(g,T)(X1..Xk; X, Y) = -sum_a T(X1, .., (X ^ Y)Xa, .., Xk).
Ten4 q_tensor(const Mat3& t, const Mat3& g);
Ten6 q_tensor(const Ten4& t, const Mat3& g);

// Least-squares projection L = <R.R, Q>_g / <Q, Q>_g. `q_floor` is the
// absolute ||Q||_g threshold below which the estimate is degenerate.
LEstimate estimate_L(const Ten6& rr, const Ten6& q, const Mat3& ginv,
                     double q_floor);

RicciSpectrum ricci_spectrum(const CurvatureBundle& b, double tol);

// (mu_i - mu_j)(2(mu_i + mu_j) - r) = 0 for all pairs, within tolerance.
bool semi_symmetry_condition(const RicciSpectrum& s, double r, double tol);

struct SymmetryVerdict {
  VerdictClass cls = VerdictClass::ConstantCurvature;
  Vec3 point{};
  RicciSpectrum spectrum;
  bool in_set_U = false;
  double const_curv_distance = 0.0;

  bool has_L = false;
  double L = 0.0;          // chosen value (spectral route) when present
  bool has_L_tensor = false;
  double L_tensor = 0.0;
  bool has_L_spectral = false;
  double L_spectral = 0.0;
  double dependence_residual = 0.0;
  double crosscheck = 0.0; // |L_tensor - L_spectral| where both exist
  bool route_ok = true;    // crosscheck within tolerance (when applicable)
};

SymmetryVerdict classify_point(const CurvatureBundle& b, const Tolerances& tol);

struct RegionSummary {
  long n = 0;
  bool mixed = false;
  VerdictClass cls = VerdictClass::ConstantCurvature;
  std::array<long, 5> class_counts{};
  bool has_L_stats = false;
  double L_mean = 0.0, L_stdev = 0.0, L_min = 0.0, L_max = 0.0;
  double residual_min = 0.0, residual_max = 0.0;
};

// Deterministic left-fold over the verdicts in the given (row-major) order.
// Mixed point classes yield a mixed summary, not an error.
RegionSummary classify_region(std::span<const SymmetryVerdict> verdicts,
                              const Tolerances& tol);

} // namespace psym3

#endif
