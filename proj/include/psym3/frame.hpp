#ifndef PSYM3_FRAME_HPP
#define PSYM3_FRAME_HPP

#include "psym3/curvature.hpp"
#include "psym3/metric.hpp"
#include "psym3/symmetry.hpp"

namespace psym3 {

// Orthonormal Ricci eigenframe at a point with a pair spectrum: e0 spans
// the simple eigendirection (eigenvalue 2L), e1 and e2 the double
// eigenspace (eigenvalue mu). The gauge is deterministic: e0's sign makes
// its largest coordinate component positive; e1 is the normalized
// projection of the first coordinate axis with a usable projection
// (gauge_axis); e2 completes the frame, sign fixed the same way as e0.
struct FrameData {
  Vec3 point{};
  std::array<Vec3, 3> e{};  // coordinate components, rows e0,e1,e2
  double L = 0.0;
  double mu = 0.0;
  int gauge_axis = -1;
  RicciSpectrum spectrum;
};

// Throws FrameError when the spectrum is not a pair (triple or
// all-distinct eigenvalues leave the frame undefined).
FrameData ricci_eigenframe(const CurvatureBundle& b, double multiplicity_tol);

// Frame at a nearby point, gauge-matched to `ref` (sign alignment for e0
// and e2, e1 built by projecting ref's e1 into the double eigenspace).
// Throws FrameError when the pattern is lost or the alignment falls below
// the flip threshold.
FrameData aligned_eigenframe(const CurvatureBundle& b, const FrameData& ref,
                             double multiplicity_tol);

// B[i][j][k] = g(nabla_{e_i} e_j, e_k), obtained by central-differencing
// the gauge-matched frame field over a 6-point coordinate stencil of
// spacing h and adding the Christoffel terms at the center.
// Antisymmetry B[i][j][k] = -B[i][k][j] holds to O(h^2).
Ten3 connection_coefficients(const CompiledMetric& metric,
                             const FrameData& center, double h,
                             double multiplicity_tol);

// The three relations tied together by the second Bianchi identity on a
// pair-pattern region:
//   e0(mu - L) = (2L - mu)(B_101 + B_202)
//   e1(L)      = (mu - 2L) B_010
//   e2(L)      = (mu - 2L) B_020
// Directional derivatives of mu and L run along the frame directions.
struct BianchiFrameResiduals {
  double along_e0 = 0.0;
  double along_e1 = 0.0;
  double along_e2 = 0.0;
  double b_antisymmetry = 0.0;  // max |B_ijk + B_ikj| over the stencil
};

BianchiFrameResiduals bianchi_frame_check(const CompiledMetric& metric,
                                          const FrameData& center,
                                          const Ten3& b_coeffs, double h,
                                          double multiplicity_tol);

// Frame-component curvature against the pair-pattern normal form
//   R(e1,e2) = (mu - L) e1 ^ e2,  R(e1,e0) = L e1 ^ e0,
//   R(e2,e0) = L e2 ^ e0,         r = 2 (mu + L),
// plus the full 3^4 assembly of R from those blocks.
struct EigenframeCurvatureResiduals {
  double block_12 = 0.0;
  double block_10 = 0.0;
  double block_20 = 0.0;
  double scalar = 0.0;     // |r - 2(mu+L)| / max(1, |r|)
  double assembled = 0.0;  // max component difference, frame components
};

EigenframeCurvatureResiduals eigenframe_curvature_check(
    const FrameData& frame, const CurvatureBundle& b);

} // namespace psym3

#endif
