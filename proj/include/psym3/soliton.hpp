#ifndef PSYM3_SOLITON_HPP
#define PSYM3_SOLITON_HPP

#include <optional>
#include <string>
#include <vector>

#include "psym3/curvature.hpp"
#include "psym3/grid.hpp"
#include "psym3/metric.hpp"
#include "psym3/symmetry.hpp"

namespace psym3 {

enum class SolitonKind { Ricci, Yamabe };

const char* soliton_kind_name(SolitonKind k);

// Sign labels follow this tool's fixed convention, stated in every report:
// for both kinds, lambda > 0 -> "expanding", lambda = 0 -> "steady",
// lambda < 0 -> "shrinking". Note that for Ricci solitons much of the
// literature uses the opposite naming.
std::string soliton_type(SolitonKind kind, double lambda);

extern const char* const kRicciLambdaConventionNote;
extern const char* const kYamabeFormsConventionNote;

// A (f, lambda) candidate with a closed-form potential.
struct SolitonCandidate {
  SolitonKind kind = SolitonKind::Ricci;
  ExprPtr f;       // potential over x0,x1,x2 (+ metric parameters)
  double lambda = 0.0;
};

// ||Hess f + Ric - lambda g||_g at the point.
double ricci_residual(const CurvatureBundle& b, const ScalarFieldJet& f,
                      double lambda);

// ||Hess f - (lambda - r) g||_g at the point.
double yamabe_residual(const CurvatureBundle& b, const ScalarFieldJet& f,
                       double lambda);

// Residuals of the four consequences of the Ricci soliton equation:
//   curvature_grad : R(X,Y) grad f = (nabla_Y S) X - (nabla_X S) Y
//   trace          : Lap f = 3 lambda - r
//   scalar_grad    : <grad r, grad f> = 2 Ric(grad f, grad f)
//   weighted_scalar: Lap r - <grad r, grad f> = 2 lambda r - 2 tr(S^2)
// The last needs second derivatives of r; those come from central
// differences of the exact first derivative (order-3 jets at the stencil).
struct RicciIdentityResiduals {
  double curvature_grad = 0.0;
  double trace = 0.0;
  double scalar_grad = 0.0;
  double weighted_scalar = 0.0;
};

RicciIdentityResiduals ricci_identity_suite(const CompiledMetric& metric,
                                            const CompiledScalar& f,
                                            double lambda, const Vec3& point,
                                            double fd_step = 1e-4);

// Yamabe consequences are evaluated in two forms each: the re-derived
// forms that follow from the defining equation under this tool's
// conventions, and the literal textbook forms they are often quoted in.
//   ricci_grad (re-derived)  :  Ric(grad f, X) = 2 nabla_X r
//   ricci_grad (literal)     : -Ric(grad f, X) = 2 nabla_X r
//   grad_norm  (re-derived)  : grad |grad f|^2 = 2 (lambda - r) grad f
//   grad_norm  (literal)     : grad |grad f|^2 = 2 r grad f
struct YamabeIdentityResiduals {
  double ricci_grad_rederived = 0.0;
  double ricci_grad_literal = 0.0;
  double grad_norm_rederived = 0.0;
  double grad_norm_literal = 0.0;
  // which form agrees with the defining equation at this point:
  // "rederived", "literal", or "both" when indistinguishable.
  std::string ricci_grad_consistent;
  std::string grad_norm_consistent;
};

YamabeIdentityResiduals yamabe_identity_suite(const CurvatureBundle& b,
                                              const ScalarFieldJet& f,
                                              double lambda,
                                              double identity_tol = 1e-6);

// Linear least-squares fit of (f on the grid, lambda) against the soliton
// equation, discretized with second-order central differences and the
// Christoffel correction (Hess f)_ij ~ D_i D_j f - Gamma^k_ij D_k f at the
// interior lattice points, with the gauge f(center) = 0.
struct FitResult {
  GridSpec grid;
  std::vector<double> f;      // row-major grid values
  double lambda = 0.0;
  double rel_residual = 0.0;  // ||A u - b|| / ||b||
  bool degenerate = false;    // lambda not determined by the data
  double lambda_column_sigma = 0.0;  // residual of projecting the lambda
                                     // column onto the f-block range
  std::vector<int> affine_null_axes; // axes whose linear functions are null
  std::string note;
  long iterations = 0;
};

FitResult fit_potential(SolitonKind kind, const CompiledMetric& metric,
                        const GridSpec& grid, double degenerate_tol = 1e-6);

} // namespace psym3

#endif
