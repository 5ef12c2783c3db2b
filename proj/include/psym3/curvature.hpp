#ifndef PSYM3_CURVATURE_HPP
#define PSYM3_CURVATURE_HPP

#include <span>

#include "psym3/expr.hpp"
#include "psym3/linalg.hpp"
#include "psym3/metric.hpp"
#include "psym3/tensor.hpp"

namespace psym3 {

// Index conventions, fixed throughout:
//
//   gamma[k][i][j]        = Gamma^k_ij
//   riemann13[a][b][x][y] = R^a_bxy,  R(d_x, d_y) d_b = R^a_bxy d_a
//   riemann04[i][j][k][l] = < R(d_i, d_j) d_l , d_k >
//
// with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]. The sign is normalized so
// the unit round sphere has sectional curvature +1: for an orthonormal
// frame, K(e_i, e_j) = riemann04[i][j][i][j], and a constant-curvature
// metric satisfies riemann04 = kappa * G with G from g_tensor().
struct CurvatureBundle {
  int order = 0;
  Vec3 point{};
  Mat3 g{};
  Mat3 ginv{};
  Ten3 gamma{};
  Ten4 riemann13{};
  Ten4 riemann04{};
  Mat3 ricci{};      // Ric_ij (0,2)
  Mat3 ricci_op{};   // S^i_j, g-self-adjoint
  double scalar = 0.0;

  // Filled only when order == 3.
  bool has_third = false;
  Ten5 nabla_R{};    // nabla_m R_ijkl (riemann04 slots)
  Ten3 nabla_S{};    // nabla_m S^i_j
  Vec3 dscalar{};    // d_m r
};

// Christoffel symbols of the second kind,
// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij). Needs order >= 1.
Ten3 christoffel(const MetricJet& jet);

// Full bundle. Needs order >= 2; order 3 also fills nabla_R, nabla_S and
// the scalar-curvature gradient.
CurvatureBundle curvature(const MetricJet& jet);

// (X ^ Y) Z = g(Y,Z) X - g(X,Z) Y, returned as the endomorphism matrix
// W^a_b with (X ^ Y) d_b = W^a_b d_a.
Mat3 wedge(const Vec3& x, const Vec3& y, const Mat3& g);

// G[i][j][k][l] = g_ik g_jl - g_il g_jk; the curvature tensor of a
// unit-curvature metric. Carries all Riemann symmetries.
Ten4 g_tensor(const Mat3& g);

// Dimension-3 reconstruction R(X,Y) = SX^Y + X^SY - (r/2) X^Y assembled
// from the Ricci data of the bundle; equals riemann04 on any 3-metric.
Ten4 reconstruct_curvature_3d(const CurvatureBundle& b);

double first_bianchi_residual(const Ten4& riemann04);

// max |nabla_m R_ijkl + nabla_i R_jmkl + nabla_j R_mikl|; needs order 3.
double second_bianchi_residual(const CurvatureBundle& b);

// Scalar field value and coordinate partials at a point.
struct ScalarFieldJet {
  double value = 0.0;
  Vec3 grad{};   // d_i f
  Mat3 hess{};   // d_i d_j f
};

// Expression with first and second derivative trees prepared once.
class CompiledScalar {
public:
  explicit CompiledScalar(ExprPtr e);
  ScalarFieldJet jet(const Vec3& x, std::span<const double> params) const;
  const ExprPtr& expr() const { return e_; }

private:
  ExprPtr e_;
  std::array<ExprPtr, 3> de_;
  std::array<std::array<ExprPtr, 3>, 3> d2e_;
};

// Hess f_ij = d_i d_j f - Gamma^k_ij d_k f.
Mat3 hessian(const ScalarFieldJet& f, const Ten3& gamma);

// grad^i = g^ij d_j f.
Vec3 gradient(const ScalarFieldJet& f, const Mat3& ginv);

// g-trace of the Hessian.
double laplacian(const ScalarFieldJet& f, const CurvatureBundle& b);

} // namespace psym3

#endif
