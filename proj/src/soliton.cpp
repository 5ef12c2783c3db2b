#include "psym3/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "psym3/errors.hpp"

namespace psym3 {

const char* soliton_kind_name(SolitonKind k) {
  return k == SolitonKind::Ricci ? "ricci" : "yamabe";
}

std::string soliton_type(SolitonKind /*kind*/, double lambda) {
  if (lambda > 0.0) return "expanding";
  if (lambda < 0.0) return "shrinking";
  return "steady";
}

const char* const kRicciLambdaConventionNote =
    "ricci soliton labels: expanding for lambda>0, steady for lambda=0, "
    "shrinking for lambda<0 (fixed convention of this tool; much of the "
    "ricci literature names the lambda>0 case shrinking)";

const char* const kYamabeFormsConventionNote =
    "yamabe identity suite reports two forms per identity: the re-derived "
    "forms Ric(grad f, X) = 2 X(r) and grad|grad f|^2 = 2(lambda - r) grad f "
    "follow from the defining equation under this tool's curvature sign; the "
    "literal forms -Ric(grad f, X) = 2 X(r) and grad|grad f|^2 = "
    "2 r grad f are evaluated and reported unchanged";

namespace {

double sup_abs3(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

double trace_s_squared(const CurvatureBundle& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += b.ricci_op[i][j] * b.ricci_op[j][i];
  return s;
}

} // namespace

double ricci_residual(const CurvatureBundle& b, const ScalarFieldJet& f,
                      double lambda) {
  const Mat3 hess = hessian(f, b.gamma);
  Mat3 diff{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      diff[i][j] = hess[i][j] + b.ricci[i][j] - lambda * b.g[i][j];
  return norm_g(diff, b.ginv);
}

double yamabe_residual(const CurvatureBundle& b, const ScalarFieldJet& f,
                       double lambda) {
  const Mat3 hess = hessian(f, b.gamma);
  const double c = lambda - b.scalar;
  Mat3 diff{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) diff[i][j] = hess[i][j] - c * b.g[i][j];
  return norm_g(diff, b.ginv);
}

RicciIdentityResiduals ricci_identity_suite(const CompiledMetric& metric,
                                            const CompiledScalar& f,
                                            double lambda, const Vec3& point,
                                            double fd_step) {
  const std::span<const double> params(metric.spec().param_values);
  const CurvatureBundle b = curvature(metric.jet(point, 3));
  const ScalarFieldJet fj = f.jet(point, params);
  const Vec3 grad_up = gradient(fj, b.ginv);

  RicciIdentityResiduals out;

  // R(X,Y) grad f = (nabla_Y S) X - (nabla_X S) Y on all basis pairs
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a) {
        double lhs = 0.0;
        for (int bb = 0; bb < 3; ++bb)
          lhs += b.riemann13[a][bb][i][j] * grad_up[bb];
        const double rhs = b.nabla_S[j][a][i] - b.nabla_S[i][a][j];
        out.curvature_grad = std::max(out.curvature_grad, std::abs(lhs - rhs));
      }

  out.trace = std::abs(laplacian(fj, b) - (3.0 * lambda - b.scalar));

  double grad_r_dot_grad_f = 0.0;
  for (int m = 0; m < 3; ++m) grad_r_dot_grad_f += grad_up[m] * b.dscalar[m];
  double ric_ff = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ric_ff += b.ricci[i][j] * grad_up[i] * grad_up[j];
  out.scalar_grad = std::abs(grad_r_dot_grad_f - 2.0 * ric_ff);

  // Lap r needs d_i d_j r; difference the exact first derivative once.
  Mat3 hess_r{};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 plus = point, minus = point;
    plus[axis] += fd_step;
    minus[axis] -= fd_step;
    const CurvatureBundle bp = curvature(metric.jet(plus, 3));
    const CurvatureBundle bm = curvature(metric.jet(minus, 3));
    for (int m = 0; m < 3; ++m)
      hess_r[axis][m] = (bp.dscalar[m] - bm.dscalar[m]) / (2.0 * fd_step);
  }
  double lap_r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double h = 0.5 * (hess_r[i][j] + hess_r[j][i]);
      for (int k = 0; k < 3; ++k) h -= b.gamma[k][i][j] * b.dscalar[k];
      lap_r += b.ginv[i][j] * h;
    }
  const double lhs = lap_r - grad_r_dot_grad_f;
  const double rhs = 2.0 * lambda * b.scalar - 2.0 * trace_s_squared(b);
  out.weighted_scalar = std::abs(lhs - rhs);
  return out;
}

YamabeIdentityResiduals yamabe_identity_suite(const CurvatureBundle& b,
                                              const ScalarFieldJet& f,
                                              double lambda,
                                              double identity_tol) {
  if (!b.has_third)
    throw JetOrderError("yamabe identity suite needs an order-3 bundle");
  const Vec3 grad_up = gradient(f, b.ginv);
  const Mat3 hess = hessian(f, b.gamma);

  Vec3 ric_grad{};  // Ric(grad f, d_i)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ric_grad[i] += b.ricci[i][j] * grad_up[j];

  Vec3 r1{}, r2{};
  for (int i = 0; i < 3; ++i) {
    r1[i] = ric_grad[i] - 2.0 * b.dscalar[i];
    r2[i] = -ric_grad[i] - 2.0 * b.dscalar[i];
  }

  // grad |grad f|^2 via metric compatibility: d_i |grad f|^2 = 2 Hess(d_i, grad f)
  Vec3 dG{};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) dG[i] += 2.0 * hess[i][a] * grad_up[a];

  Vec3 g1{}, g2{};
  for (int i = 0; i < 3; ++i) {
    g1[i] = dG[i] - 2.0 * (lambda - b.scalar) * f.grad[i];
    g2[i] = dG[i] - 2.0 * b.scalar * f.grad[i];
  }

  YamabeIdentityResiduals out;
  out.ricci_grad_rederived = sup_abs3(r1);
  out.ricci_grad_literal = sup_abs3(r2);
  out.grad_norm_rederived = sup_abs3(g1);
  out.grad_norm_literal = sup_abs3(g2);

  auto label = [identity_tol](double re, double lit) -> std::string {
    const bool a = re <= identity_tol;
    const bool c = lit <= identity_tol;
    if (a && c) return "both";
    if (a) return "rederived";
    if (c) return "literal";
    return "neither";
  };
  out.ricci_grad_consistent = label(out.ricci_grad_rederived, out.ricci_grad_literal);
  out.grad_norm_consistent = label(out.grad_norm_rederived, out.grad_norm_literal);
  return out;
}

// ---------------------------------------------------------------------------
// Potential fitting
// ---------------------------------------------------------------------------

namespace {

struct Csr {
  long rows = 0;
  long cols = 0;
  std::vector<long> rowptr{0};
  std::vector<long> col;
  std::vector<double> val;
  std::vector<double> rhs;

  void add_row(const std::map<long, double>& entries, double b) {
    for (const auto& [c, v] : entries) {
      col.push_back(c);
      val.push_back(v);
    }
    rhs.push_back(b);
    rowptr.push_back(static_cast<long>(col.size()));
    ++rows;
  }

  // y = A x, optionally ignoring one column.
  void matvec(const std::vector<double>& x, std::vector<double>& y,
              long skip_col) const {
    y.assign(static_cast<std::size_t>(rows), 0.0);
    for (long r = 0; r < rows; ++r) {
      double s = 0.0;
      for (long k = rowptr[r]; k < rowptr[r + 1]; ++k) {
        if (col[k] == skip_col) continue;
        s += val[k] * x[static_cast<std::size_t>(col[k])];
      }
      y[static_cast<std::size_t>(r)] = s;
    }
  }

  // y = A^T x, optionally ignoring one column.
  void matvec_t(const std::vector<double>& x, std::vector<double>& y,
                long skip_col) const {
    y.assign(static_cast<std::size_t>(cols), 0.0);
    for (long r = 0; r < rows; ++r) {
      const double xr = x[static_cast<std::size_t>(r)];
      if (xr == 0.0) continue;
      for (long k = rowptr[r]; k < rowptr[r + 1]; ++k) {
        if (col[k] == skip_col) continue;
        y[static_cast<std::size_t>(col[k])] += val[k] * xr;
      }
    }
  }

  std::vector<double> column(long c) const {
    std::vector<double> out(static_cast<std::size_t>(rows), 0.0);
    for (long r = 0; r < rows; ++r)
      for (long k = rowptr[r]; k < rowptr[r + 1]; ++k)
        if (col[k] == c) out[static_cast<std::size_t>(r)] += val[k];
    return out;
  }
};

double nrm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct CglsResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  long iterations = 0;
};

// Conjugate gradient on the normal equations. With a zero start the
// iterates stay in range(A^T), so rank-deficient systems converge to the
// minimum-norm least-squares solution. Deterministic and single threaded.
CglsResult cgls(const Csr& a, const std::vector<double>& b, long skip_col,
                double tol, long max_iter) {
  const std::size_t n = static_cast<std::size_t>(a.cols);
  CglsResult out;
  out.x.assign(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> s(n), p(n), q;
  a.matvec_t(r, s, skip_col);
  p = s;
  double gamma = 0.0;
  for (double v : s) gamma += v * v;
  const double stop = tol * std::sqrt(gamma);
  for (long it = 0; it < max_iter; ++it) {
    if (std::sqrt(gamma) <= stop) break;
    a.matvec(p, q, skip_col);
    double qq = 0.0;
    for (double v : q) qq += v * v;
    if (qq == 0.0) break;
    const double alpha = gamma / qq;
    for (std::size_t i = 0; i < n; ++i) out.x[i] += alpha * p[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
    a.matvec_t(r, s, skip_col);
    double gnew = 0.0;
    for (double v : s) gnew += v * v;
    out.iterations = it + 1;
    if (std::sqrt(gnew) <= stop) {
      gamma = gnew;
      break;
    }
    const double beta = gnew / gamma;
    gamma = gnew;
    for (std::size_t i = 0; i < n; ++i) p[i] = s[i] + beta * p[i];
  }
  std::vector<double> ax;
  a.matvec(out.x, ax, skip_col);
  double rn = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double d = ax[i] - b[i];
    rn += d * d;
  }
  out.residual_norm = std::sqrt(rn);
  return out;
}

} // namespace

FitResult fit_potential(SolitonKind kind, const CompiledMetric& metric,
                        const GridSpec& grid, double degenerate_tol) {
  for (int a = 0; a < 3; ++a)
    if (grid.counts[a] < 3)
      throw UsageError("fit_potential needs >= 3 grid points per axis");
  sample_grid(grid, metric.spec().domain);  // validates containment

  const long nf = grid.total();
  const long lambda_col = nf;
  Csr a;
  a.cols = nf + 1;

  const Vec3 h{grid.spacing(0), grid.spacing(1), grid.spacing(2)};

  // deterministic row-major assembly over interior points
  for (int i0 = 1; i0 < grid.counts[0] - 1; ++i0)
    for (int i1 = 1; i1 < grid.counts[1] - 1; ++i1)
      for (int i2 = 1; i2 < grid.counts[2] - 1; ++i2) {
        const Vec3 p = grid.point(i0, i1, i2);
        const CurvatureBundle b = curvature(metric.jet(p, 2));
        const int idx[3] = {i0, i1, i2};
        auto neighbor = [&](int axis, int step) {
          int q[3] = {idx[0], idx[1], idx[2]};
          q[axis] += step;
          return grid.flat_index(q[0], q[1], q[2]);
        };
        const long center = grid.flat_index(i0, i1, i2);

        for (int ci = 0; ci < 3; ++ci)
          for (int cj = ci; cj < 3; ++cj) {
            std::map<long, double> row;
            if (ci == cj) {
              row[neighbor(ci, +1)] += 1.0 / (h[ci] * h[ci]);
              row[neighbor(ci, -1)] += 1.0 / (h[ci] * h[ci]);
              row[center] += -2.0 / (h[ci] * h[ci]);
            } else {
              const double c = 1.0 / (4.0 * h[ci] * h[cj]);
              int q[3];
              auto corner = [&](int si, int sj) {
                q[0] = idx[0];
                q[1] = idx[1];
                q[2] = idx[2];
                q[ci] += si;
                q[cj] += sj;
                return grid.flat_index(q[0], q[1], q[2]);
              };
              row[corner(+1, +1)] += c;
              row[corner(-1, -1)] += c;
              row[corner(+1, -1)] -= c;
              row[corner(-1, +1)] -= c;
            }
            for (int k = 0; k < 3; ++k) {
              const double gk = b.gamma[k][ci][cj];
              if (gk == 0.0) continue;
              row[neighbor(k, +1)] += -gk / (2.0 * h[k]);
              row[neighbor(k, -1)] += gk / (2.0 * h[k]);
            }
            row[lambda_col] += -b.g[ci][cj];
            const double rhs = kind == SolitonKind::Ricci
                                   ? -b.ricci[ci][cj]
                                   : -b.scalar * b.g[ci][cj];
            a.add_row(row, rhs);
          }
      }

  // gauge: pin f at the lattice center
  {
    std::map<long, double> row;
    row[grid.flat_index(grid.counts[0] / 2, grid.counts[1] / 2,
                        grid.counts[2] / 2)] = 1.0;
    a.add_row(row, 0.0);
  }

  // column equilibration (a pure reparametrization; the residual is
  // unchanged, convergence is much faster)
  std::vector<double> colnorm(static_cast<std::size_t>(a.cols), 0.0);
  for (long r = 0; r < a.rows; ++r)
    for (long k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k)
      colnorm[static_cast<std::size_t>(a.col[k])] += a.val[k] * a.val[k];
  for (double& c : colnorm) c = c > 0.0 ? std::sqrt(c) : 1.0;
  for (long r = 0; r < a.rows; ++r)
    for (long k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k)
      a.val[k] /= colnorm[static_cast<std::size_t>(a.col[k])];

  const long max_iter = std::max<long>(20000, 4 * a.cols);
  const CglsResult main = cgls(a, a.rhs, -1, 1e-13, max_iter);

  FitResult out;
  out.grid = grid;
  out.f.resize(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i)
    out.f[static_cast<std::size_t>(i)] =
        main.x[static_cast<std::size_t>(i)] / colnorm[static_cast<std::size_t>(i)];
  out.lambda = main.x[static_cast<std::size_t>(lambda_col)] /
               colnorm[static_cast<std::size_t>(lambda_col)];
  const double bnorm = nrm2(a.rhs);
  out.rel_residual = main.residual_norm / std::max(bnorm, 1e-30);
  out.iterations = main.iterations;

  // lambda uniqueness: project the lambda column onto the range of the
  // f block; a near-zero residual means every lambda can be absorbed by f.
  const std::vector<double> alam = a.column(lambda_col);
  const double alam_norm = nrm2(alam);
  const CglsResult proj = cgls(a, alam, lambda_col, 1e-10, max_iter);
  out.lambda_column_sigma = proj.residual_norm / std::max(alam_norm, 1e-30);
  out.degenerate = out.lambda_column_sigma < degenerate_tol;

  // affine null directions: linear-in-axis functions the equations cannot see
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> t(static_cast<std::size_t>(a.cols), 0.0);
    const double center =
        grid.coordinate(axis, grid.counts[axis] / 2);
    for (int i0 = 0; i0 < grid.counts[0]; ++i0)
      for (int i1 = 0; i1 < grid.counts[1]; ++i1)
        for (int i2 = 0; i2 < grid.counts[2]; ++i2) {
          const int idx[3] = {i0, i1, i2};
          const std::size_t fi =
              static_cast<std::size_t>(grid.flat_index(i0, i1, i2));
          t[fi] = (grid.coordinate(axis, idx[axis]) - center) *
                  colnorm[fi];  // undo the equilibration
        }
    std::vector<double> at;
    a.matvec(t, at, lambda_col);
    const double tn = nrm2(t);
    if (tn > 0.0 && nrm2(at) <= 1e-10 * tn) out.affine_null_axes.push_back(axis);
  }

  std::ostringstream note;
  if (out.degenerate)
    note << "lambda is not determined: the lambda column lies in the range "
            "of the f block (sigma="
         << out.lambda_column_sigma << "); ";
  if (!out.affine_null_axes.empty()) {
    note << "affine null directions along axes";
    for (int axisv : out.affine_null_axes) note << " x" << axisv;
    note << " (f plus a linear function of them fits equally well); ";
  }
  note << "gauge: f = 0 at the lattice center";
  out.note = note.str();
  return out;
}

} // namespace psym3
