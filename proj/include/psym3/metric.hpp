#ifndef PSYM3_METRIC_HPP
#define PSYM3_METRIC_HPP

#include <array>
#include <string>
#include <vector>

#include "psym3/expr.hpp"
#include "psym3/linalg.hpp"

namespace psym3 {

// Open axis-aligned box in R^3.
struct DomainBox {
  Vec3 lo{-1.0, -1.0, -1.0};
  Vec3 hi{1.0, 1.0, 1.0};

  bool contains(const Vec3& x) const {
    for (int a = 0; a < 3; ++a)
      if (!(x[a] > lo[a] && x[a] < hi[a])) return false;
    return true;
  }
};

// A chart: six component expressions of a symmetric metric (g00, g01, g02,
// g11, g12, g22 in that order), a domain box and parameter values.
struct MetricSpec {
  std::string name;
  std::array<ExprPtr, 6> components{};
  DomainBox domain;
  std::vector<std::string> param_names;
  std::vector<double> param_values;

  static int component_index(int i, int j);  // (i,j) -> 0..5, i<=j after swap
};

// Builds a MetricSpec from component source strings.
MetricSpec make_metric_spec(const std::string& name,
                            const std::array<std::string, 6>& sources,
                            const DomainBox& domain,
                            const std::vector<std::string>& param_names = {},
                            const std::vector<double>& param_values = {});

// Metric value and coordinate derivatives at a point.
//   dg[k][i][j]          = d_k g_ij
//   d2g[k][l][i][j]      = d_k d_l g_ij
//   d3g[k][l][m][i][j]   = d_k d_l d_m g_ij
// Slots above `order` are zero. Symmetry in (i,j) and in the derivative
// indices is exact: the evaluations share one expression per orbit.
struct MetricJet {
  int order = 0;
  Vec3 point{};
  Mat3 g{};
  std::array<Mat3, 3> dg{};
  std::array<std::array<Mat3, 3>, 3> d2g{};
  std::array<std::array<std::array<Mat3, 3>, 3>, 3> d3g{};
};

// A MetricSpec with every derivative expression up to third order prepared
// once. Immutable after construction; jet evaluation is pure.
class CompiledMetric {
public:
  explicit CompiledMetric(MetricSpec spec);

  const MetricSpec& spec() const { return spec_; }

  // Evaluates the jet at a point strictly inside the domain. Throws
  // DomainError outside, SingularMetricError when the leading-minor test
  // fails or the condition number exceeds `cond_limit`.
  MetricJet jet(const Vec3& point, int order, double cond_limit = 1e8) const;

  // Component evaluation helpers (used by tests and the catalog).
  double component(int i, int j, const Vec3& x) const;

private:
  MetricSpec spec_;
  // deriv_[i][j] unused slots alias the (i<=j) owner; likewise the
  // derivative index orbits share a single differentiated tree.
  std::array<ExprPtr, 6> d0_;
  std::array<std::array<ExprPtr, 6>, 3> d1_;
  std::array<std::array<std::array<ExprPtr, 6>, 3>, 3> d2_;
  std::array<std::array<std::array<std::array<ExprPtr, 6>, 3>, 3>, 3> d3_;
};

// Convenience wrapper: compiles on the fly.
MetricJet metric_jet(const MetricSpec& spec, const Vec3& point, int order);

} // namespace psym3

#endif
