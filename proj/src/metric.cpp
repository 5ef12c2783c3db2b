#include "psym3/metric.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

#include "psym3/errors.hpp"

namespace psym3 {

int MetricSpec::component_index(int i, int j) {
  if (i > j) std::swap(i, j);
  // (0,0)(0,1)(0,2)(1,1)(1,2)(2,2)
  static constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return table[i][j];
}

MetricSpec make_metric_spec(const std::string& name,
                            const std::array<std::string, 6>& sources,
                            const DomainBox& domain,
                            const std::vector<std::string>& param_names,
                            const std::vector<double>& param_values) {
  if (param_names.size() != param_values.size())
    throw UsageError("parameter name/value count mismatch");
  MetricSpec spec;
  spec.name = name;
  spec.domain = domain;
  spec.param_names = param_names;
  spec.param_values = param_values;
  for (int c = 0; c < 6; ++c)
    spec.components[static_cast<std::size_t>(c)] =
        parse_expr(sources[static_cast<std::size_t>(c)], param_names);
  return spec;
}

CompiledMetric::CompiledMetric(MetricSpec spec) : spec_(std::move(spec)) {
  for (int c = 0; c < 6; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    if (!spec_.components[cu]) throw UsageError("metric component missing");
    d0_[cu] = spec_.components[cu];
  }
  // One tree per derivative-orbit: (k), (k<=l), (k<=l<=m). Other index
  // orders alias it, so permuted slots evaluate bit-identically.
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 6; ++c) d1_[k][c] = differentiate(d0_[c], k);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      for (int c = 0; c < 6; ++c)
        d2_[k][l][c] = (k <= l) ? differentiate(d1_[k][c], l) : d2_[l][k][c];
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m)
        for (int c = 0; c < 6; ++c) {
          int s[3] = {k, l, m};
          std::sort(s, s + 3);
          if (k == s[0] && l == s[1] && m == s[2])
            d3_[k][l][m][c] = differentiate(d2_[k][l][c], m);
          else
            d3_[k][l][m][c] = d3_[s[0]][s[1]][s[2]][c];
        }
}

double CompiledMetric::component(int i, int j, const Vec3& x) const {
  const auto c = static_cast<std::size_t>(MetricSpec::component_index(i, j));
  return d0_[c]->eval(x, spec_.param_values);
}

MetricJet CompiledMetric::jet(const Vec3& point, int order,
                              double cond_limit) const {
  if (order < 0 || order > 3)
    throw JetOrderError("jet order must be in 0..3");
  if (!spec_.domain.contains(point))
    throw DomainError("point lies outside the chart domain of '" + spec_.name +
                      "'");

  MetricJet jet;
  jet.order = order;
  jet.point = point;
  const std::span<const double> pv(spec_.param_values);

  std::array<double, 6> vals{};
  for (int c = 0; c < 6; ++c)
    vals[static_cast<std::size_t>(c)] =
        d0_[static_cast<std::size_t>(c)]->eval(point, pv);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      jet.g[i][j] = vals[static_cast<std::size_t>(
          MetricSpec::component_index(i, j))];

  const auto minors = leading_minors(jet.g);
  if (!(minors[0] > 0.0 && minors[1] > 0.0 && minors[2] > 0.0))
    throw SingularMetricError("metric is not positive definite at the point");
  if (spd_condition(jet.g) > cond_limit)
    throw SingularMetricError("metric condition number exceeds limit");

  if (order >= 1) {
    for (int k = 0; k < 3; ++k) {
      std::array<double, 6> dv{};
      for (int c = 0; c < 6; ++c)
        dv[static_cast<std::size_t>(c)] =
            d1_[k][static_cast<std::size_t>(c)]->eval(point, pv);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          jet.dg[k][i][j] = dv[static_cast<std::size_t>(
              MetricSpec::component_index(i, j))];
    }
  }
  if (order >= 2) {
    for (int k = 0; k < 3; ++k)
      for (int l = k; l < 3; ++l) {
        std::array<double, 6> dv{};
        for (int c = 0; c < 6; ++c)
          dv[static_cast<std::size_t>(c)] =
              d2_[k][l][static_cast<std::size_t>(c)]->eval(point, pv);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double v = dv[static_cast<std::size_t>(
                MetricSpec::component_index(i, j))];
            jet.d2g[k][l][i][j] = v;
            jet.d2g[l][k][i][j] = v;
          }
      }
  }
  if (order >= 3) {
    for (int k = 0; k < 3; ++k)
      for (int l = k; l < 3; ++l)
        for (int m = l; m < 3; ++m) {
          std::array<double, 6> dv{};
          for (int c = 0; c < 6; ++c)
            dv[static_cast<std::size_t>(c)] =
                d3_[k][l][m][static_cast<std::size_t>(c)]->eval(point, pv);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              const double v = dv[static_cast<std::size_t>(
                  MetricSpec::component_index(i, j))];
              int s[3] = {k, l, m};
              do {
                jet.d3g[s[0]][s[1]][s[2]][i][j] = v;
              } while (std::next_permutation(s, s + 3));
            }
        }
  }
  return jet;
}

MetricJet metric_jet(const MetricSpec& spec, const Vec3& point, int order) {
  return CompiledMetric(spec).jet(point, order);
}

} // namespace psym3
