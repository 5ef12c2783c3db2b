#include "psym3/catalog.hpp"

#include "psym3/errors.hpp"

namespace psym3 {

namespace {

constexpr double kBig = 1e6;
constexpr double kThetaMin = 0.2;
constexpr double kThetaMax = 2.941592653589793;  // pi - 0.2

GridSpec box(double l0, double h0, double l1, double h1, double l2, double h2) {
  GridSpec g;
  g.lo = {l0, l1, l2};
  g.hi = {h0, h1, h2};
  return g;
}

double kappa_param(const std::map<std::string, double>& params,
                   const std::string& chart) {
  double kappa = 1.0;
  for (const auto& [k, v] : params) {
    if (k != "kappa")
      throw UsageError("chart '" + chart + "' has no parameter '" + k + "'");
    kappa = v;
  }
  if (!(kappa > 0.0))
    throw UsageError("curvature scale kappa must be positive for '" + chart +
                     "'");
  return kappa;
}

void reject_params(const std::map<std::string, double>& params,
                   const std::string& chart) {
  if (!params.empty())
    throw UsageError("chart '" + chart + "' takes no parameters");
}

ExprPtr expr(const std::string& src,
             const std::vector<std::string>& names = {}) {
  return parse_expr(src, names);
}

} // namespace

std::vector<std::string> catalog_names() {
  return {"euclidean", "sphere3", "hyperbolic3", "r_x_s2",
          "r_x_h2",    "nil3",    "sol3",        "r_x_cigar"};
}

CatalogEntry catalog_lookup(const std::string& name,
                            const std::map<std::string, double>& params) {
  CatalogEntry e;
  e.name = name;

  if (name == "euclidean") {
    reject_params(params, name);
    DomainBox dom{{-kBig, -kBig, -kBig}, {kBig, kBig, kBig}};
    e.spec = make_metric_spec(name, {"1", "0", "0", "1", "0", "1"}, dom);
    e.default_grid = box(-1, 1, -1, 1, -1, 1);
    e.expected_eigenvalues = {expr("0"), expr("0"), expr("0")};
    e.expected_scalar = expr("0");
    e.expected_class = VerdictClass::ConstantCurvature;
    e.solitons = {{SolitonKind::Ricci, "0.5*(x0^2+x1^2+x2^2)", 1.0},
                  {SolitonKind::Yamabe, "0.5*(x0^2+x1^2+x2^2)", 1.0}};
    e.description = "flat space, identity chart";
    return e;
  }

  if (name == "sphere3") {
    const double kappa = kappa_param(params, name);
    DomainBox dom{{-kBig, -kBig, -kBig}, {kBig, kBig, kBig}};
    const std::string c = "4/(kappa*(1+x0^2+x1^2+x2^2)^2)";
    e.spec = make_metric_spec(name, {c, "0", "0", c, "0", c}, dom, {"kappa"},
                              {kappa});
    e.default_grid = box(-0.5, 0.5, -0.5, 0.5, -0.5, 0.5);
    const std::vector<std::string> pn{"kappa"};
    e.expected_eigenvalues = {expr("2*kappa", pn), expr("2*kappa", pn),
                              expr("2*kappa", pn)};
    e.expected_scalar = expr("6*kappa", pn);
    e.expected_class = VerdictClass::ConstantCurvature;
    e.solitons = {{SolitonKind::Ricci, "0", 2.0 * kappa},
                  {SolitonKind::Yamabe, "0", 6.0 * kappa}};
    e.description = "round sphere of curvature kappa, conformal chart";
    return e;
  }

  if (name == "hyperbolic3") {
    const double kappa = kappa_param(params, name);
    DomainBox dom{{-kBig, -kBig, 1e-9}, {kBig, kBig, kBig}};
    const std::string c = "1/(kappa*x2^2)";
    e.spec = make_metric_spec(name, {c, "0", "0", c, "0", c}, dom, {"kappa"},
                              {kappa});
    e.default_grid = box(-1, 1, -1, 1, 0.5, 2.5);
    const std::vector<std::string> pn{"kappa"};
    e.expected_eigenvalues = {expr("-2*kappa", pn), expr("-2*kappa", pn),
                              expr("-2*kappa", pn)};
    e.expected_scalar = expr("-6*kappa", pn);
    e.expected_class = VerdictClass::ConstantCurvature;
    e.solitons = {{SolitonKind::Ricci, "0", -2.0 * kappa},
                  {SolitonKind::Yamabe, "0", -6.0 * kappa}};
    e.description = "hyperbolic space of curvature -kappa, upper half space";
    return e;
  }

  if (name == "r_x_s2") {
    reject_params(params, name);
    DomainBox dom{{-kBig, kThetaMin, -kBig}, {kBig, kThetaMax, kBig}};
    e.spec = make_metric_spec(name, {"1", "0", "0", "1", "0", "sin(x1)^2"}, dom);
    e.default_grid = box(-1, 1, 1.0, 2.1, 0.0, 1.0);
    e.expected_eigenvalues = {expr("0"), expr("1"), expr("1")};
    e.expected_scalar = expr("2");
    e.expected_class = VerdictClass::SemiSymmetric;
    e.solitons = {{SolitonKind::Ricci, "x0^2/2", 1.0},
                  {SolitonKind::Yamabe, "x0", 2.0}};
    e.description = "product of a line (x0) and the unit sphere (x1,x2)";
    return e;
  }

  if (name == "r_x_h2") {
    reject_params(params, name);
    DomainBox dom{{-kBig, -kBig, 1e-9}, {kBig, kBig, kBig}};
    e.spec = make_metric_spec(name, {"1", "0", "0", "1/x2^2", "0", "1/x2^2"},
                              dom);
    e.default_grid = box(-1, 1, -1, 1, 0.5, 2.5);
    e.expected_eigenvalues = {expr("-1"), expr("-1"), expr("0")};
    e.expected_scalar = expr("-2");
    e.expected_class = VerdictClass::SemiSymmetric;
    e.solitons = {{SolitonKind::Ricci, "-x0^2/2", -1.0},
                  {SolitonKind::Yamabe, "x0", -2.0}};
    e.description = "product of a line (x0) and the hyperbolic plane (x1,x2)";
    return e;
  }

  if (name == "nil3") {
    reject_params(params, name);
    DomainBox dom{{-kBig, -kBig, -kBig}, {kBig, kBig, kBig}};
    // dx^2 + dy^2 + (dz - x dy)^2
    e.spec = make_metric_spec(name, {"1", "0", "0", "1+x0^2", "-x0", "1"}, dom);
    e.default_grid = box(-1, 1, -1, 1, -1, 1);
    e.expected_eigenvalues = {expr("-0.5"), expr("-0.5"), expr("0.5")};
    e.expected_scalar = expr("-0.5");
    e.expected_class = VerdictClass::PseudoSymmetricConstantType;
    e.description = "Heisenberg group with a left-invariant metric";
    return e;
  }

  if (name == "sol3") {
    reject_params(params, name);
    DomainBox dom{{-kBig, -kBig, -8.0}, {kBig, kBig, 8.0}};
    e.spec = make_metric_spec(
        name, {"exp(2*x2)", "0", "0", "exp(-2*x2)", "0", "1"}, dom);
    e.default_grid = box(-1, 1, -1, 1, -1, 1);
    e.expected_eigenvalues = {expr("-2"), expr("0"), expr("0")};
    e.expected_scalar = expr("-2");
    e.expected_class = VerdictClass::PseudoSymmetricConstantType;
    e.description = "Sol geometry with a left-invariant metric";
    return e;
  }

  if (name == "r_x_cigar") {
    reject_params(params, name);
    DomainBox dom{{-kBig, -kBig, -kBig}, {kBig, kBig, kBig}};
    const std::string c = "1/(1+x1^2+x2^2)";
    e.spec = make_metric_spec(name, {"1", "0", "0", c, "0", c}, dom);
    e.default_grid = box(-1, 1, -1, 1, -1, 1);
    e.expected_eigenvalues = {expr("0"), expr("2/(1+x1^2+x2^2)"),
                              expr("2/(1+x1^2+x2^2)")};
    e.expected_scalar = expr("4/(1+x1^2+x2^2)");
    e.expected_class = VerdictClass::SemiSymmetric;
    e.solitons = {{SolitonKind::Ricci, "-log(1+x1^2+x2^2)", 0.0}};
    e.description = "product of a line (x0) and the cigar metric (x1,x2)";
    return e;
  }

  throw UsageError("unknown catalog chart '" + name + "'");
}

} // namespace psym3
