#include "psym3/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "psym3/catalog.hpp"
#include "psym3/curvature.hpp"
#include "psym3/errors.hpp"
#include "psym3/frame.hpp"
#include "psym3/version.hpp"

namespace psym3 {

using nlohmann::ordered_json;

namespace {

struct ResolvedMetric {
  CompiledMetric metric;
  GridSpec default_box;  // safe sampling region
  std::string name;
};

ResolvedMetric resolve_metric(const Manifest& m) {
  if (m.metric_from_catalog) {
    CatalogEntry e = catalog_lookup(m.catalog_name, m.catalog_params);
    return {CompiledMetric(std::move(e.spec)), e.default_grid, m.catalog_name};
  }
  MetricSpec spec =
      make_metric_spec(m.metric_name, m.components, m.domain);
  GridSpec box;
  box.lo = m.grid->lo;  // validated: inline metrics carry a grid
  box.hi = m.grid->hi;
  return {CompiledMetric(std::move(spec)), box, m.metric_name};
}

GridSpec task_grid(const Manifest& m, const ResolvedMetric& rm) {
  if (m.grid) return *m.grid;
  GridSpec g = rm.default_box;
  const int n = m.task == Task::FitSoliton ? 9 : 5;
  g.counts = {n, n, n};
  return g;
}

// Deterministic fan-out: each worker fills disjoint slots; any exception is
// rethrown for the lowest point index so error reporting is reproducible.
template <typename Fn>
void parallel_points(std::size_t n, int threads, Fn&& fn) {
  int nt = threads > 0 ? threads
                       : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::clamp(nt, 1, 8);
  if (n < 16 || nt == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

ordered_json conventions_json() {
  ordered_json c;
  c["curvature_sign"] =
      "R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; the unit round sphere has "
      "sectional curvature +1; storage riemann04[i][j][k][l] = "
      "<R(d_i,d_j) d_l, d_k>";
  c["tensor_norms"] =
      "all tensor norms and inner products are g-invariant (indices raised "
      "with the inverse metric)";
  c["soliton_labels"] = kRicciLambdaConventionNote;
  c["yamabe_forms"] = kYamabeFormsConventionNote;
  return c;
}

ordered_json tolerances_json(const Tolerances& t) {
  ordered_json j;
  j["multiplicity"] = t.multiplicity;
  j["const_curvature"] = t.const_curvature;
  j["q_degenerate"] = t.q_degenerate;
  j["semi_symmetric"] = t.semi_symmetric;
  j["semisym_L"] = t.semisym_L;
  j["route_crosscheck"] = t.route_crosscheck;
  j["dependence"] = t.dependence;
  j["region_L_constant"] = t.region_L_constant;
  j["soliton_verify"] = t.soliton_verify;
  j["identity"] = t.identity;
  j["fit_degenerate"] = t.fit_degenerate;
  j["frame_stencil_rel"] = t.frame_stencil_rel;
  j["fd_step"] = t.fd_step;
  j["frame_bianchi"] = t.frame_bianchi;
  j["frame_forms"] = t.frame_forms;
  j["frame_antisymmetry"] = t.frame_antisymmetry;
  return j;
}

ordered_json grid_json(const GridSpec& g) {
  ordered_json j;
  j["lo"] = g.lo;
  j["hi"] = g.hi;
  j["counts"] = g.counts;
  j["order"] = "row-major, x2 fastest";
  return j;
}

ordered_json point_json(const Vec3& p) { return ordered_json(p); }

std::vector<Vec3> sample_points(const Manifest& m, const ResolvedMetric& rm,
                                const GridSpec& grid, bool use_grid) {
  if (use_grid)
    return sample_grid(grid, rm.metric.spec().domain,
                       m.task == Task::FitSoliton);
  // seeded random in-domain points inside the safe box
  std::mt19937_64 rng(m.seed);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(m.samples));
  for (int i = 0; i < m.samples; ++i) {
    Vec3 x{};
    for (int a = 0; a < 3; ++a) {
      std::uniform_real_distribution<double> d(rm.default_box.lo[a],
                                               rm.default_box.hi[a]);
      x[a] = d(rng);
    }
    pts.push_back(x);
  }
  return pts;
}

// ---------------------------------------------------------------------- //

ordered_json classify_record(const SymmetryVerdict& v, bool semi_cond) {
  ordered_json r;
  r["point"] = point_json(v.point);
  r["eigenvalues"] = v.spectrum.eigenvalues;
  r["pattern"] = eigen_pattern_name(v.spectrum.pattern);
  r["ambiguous"] = v.spectrum.ambiguous;
  r["class"] = verdict_class_name(v.cls);
  r["in_set_U"] = v.in_set_U;
  r["const_curv_distance"] = v.const_curv_distance;
  if (v.has_L) r["L"] = v.L;
  if (v.has_L_spectral) r["L_spectral"] = v.L_spectral;
  if (v.has_L_tensor) r["L_tensor"] = v.L_tensor;
  r["dependence_residual"] = v.dependence_residual;
  if (v.has_L && v.has_L_tensor) {
    r["crosscheck"] = v.crosscheck;
    r["route_ok"] = v.route_ok;
  }
  r["semi_symmetric_condition"] = semi_cond;
  return r;
}

void run_classify(const Manifest& m, const ResolvedMetric& rm,
                  const Tolerances& tol, ordered_json& report,
                  std::vector<std::string>& failures) {
  const GridSpec grid = task_grid(m, rm);
  const std::vector<Vec3> pts = sample_points(m, rm, grid, true);
  report["grid"] = grid_json(grid);

  std::vector<SymmetryVerdict> verdicts(pts.size());
  std::vector<char> semi(pts.size());
  parallel_points(pts.size(), m.threads, [&](std::size_t i) {
    const CurvatureBundle b = curvature(rm.metric.jet(pts[i], 2));
    verdicts[i] = classify_point(b, tol);
    semi[i] = semi_symmetry_condition(verdicts[i].spectrum, b.scalar,
                                      tol.semi_symmetric)
                  ? 1
                  : 0;
  });

  ordered_json points = ordered_json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    points.push_back(classify_record(verdicts[i], semi[i] != 0));
    const auto& v = verdicts[i];
    if (v.has_L && v.has_L_tensor && !v.route_ok)
      failures.push_back("route crosscheck failed at point " +
                         std::to_string(i));
    if (v.has_L && v.dependence_residual > tol.dependence)
      failures.push_back("dependence residual above tolerance at point " +
                         std::to_string(i));
  }
  report["points"] = std::move(points);

  const RegionSummary rs = classify_region(verdicts, tol);
  ordered_json region;
  region["n"] = rs.n;
  region["mixed"] = rs.mixed;
  if (!rs.mixed) region["class"] = verdict_class_name(rs.cls);
  ordered_json counts;
  for (int c = 0; c < 5; ++c)
    counts[verdict_class_name(static_cast<VerdictClass>(c))] =
        rs.class_counts[static_cast<std::size_t>(c)];
  region["class_counts"] = counts;
  if (rs.has_L_stats) {
    region["L_mean"] = rs.L_mean;
    region["L_stdev"] = rs.L_stdev;
    region["L_min"] = rs.L_min;
    region["L_max"] = rs.L_max;
  }
  region["residual_min"] = rs.residual_min;
  region["residual_max"] = rs.residual_max;
  report["region"] = std::move(region);

  if (!m.output.csv.empty()) {
    std::ostringstream csv;
    csv << "x0,x1,x2,L,dependence_residual\n";
    csv.precision(17);
    for (const auto& v : verdicts) {
      csv << v.point[0] << "," << v.point[1] << "," << v.point[2] << ",";
      if (v.has_L) csv << v.L;
      csv << "," << v.dependence_residual << "\n";
    }
    std::ofstream out(m.output.csv);
    if (!out) throw UsageError("cannot write csv to '" + m.output.csv + "'");
    out << csv.str();
  }
}

void run_verify(const Manifest& m, const ResolvedMetric& rm,
                const Tolerances& tol, ordered_json& report,
                std::vector<std::string>& failures) {
  const SolitonBlock& s = *m.soliton;
  const CompiledScalar f(
      parse_expr(s.f_source, rm.metric.spec().param_names));
  const std::span<const double> params(rm.metric.spec().param_values);

  const GridSpec grid = task_grid(m, rm);
  const bool use_grid = m.grid.has_value();
  const std::vector<Vec3> pts = sample_points(m, rm, grid, use_grid);
  if (use_grid)
    report["grid"] = grid_json(grid);
  else
    report["samples"] = {{"count", m.samples}, {"seed", m.seed}};

  struct Rec {
    double defining = 0.0;
    RicciIdentityResiduals ricci;
    YamabeIdentityResiduals yamabe;
  };
  std::vector<Rec> recs(pts.size());
  parallel_points(pts.size(), m.threads, [&](std::size_t i) {
    const CurvatureBundle b = curvature(rm.metric.jet(pts[i], 3));
    const ScalarFieldJet fj = f.jet(pts[i], params);
    if (s.kind == SolitonKind::Ricci) {
      recs[i].defining = ricci_residual(b, fj, s.lambda);
      recs[i].ricci =
          ricci_identity_suite(rm.metric, f, s.lambda, pts[i], tol.fd_step);
    } else {
      recs[i].defining = yamabe_residual(b, fj, s.lambda);
      recs[i].yamabe = yamabe_identity_suite(b, fj, s.lambda, tol.identity);
    }
  });

  double sup = 0.0, sq = 0.0;
  ordered_json points = ordered_json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rec& r = recs[i];
    sup = std::max(sup, r.defining);
    sq += r.defining * r.defining;
    ordered_json p;
    p["point"] = point_json(pts[i]);
    p["defining_residual"] = r.defining;
    if (s.kind == SolitonKind::Ricci) {
      p["identities"] = {{"curvature_grad", r.ricci.curvature_grad},
                         {"trace", r.ricci.trace},
                         {"scalar_grad", r.ricci.scalar_grad},
                         {"weighted_scalar", r.ricci.weighted_scalar}};
    } else {
      p["identities"] = {
          {"ricci_grad_rederived", r.yamabe.ricci_grad_rederived},
          {"ricci_grad_literal", r.yamabe.ricci_grad_literal},
          {"grad_norm_rederived", r.yamabe.grad_norm_rederived},
          {"grad_norm_literal", r.yamabe.grad_norm_literal},
          {"ricci_grad_consistent", r.yamabe.ricci_grad_consistent},
          {"grad_norm_consistent", r.yamabe.grad_norm_consistent}};
    }
    points.push_back(std::move(p));
  }
  report["points"] = std::move(points);

  ordered_json sj;
  sj["kind"] = soliton_kind_name(s.kind);
  sj["f"] = s.f_source;
  sj["lambda"] = s.lambda;
  sj["type"] = soliton_type(s.kind, s.lambda);
  sj["defining_residual_sup"] = sup;
  sj["defining_residual_rms"] =
      std::sqrt(sq / static_cast<double>(pts.size()));
  if (sup > tol.soliton_verify)
    failures.push_back("defining residual above tolerance (sup = " +
                       std::to_string(sup) + ")");
  double id_sup = 0.0;
  for (const Rec& r : recs) {
    if (s.kind == SolitonKind::Ricci)
      id_sup = std::max({id_sup, r.ricci.curvature_grad, r.ricci.trace,
                         r.ricci.scalar_grad, r.ricci.weighted_scalar});
    else
      id_sup = std::max({id_sup, r.yamabe.ricci_grad_rederived,
                         r.yamabe.grad_norm_rederived});
  }
  sj["identity_residual_sup"] = id_sup;
  if (sup <= tol.soliton_verify && id_sup > tol.identity)
    failures.push_back("derived identities above tolerance");
  report["soliton"] = std::move(sj);

  if (!m.output.csv.empty()) {
    std::ostringstream csv;
    csv << "x0,x1,x2,L,residual\n";
    csv.precision(17);
    for (std::size_t i = 0; i < pts.size(); ++i)
      csv << pts[i][0] << "," << pts[i][1] << "," << pts[i][2] << ",,"
          << recs[i].defining << "\n";
    std::ofstream out(m.output.csv);
    if (!out) throw UsageError("cannot write csv to '" + m.output.csv + "'");
    out << csv.str();
  }
}

void run_fit(const Manifest& m, const ResolvedMetric& rm,
             const Tolerances& tol, ordered_json& report,
             std::vector<std::string>& /*failures*/) {
  const GridSpec grid = task_grid(m, rm);
  report["grid"] = grid_json(grid);
  const SolitonKind kind = m.soliton ? m.soliton->kind : SolitonKind::Ricci;
  const FitResult fit =
      fit_potential(kind, rm.metric, grid, tol.fit_degenerate);

  ordered_json sj;
  sj["kind"] = soliton_kind_name(kind);
  sj["lambda"] = fit.lambda;
  sj["type"] = fit.degenerate ? "undetermined" : soliton_type(kind, fit.lambda);
  sj["rel_residual"] = fit.rel_residual;
  sj["degenerate"] = fit.degenerate;
  sj["lambda_column_sigma"] = fit.lambda_column_sigma;
  sj["affine_null_axes"] = fit.affine_null_axes;
  sj["note"] = fit.note;
  sj["iterations"] = fit.iterations;
  sj["f_grid"] = fit.f;  // row-major over the grid above
  report["soliton"] = std::move(sj);
}

void run_diagnostics(const Manifest& m, const ResolvedMetric& rm,
                     const Tolerances& tol, ordered_json& report,
                     std::vector<std::string>& failures) {
  const GridSpec grid = task_grid(m, rm);
  report["grid"] = grid_json(grid);
  const std::vector<Vec3> pts = sample_points(m, rm, grid, true);

  double extent = 1e300;
  for (int a = 0; a < 3; ++a)
    extent = std::min(extent, grid.hi[a] - grid.lo[a]);
  const double h = tol.frame_stencil_rel * 0.5 * extent;
  report["stencil_h"] = h;

  struct Rec {
    bool refused = false;
    std::string reason;
    FrameData frame;
    Ten3 bc{};
    BianchiFrameResiduals bianchi;
    EigenframeCurvatureResiduals forms;
  };
  std::vector<Rec> recs(pts.size());
  parallel_points(pts.size(), m.threads, [&](std::size_t i) {
    Rec& r = recs[i];
    try {
      const CurvatureBundle b = curvature(rm.metric.jet(pts[i], 2));
      r.frame = ricci_eigenframe(b, tol.multiplicity);
      r.bc = connection_coefficients(rm.metric, r.frame, h, tol.multiplicity);
      r.bianchi =
          bianchi_frame_check(rm.metric, r.frame, r.bc, h, tol.multiplicity);
      r.forms = eigenframe_curvature_check(r.frame, b);
    } catch (const FrameError& e) {
      r.refused = true;
      r.reason = e.what();
    }
  });

  long refused = 0;
  ordered_json points = ordered_json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rec& r = recs[i];
    ordered_json p;
    p["point"] = point_json(pts[i]);
    if (r.refused) {
      ++refused;
      p["refused"] = true;
      p["reason"] = r.reason;
      points.push_back(std::move(p));
      continue;
    }
    p["refused"] = false;
    p["L"] = r.frame.L;
    p["mu"] = r.frame.mu;
    p["gauge_axis"] = r.frame.gauge_axis;
    p["frame"] = {r.frame.e[0], r.frame.e[1], r.frame.e[2]};
    ordered_json bj = ordered_json::array();
    for (int a = 0; a < 3; ++a)
      for (int bb = 0; bb < 3; ++bb)
        for (int c = 0; c < 3; ++c) bj.push_back(r.bc[a][bb][c]);
    p["B"] = std::move(bj);
    p["bianchi"] = {{"along_e0", r.bianchi.along_e0},
                    {"along_e1", r.bianchi.along_e1},
                    {"along_e2", r.bianchi.along_e2},
                    {"b_antisymmetry", r.bianchi.b_antisymmetry}};
    p["curvature_forms"] = {{"block_12", r.forms.block_12},
                            {"block_10", r.forms.block_10},
                            {"block_20", r.forms.block_20},
                            {"scalar", r.forms.scalar},
                            {"assembled", r.forms.assembled}};
    const bool ok = r.bianchi.along_e0 <= tol.frame_bianchi &&
                    r.bianchi.along_e1 <= tol.frame_bianchi &&
                    r.bianchi.along_e2 <= tol.frame_bianchi &&
                    r.bianchi.b_antisymmetry <= tol.frame_antisymmetry &&
                    r.forms.assembled <= tol.frame_forms &&
                    r.forms.scalar <= tol.frame_forms;
    p["ok"] = ok;
    if (!ok)
      failures.push_back("frame diagnostics failed at point " +
                         std::to_string(i));
    points.push_back(std::move(p));
  }
  report["points"] = std::move(points);
  report["diagnostics_summary"] = {
      {"points", static_cast<long>(pts.size())},
      {"refused", refused},
      {"checked", static_cast<long>(pts.size()) - refused}};

  if (!m.output.csv.empty()) {
    std::ostringstream csv;
    csv << "x0,x1,x2,L,residual\n";
    csv.precision(17);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Rec& r = recs[i];
      csv << pts[i][0] << "," << pts[i][1] << "," << pts[i][2] << ",";
      if (!r.refused)
        csv << r.frame.L << ","
            << std::max({r.bianchi.along_e0, r.bianchi.along_e1,
                         r.bianchi.along_e2});
      else
        csv << ",";
      csv << "\n";
    }
    std::ofstream out(m.output.csv);
    if (!out) throw UsageError("cannot write csv to '" + m.output.csv + "'");
    out << csv.str();
  }
}

} // namespace

std::string render_text(const ordered_json& report, double timing_ms) {
  std::ostringstream os;
  os.precision(12);
  os << "psym3 " << report.value("version", "?") << "  task "
     << report.value("task", "?") << "  metric "
     << report.value("metric", "?") << "\n";
  if (report.contains("grid")) {
    const auto& g = report["grid"];
    os << "grid: counts " << g["counts"].dump() << " on " << g["lo"].dump()
       << " .. " << g["hi"].dump() << "\n";
  }
  if (report.contains("points") && report["points"].is_array() &&
      !report["points"].empty() && report["points"][0].contains("class")) {
    os << "\n  point                              class"
       << "                                L\n";
    for (const auto& p : report["points"]) {
      os << "  ";
      for (const auto& c : p["point"]) os << c.get<double>() << " ";
      os << "  " << p["class"].get<std::string>();
      if (p.contains("L")) os << "  L=" << p["L"].get<double>();
      os << "\n";
    }
  }
  if (report.contains("region")) {
    const auto& r = report["region"];
    os << "\nregion: n=" << r["n"].get<long>();
    if (r.contains("class")) os << " class=" << r["class"].get<std::string>();
    if (r["mixed"].get<bool>()) os << " (mixed classes)";
    if (r.contains("L_mean"))
      os << " L_mean=" << r["L_mean"].get<double>()
         << " L_stdev=" << r["L_stdev"].get<double>();
    os << "\n";
  }
  if (report.contains("soliton")) {
    os << "\nsoliton: " << report["soliton"].dump(2) << "\n";
  }
  if (report.contains("diagnostics_summary")) {
    os << "\ndiagnostics: " << report["diagnostics_summary"].dump() << "\n";
  }
  if (report.contains("checks")) {
    os << "\nchecks: "
       << (report["checks"]["passed"].get<bool>() ? "passed" : "FAILED");
    for (const auto& f : report["checks"]["failures"])
      os << "\n  - " << f.get<std::string>();
    os << "\n";
  }
  os << "\nconventions:\n";
  if (report.contains("conventions"))
    for (const auto& [k, v] : report["conventions"].items())
      os << "  " << k << ": " << v.get<std::string>() << "\n";
  os << "\ntiming_ms: " << timing_ms << "\n";
  return os.str();
}

RunResult run_manifest(const Manifest& m) {
  const auto t0 = std::chrono::steady_clock::now();
  const Tolerances tol = apply_tolerance_overrides(m.tolerance_overrides);
  const ResolvedMetric rm = resolve_metric(m);

  RunResult out;
  ordered_json& report = out.report;
  report["schema"] = kReportSchema;
  report["version"] = kVersion;
  report["task"] = task_name(m.task);
  report["metric"] = rm.name;
  report["manifest"] = m.echo;
  report["conventions"] = conventions_json();
  report["tolerances"] = tolerances_json(tol);

  std::vector<std::string> failures;
  switch (m.task) {
    case Task::Classify: run_classify(m, rm, tol, report, failures); break;
    case Task::VerifySoliton: run_verify(m, rm, tol, report, failures); break;
    case Task::FitSoliton: run_fit(m, rm, tol, report, failures); break;
    case Task::Diagnostics: run_diagnostics(m, rm, tol, report, failures); break;
  }

  report["checks"] = {{"passed", failures.empty()}, {"failures", failures}};
  out.exit_code = failures.empty() ? 0 : 2;

  const auto t1 = std::chrono::steady_clock::now();
  out.timing_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  out.rendered = m.output.format == "text"
                     ? render_text(report, out.timing_ms)
                     : report.dump(2) + "\n";
  if (!m.output.path.empty()) {
    std::ofstream f(m.output.path);
    if (!f) throw UsageError("cannot write report to '" + m.output.path + "'");
    f << out.rendered;
  }
  return out;
}

RunResult run_manifest_text(const std::string& text) {
  return run_manifest(parse_manifest_text(text));
}

RunResult run_manifest_file(const std::string& path) {
  return run_manifest(parse_manifest_file(path));
}

ordered_json catalog_report() {
  ordered_json out;
  out["schema"] = kReportSchema;
  out["version"] = kVersion;
  ordered_json entries = ordered_json::array();
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    ordered_json je;
    je["name"] = e.name;
    je["description"] = e.description;
    ordered_json params;
    for (std::size_t i = 0; i < e.spec.param_names.size(); ++i)
      params[e.spec.param_names[i]] = e.spec.param_values[i];
    je["params"] = params;
    je["components"] = {e.spec.components[0]->to_string(),
                        e.spec.components[1]->to_string(),
                        e.spec.components[2]->to_string(),
                        e.spec.components[3]->to_string(),
                        e.spec.components[4]->to_string(),
                        e.spec.components[5]->to_string()};
    je["domain"] = {{"lo", e.spec.domain.lo}, {"hi", e.spec.domain.hi}};
    je["default_box"] = {{"lo", e.default_grid.lo}, {"hi", e.default_grid.hi}};
    je["expected_eigenvalues"] = {e.expected_eigenvalues[0]->to_string(),
                                  e.expected_eigenvalues[1]->to_string(),
                                  e.expected_eigenvalues[2]->to_string()};
    je["expected_scalar"] = e.expected_scalar->to_string();
    je["expected_class"] = verdict_class_name(e.expected_class);
    ordered_json sols = ordered_json::array();
    for (const auto& s : e.solitons)
      sols.push_back({{"kind", soliton_kind_name(s.kind)},
                      {"f", s.f_source},
                      {"lambda", s.lambda},
                      {"type", soliton_type(s.kind, s.lambda)}});
    je["solitons"] = std::move(sols);
    entries.push_back(std::move(je));
  }
  out["entries"] = std::move(entries);
  return out;
}

} // namespace psym3
