#include "psym3/manifest.hpp"

#include <fstream>

#include "psym3/catalog.hpp"
#include "psym3/errors.hpp"

namespace psym3 {

using nlohmann::json;

const char* task_name(Task t) {
  switch (t) {
    case Task::Classify: return "classify";
    case Task::VerifySoliton: return "verify-soliton";
    case Task::FitSoliton: return "fit-soliton";
    case Task::Diagnostics: return "diagnostics";
  }
  return "?";
}

namespace {

Task parse_task(const std::string& s) {
  if (s == "classify") return Task::Classify;
  if (s == "verify-soliton") return Task::VerifySoliton;
  if (s == "fit-soliton") return Task::FitSoliton;
  if (s == "diagnostics") return Task::Diagnostics;
  throw UsageError("unknown task '" + s + "'");
}

Vec3 parse_vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw UsageError(std::string(what) + " must be an array of 3 numbers");
  Vec3 v{};
  for (int a = 0; a < 3; ++a) {
    if (!j[a].is_number())
      throw UsageError(std::string(what) + " must contain numbers");
    v[a] = j[a].get<double>();
  }
  return v;
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  if (!j.is_object()) throw UsageError("grid must be an object");
  g.lo = parse_vec3(j.at("lo"), "grid.lo");
  g.hi = parse_vec3(j.at("hi"), "grid.hi");
  const json& c = j.at("counts");
  if (c.is_number_integer()) {
    const int n = c.get<int>();
    g.counts = {n, n, n};
  } else if (c.is_array() && c.size() == 3) {
    for (int a = 0; a < 3; ++a) g.counts[a] = c[a].get<int>();
  } else {
    throw UsageError("grid.counts must be an integer or an array of 3");
  }
  for (int a = 0; a < 3; ++a) {
    if (g.counts[a] < 1) throw UsageError("grid.counts must be >= 1");
    if (!(g.hi[a] > g.lo[a])) throw UsageError("grid box is empty");
  }
  return g;
}

std::map<std::string, double> parse_number_map(const json& j, const char* what) {
  std::map<std::string, double> out;
  if (!j.is_object()) throw UsageError(std::string(what) + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number())
      throw UsageError(std::string(what) + "." + k + " must be a number");
    out[k] = v.get<double>();
  }
  return out;
}

} // namespace

Tolerances apply_tolerance_overrides(const std::map<std::string, double>& o) {
  Tolerances t;
  const std::map<std::string, double*> slots = {
      {"multiplicity", &t.multiplicity},
      {"const_curvature", &t.const_curvature},
      {"q_degenerate", &t.q_degenerate},
      {"semi_symmetric", &t.semi_symmetric},
      {"semisym_L", &t.semisym_L},
      {"route_crosscheck", &t.route_crosscheck},
      {"dependence", &t.dependence},
      {"region_L_constant", &t.region_L_constant},
      {"soliton_verify", &t.soliton_verify},
      {"identity", &t.identity},
      {"fit_degenerate", &t.fit_degenerate},
      {"frame_stencil_rel", &t.frame_stencil_rel},
      {"fd_step", &t.fd_step},
      {"frame_bianchi", &t.frame_bianchi},
      {"frame_forms", &t.frame_forms},
      {"frame_antisymmetry", &t.frame_antisymmetry},
  };
  for (const auto& [name, value] : o) {
    const auto it = slots.find(name);
    if (it == slots.end())
      throw UsageError("unknown tolerance '" + name + "'");
    if (!(value > 0.0))
      throw UsageError("tolerance '" + name + "' must be positive");
    *it->second = value;
  }
  return t;
}

Manifest parse_manifest_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("manifest must be a JSON object");
  if (j.contains("schema") && j["schema"].get<int>() != 1)
    throw UsageError("unsupported manifest schema version");

  Manifest m;
  m.echo = j;

  if (!j.contains("task")) throw UsageError("manifest needs a 'task'");
  m.task = parse_task(j["task"].get<std::string>());

  if (!j.contains("metric")) throw UsageError("manifest needs a 'metric'");
  const json& jm = j["metric"];
  if (!jm.is_object()) throw UsageError("metric must be an object");
  if (jm.contains("catalog")) {
    m.metric_from_catalog = true;
    m.catalog_name = jm["catalog"].get<std::string>();
    if (jm.contains("params"))
      m.catalog_params = parse_number_map(jm["params"], "metric.params");
  } else if (jm.contains("components")) {
    m.metric_from_catalog = false;
    m.metric_name = jm.value("name", std::string("inline"));
    const json& jc = jm["components"];
    static const char* keys[6] = {"g00", "g01", "g02", "g11", "g12", "g22"};
    for (int c = 0; c < 6; ++c) {
      if (!jc.contains(keys[c]))
        throw UsageError(std::string("metric.components needs '") + keys[c] + "'");
      m.components[static_cast<std::size_t>(c)] = jc[keys[c]].get<std::string>();
    }
    if (!jm.contains("domain"))
      throw UsageError("inline metrics need a 'domain' box");
    m.domain.lo = parse_vec3(jm["domain"].at("lo"), "metric.domain.lo");
    m.domain.hi = parse_vec3(jm["domain"].at("hi"), "metric.domain.hi");
    for (int a = 0; a < 3; ++a)
      if (!(m.domain.hi[a] > m.domain.lo[a]))
        throw UsageError("metric domain box is empty");
  } else {
    throw UsageError("metric needs either 'catalog' or 'components'");
  }

  if (j.contains("grid")) m.grid = parse_grid(j["grid"]);
  if (j.contains("tolerances"))
    m.tolerance_overrides = parse_number_map(j["tolerances"], "tolerances");
  (void)apply_tolerance_overrides(m.tolerance_overrides);  // validate names now

  if (j.contains("soliton")) {
    const json& js = j["soliton"];
    SolitonBlock s;
    const std::string kind = js.value("kind", std::string("ricci"));
    if (kind == "ricci")
      s.kind = SolitonKind::Ricci;
    else if (kind == "yamabe")
      s.kind = SolitonKind::Yamabe;
    else
      throw UsageError("soliton.kind must be 'ricci' or 'yamabe'");
    if (js.contains("f")) {
      if (js["f"].is_string() && js["f"].get<std::string>() == "fit")
        s.f_fit = true;
      else if (js["f"].is_string())
        s.f_source = js["f"].get<std::string>();
      else
        throw UsageError("soliton.f must be an expression string or \"fit\"");
    } else {
      s.f_fit = true;
    }
    if (js.contains("lambda")) {
      if (js["lambda"].is_string() && js["lambda"].get<std::string>() == "fit")
        s.lambda_fit = true;
      else if (js["lambda"].is_number())
        s.lambda = js["lambda"].get<double>();
      else
        throw UsageError("soliton.lambda must be a number or \"fit\"");
    } else {
      s.lambda_fit = true;
    }
    m.soliton = s;
  }

  m.samples = j.value("samples", 20);
  if (m.samples < 1) throw UsageError("samples must be >= 1");
  m.seed = j.value("seed", 0ull);
  m.threads = j.value("threads", 0);

  if (j.contains("output")) {
    const json& jo = j["output"];
    m.output.path = jo.value("path", std::string());
    m.output.format = jo.value("format", std::string("json"));
    m.output.csv = jo.value("csv", std::string());
    if (m.output.format != "json" && m.output.format != "text")
      throw UsageError("output.format must be 'json' or 'text'");
  }

  // task-required blocks
  if (m.task == Task::VerifySoliton) {
    if (!m.soliton)
      throw UsageError("verify-soliton needs a 'soliton' block");
    if (m.soliton->f_fit || m.soliton->lambda_fit)
      throw UsageError("verify-soliton needs a concrete f expression and lambda");
  }
  if (m.task == Task::FitSoliton) {
    if (!m.soliton) {
      SolitonBlock s;
      s.f_fit = true;
      s.lambda_fit = true;
      m.soliton = s;
    }
    if (!m.soliton->f_fit && !m.soliton->lambda_fit)
      throw UsageError("fit-soliton fits f and lambda; give them as \"fit\" or omit them");
  }
  if (!m.metric_from_catalog && !m.grid)
    throw UsageError("inline metrics need an explicit 'grid'");
  if (m.output.csv.size() && m.task == Task::FitSoliton)
    throw UsageError("csv plot data is not available for fit-soliton");
  return m;
}

Manifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read manifest file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_manifest_text(text);
}

} // namespace psym3
