// psym3 command line: composes a manifest from flags (or loads one) and
// drives the shared library through its C API.
#include <CLI11.hpp>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "psym3/psym3.h"

namespace {

using nlohmann::json;

struct CommonArgs {
  std::string manifest_path;
  std::string metric;
  std::vector<std::string> params;
  std::string grid;
  std::string out;
  std::string format = "json";
  std::string csv;
  std::vector<std::string> tols;
  unsigned long long seed = 0;
  int samples = 20;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--manifest", a.manifest_path,
                  "manifest file (JSON); conflicts with inline flags");
  cmd->add_option("--metric", a.metric, "catalog chart name");
  cmd->add_option("--param", a.params, "chart parameter, key=value")
      ->take_all();
  cmd->add_option("--grid", a.grid,
                  "grid \"(lo,hi)^3:n\" or \"(l0,h0)(l1,h1)(l2,h2):n0,n1,n2\"");
  cmd->add_option("--out", a.out, "write the report to this path");
  cmd->add_option("--format", a.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--csv", a.csv, "also write (point, L, residual) CSV");
  cmd->add_option("--tol", a.tols, "tolerance override, name=value")
      ->take_all();
  cmd->add_option("--seed", a.seed, "seed for randomized test points");
  cmd->add_option("--samples", a.samples,
                  "random sample count when no grid is given");
  cmd->add_option("--threads", a.threads, "worker threads (0 = auto)");
}

[[noreturn]] void usage_fail(const std::string& msg) {
  std::fprintf(stderr, "psym3: %s\n", msg.c_str());
  std::exit(1);
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    usage_fail("bad number '" + s + "' in " + what);
  }
}

json parse_kv_list(const std::vector<std::string>& kvs, const std::string& what) {
  json out = json::object();
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      usage_fail("expected key=value in " + what + ", got '" + kv + "'");
    out[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1), what);
  }
  return out;
}

// "(a,b)^3:n"  or  "(a0,b0)(a1,b1)(a2,b2):n0[,n1,n2]"
json parse_grid_arg(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos)
    usage_fail("grid needs ':counts', got '" + s + "'");
  std::string boxes = s.substr(0, colon);
  const std::string counts_text = s.substr(colon + 1);

  std::vector<std::array<double, 2>> ranges;
  bool cubed = false;
  const auto caret = boxes.find('^');
  if (caret != std::string::npos) {
    if (boxes.substr(caret) != "^3")
      usage_fail("only '^3' replication is supported in grid specs");
    boxes = boxes.substr(0, caret);
    cubed = true;
  }
  std::size_t pos = 0;
  while (pos < boxes.size()) {
    if (boxes[pos] != '(') usage_fail("bad grid box syntax '" + s + "'");
    const auto close = boxes.find(')', pos);
    const auto comma = boxes.find(',', pos);
    if (close == std::string::npos || comma == std::string::npos || comma > close)
      usage_fail("bad grid box syntax '" + s + "'");
    ranges.push_back({parse_number(boxes.substr(pos + 1, comma - pos - 1), "grid"),
                      parse_number(boxes.substr(comma + 1, close - comma - 1), "grid")});
    pos = close + 1;
  }
  if (cubed) {
    if (ranges.size() != 1) usage_fail("'^3' needs exactly one (lo,hi) box");
    ranges = {ranges[0], ranges[0], ranges[0]};
  }
  if (ranges.size() != 3) usage_fail("grid needs 3 boxes or one '(lo,hi)^3'");

  std::vector<int> counts;
  std::size_t start = 0;
  while (start <= counts_text.size()) {
    const auto comma = counts_text.find(',', start);
    const std::string tok = counts_text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    counts.push_back(static_cast<int>(parse_number(tok, "grid counts")));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (counts.size() == 1) counts = {counts[0], counts[0], counts[0]};
  if (counts.size() != 3) usage_fail("grid counts must be n or n0,n1,n2");

  json g;
  g["lo"] = {ranges[0][0], ranges[1][0], ranges[2][0]};
  g["hi"] = {ranges[0][1], ranges[1][1], ranges[2][1]};
  g["counts"] = counts;
  return g;
}

int run_and_print(const std::string& manifest_text) {
  psym3_run* run = nullptr;
  const psym3_status st = psym3_run_manifest_text(manifest_text.c_str(), &run);
  if (st != PSYM3_OK) {
    std::fprintf(stderr, "psym3: %s\n", psym3_last_error());
    return 1;
  }
  std::fputs(psym3_run_report(run), stdout);
  const int code = psym3_run_exit_code(run);
  psym3_run_free(run);
  return code;
}

int run_command(const std::string& task, const CommonArgs& a,
                const json* soliton) {
  const bool has_inline =
      !a.metric.empty() || !a.grid.empty() || !a.params.empty();
  if (!a.manifest_path.empty() && has_inline)
    usage_fail("--manifest conflicts with inline metric/grid flags");

  if (!a.manifest_path.empty()) {
    psym3_run* run = nullptr;
    const psym3_status st =
        psym3_run_manifest_file(a.manifest_path.c_str(), &run);
    if (st != PSYM3_OK) {
      std::fprintf(stderr, "psym3: %s\n", psym3_last_error());
      return 1;
    }
    std::fputs(psym3_run_report(run), stdout);
    const int code = psym3_run_exit_code(run);
    psym3_run_free(run);
    return code;
  }

  if (a.metric.empty()) usage_fail("give --metric or --manifest");
  json m;
  m["schema"] = 1;
  m["task"] = task;
  m["metric"] = {{"catalog", a.metric}};
  if (!a.params.empty())
    m["metric"]["params"] = parse_kv_list(a.params, "--param");
  if (!a.grid.empty()) m["grid"] = parse_grid_arg(a.grid);
  if (!a.tols.empty()) m["tolerances"] = parse_kv_list(a.tols, "--tol");
  if (soliton) m["soliton"] = *soliton;
  m["seed"] = a.seed;
  m["samples"] = a.samples;
  m["threads"] = a.threads;
  json output;
  output["format"] = a.format;
  if (!a.out.empty()) output["path"] = a.out;
  if (!a.csv.empty()) output["csv"] = a.csv;
  m["output"] = output;
  return run_and_print(m.dump());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"chart-based curvature, pseudo-symmetry and soliton toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(psym3_version()));

  auto* catalog = app.add_subcommand("catalog", "list built-in charts");
  std::string catalog_format = "text";
  catalog->add_option("--format", catalog_format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CommonArgs classify_args;
  auto* classify = app.add_subcommand(
      "classify", "pseudo-symmetry classification over a grid");
  add_common(classify, classify_args);

  CommonArgs verify_args;
  std::string v_kind = "ricci", v_f;
  double v_lambda = 0.0;
  bool v_lambda_set = false;
  auto* verify = app.add_subcommand("verify-soliton",
                                    "check a (f, lambda) candidate");
  add_common(verify, verify_args);
  verify->add_option("--kind", v_kind, "ricci|yamabe")
      ->check(CLI::IsMember({"ricci", "yamabe"}));
  verify->add_option("--f-expr", v_f, "potential expression over x0,x1,x2");
  verify->add_option("--lambda", v_lambda, "soliton constant")
      ->each([&](const std::string&) { v_lambda_set = true; });

  CommonArgs fit_args;
  std::string f_kind = "ricci";
  auto* fit = app.add_subcommand("fit-soliton",
                                 "least-squares fit of (f, lambda) on a grid");
  add_common(fit, fit_args);
  fit->add_option("--kind", f_kind, "ricci|yamabe")
      ->check(CLI::IsMember({"ricci", "yamabe"}));

  CommonArgs diag_args;
  auto* diag = app.add_subcommand(
      "diagnostics", "Ricci eigenframe and frame-relation residuals");
  add_common(diag, diag_args);

  CLI11_PARSE(app, argc, argv);

  if (catalog->parsed()) {
    if (catalog_format == "json") {
      std::fputs(psym3_catalog_json(), stdout);
      return 0;
    }
    const json c = json::parse(psym3_catalog_json());
    std::printf("%-12s %-34s %-30s %s\n", "name", "eigenvalues", "class",
                "scalar");
    for (const auto& e : c["entries"]) {
      std::string eig;
      for (const auto& v : e["expected_eigenvalues"])
        eig += v.get<std::string>() + " ";
      std::printf("%-12s %-34s %-30s %s\n", e["name"].get<std::string>().c_str(),
                  eig.c_str(), e["expected_class"].get<std::string>().c_str(),
                  e["expected_scalar"].get<std::string>().c_str());
    }
    return 0;
  }
  if (classify->parsed()) return run_command("classify", classify_args, nullptr);
  if (verify->parsed()) {
    if (verify_args.manifest_path.empty()) {
      if (v_f.empty()) usage_fail("verify-soliton needs --f-expr (or --manifest)");
      if (!v_lambda_set) usage_fail("verify-soliton needs --lambda (or --manifest)");
    }
    json s;
    s["kind"] = v_kind;
    s["f"] = v_f;
    s["lambda"] = v_lambda;
    return run_command("verify-soliton", verify_args,
                       verify_args.manifest_path.empty() ? &s : nullptr);
  }
  if (fit->parsed()) {
    json s;
    s["kind"] = f_kind;
    s["f"] = "fit";
    s["lambda"] = "fit";
    return run_command("fit-soliton", fit_args,
                       fit_args.manifest_path.empty() ? &s : nullptr);
  }
  if (diag->parsed()) return run_command("diagnostics", diag_args, nullptr);
  return 1;
}
