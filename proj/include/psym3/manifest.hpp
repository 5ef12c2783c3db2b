#ifndef PSYM3_MANIFEST_HPP
#define PSYM3_MANIFEST_HPP

#include <json.hpp>
#include <map>
#include <optional>
#include <string>

#include "psym3/grid.hpp"
#include "psym3/metric.hpp"
#include "psym3/soliton.hpp"
#include "psym3/symmetry.hpp"

namespace psym3 {

enum class Task { Classify, VerifySoliton, FitSoliton, Diagnostics };

const char* task_name(Task t);

struct SolitonBlock {
  SolitonKind kind = SolitonKind::Ricci;
  bool f_fit = false;          // f given as "fit"
  std::string f_source;        // when !f_fit
  bool lambda_fit = false;
  double lambda = 0.0;
};

struct OutputBlock {
  std::string path;            // empty: no file, report goes to the caller
  std::string format = "json"; // "json" | "text"
  std::string csv;             // optional plot-data path
};

// Validated manifest. The JSON schema is documented in the README; the
// original (normalized) document is kept for the report echo.
struct Manifest {
  Task task = Task::Classify;

  bool metric_from_catalog = true;
  std::string catalog_name;
  std::map<std::string, double> catalog_params;
  // inline metric
  std::string metric_name;
  std::array<std::string, 6> components{};
  DomainBox domain;

  std::optional<GridSpec> grid;
  std::map<std::string, double> tolerance_overrides;
  std::optional<SolitonBlock> soliton;
  int samples = 20;
  unsigned long long seed = 0;
  int threads = 0;  // 0: pick automatically
  OutputBlock output;

  nlohmann::json echo;
};

Manifest parse_manifest_text(const std::string& text);
Manifest parse_manifest_file(const std::string& path);

// Applies named overrides onto the defaults; unknown names and
// non-positive values throw UsageError.
Tolerances apply_tolerance_overrides(const std::map<std::string, double>& o);

} // namespace psym3

#endif
