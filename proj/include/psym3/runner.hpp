#ifndef PSYM3_RUNNER_HPP
#define PSYM3_RUNNER_HPP

#include <json.hpp>
#include <string>

#include "psym3/manifest.hpp"

namespace psym3 {

// Exit-code contract: 0 = ran, all contracted checks passed; 2 = ran but a
// verification failed; input/usage errors throw and map to 1 at the edge.
struct RunResult {
  nlohmann::ordered_json report;
  std::string rendered;  // report in the manifest's output format
  int exit_code = 0;
  double timing_ms = 0.0;  // wall clock; kept out of the JSON on purpose
};

// Executes the task and writes the requested output files.
RunResult run_manifest(const Manifest& m);
RunResult run_manifest_text(const std::string& text);
RunResult run_manifest_file(const std::string& path);

// Static catalog description (the `catalog` command).
nlohmann::ordered_json catalog_report();

std::string render_text(const nlohmann::ordered_json& report, double timing_ms);

} // namespace psym3

#endif
