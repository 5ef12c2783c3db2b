#include "psym3/psym3.h"

#include <string>

#include "psym3/errors.hpp"
#include "psym3/runner.hpp"
#include "psym3/version.hpp"

struct psym3_run {
  psym3::RunResult result;
  std::string json_dump;
};

namespace {

thread_local std::string g_last_error;

psym3_status classify_exception() {
  try {
    throw;
  } catch (const psym3::UsageError& e) {
    g_last_error = e.what();
    return PSYM3_ERR_USAGE;
  } catch (const psym3::ParseError& e) {
    g_last_error = e.what();
    return PSYM3_ERR_USAGE;
  } catch (const psym3::DomainError& e) {
    g_last_error = e.what();
    return PSYM3_ERR_DOMAIN;
  } catch (const psym3::SingularMetricError& e) {
    g_last_error = e.what();
    return PSYM3_ERR_NUMERIC;
  } catch (const psym3::EvalError& e) {
    g_last_error = e.what();
    return PSYM3_ERR_NUMERIC;
  } catch (const psym3::JetOrderError& e) {
    g_last_error = e.what();
    return PSYM3_ERR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PSYM3_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PSYM3_ERR_INTERNAL;
  }
}

template <typename Fn>
psym3_status run_guarded(psym3_run** out_run, Fn&& fn) {
  if (out_run == nullptr) {
    g_last_error = "out_run must not be NULL";
    return PSYM3_ERR_USAGE;
  }
  *out_run = nullptr;
  try {
    auto run = new psym3_run{fn(), {}};
    run->json_dump = run->result.report.dump(2) + "\n";
    *out_run = run;
    return PSYM3_OK;
  } catch (...) {
    return classify_exception();
  }
}

} // namespace

extern "C" {

const char* psym3_version(void) { return psym3::kVersion; }

psym3_status psym3_run_manifest_file(const char* path, psym3_run** out_run) {
  if (path == nullptr) {
    g_last_error = "path must not be NULL";
    return PSYM3_ERR_USAGE;
  }
  return run_guarded(out_run,
                     [&] { return psym3::run_manifest_file(path); });
}

psym3_status psym3_run_manifest_text(const char* manifest_json,
                                     psym3_run** out_run) {
  if (manifest_json == nullptr) {
    g_last_error = "manifest_json must not be NULL";
    return PSYM3_ERR_USAGE;
  }
  return run_guarded(out_run,
                     [&] { return psym3::run_manifest_text(manifest_json); });
}

void psym3_run_free(psym3_run* run) { delete run; }

const char* psym3_run_report(const psym3_run* run) {
  return run ? run->result.rendered.c_str() : "";
}

const char* psym3_run_report_json(const psym3_run* run) {
  return run ? run->json_dump.c_str() : "";
}

int psym3_run_exit_code(const psym3_run* run) {
  return run ? run->result.exit_code : 1;
}

double psym3_run_timing_ms(const psym3_run* run) {
  return run ? run->result.timing_ms : 0.0;
}

const char* psym3_catalog_json(void) {
  static const std::string dump = psym3::catalog_report().dump(2) + "\n";
  return dump.c_str();
}

const char* psym3_last_error(void) { return g_last_error.c_str(); }

} // extern "C"
