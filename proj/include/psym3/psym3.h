/*
 * psym3 C API: run manifests against the pseudo-symmetry / soliton engine
 * through an opaque handle, suitable for dlopen or plain linking.
 *
 * Usage:
 *   psym3_run* run = NULL;
 *   if (psym3_run_manifest_file("job.json", &run) != PSYM3_OK) {
 *     fprintf(stderr, "%s\n", psym3_last_error());   // exit 1 territory
 *   } else {
 *     fputs(psym3_run_report(run), stdout);
 *     int code = psym3_run_exit_code(run);           // 0 ok, 2 check failed
 *     psym3_run_free(run);
 *   }
 *
 * All returned strings are UTF-8. Strings returned from a psym3_run are
 * owned by the handle and stay valid until psym3_run_free. The library is
 * safe to use from several threads as long as each psym3_run handle is
 * confined to one thread.
 */
#ifndef PSYM3_H
#define PSYM3_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psym3_status {
  PSYM3_OK = 0,
  PSYM3_ERR_USAGE = 1,    /* bad manifest, bad arguments, unknown names */
  PSYM3_ERR_IO = 2,       /* unreadable input or unwritable output */
  PSYM3_ERR_DOMAIN = 3,   /* points or grids outside the chart domain */
  PSYM3_ERR_NUMERIC = 4,  /* singular metric, evaluation outside domain */
  PSYM3_ERR_INTERNAL = 5
} psym3_status;

/* Opaque handle for one executed manifest. */
typedef struct psym3_run psym3_run;

/* Library version, e.g. "0.1.0". Static storage. */
const char* psym3_version(void);

/* Parses, validates and executes a manifest. On success stores a new
 * handle in *out_run and returns PSYM3_OK; output files named in the
 * manifest are written as a side effect. On failure *out_run is NULL and
 * psym3_last_error() describes the problem. */
psym3_status psym3_run_manifest_file(const char* path, psym3_run** out_run);
psym3_status psym3_run_manifest_text(const char* manifest_json,
                                     psym3_run** out_run);

void psym3_run_free(psym3_run* run);

/* Report rendered in the manifest's output format (json by default). */
const char* psym3_run_report(const psym3_run* run);

/* Canonical JSON report regardless of the requested format. Byte-identical
 * across runs for identical manifests and library version. */
const char* psym3_run_report_json(const psym3_run* run);

/* Process exit code contract: 0 = ran and all contracted checks passed,
 * 2 = ran but a verification failed. (Input errors never produce a handle;
 * they are the caller's exit code 1.) */
int psym3_run_exit_code(const psym3_run* run);

/* Wall-clock duration of the run in milliseconds. */
double psym3_run_timing_ms(const psym3_run* run);

/* JSON description of the built-in chart catalog with expected data.
 * Static storage, initialized on first use. */
const char* psym3_catalog_json(void);

/* Message for the most recent failure on the calling thread. */
const char* psym3_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* PSYM3_H */
