/* daogov - DAO governance analytics engine, C API.
 *
 * The engine is driven by a JSON configuration and executes batch stages
 * (ingest, clean, metrics, network, validate, shifts, report) that exchange
 * file artifacts under the configured output directory. Handles are opaque;
 * every call returns a status code and the last error message is retained on
 * the engine.
 *
 * Thread-safety: one engine may be used from one thread at a time; distinct
 * engines are independent.
 */
#ifndef DAOGOV_H
#define DAOGOV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DAOGOV_API __declspec(dllexport)
#else
#define DAOGOV_API __attribute__((visibility("default")))
#endif

typedef enum dg_status {
    DG_OK = 0,
    DG_ERROR_INVALID_ARGUMENT = 1,
    DG_ERROR_PARSE = 2,        /* malformed input file */
    DG_ERROR_INTEGRITY = 3,    /* dangling reference in a bundle */
    DG_ERROR_VALIDATION = 4,   /* value out of range / wrong sign */
    DG_ERROR_LOOKUP = 5,       /* unknown entity id */
    DG_ERROR_CONFIG = 6,       /* inconsistent run configuration */
    DG_ERROR_TRANSPORT = 7,    /* balance provider failure (retryable) */
    DG_ERROR_PREREQUISITE = 8, /* stage ran before its inputs exist */
    DG_ERROR_IO = 9,
    DG_ERROR_INTERNAL = 10
} dg_status;

typedef struct dg_engine dg_engine;

DAOGOV_API const char* dg_version(void);
DAOGOV_API const char* dg_status_name(dg_status status);

/* Creates an engine from a JSON configuration string. On success stores the
 * new handle in *out_engine; the caller owns it and must destroy it. On
 * failure *out_engine stays NULL and dg_last_create_error() carries the
 * message. */
DAOGOV_API dg_status dg_engine_create(const char* config_json, dg_engine** out_engine);

/* Message of the most recent dg_engine_create failure on this thread. */
DAOGOV_API const char* dg_last_create_error(void);

DAOGOV_API void dg_engine_destroy(dg_engine* engine);

/* Runs one stage ("ingest", "clean", "metrics", "network", "validate",
 * "shifts", "report") or "all" for the full sequence. */
DAOGOV_API dg_status dg_engine_run_stage(dg_engine* engine, const char* stage);

/* Message of the most recent failure on this engine; empty string when the
 * last call succeeded. The pointer stays valid until the next call on the
 * same engine or its destruction. */
DAOGOV_API const char* dg_engine_last_error(const dg_engine* engine);

/* Canonical configuration of the engine as a JSON string (defaults filled
 * in). Same lifetime rules as dg_engine_last_error. */
DAOGOV_API const char* dg_engine_config_json(dg_engine* engine);

/* 16-hex-digit configuration hash stamped into every artifact. Writes at
 * most buf_len bytes including the terminator. */
DAOGOV_API dg_status dg_engine_config_hash(const dg_engine* engine, char* buf, size_t buf_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DAOGOV_H */
