// C API shim: maps the C++ engine onto opaque handles and status codes.

#include "daogov/daogov.h"

#include <cstdio>
#include <string>

#include "run/pipeline.hpp"
#include "util/errors.hpp"

using namespace daogov;

struct dg_engine {
    RunConfig config;
    std::string last_error;
    std::string config_json_cache;
};

namespace {

constexpr const char* kVersion = "1.0.0";

thread_local std::string g_create_error;

// Runs fn, mapping the error taxonomy onto status codes and stashing the
// message on the engine.
template <typename Fn>
dg_status guarded(dg_engine* engine, Fn&& fn) {
    try {
        fn();
        if (engine) engine->last_error.clear();
        return DG_OK;
    } catch (const ParseError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_PARSE;
    } catch (const IntegrityError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_INTEGRITY;
    } catch (const LookupError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_LOOKUP;
    } catch (const ConfigError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_CONFIG;
    } catch (const TransportError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_TRANSPORT;
    } catch (const PrerequisiteError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_PREREQUISITE;
    } catch (const IoError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_IO;
    } catch (const ValidationError& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_VALIDATION;
    } catch (const std::exception& e) {
        if (engine) engine->last_error = e.what();
        return DG_ERROR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* dg_version(void) { return kVersion; }

const char* dg_status_name(dg_status status) {
    switch (status) {
        case DG_OK: return "ok";
        case DG_ERROR_INVALID_ARGUMENT: return "invalid-argument";
        case DG_ERROR_PARSE: return "parse-error";
        case DG_ERROR_INTEGRITY: return "integrity-error";
        case DG_ERROR_VALIDATION: return "validation-error";
        case DG_ERROR_LOOKUP: return "lookup-error";
        case DG_ERROR_CONFIG: return "config-error";
        case DG_ERROR_TRANSPORT: return "transport-error";
        case DG_ERROR_PREREQUISITE: return "prerequisite-error";
        case DG_ERROR_IO: return "io-error";
        case DG_ERROR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

dg_status dg_engine_create(const char* config_json, dg_engine** out_engine) {
    if (config_json == nullptr || out_engine == nullptr) return DG_ERROR_INVALID_ARGUMENT;
    *out_engine = nullptr;
    g_create_error.clear();
    auto engine = new dg_engine();
    dg_status rc = guarded(engine, [&] {
        nlohmann::json j = nlohmann::json::parse(config_json, nullptr, false);
        if (j.is_discarded()) throw ConfigError("configuration is not valid JSON");
        engine->config = RunConfig::from_json(j);
    });
    if (rc != DG_OK) {
        g_create_error = engine->last_error;
        delete engine;
        return rc;
    }
    *out_engine = engine;
    return DG_OK;
}

const char* dg_last_create_error(void) { return g_create_error.c_str(); }

void dg_engine_destroy(dg_engine* engine) { delete engine; }

dg_status dg_engine_run_stage(dg_engine* engine, const char* stage) {
    if (engine == nullptr || stage == nullptr) return DG_ERROR_INVALID_ARGUMENT;
    return guarded(engine, [&] {
        Pipeline pipeline(engine->config);
        pipeline.run_stage(stage);
    });
}

const char* dg_engine_last_error(const dg_engine* engine) {
    if (engine == nullptr) return "";
    return engine->last_error.c_str();
}

const char* dg_engine_config_json(dg_engine* engine) {
    if (engine == nullptr) return "";
    engine->config_json_cache = engine->config.to_json().dump();
    return engine->config_json_cache.c_str();
}

dg_status dg_engine_config_hash(const dg_engine* engine, char* buf, size_t buf_len) {
    if (engine == nullptr || buf == nullptr || buf_len < 17) return DG_ERROR_INVALID_ARGUMENT;
    std::snprintf(buf, buf_len, "%016llx",
                  static_cast<unsigned long long>(engine->config.config_hash()));
    return DG_OK;
}

}  // extern "C"
