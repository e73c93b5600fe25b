// Exercises the shared-library surface the CLI is built on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <filesystem>
#include <string>

#include "daogov/daogov.h"
#include "doctest.h"

namespace {

std::string fixture_config(const std::filesystem::path& out_dir) {
    std::string input = (std::filesystem::path(DAOGOV_TEST_DATA_DIR) / "fixture_small").string();
    return std::string("{\"input_dir\":\"") + input + "\",\"out_dir\":\"" + out_dir.string() +
           "\",\"threshold\":1,\"seed\":7,\"bootstrap_replicates\":2000}";
}

struct ScratchDir {
    std::filesystem::path path;
    explicit ScratchDir(const char* tag)
        : path(std::filesystem::temp_directory_path() /
               (std::string("daogov_capi_") + tag + "_" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("version and status names are stable strings") {
    CHECK(dg_version() != nullptr);
    CHECK(std::strcmp(dg_status_name(DG_OK), "ok") == 0);
    CHECK(std::strcmp(dg_status_name(DG_ERROR_PREREQUISITE), "prerequisite-error") == 0);
}

TEST_CASE("null arguments are rejected") {
    CHECK(dg_engine_create(nullptr, nullptr) == DG_ERROR_INVALID_ARGUMENT);
    dg_engine* engine = nullptr;
    CHECK(dg_engine_create(nullptr, &engine) == DG_ERROR_INVALID_ARGUMENT);
    CHECK(dg_engine_run_stage(nullptr, "ingest") == DG_ERROR_INVALID_ARGUMENT);
    dg_engine_destroy(nullptr);  // must be a no-op
}

TEST_CASE("malformed and invalid configurations fail with config errors") {
    dg_engine* engine = nullptr;
    CHECK(dg_engine_create("{not json", &engine) == DG_ERROR_CONFIG);
    CHECK(engine == nullptr);
    CHECK(std::string(dg_last_create_error()).find("not valid JSON") != std::string::npos);
    CHECK(dg_engine_create(R"({"provider":"carrier-pigeon"})", &engine) == DG_ERROR_CONFIG);
    CHECK(engine == nullptr);
    CHECK(std::string(dg_last_create_error()).find("provider") != std::string::npos);
}

TEST_CASE("prerequisite violations surface through the C API") {
    ScratchDir out("prereq");
    dg_engine* engine = nullptr;
    REQUIRE(dg_engine_create(fixture_config(out.path).c_str(), &engine) == DG_OK);
    dg_status rc = dg_engine_run_stage(engine, "report");
    CHECK(rc == DG_ERROR_PREREQUISITE);
    CHECK(std::string(dg_engine_last_error(engine)).find("ingest") != std::string::npos);
    dg_engine_destroy(engine);
}

TEST_CASE("unknown stage is a config error") {
    ScratchDir out("badstage");
    dg_engine* engine = nullptr;
    REQUIRE(dg_engine_create(fixture_config(out.path).c_str(), &engine) == DG_OK);
    CHECK(dg_engine_run_stage(engine, "transmogrify") == DG_ERROR_CONFIG);
    dg_engine_destroy(engine);
}

TEST_CASE("full pipeline through the C API") {
    ScratchDir out("full");
    dg_engine* engine = nullptr;
    REQUIRE(dg_engine_create(fixture_config(out.path).c_str(), &engine) == DG_OK);

    char hash[17] = {0};
    REQUIRE(dg_engine_config_hash(engine, hash, sizeof hash) == DG_OK);
    CHECK(std::strlen(hash) == 16);
    CHECK(dg_engine_config_hash(engine, hash, 4) == DG_ERROR_INVALID_ARGUMENT);

    std::string config_json = dg_engine_config_json(engine);
    CHECK(config_json.find("\"threshold\":1") != std::string::npos);

    CHECK(dg_engine_run_stage(engine, "all") == DG_OK);
    CHECK(std::string(dg_engine_last_error(engine)).empty());
    CHECK(std::filesystem::exists(out.path / "report" / "fig2_involvement_ranking.csv"));
    CHECK(std::filesystem::exists(out.path / "network" / "stats_aw.json"));
    dg_engine_destroy(engine);
}
