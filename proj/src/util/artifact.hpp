#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace daogov {

std::uint64_t fnv1a64(std::string_view data);

// Writes content to path atomically (temp file in the same directory, then
// rename), creating parent directories. Partial outputs are never visible.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Every emitted artifact starts with a metadata block carrying the config
// hash and seed so a report can be traced back to the run that produced it.
struct ArtifactMeta {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;

    std::string csv_header() const;      // "# daogov config_hash=... seed=..." line
    nlohmann::json json_block() const;   // value for a "_meta" key
};

void write_csv_artifact(const std::filesystem::path& path, const ArtifactMeta& meta,
                        std::string_view csv_body);
void write_json_artifact(const std::filesystem::path& path, const ArtifactMeta& meta,
                         nlohmann::json body);
// JSON-Lines artifact: the first line is a {"_meta": ...} object.
void write_jsonl_artifact(const std::filesystem::path& path, const ArtifactMeta& meta,
                          std::string_view body_lines);

// Fixed-format double for deterministic, lossless text artifacts.
std::string format_double(double v);

}  // namespace daogov
