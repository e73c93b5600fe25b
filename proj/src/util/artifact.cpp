#include "util/artifact.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "util/errors.hpp"

namespace daogov {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string ArtifactMeta::csv_header() const {
    return "# daogov config_hash=" + hash_hex(config_hash) + " seed=" + std::to_string(seed) +
           "\n";
}

nlohmann::json ArtifactMeta::json_block() const {
    return {{"config_hash", hash_hex(config_hash)}, {"seed", seed}};
}

void write_csv_artifact(const std::filesystem::path& path, const ArtifactMeta& meta,
                        std::string_view csv_body) {
    std::string content = meta.csv_header();
    content += csv_body;
    write_file_atomic(path, content);
}

void write_json_artifact(const std::filesystem::path& path, const ArtifactMeta& meta,
                         nlohmann::json body) {
    body["_meta"] = meta.json_block();
    write_file_atomic(path, body.dump(2) + "\n");
}

void write_jsonl_artifact(const std::filesystem::path& path, const ArtifactMeta& meta,
                          std::string_view body_lines) {
    std::string content = nlohmann::json{{"_meta", meta.json_block()}}.dump();
    content += "\n";
    content += body_lines;
    write_file_atomic(path, content);
}

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace daogov
