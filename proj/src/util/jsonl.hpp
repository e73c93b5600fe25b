#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "json.hpp"

namespace daogov {

// Reads a JSON-Lines file, invoking fn(line_number, object) per non-empty
// line. Lines holding a top-level "_meta" key are metadata headers emitted by
// this engine and are skipped. Parse failures carry the 1-based line number.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn);

// Serializes doubles losslessly (shortest round-trip form, as nlohmann does).
std::string jsonl_line(const nlohmann::json& obj);

}  // namespace daogov
