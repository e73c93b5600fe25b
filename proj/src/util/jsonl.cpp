#include "util/jsonl.hpp"

#include <fstream>

#include "util/errors.hpp"

namespace daogov {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded())
            throw ParseError(path.filename().string() + ":" + std::to_string(lineno) +
                             ": invalid JSON");
        if (obj.is_object() && obj.contains("_meta")) continue;
        fn(lineno, obj);
    }
}

std::string jsonl_line(const nlohmann::json& obj) {
    return obj.dump();
}

}  // namespace daogov
