#pragma once

// Internal helpers shared by the *_io translation units. Not installed.

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "scifex/errors.hpp"

namespace scifex::detail {

using json = nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << contents;
}

inline json parse_json(const std::string& payload, const std::string& context) {
    json parsed = json::parse(payload, nullptr, false);
    if (parsed.is_discarded()) throw ValidationError(context + ": invalid JSON");
    return parsed;
}

/// Applies `fn` to each non-empty line of a JSONL file, with 1-based line
/// numbers for diagnostics.
inline void for_each_jsonl_line(const std::filesystem::path& path,
                                const std::function<void(const json&, std::size_t)>& fn) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        fn(parse_json(line, path.string() + ":" + std::to_string(lineno)), lineno);
    }
}

inline const json& require_field(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(context + ": missing field \"" + key + "\"");
    return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_string()) {
        throw ValidationError(context + ": field \"" + key + "\" must be a string");
    }
    return value.get<std::string>();
}

}  // namespace scifex::detail
