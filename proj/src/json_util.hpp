#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>

#include "json.hpp"
#include "poolsim/errors.hpp"

namespace poolsim::jsonutil {

using nlohmann::json;

[[noreturn]] inline void bad_field(const std::string& path, const std::string& what) {
    throw ValidationError("config: field '" + path + "' " + what);
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            known = known || key == a;
        if (!known)
            throw ValidationError("config: unknown key '" + key + "' in '" +
                                  (path.empty() ? "top level" : path) + "'");
    }
}

inline double get_double(const json& obj, const std::string& path, const char* key, double dflt) {
    if (!obj.contains(key))
        return dflt;
    const json& v = obj.at(key);
    if (!v.is_number())
        bad_field(path + "." + key, "must be a number");
    return v.get<double>();
}

inline std::int64_t get_int(const json& obj, const std::string& path, const char* key,
                            std::int64_t dflt) {
    if (!obj.contains(key))
        return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        bad_field(path + "." + key, "must be an integer");
    return v.get<std::int64_t>();
}

inline bool get_bool(const json& obj, const std::string& path, const char* key, bool dflt) {
    if (!obj.contains(key))
        return dflt;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        bad_field(path + "." + key, "must be a boolean");
    return v.get<bool>();
}

inline std::string get_string(const json& obj, const std::string& path, const char* key,
                              const std::string& dflt) {
    if (!obj.contains(key))
        return dflt;
    const json& v = obj.at(key);
    if (!v.is_string())
        bad_field(path + "." + key, "must be a string");
    return v.get<std::string>();
}

inline const json& get_object(const json& obj, const std::string& path, const char* key) {
    static const json empty = json::object();
    if (!obj.contains(key))
        return empty;
    const json& v = obj.at(key);
    if (!v.is_object())
        bad_field(path.empty() ? key : path + "." + key, "must be an object");
    return v;
}

// Parse with messages anchored to a line number.
inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i < upto; ++i)
            line += text[i] == '\n';
        throw ParseError("config line " + std::to_string(line) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace poolsim::jsonutil
