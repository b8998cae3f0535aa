#pragma once

// JSON-lines and CSV emission for the CLI. Every combinatorial count is
// serialized as a decimal string: values routinely exceed 64 bits and no
// floating point is allowed anywhere.

#include "ncp/bigint.hpp"
#include "ncp/verify.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace ncp {

inline nlohmann::json report_to_json(const VerificationReport& r, long long elapsed_ms) {
    nlohmann::json j{{"identity", r.identity}, {"type", r.type},     {"parameters", r.params},
                     {"left", r.left},         {"right", r.right},   {"pass", r.pass},
                     {"elapsed_ms", elapsed_ms}};
    if (r.informational) j["informational"] = true;
    return j;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace ncp
