// csv.hpp
// Number formatting and flat key=value files shared by every emitter.

#pragma once

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "qdating/error.hpp"

namespace qdating {

// 12 significant digits, '.' decimal point; negative zero prints as 0.
inline std::string format_real(double x) {
    if (x == 0.0) x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

using KeyValues = std::map<std::string, std::string>;

// One `key=value` per line; blank lines and lines starting with '#' are skipped.
inline KeyValues read_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        if (!kv.emplace(line.substr(0, eq), line.substr(eq + 1)).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + line.substr(0, eq) + "'");
    }
    return kv;
}

// Keys come out sorted, so equal maps serialize to equal bytes.
inline void write_key_values(std::ostream& out, const KeyValues& kv) {
    for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

}  // namespace qdating
