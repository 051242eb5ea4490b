#pragma once

#include <cstdio>
#include <cmath>
#include <string>
#include <string_view>

// Minimal JSON emission helpers. All real numbers are printed with 17
// significant digits so that emitted documents are byte-stable across runs
// and round-trip to the same double.

namespace bookspectra::jsonw {

inline std::string real(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e308" : "-1e308";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string str(std::string_view s) {
    return "\"" + escape(s) + "\"";
}

}  // namespace bookspectra::jsonw
