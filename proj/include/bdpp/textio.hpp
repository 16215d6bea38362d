#pragma once

#include <cstdio>
#include <string>

namespace bdpp {

// Shortest fixed-precision decimal used by every CSV cell: 17 significant
// digits round-trips any double exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& contents);

} // namespace bdpp
