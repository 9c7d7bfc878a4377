#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace hsbrst::testing {

inline std::string golden_path(const std::string& name) {
    return std::string(HSBRST_SOURCE_DIR) + "/tests/golden/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Compare `actual` against the frozen golden file. Set HSBRST_REGEN_GOLDEN=1
/// to rewrite the goldens instead (used once when freezing).
inline bool matches_golden(const std::string& name, const std::string& actual) {
    std::string path = golden_path(name);
    if (std::getenv("HSBRST_REGEN_GOLDEN")) {
        std::ofstream out(path, std::ios::binary);
        out << actual;
        return true;
    }
    return read_file(path) == actual;
}

} // namespace hsbrst::testing
