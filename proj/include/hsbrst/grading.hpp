#pragma once

#include <string>

namespace hsbrst {

/// (Grassmann parity, ghost number, harmonic U(1) charge); additive under
/// multiplication of symbols.
struct Grading {
    int parity = 0; // Z2: 0 even, 1 odd
    int ghost = 0;
    int hcharge = 0;

    friend Grading operator+(const Grading& a, const Grading& b) {
        return {(a.parity + b.parity) & 1, a.ghost + b.ghost, a.hcharge + b.hcharge};
    }
    friend bool operator==(const Grading& a, const Grading& b) {
        return a.parity == b.parity && a.ghost == b.ghost && a.hcharge == b.hcharge;
    }
    friend bool operator!=(const Grading& a, const Grading& b) { return !(a == b); }

    std::string str() const {
        return "(parity " + std::to_string(parity) + ", ghost " + std::to_string(ghost) +
               ", hcharge " + std::to_string(hcharge) + ")";
    }
};

/// Which grading components a homogeneity check enforces.
struct GradingMask {
    bool parity = true;
    bool ghost = true;
    bool hcharge = true;

    static GradingMask all() { return {}; }
    static GradingMask hcharge_waived() { return {true, true, false}; }

    bool agree(const Grading& a, const Grading& b) const {
        if (parity && a.parity != b.parity) return false;
        if (ghost && a.ghost != b.ghost) return false;
        if (hcharge && a.hcharge != b.hcharge) return false;
        return true;
    }
};

} // namespace hsbrst
