#pragma once

#include "hsbrst/errors.hpp"
#include "hsbrst/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hsbrst {

/// Formal parameters a Scalar may depend on. alpha, k, m2 and the
/// calibration slots u0..u11 are even; the deformation entries A10..A22 are
/// Grassmann-odd (the consistency of [theta^{++a}, x^mu] = A^{a mu} with
/// {theta,theta} = 0 forces odd A, and with it the associativity of the
/// deformed product).
enum class Param : std::uint8_t {
    alpha, k, m2,
    A10, A11, A12, A20, A21, A22,
    u0, u1, u2, u3, u4, u5, u6, u7, u8, u9, u10, u11,
};

inline constexpr std::size_t kParamCount = 21;
inline constexpr std::size_t kEvenParamCount = 15; // alpha, k, m2, u0..u11
inline constexpr std::size_t kOddParamCount = 6;   // A10..A22
inline constexpr std::size_t kCalibrationSlots = 12;

inline const char* param_name(Param p) {
    static const char* names[kParamCount] = {
        "alpha", "k", "m2",
        "A10", "A11", "A12", "A20", "A21", "A22",
        "u0", "u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9", "u10", "u11",
    };
    return names[static_cast<std::size_t>(p)];
}

inline bool param_is_odd(Param p) {
    auto i = static_cast<std::size_t>(p);
    return i >= static_cast<std::size_t>(Param::A10) && i <= static_cast<std::size_t>(Param::A22);
}

/// Deformation tensor entry A^{a mu}, a in {1,2}, mu in {0,1,2}.
inline Param a_param(int a, int mu) {
    if (a < 1 || a > 2 || mu < 0 || mu > 2) throw ConfigError("A index out of range");
    return static_cast<Param>(static_cast<int>(Param::A10) + (a - 1) * 3 + mu);
}

inline Param calibration_param(std::size_t slot) {
    if (slot >= kCalibrationSlots) throw ConfigError("calibration slot out of range");
    return static_cast<Param>(static_cast<std::size_t>(Param::u0) + slot);
}

/// A parameter monomial: exponents for the even parameters plus an ordered
/// square-free product of odd parameters, stored as a bitmask over A10..A22.
struct ParamMonomial {
    std::array<std::uint8_t, kEvenParamCount> even{};
    std::uint8_t odd = 0;

    static std::size_t even_slot(Param p) {
        auto i = static_cast<std::size_t>(p);
        if (i < 3) return i;                                        // alpha, k, m2
        return 3 + (i - static_cast<std::size_t>(Param::u0));       // u0..u11
    }
    static int odd_bit(Param p) { return static_cast<int>(p) - static_cast<int>(Param::A10); }

    bool is_one() const {
        if (odd) return false;
        for (auto e : even)
            if (e) return false;
        return true;
    }

    int degree_of(Param p) const {
        if (param_is_odd(p)) return (odd >> odd_bit(p)) & 1;
        return even[even_slot(p)];
    }

    int parity() const {
        int n = 0;
        for (int i = 0; i < 6; ++i) n += (odd >> i) & 1;
        return n & 1;
    }

    friend bool operator<(const ParamMonomial& a, const ParamMonomial& b) {
        if (a.odd != b.odd) return a.odd < b.odd;
        return a.even < b.even;
    }
    friend bool operator==(const ParamMonomial& a, const ParamMonomial& b) {
        return a.odd == b.odd && a.even == b.even;
    }

    std::string str() const {
        std::string out;
        auto append = [&](const std::string& piece) {
            if (!out.empty()) out += "*";
            out += piece;
        };
        for (std::size_t i = 0; i < kEvenParamCount; ++i) {
            if (!even[i]) continue;
            Param p = i < 3 ? static_cast<Param>(i)
                            : static_cast<Param>(static_cast<std::size_t>(Param::u0) + (i - 3));
            std::string piece = param_name(p);
            if (even[i] > 1) piece += "^" + std::to_string(int(even[i]));
            append(piece);
        }
        for (int b = 0; b < 6; ++b)
            if (odd & (1u << b)) append(param_name(static_cast<Param>(static_cast<int>(Param::A10) + b)));
        return out;
    }
};

/// Product of monomials; returns the Koszul sign of merging the odd parts
/// (0 when an odd parameter repeats).
inline int monomial_mul(const ParamMonomial& a, const ParamMonomial& b, ParamMonomial& out) {
    if (a.odd & b.odd) return 0;
    for (std::size_t i = 0; i < kEvenParamCount; ++i) {
        unsigned s = unsigned(a.even[i]) + unsigned(b.even[i]);
        if (s > 255) throw ConfigError("parameter exponent overflow");
        out.even[i] = static_cast<std::uint8_t>(s);
    }
    out.odd = a.odd | b.odd;
    int inversions = 0;
    for (int i = 0; i < 6; ++i) {
        if (!(b.odd & (1u << i))) continue;
        for (int j = i + 1; j < 6; ++j)
            if (a.odd & (1u << j)) ++inversions;
    }
    return (inversions & 1) ? -1 : 1;
}

/// An exact polynomial over Q(i) in the formal parameters: a coefficient map
/// from parameter monomials to Gaussian rationals. The ring is Z2-graded
/// commutative (odd A-entries anticommute and square to zero); zero is the
/// empty map and all arithmetic is exact.
class Scalar {
  public:
    using Terms = std::map<ParamMonomial, GaussianRational>;

    Scalar() = default;
    Scalar(long long n) { *this = Scalar(GaussianRational(n)); }
    Scalar(GaussianRational c) {
        if (!c.is_zero()) terms_[ParamMonomial{}] = std::move(c);
    }
    Scalar(Rational r) : Scalar(GaussianRational(std::move(r))) {}

    static Scalar param(Param p, GaussianRational coeff = GaussianRational(1)) {
        Scalar s;
        if (coeff.is_zero()) return s;
        ParamMonomial m;
        if (param_is_odd(p))
            m.odd = static_cast<std::uint8_t>(1u << ParamMonomial::odd_bit(p));
        else
            m.even[ParamMonomial::even_slot(p)] = 1;
        s.terms_[m] = std::move(coeff);
        return s;
    }
    static Scalar i() { return Scalar(GaussianRational::i()); }
    static Scalar of(long long num, long long den) { return Scalar(GaussianRational::of(num, den)); }
    static Scalar unknown(std::size_t slot) { return param(calibration_param(slot)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    GaussianRational constant_value() const {
        if (terms_.empty()) return GaussianRational(0);
        if (!is_constant()) throw ConfigError("scalar is not constant: " + str());
        return terms_.begin()->second;
    }

    /// Grassmann parity of the coefficient (throws when mixed).
    int parity() const {
        if (terms_.empty()) return 0;
        int p = terms_.begin()->first.parity();
        for (const auto& [m, c] : terms_)
            if (m.parity() != p) throw GradingError("parity-inhomogeneous scalar: " + str());
        return p;
    }
    bool parity_homogeneous() const {
        if (terms_.empty()) return true;
        int p = terms_.begin()->first.parity();
        for (const auto& [m, c] : terms_)
            if (m.parity() != p) return false;
        return true;
    }
    bool is_even() const { return parity_homogeneous() && (terms_.empty() || parity() == 0); }

    /// Split into the even and odd parts of the coefficient ring grading.
    std::pair<Scalar, Scalar> parity_split() const {
        Scalar even, odd;
        for (const auto& [m, c] : terms_) (m.parity() ? odd : even).terms_[m] = c;
        return {std::move(even), std::move(odd)};
    }
    bool has_odd_part() const {
        for (const auto& [m, c] : terms_)
            if (m.parity()) return true;
        return false;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Scalar r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        Scalar r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Scalar operator-(const Scalar& a) {
        Scalar r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                ParamMonomial m;
                int sign = monomial_mul(ma, mb, m);
                if (sign == 0) continue;
                GaussianRational c = ca * cb;
                if (sign < 0) c = -c;
                r.add_term(m, c);
            }
        return r;
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.str() < b.str(); }

    /// i -> -i on every coefficient; odd products reverse order under the
    /// conjugation antiautomorphism, contributing (-1)^{k(k-1)/2}.
    Scalar conj() const {
        Scalar r;
        for (const auto& [m, c] : terms_) {
            int k = 0;
            for (int b = 0; b < 6; ++b) k += (m.odd >> b) & 1;
            GaussianRational cc = c.conj();
            if (((k * (k - 1) / 2) & 1) != 0) cc = -cc;
            r.terms_[m] = cc;
        }
        return r;
    }

    bool depends_on(Param p) const {
        for (const auto& [m, c] : terms_)
            if (m.degree_of(p) > 0) return true;
        return false;
    }

    /// Every term carries at least one power of p (true for the zero scalar).
    bool divisible_by(Param p) const {
        for (const auto& [m, c] : terms_)
            if (m.degree_of(p) == 0) return false;
        return true;
    }

    /// Substitute a numeric value for a parameter. Odd parameters admit only
    /// the value zero (a nonzero number is not Grassmann-odd).
    Scalar substitute(Param p, const GaussianRational& value) const {
        if (param_is_odd(p) && !value.is_zero())
            throw ConfigError("odd parameter " + std::string(param_name(p)) +
                              " can only be substituted by zero");
        Scalar r;
        for (const auto& [m, c] : terms_) {
            int e = m.degree_of(p);
            if (e == 0) {
                r.add_term(m, c);
                continue;
            }
            GaussianRational scaled = c * value.pow(static_cast<unsigned>(e));
            if (scaled.is_zero()) continue;
            ParamMonomial m2 = m;
            if (param_is_odd(p))
                m2.odd = static_cast<std::uint8_t>(m2.odd & ~(1u << ParamMonomial::odd_bit(p)));
            else
                m2.even[ParamMonomial::even_slot(p)] = 0;
            r.add_term(m2, scaled);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string piece;
            if (m.is_one()) {
                piece = c.str();
            } else if (c == GaussianRational(1)) {
                piece = m.str();
            } else if (c == GaussianRational(-1)) {
                piece = "-" + m.str();
            } else {
                piece = (c.needs_parens() ? "(" + c.str() + ")" : c.str()) + "*" + m.str();
            }
            if (!first && !piece.empty() && piece[0] != '-') out += "+";
            out += piece;
            first = false;
        }
        return out;
    }

    /// Needs parentheses when printed as a coefficient of a word.
    bool needs_parens() const {
        if (terms_.size() > 1) return true;
        if (terms_.empty()) return false;
        const auto& [m, c] = *terms_.begin();
        if (m.is_one()) return c.needs_parens();
        return !(c == GaussianRational(1));
    }

  private:
    void add_term(const ParamMonomial& m, const GaussianRational& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[m] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Terms terms_;
};

} // namespace hsbrst
