#pragma once

#include "hsbrst/errors.hpp"
#include "hsbrst/scalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hsbrst {

/// Grassmann coordinate indices in the fixed canonical product order.
enum ThetaIndex : int {
    th_pp1 = 0, // theta^{++1}
    th_pp2 = 1,
    th_01 = 2, // theta^{0 1}
    th_02 = 3,
    th_mm1 = 4, // theta^{--1}
    th_mm2 = 5,
};

inline const char* theta_name(int idx) {
    static const char* names[6] = {"thpp1", "thpp2", "th01", "th02", "thmm1", "thmm2"};
    return names[idx];
}

/// theta^{H a} for H in {++ (0), 0 (1), -- (2)} and spinor a in {1,2}.
inline int theta_index(int family, int a) { return family * 2 + (a - 1); }

inline int theta_hcharge(int idx) { return idx < 2 ? 2 : (idx < 4 ? 0 : -2); }

/// Harmonic exponents in the order u+_1, u+_2, u-_1, u-_2.
using UMono = std::array<int, 4>;

inline const char* u_name(int k) {
    static const char* names[4] = {"up1", "up2", "um1", "um2"};
    return names[k];
}

/// Spacetime exponents for the three symmetric-bispinor components
/// x0 = x^{11}, x1 = x^{12} = x^{21}, x2 = x^{22}. The vector index mu of the
/// deformation acts on the same three components.
using XMono = std::array<int, 3>;

enum class Basis { central, analytic };

inline const char* basis_name(Basis b) { return b == Basis::central ? "central" : "analytic"; }

/// Key of one monomial term.
struct STerm {
    XMono x{0, 0, 0};
    std::uint8_t theta = 0; // bitmask over ThetaIndex, canonical ascending order
    UMono u{0, 0, 0, 0};

    friend bool operator<(const STerm& a, const STerm& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.u < b.u;
    }
    friend bool operator==(const STerm& a, const STerm& b) {
        return a.x == b.x && a.theta == b.theta && a.u == b.u;
    }
};

inline int popcount8(std::uint8_t m) {
    int n = 0;
    while (m) {
        n += m & 1;
        m >>= 1;
    }
    return n;
}

/// A polynomial in (x, theta, u) with exact Scalar coefficients, kept in
/// canonical form: Grassmann factors ascending, no repeated factor, harmonic
/// monomials reduced modulo the SU(2) relation u+_1 u-_2 = 1 + u+_2 u-_1.
class SuperPoly {
  public:
    using Terms = std::map<STerm, Scalar>;

    explicit SuperPoly(Basis basis = Basis::central) : basis_(basis) {}

    static SuperPoly zero(Basis basis = Basis::central) { return SuperPoly(basis); }
    static SuperPoly constant(Scalar c, Basis basis = Basis::central) {
        SuperPoly p(basis);
        p.add(STerm{}, std::move(c));
        return p;
    }
    static SuperPoly x(int comp, Basis basis = Basis::central) {
        SuperPoly p(basis);
        STerm t;
        t.x[comp] = 1;
        p.add(t, Scalar(1));
        return p;
    }
    static SuperPoly theta(int idx, Basis basis = Basis::central) {
        SuperPoly p(basis);
        STerm t;
        t.theta = static_cast<std::uint8_t>(1u << idx);
        p.add(t, Scalar(1));
        return p;
    }
    static SuperPoly u_plus(int i, Basis basis = Basis::central) {
        SuperPoly p(basis);
        STerm t;
        t.u[i - 1] = 1;
        p.add(t, Scalar(1));
        return p;
    }
    static SuperPoly u_minus(int i, Basis basis = Basis::central) {
        SuperPoly p(basis);
        STerm t;
        t.u[2 + i - 1] = 1;
        p.add(t, Scalar(1));
        return p;
    }

    Basis basis() const { return basis_; }
    void set_basis(Basis b) { basis_ = b; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Canonicalizing insertion: reduces the harmonic part.
    void add(const STerm& t, const Scalar& c) {
        if (c.is_zero()) return;
        int k = std::min(t.u[0], t.u[3]);
        if (k == 0) {
            insert_raw(t, c);
            return;
        }
        // (u+_1 u-_2)^k = (1 + u+_2 u-_1)^k, binomial expansion
        Rational binom = 1;
        for (int j = 0; j <= k; ++j) {
            STerm r = t;
            r.u[0] = t.u[0] - k;
            r.u[3] = t.u[3] - k;
            r.u[1] = t.u[1] + j;
            r.u[2] = t.u[2] + j;
            insert_raw(r, c * Scalar(GaussianRational(binom)));
            binom = binom * (k - j) / (j + 1);
        }
    }

    void add(const SuperPoly& other) {
        require_same_basis(other);
        for (const auto& [t, c] : other.terms_) add(t, c);
    }

    friend SuperPoly operator+(const SuperPoly& a, const SuperPoly& b) {
        SuperPoly r = a;
        r.add(b);
        return r;
    }
    friend SuperPoly operator-(const SuperPoly& a, const SuperPoly& b) {
        SuperPoly r = a;
        for (const auto& [t, c] : b.terms_) r.add(t, -c);
        return r;
    }
    friend SuperPoly operator-(const SuperPoly& a) {
        SuperPoly r(a.basis_);
        for (const auto& [t, c] : a.terms_) r.terms_[t] = -c;
        return r;
    }
    friend SuperPoly operator*(const Scalar& s, const SuperPoly& p) {
        SuperPoly r(p.basis_);
        for (const auto& [t, c] : p.terms_) {
            Scalar sc = s * c;
            if (!sc.is_zero()) r.terms_[t] = std::move(sc);
        }
        return r;
    }
    SuperPoly& operator+=(const SuperPoly& o) { add(o); return *this; }
    SuperPoly& operator-=(const SuperPoly& o) { return *this = *this - o; }

    friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SuperPoly& a, const SuperPoly& b) { return !(a == b); }

    /// Sign of merging two canonical Grassmann words (0 on a repeated factor):
    /// each factor of `b` moves left past the factors of `a` above it.
    static int merge_sign(std::uint8_t a, std::uint8_t b) {
        if (a & b) return 0;
        int inversions = 0;
        for (int i = 0; i < 6; ++i) {
            if (!(b & (1u << i))) continue;
            for (int j = i + 1; j < 6; ++j)
                if (a & (1u << j)) ++inversions;
        }
        return (inversions & 1) ? -1 : 1;
    }

    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
        a.require_same_basis(b);
        SuperPoly r(a.basis_);
        for (const auto& [ta, ca] : a.terms_)
            for (const auto& [tb, cb] : b.terms_) {
                int sign = merge_sign(ta.theta, tb.theta);
                if (sign == 0) continue;
                STerm t;
                for (int i = 0; i < 3; ++i) t.x[i] = ta.x[i] + tb.x[i];
                t.theta = ta.theta | tb.theta;
                for (int i = 0; i < 4; ++i) t.u[i] = ta.u[i] + tb.u[i];
                // the right coefficient transports past the left theta word;
                // its odd part picks up a sign there
                if (cb.has_odd_part() && (popcount8(ta.theta) & 1)) {
                    auto [even, odd] = cb.parity_split();
                    Scalar c = ca * (even - odd);
                    if (sign < 0) c = -c;
                    r.add(t, c);
                } else {
                    Scalar c = ca * cb;
                    if (sign < 0) c = -c;
                    r.add(t, c);
                }
            }
        return r;
    }

    /// Parity of one term, coefficient included (odd A-entries count);
    /// requires a parity-homogeneous coefficient.
    int term_parity(const STerm& t, const Scalar& c) const {
        return (popcount8(t.theta) + c.parity()) & 1;
    }

    /// Total Grassmann parity; throws on inhomogeneous input.
    int parity() const {
        if (terms_.empty()) return 0;
        if (!parity_homogeneous())
            throw GradingError("parity-inhomogeneous superspace polynomial: " + str());
        const auto& [t, c] = *terms_.begin();
        return term_parity(t, c.has_odd_part() ? c.parity_split().second : c);
    }

    bool parity_homogeneous() const {
        if (terms_.empty()) return true;
        int p = -1;
        for (const auto& [t, c] : terms_) {
            auto [even, odd] = c.parity_split();
            int wp = popcount8(t.theta) & 1;
            if (!even.is_zero()) {
                if (p < 0) p = wp;
                else if (p != wp) return false;
            }
            if (!odd.is_zero()) {
                if (p < 0) p = wp ^ 1;
                else if (p != (wp ^ 1)) return false;
            }
        }
        return true;
    }

    bool depends_on_theta(int idx) const {
        for (const auto& [t, c] : terms_)
            if (t.theta & (1u << idx)) return true;
        return false;
    }
    bool depends_on_x() const {
        for (const auto& [t, c] : terms_)
            if (t.x[0] || t.x[1] || t.x[2]) return true;
        return false;
    }

    /// Drop every term containing any of the masked thetas.
    SuperPoly without_theta(std::uint8_t mask) const {
        SuperPoly r(basis_);
        for (const auto& [t, c] : terms_)
            if (!(t.theta & mask)) r.terms_[t] = c;
        return r;
    }

    SuperPoly map_coeffs(const Scalar& factor) const { return factor * *this; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [t, c] : terms_) {
            std::string mono;
            for (int i = 0; i < 3; ++i) {
                if (!t.x[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i);
                if (t.x[i] > 1) mono += "^" + std::to_string(t.x[i]);
            }
            for (int i = 0; i < 6; ++i)
                if (t.theta & (1u << i)) {
                    if (!mono.empty()) mono += "*";
                    mono += theta_name(i);
                }
            for (int i = 0; i < 4; ++i) {
                if (!t.u[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += u_name(i);
                if (t.u[i] > 1) mono += "^" + std::to_string(t.u[i]);
            }
            std::string coeff = c.needs_parens() ? "(" + c.str() + ")" : c.str();
            std::string piece;
            if (mono.empty())
                piece = coeff;
            else if (c == Scalar(1))
                piece = mono;
            else if (c == Scalar(-1))
                piece = "-" + mono;
            else
                piece = coeff + "*" + mono;
            if (!first && piece[0] != '-') out += " + ";
            else if (!first) { out += " - "; piece = piece.substr(1); }
            out += piece;
            first = false;
        }
        return out;
    }

  private:
    void insert_raw(const STerm& t, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_.emplace(t, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void require_same_basis(const SuperPoly& o) const {
        if (basis_ != o.basis_) throw ConfigError("superspace polynomials in different bases");
    }

    Basis basis_;
    Terms terms_;
};

} // namespace hsbrst
