#pragma once

#include "hsbrst/superpoly.hpp"

#include <functional>
#include <string>
#include <utility>

namespace hsbrst {

// ---------------------------------------------------------------------------
// Primitive operators

/// Left Grassmann derivative d/dtheta_idx; nilpotent. The odd operator
/// transports past an odd coefficient with a sign.
inline SuperPoly grassmann_derivative(const SuperPoly& f, int idx) {
    SuperPoly r(f.basis());
    std::uint8_t bit = static_cast<std::uint8_t>(1u << idx);
    for (const auto& [t, c] : f.terms()) {
        if (!(t.theta & bit)) continue;
        int below = 0;
        for (int j = 0; j < idx; ++j)
            if (t.theta & (1u << j)) ++below;
        STerm nt = t;
        nt.theta = static_cast<std::uint8_t>(t.theta & ~bit);
        // passing the odd part of the coefficient costs a sign
        Scalar c2 = c;
        if (c.has_odd_part()) {
            auto [even, odd] = c.parity_split();
            c2 = even - odd;
        }
        r.add(nt, (below & 1) ? -c2 : c2);
    }
    return r;
}

/// Left multiplication by theta_idx.
inline SuperPoly theta_mul(const SuperPoly& f, int idx) {
    SuperPoly r(f.basis());
    std::uint8_t bit = static_cast<std::uint8_t>(1u << idx);
    for (const auto& [t, c] : f.terms()) {
        if (t.theta & bit) continue;
        int below = 0;
        for (int j = 0; j < idx; ++j)
            if (t.theta & (1u << j)) ++below;
        STerm nt = t;
        nt.theta = static_cast<std::uint8_t>(t.theta | bit);
        Scalar c2 = c;
        if (c.has_odd_part()) {
            auto [even, odd] = c.parity_split();
            c2 = even - odd;
        }
        r.add(nt, (below & 1) ? -c2 : c2);
    }
    return r;
}

/// Plain d/dx_comp on the stored component.
inline SuperPoly x_derivative(const SuperPoly& f, int comp) {
    SuperPoly r(f.basis());
    for (const auto& [t, c] : f.terms()) {
        if (!t.x[comp]) continue;
        STerm nt = t;
        nt.x[comp] -= 1;
        r.add(nt, Scalar(static_cast<long long>(t.x[comp])) * c);
    }
    return r;
}

/// Bispinor derivative d_{ab} under the symmetrized convention
/// d_{ab} x^{cd} = 1/2 (delta_a^c delta_b^d + delta_a^d delta_b^c):
/// d_{11} = d/dx0, d_{12} = d_{21} = 1/2 d/dx1, d_{22} = d/dx2.
inline SuperPoly x_derivative_ab(const SuperPoly& f, int a, int b) {
    if (a == 1 && b == 1) return x_derivative(f, 0);
    if (a == 2 && b == 2) return x_derivative(f, 2);
    return Scalar::of(1, 2) * x_derivative(f, 1);
}

enum class HarmonicOp { dpp, dmm, d0 };

/// The harmonic vector fields d++ = u+ d/du-, d-- = u- d/du+,
/// d0 = u+ d/du+ - u- d/du- (the charge counter), with recanonicalization.
inline SuperPoly harmonic_derivative(const SuperPoly& f, HarmonicOp which) {
    SuperPoly r(f.basis());
    for (const auto& [t, c] : f.terms()) {
        switch (which) {
            case HarmonicOp::dpp:
                for (int i = 0; i < 2; ++i) {
                    if (!t.u[2 + i]) continue; // u-_i exponent
                    STerm nt = t;
                    nt.u[2 + i] -= 1;
                    nt.u[i] += 1;
                    r.add(nt, Scalar(static_cast<long long>(t.u[2 + i])) * c);
                }
                break;
            case HarmonicOp::dmm:
                for (int i = 0; i < 2; ++i) {
                    if (!t.u[i]) continue; // u+_i exponent
                    STerm nt = t;
                    nt.u[i] -= 1;
                    nt.u[2 + i] += 1;
                    r.add(nt, Scalar(static_cast<long long>(t.u[i])) * c);
                }
                break;
            case HarmonicOp::d0: {
                long long charge = t.u[0] + t.u[1] - t.u[2] - t.u[3];
                if (charge) r.add(t, Scalar(charge) * c);
                break;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Composite covariant derivatives and supersymmetry generators

struct OperatorTag {
    enum class Kind {
        dpp, dmm, d0,          // harmonic vector fields
        Dpp, Dmm, D0,          // harmonic covariant derivatives
        Dpp_a, Dmm_a, D0_a,    // spinor covariant derivatives
        Qpp_a, Qmm_a, Q0_a,    // supersymmetry generators
        dtheta,                // d/dtheta_index (index = ThetaIndex)
        dx,                    // d/dx_m (index = component)
    };
    Kind kind;
    int index = 0; // spinor index a (1-based) or theta/x index

    static OperatorTag plain(Kind k) { return {k, 0}; }
    static OperatorTag spinor(Kind k, int a) { return {k, a}; }
};

inline SuperPoly apply_operator(const SuperPoly& f, const OperatorTag& tag) {
    using K = OperatorTag::Kind;
    const Scalar I = Scalar::i();
    switch (tag.kind) {
        case K::dpp: return harmonic_derivative(f, HarmonicOp::dpp);
        case K::dmm: return harmonic_derivative(f, HarmonicOp::dmm);
        case K::d0: return harmonic_derivative(f, HarmonicOp::d0);
        case K::dtheta: return grassmann_derivative(f, tag.index);
        case K::dx: return x_derivative(f, tag.index);

        case K::Dpp: {
            // d++ + 2i th^{++a} th^{0b} d_ab + th^{++a} d/dth^{0a} + 2 th^{0a} d/dth^{--a}
            SuperPoly r = harmonic_derivative(f, HarmonicOp::dpp);
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b)
                    r += Scalar(2) * I *
                         theta_mul(theta_mul(x_derivative_ab(f, a, b), theta_index(1, b)),
                                   theta_index(0, a));
            for (int a = 1; a <= 2; ++a)
                r += theta_mul(grassmann_derivative(f, theta_index(1, a)), theta_index(0, a));
            for (int a = 1; a <= 2; ++a)
                r += Scalar(2) * theta_mul(grassmann_derivative(f, theta_index(2, a)), theta_index(1, a));
            return r;
        }
        case K::Dmm: {
            SuperPoly r = harmonic_derivative(f, HarmonicOp::dmm);
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b)
                    r -= Scalar(2) * I *
                         theta_mul(theta_mul(x_derivative_ab(f, a, b), theta_index(1, b)),
                                   theta_index(2, a));
            for (int a = 1; a <= 2; ++a)
                r += theta_mul(grassmann_derivative(f, theta_index(1, a)), theta_index(2, a));
            for (int a = 1; a <= 2; ++a)
                r += Scalar(2) * theta_mul(grassmann_derivative(f, theta_index(0, a)), theta_index(1, a));
            return r;
        }
        case K::D0: {
            SuperPoly r = harmonic_derivative(f, HarmonicOp::d0);
            for (int a = 1; a <= 2; ++a)
                r += Scalar(2) * theta_mul(grassmann_derivative(f, theta_index(0, a)), theta_index(0, a));
            for (int a = 1; a <= 2; ++a)
                r -= Scalar(2) * theta_mul(grassmann_derivative(f, theta_index(2, a)), theta_index(2, a));
            return r;
        }

        case K::Dpp_a:
            return grassmann_derivative(f, theta_index(2, tag.index));
        case K::Dmm_a: {
            SuperPoly r = grassmann_derivative(f, theta_index(0, tag.index));
            for (int b = 1; b <= 2; ++b)
                r += Scalar(2) * I * theta_mul(x_derivative_ab(f, tag.index, b), theta_index(2, b));
            return r;
        }
        case K::D0_a: {
            SuperPoly r = Scalar::of(-1, 2) * grassmann_derivative(f, theta_index(1, tag.index));
            for (int b = 1; b <= 2; ++b)
                r += I * theta_mul(x_derivative_ab(f, tag.index, b), theta_index(1, b));
            return r;
        }

        case K::Qpp_a: {
            SuperPoly r = grassmann_derivative(f, theta_index(2, tag.index));
            for (int b = 1; b <= 2; ++b)
                r -= theta_mul(x_derivative_ab(f, tag.index, b), theta_index(0, b));
            return r;
        }
        case K::Qmm_a: {
            SuperPoly r = grassmann_derivative(f, theta_index(0, tag.index));
            for (int b = 1; b <= 2; ++b)
                r -= theta_mul(x_derivative_ab(f, tag.index, b), theta_index(2, b));
            return r;
        }
        case K::Q0_a: {
            SuperPoly r = Scalar::of(-1, 2) * grassmann_derivative(f, theta_index(1, tag.index));
            for (int b = 1; b <= 2; ++b)
                r -= theta_mul(x_derivative_ab(f, tag.index, b), theta_index(1, b));
            return r;
        }
    }
    throw ConfigError("unknown operator tag");
}

inline SuperPoly covariant_derivative(const SuperPoly& f, const OperatorTag& tag) {
    return apply_operator(f, tag);
}

inline SuperPoly susy_generator(const SuperPoly& f, const OperatorTag& tag) {
    using K = OperatorTag::Kind;
    if (tag.kind != K::Qpp_a && tag.kind != K::Qmm_a && tag.kind != K::Q0_a)
        throw ConfigError("susy_generator expects a Q tag");
    return apply_operator(f, tag);
}

// ---------------------------------------------------------------------------
// Analyticity and Berezin integration

/// D++_a f = 0 for a = 1,2, i.e. no theta^{--} dependence. Requires the
/// analytic basis when f depends on x, since the condition singles out
/// functions of the analytic coordinates.
inline bool is_analytic(const SuperPoly& f) {
    if (f.depends_on_x() && f.basis() != Basis::analytic)
        throw ConfigError("analyticity test requires the analytic x-basis");
    for (int a = 1; a <= 2; ++a)
        if (!apply_operator(f, OperatorTag::spinor(OperatorTag::Kind::Dpp_a, a)).is_zero())
            return false;
    return true;
}

/// Spinor square X^a X_a = eps^{ab} X_b X_a with eps^{12} = 1:
/// X^2 f = X_2(X_1 f) - X_1(X_2 f).
inline SuperPoly spinor_square(const SuperPoly& f, OperatorTag::Kind kind) {
    SuperPoly f1 = apply_operator(f, OperatorTag::spinor(kind, 1));
    SuperPoly f2 = apply_operator(f, OperatorTag::spinor(kind, 2));
    return apply_operator(f1, OperatorTag::spinor(kind, 2)) -
           apply_operator(f2, OperatorTag::spinor(kind, 1));
}

enum class Measure { full_d9z, analytic };

/// Berezin integration densities:
///   full:     -1/16 (D++)^2 (D--)^2 (D0)^2, then all theta -> 0;
///   analytic:   1/4 (D--)^2 (D0)^2, then all theta -> 0.
/// The operator string acts as written, (D++)^2 first; under that order the
/// full measure annihilates D++_a-exact integrands identically. The d^3x and
/// du integrations are not performed; a symbolic density in x and u is
/// returned.
inline SuperPoly berezin_integrate(const SuperPoly& f, Measure m) {
    SuperPoly r = f;
    if (m == Measure::full_d9z) {
        r = spinor_square(r, OperatorTag::Kind::Dpp_a);
        r = spinor_square(r, OperatorTag::Kind::Dmm_a);
        r = spinor_square(r, OperatorTag::Kind::D0_a);
        r = Scalar::of(-1, 16) * r;
    } else {
        r = spinor_square(r, OperatorTag::Kind::Dmm_a);
        r = spinor_square(r, OperatorTag::Kind::D0_a);
        r = Scalar::of(1, 4) * r;
    }
    return r.without_theta(0x3f);
}

// ---------------------------------------------------------------------------
// Tilde conjugation and basis change

/// Index raising on the harmonics, oriented so that u^{+i} u-_i reduces to 1
/// under the canonical rewrite: u^{+1} = -u+_2, u^{+2} = u+_1 (same for u-).
inline std::pair<int, int> u_raise(int k) {
    switch (k) {
        case 0: return {1, -1};  // u+_1 -> -u+_2
        case 1: return {0, 1};   // u+_2 -> +u+_1
        case 2: return {3, -1};  // u-_1 -> -u-_2
        case 3: return {2, 1};   // u-_2 -> +u-_1
    }
    throw ConfigError("bad harmonic index");
}

/// Conjugation table: x and theta self-conjugate, u^{+-}_i -> u^{+- i},
/// coefficients conjugated, Grassmann factor order reversed with sign.
inline SuperPoly tilde_conjugate(const SuperPoly& f) {
    SuperPoly r(f.basis());
    for (const auto& [t, c] : f.terms()) {
        STerm nt = t;
        int sign = 1;
        // reversing a k-letter Grassmann word: (-1)^{k(k-1)/2}
        int k = popcount8(t.theta);
        if (((k * (k - 1) / 2) & 1) != 0) sign = -sign;
        // the odd part of the coefficient returns to the front of the
        // reversed word with a sign
        Scalar c_eff = c;
        if (c.has_odd_part() && (k & 1)) {
            auto [even, odd] = c.parity_split();
            c_eff = even - odd;
        }
        // harmonic raising, component by component
        nt.u = {0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            auto [img, s] = u_raise(i);
            nt.u[img] += t.u[i];
            if (s < 0 && (t.u[i] & 1)) sign = -sign;
        }
        Scalar coeff = c_eff.conj();
        if (sign < 0) coeff = -coeff;
        r.add(nt, coeff);
    }
    return r;
}

/// x^{ab} -> x^{ab} + delta^{ab} with delta the two-theta shift of the
/// analytic coordinates: x_A^{ab} = x^{ab} + i(th^{++a} th^{--b} + th^{++b} th^{--a}).
inline SuperPoly basis_shift(int comp, const Scalar& orientation) {
    // comp 0 = (11), 1 = (12), 2 = (22)
    SuperPoly s(Basis::central);
    auto pair_term = [&](int a, int b, const Scalar& coeff) {
        SuperPoly p = theta_mul(theta_mul(SuperPoly::constant(Scalar(1)), theta_index(2, b)),
                                theta_index(0, a));
        s += coeff * p;
    };
    Scalar c = orientation * Scalar::i();
    if (comp == 0) pair_term(1, 1, Scalar(2) * c);
    if (comp == 2) pair_term(2, 2, Scalar(2) * c);
    if (comp == 1) {
        pair_term(1, 2, c);
        pair_term(2, 1, c);
    }
    return s;
}

/// Substitute each x^m by x^m + shift_m (nilpotent shifts; binomial expansion
/// terminates). Used for central <-> analytic changes of basis.
inline SuperPoly substitute_x(const SuperPoly& f, const std::array<SuperPoly, 3>& images, Basis out_basis) {
    SuperPoly r(out_basis);
    for (const auto& [t, c] : f.terms()) {
        STerm skeleton = t;
        skeleton.x = {0, 0, 0};
        SuperPoly acc(out_basis);
        {
            STerm sk = skeleton;
            acc.add(sk, c);
        }
        for (int m = 0; m < 3; ++m)
            for (int e = 0; e < t.x[m]; ++e) acc = acc * images[m];
        r += acc;
    }
    return r;
}

/// Express a central-basis polynomial in analytic coordinates:
/// x = x_A - i(thth), so each x^m maps to x^m + (negative shift).
inline SuperPoly to_analytic_basis(const SuperPoly& f) {
    if (f.basis() != Basis::central) throw ConfigError("to_analytic_basis expects the central basis");
    std::array<SuperPoly, 3> images = {
        SuperPoly::x(0) + (Scalar(-1) * basis_shift(0, Scalar(1))),
        SuperPoly::x(1) + (Scalar(-1) * basis_shift(1, Scalar(1))),
        SuperPoly::x(2) + (Scalar(-1) * basis_shift(2, Scalar(1))),
    };
    for (auto& p : images) p.set_basis(Basis::analytic);
    SuperPoly g = f;
    g.set_basis(Basis::analytic);
    return substitute_x(g, images, Basis::analytic);
}

inline SuperPoly to_central_basis(const SuperPoly& f) {
    if (f.basis() != Basis::analytic) throw ConfigError("to_central_basis expects the analytic basis");
    std::array<SuperPoly, 3> images = {
        SuperPoly::x(0) + basis_shift(0, Scalar(1)),
        SuperPoly::x(1) + basis_shift(1, Scalar(1)),
        SuperPoly::x(2) + basis_shift(2, Scalar(1)),
    };
    SuperPoly g = f;
    g.set_basis(Basis::central);
    return substitute_x(g, images, Basis::central);
}

} // namespace hsbrst
