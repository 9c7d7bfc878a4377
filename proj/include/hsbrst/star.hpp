#pragma once

#include "hsbrst/report.hpp"
#include "hsbrst/sampling.hpp"
#include "hsbrst/superops.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace hsbrst {

/// The constant deformation tensor A^{a mu} (a spinor, mu vector index);
/// Grassmann-even, coordinate-independent entries.
struct DeformationTensor {
    std::array<std::array<Scalar, 3>, 2> entries{}; // [a-1][mu]

    static DeformationTensor zero() { return {}; }

    /// Fully symbolic tensor: entry (a, mu) is the formal parameter A{a}{mu}.
    static DeformationTensor symbolic() {
        DeformationTensor t;
        for (int a = 1; a <= 2; ++a)
            for (int mu = 0; mu < 3; ++mu) t.entries[a - 1][mu] = Scalar::param(a_param(a, mu));
        return t;
    }

    const Scalar& at(int a, int mu) const { return entries[a - 1][mu]; }
    Scalar& at(int a, int mu) { return entries[a - 1][mu]; }

    bool is_zero() const {
        for (const auto& row : entries)
            for (const auto& e : row)
                if (!e.is_zero()) return false;
        return true;
    }

    /// Space-like restriction: the mu = 0 column is dropped.
    DeformationTensor spacelike() const {
        DeformationTensor t = *this;
        t.entries[0][0] = Scalar();
        t.entries[1][0] = Scalar();
        return t;
    }
};

/// Which bidifferential exponent the product uses. The antisymmetric form is
/// the one that reproduces the defining commutator [theta^{++a}, x^mu] = A^{a mu};
/// the symmetric form (the printed operator-ordering read with the same
/// transport signs) yields vanishing commutators and is kept behind this flag.
enum class ExponentForm { antisymmetric, symmetric };

namespace star_detail {

/// f (x) g decomposed into parity-homogeneous left slots.
using TensorTerm = std::pair<SuperPoly, SuperPoly>;

inline void push_split(std::vector<TensorTerm>& out, const SuperPoly& f, const SuperPoly& g) {
    if (f.is_zero() || g.is_zero()) return;
    SuperPoly even(f.basis()), odd(f.basis());
    for (const auto& [t, c] : f.terms()) {
        int wp = popcount8(t.theta) & 1;
        if (!c.has_odd_part()) {
            (wp ? odd : even).add(t, c);
            continue;
        }
        auto [ce, co] = c.parity_split();
        if (!ce.is_zero()) (wp ? odd : even).add(t, ce);
        ((wp ^ 1) ? odd : even).add(t, co);
    }
    if (!even.is_zero()) out.emplace_back(even, g);
    if (!odd.is_zero()) out.emplace_back(odd, g);
}

/// One application of the exponent bidifferential
///   P(f (x) g) = sum_{a,mu} A^{a mu} [ (-1)^{e(f)} d_mu f (x) d_a g  -+  d_a f (x) d_mu g ]
/// with d_a the left derivative along theta^{++a}; the odd operator acquires
/// (-1)^{e(f)} when transported past the first factor.
inline std::vector<TensorTerm> apply_exponent(const std::vector<TensorTerm>& in,
                                              const DeformationTensor& A, ExponentForm form) {
    std::vector<TensorTerm> out;
    const Scalar second_sign = form == ExponentForm::antisymmetric ? Scalar(-1) : Scalar(1);
    for (const auto& [f, g] : in) {
        int ef = f.parity();
        for (int a = 1; a <= 2; ++a) {
            int th = theta_index(0, a);
            for (int mu = 0; mu < 3; ++mu) {
                const Scalar& coeff = A.at(a, mu);
                if (coeff.is_zero()) continue;
                SuperPoly t1f = x_derivative(f, mu);
                SuperPoly t1g = grassmann_derivative(g, th);
                Scalar c1 = (ef & 1) ? -coeff : coeff;
                push_split(out, c1 * t1f, t1g);
                SuperPoly t2f = grassmann_derivative(f, th);
                SuperPoly t2g = x_derivative(g, mu);
                push_split(out, (second_sign * coeff) * t2f, t2g);
            }
        }
    }
    return out;
}

} // namespace star_detail

inline constexpr int kStarOrderBound = 12;

/// The deformed star product: exp(-1/2 A^{a mu} P) on f (x) g, then merge.
/// Terminates on polynomial inputs: every order consumes one theta^{++}
/// derivative on one slot and one x-derivative on the other.
inline SuperPoly star(const SuperPoly& f, const SuperPoly& g, const DeformationTensor& A,
                      ExponentForm form = ExponentForm::antisymmetric, int* order_used = nullptr) {
    std::vector<star_detail::TensorTerm> level;
    star_detail::push_split(level, f, g);
    SuperPoly result(f.basis());
    int order = 0;
    while (!level.empty()) {
        for (const auto& [lf, lg] : level) result += lf * lg;
        ++order;
        if (order > kStarOrderBound)
            throw ConfigError("star-product series exceeded the order bound");
        level = star_detail::apply_exponent(level, A, form);
        Scalar step = Scalar::of(-1, 2) * Scalar(GaussianRational(Rational(1) / order));
        for (auto& [lf, lg] : level) lf = step * lf;
    }
    if (order_used) *order_used = order - 1;
    return result;
}

/// star(f,g) - (-1)^{e(f)e(g)} star(g,f) for parity-homogeneous inputs.
inline SuperPoly star_commutator(const SuperPoly& f, const SuperPoly& g, const DeformationTensor& A,
                                 ExponentForm form = ExponentForm::antisymmetric) {
    int ef = f.parity();
    int eg = g.parity();
    SuperPoly fg = star(f, g, A, form);
    SuperPoly gf = star(g, f, A, form);
    if (ef == 1 && eg == 1) return fg + gf;
    return fg - gf;
}

/// Property suite: the defining commutator table, associativity and
/// bilinearity on random samples, A -> 0 degeneration, undeformed
/// coordinates, parity, closure, and the series order bound.
inline VerificationReport verify_star_properties(const DeformationTensor& A, std::uint64_t seed,
                                                 int samples) {
    VerificationReport rep;
    rep.suite = "star";
    rep.seed = seed;
    rep.samples = samples;
    SuperPolyShape shape;
    shape.max_terms = 3;
    shape.max_x_degree = 2;
    shape.max_u_degree = 1;

    {
        RelationReport r;
        r.name = "[thpp_a, x_mu] = A(a,mu) for all six pairs";
        for (int a = 1; a <= 2; ++a)
            for (int mu = 0; mu < 3; ++mu) {
                SuperPoly lhs = star_commutator(SuperPoly::theta(theta_index(0, a)), SuperPoly::x(mu), A);
                SuperPoly rhs = SuperPoly::constant(A.at(a, mu));
                if (lhs != rhs) {
                    r.status = RelationStatus::fail;
                    r.failures.emplace_back("a=" + std::to_string(a) + ", mu=" + std::to_string(mu),
                                            (lhs - rhs).str());
                }
            }
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "[th0_a, x_mu] = 0 and [thmm_a, x_mu] = 0";
        for (int fam = 1; fam <= 2; ++fam)
            for (int a = 1; a <= 2; ++a)
                for (int mu = 0; mu < 3; ++mu) {
                    SuperPoly lhs =
                        star_commutator(SuperPoly::theta(theta_index(fam, a)), SuperPoly::x(mu), A);
                    if (!lhs.is_zero()) {
                        r.status = RelationStatus::fail;
                        r.failures.emplace_back("family=" + std::to_string(fam) + " a=" + std::to_string(a) +
                                                    " mu=" + std::to_string(mu),
                                                lhs.str());
                    }
                }
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "[x_mu, x_nu] = 0";
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) {
                SuperPoly lhs = star_commutator(SuperPoly::x(mu), SuperPoly::x(nu), A);
                if (!lhs.is_zero()) {
                    r.status = RelationStatus::fail;
                    r.failures.emplace_back("mu=" + std::to_string(mu) + " nu=" + std::to_string(nu),
                                            lhs.str());
                }
            }
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "associativity (sampled)";
        Rng rng(seed);
        int max_order = 0;
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng, shape);
            SuperPoly g = random_superpoly(rng, shape);
            SuperPoly h = random_superpoly(rng, shape);
            int o1 = 0, o2 = 0;
            SuperPoly left = star(star(f, g, A, ExponentForm::antisymmetric, &o1), h, A);
            SuperPoly right = star(f, star(g, h, A), A, ExponentForm::antisymmetric, &o2);
            max_order = std::max({max_order, o1, o2});
            if (left != right) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back("sample " + std::to_string(i), (left - right).str());
            }
        }
        if (r.status == RelationStatus::pass)
            r.note = std::to_string(samples) + " samples, max series order " + std::to_string(max_order);
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "bilinearity (sampled)";
        Rng rng(seed + 17);
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng, shape);
            SuperPoly g = random_superpoly(rng, shape);
            SuperPoly h = random_superpoly(rng, shape);
            Scalar c(rng.small_coeff());
            SuperPoly lhs = star(f + c * g, h, A);
            SuperPoly rhs = star(f, h, A) + c * star(g, h, A);
            if (lhs != rhs) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back("sample " + std::to_string(i), (lhs - rhs).str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "A -> 0 degeneration (sampled)";
        Rng rng(seed + 34);
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng, shape);
            SuperPoly g = random_superpoly(rng, shape);
            SuperPoly lhs = star(f, g, DeformationTensor::zero());
            if (lhs != f * g) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back("sample " + std::to_string(i), (lhs - f * g).str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "parity preserved (sampled)";
        Rng rng(seed + 51);
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            int pf = rng.below(2), pg = rng.below(2);
            SuperPoly f = random_homogeneous_superpoly(rng, pf, shape);
            SuperPoly g = random_homogeneous_superpoly(rng, pg, shape);
            SuperPoly prod = star(f, g, A);
            if (!prod.parity_homogeneous() || (!prod.is_zero() && prod.parity() != ((pf + pg) & 1))) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back("sample " + std::to_string(i), prod.str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }
    {
        RelationReport r;
        r.name = "closure: no new coordinate symbols (sampled)";
        Rng rng(seed + 68);
        SuperPolyShape closed = shape;
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng, closed).without_theta(
                static_cast<std::uint8_t>((1u << th_mm1) | (1u << th_mm2)));
            SuperPoly g = random_superpoly(rng, closed).without_theta(
                static_cast<std::uint8_t>((1u << th_mm1) | (1u << th_mm2)));
            SuperPoly prod = star(f, g, A);
            if (prod.depends_on_theta(th_mm1) || prod.depends_on_theta(th_mm2)) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back("sample " + std::to_string(i), prod.str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }
    return rep;
}

} // namespace hsbrst
