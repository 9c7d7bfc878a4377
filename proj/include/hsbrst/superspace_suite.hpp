#pragma once

#include "hsbrst/report.hpp"
#include "hsbrst/sampling.hpp"
#include "hsbrst/superops.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hsbrst {

namespace superspace_detail {

using Op = std::function<SuperPoly(const SuperPoly&)>;

inline Op tag_op(OperatorTag t) {
    return [t](const SuperPoly& f) { return apply_operator(f, t); };
}

struct SampledRelation {
    std::string name;
    Op lhs;
    Op rhs;
};

/// anticommutator {A,B} and commutator [A,B] of operators
inline Op anti(Op a, Op b) {
    return [a, b](const SuperPoly& f) { return a(b(f)) + b(a(f)); };
}
inline Op comm(Op a, Op b) {
    return [a, b](const SuperPoly& f) { return a(b(f)) - b(a(f)); };
}
inline Op scale(Scalar c, Op a) {
    return [c, a](const SuperPoly& f) { return c * a(f); };
}

/// The derivative-algebra relations, one per printed identity and index
/// choice.
inline std::vector<SampledRelation> derivative_algebra_relations() {
    using K = OperatorTag::Kind;
    auto sp = [](K k, int a) { return tag_op(OperatorTag::spinor(k, a)); };
    auto pl = [](K k) { return tag_op(OperatorTag::plain(k)); };
    const Scalar I = Scalar::i();
    std::vector<SampledRelation> rels;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            auto dxab = [a, b](const SuperPoly& f) { return x_derivative_ab(f, a, b); };
            rels.push_back({"{Dpp_" + std::to_string(a) + ",Dmm_" + std::to_string(b) + "}=2i*d_ab",
                            anti(sp(K::Dpp_a, a), sp(K::Dmm_a, b)), scale(Scalar(2) * I, dxab)});
            rels.push_back({"{D0_" + std::to_string(a) + ",D0_" + std::to_string(b) + "}=-i*d_ab",
                            anti(sp(K::D0_a, a), sp(K::D0_a, b)), scale(Scalar(-1) * I, dxab)});
            rels.push_back({"{Dpp_" + std::to_string(a) + ",D0_" + std::to_string(b) + "}=0",
                            anti(sp(K::Dpp_a, a), sp(K::D0_a, b)),
                            [](const SuperPoly& f) { return SuperPoly(f.basis()); }});
            rels.push_back({"{Dmm_" + std::to_string(a) + ",D0_" + std::to_string(b) + "}=0",
                            anti(sp(K::Dmm_a, a), sp(K::D0_a, b)),
                            [](const SuperPoly& f) { return SuperPoly(f.basis()); }});
        }
    for (int a = 1; a <= 2; ++a) {
        rels.push_back({"[Dmm,Dpp_" + std::to_string(a) + "]=2*D0_a",
                        comm(pl(K::Dmm), sp(K::Dpp_a, a)), scale(Scalar(2), sp(K::D0_a, a))});
        rels.push_back({"[Dpp,Dmm_" + std::to_string(a) + "]=2*D0_a",
                        comm(pl(K::Dpp), sp(K::Dmm_a, a)), scale(Scalar(2), sp(K::D0_a, a))});
        rels.push_back({"[D0,Dpp_" + std::to_string(a) + "]=2*Dpp_a",
                        comm(pl(K::D0), sp(K::Dpp_a, a)), scale(Scalar(2), sp(K::Dpp_a, a))});
        rels.push_back({"[D0,Dmm_" + std::to_string(a) + "]=-2*Dmm_a",
                        comm(pl(K::D0), sp(K::Dmm_a, a)), scale(Scalar(-2), sp(K::Dmm_a, a))});
        rels.push_back({"[Dpp,D0_" + std::to_string(a) + "]=Dpp_a",
                        comm(pl(K::Dpp), sp(K::D0_a, a)), sp(K::Dpp_a, a)});
        rels.push_back({"[Dmm,D0_" + std::to_string(a) + "]=Dmm_a",
                        comm(pl(K::Dmm), sp(K::D0_a, a)), sp(K::Dmm_a, a)});
    }
    rels.push_back({"[dpp,dmm]=d0", comm(pl(K::dpp), pl(K::dmm)), pl(K::d0)});
    rels.push_back({"[Dpp,Dmm]=D0", comm(pl(K::Dpp), pl(K::Dmm)), pl(K::D0)});
    return rels;
}

} // namespace superspace_detail

/// Check a sampled operator relation on `samples` random polynomials;
/// reports the first counterexample.
inline RelationReport check_sampled_relation(const superspace_detail::SampledRelation& rel,
                                             std::uint64_t seed, int samples,
                                             const SuperPolyShape& shape = SuperPolyShape{}) {
    RelationReport rep;
    rep.name = rel.name;
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        SuperPoly f = random_superpoly(rng, shape);
        SuperPoly residual = rel.lhs(f) - rel.rhs(f);
        if (!residual.is_zero()) {
            rep.status = RelationStatus::fail;
            rep.failures.emplace_back("sample " + std::to_string(i) + ": " + f.str(), residual.str());
            return rep;
        }
    }
    rep.note = std::to_string(samples) + " samples";
    return rep;
}

/// The harmonic constraints under index raising, reduced in the quotient.
inline RelationReport check_harmonic_constraints() {
    RelationReport rep;
    rep.name = "harmonic constraints reduce to 0";
    auto raise = [](int k) {
        auto [img, sign] = u_raise(k);
        SuperPoly p(Basis::central);
        STerm t;
        t.u[img] = 1;
        p.add(t, Scalar(sign));
        return p;
    };
    auto lower = [](int k) {
        SuperPoly p(Basis::central);
        STerm t;
        t.u[k] = 1;
        p.add(t, Scalar(1));
        return p;
    };
    // u^{+i} u-_i - 1, u^{+i} u+_i, u^{-i} u-_i
    SuperPoly c1 = raise(0) * lower(2) + raise(1) * lower(3) - SuperPoly::constant(Scalar(1));
    SuperPoly c2 = raise(0) * lower(0) + raise(1) * lower(1);
    SuperPoly c3 = raise(2) * lower(2) + raise(3) * lower(3);
    if (!c1.is_zero()) rep.failures.emplace_back("u^{+i}u-_i - 1", c1.str());
    if (!c2.is_zero()) rep.failures.emplace_back("u^{+i}u+_i", c2.str());
    if (!c3.is_zero()) rep.failures.emplace_back("u^{-i}u-_i", c3.str());
    if (!rep.failures.empty()) rep.status = RelationStatus::fail;
    return rep;
}

/// Randomized confluence check: reduce u-monomials by the rewrite in two
/// different orders (pairing the first vs the last available factors) and
/// compare. The canonical insert is the reference order.
inline RelationReport check_harmonic_confluence(std::uint64_t seed, int samples) {
    RelationReport rep;
    rep.name = "harmonic rewrite confluence";
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        UMono u{rng.below(3), rng.below(3), rng.below(3), rng.below(3)};
        // reference: canonical insert
        SuperPoly ref(Basis::central);
        STerm t;
        t.u = u;
        ref.add(t, Scalar(1));
        // alternative: peel one relation at a time, recursing through +
        std::function<SuperPoly(UMono)> peel = [&](UMono m) -> SuperPoly {
            if (m[0] > 0 && m[3] > 0) {
                UMono base = m;
                base[0] -= 1;
                base[3] -= 1;
                // u+1 u-2 * rest = rest + u+2 u-1 * rest
                SuperPoly rest = peel(base);
                UMono shifted = base;
                (void)shifted;
                SuperPoly swap(Basis::central);
                STerm s;
                s.u = {0, 1, 1, 0};
                swap.add(s, Scalar(1));
                return rest + swap * rest;
            }
            SuperPoly p(Basis::central);
            STerm s;
            s.u = m;
            p.add(s, Scalar(1));
            return p;
        };
        SuperPoly alt = peel(u);
        if (ref != alt) {
            rep.status = RelationStatus::fail;
            rep.failures.emplace_back("exponents " + std::to_string(u[0]) + "," + std::to_string(u[1]) +
                                          "," + std::to_string(u[2]) + "," + std::to_string(u[3]),
                                      (ref - alt).str());
            return rep;
        }
    }
    rep.note = std::to_string(samples) + " samples";
    return rep;
}

/// Full verify-superspace run: the derivative algebra on random inputs plus
/// the structural properties of the calculus.
inline VerificationReport verify_superspace(std::uint64_t seed, int samples) {
    VerificationReport rep;
    rep.suite = "superspace";
    rep.seed = seed;
    rep.samples = samples;
    std::uint64_t k = 0;
    for (const auto& rel : superspace_detail::derivative_algebra_relations())
        rep.relations.push_back(check_sampled_relation(rel, seed + 7919 * (++k), samples));

    rep.relations.push_back(check_harmonic_constraints());
    rep.relations.push_back(check_harmonic_confluence(seed + 104729, samples));

    // Grassmann nilpotency of d/dtheta
    {
        RelationReport r;
        r.name = "d/dtheta nilpotent";
        Rng rng(seed + 1299709);
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng);
            int idx = rng.below(6);
            SuperPoly g = grassmann_derivative(grassmann_derivative(f, idx), idx);
            if (!g.is_zero()) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back(f.str(), g.str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }

    // full measure annihilates D++_a-exact integrands
    {
        RelationReport r;
        r.name = "full measure kills Dpp_a-exact terms";
        Rng rng(seed + 15485863);
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng);
            int a = 1 + rng.below(2);
            SuperPoly g = berezin_integrate(
                apply_operator(f, OperatorTag::spinor(OperatorTag::Kind::Dpp_a, a)), Measure::full_d9z);
            if (!g.is_zero()) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back(f.str(), g.str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }

    // analytic subspace closed under Dpp and D0
    {
        RelationReport r;
        r.name = "analytic subspace closed under Dpp and D0";
        Rng rng(seed + 32452843);
        SuperPolyShape shape;
        for (int i = 0; i < samples && r.status == RelationStatus::pass; ++i) {
            SuperPoly f = random_superpoly(rng, shape, Basis::analytic);
            f = f.without_theta(static_cast<std::uint8_t>((1u << th_mm1) | (1u << th_mm2)));
            if (f.is_zero()) continue;
            SuperPoly g1 = apply_operator(f, OperatorTag::plain(OperatorTag::Kind::Dpp));
            SuperPoly g2 = apply_operator(f, OperatorTag::plain(OperatorTag::Kind::D0));
            if (!is_analytic(g1) || !is_analytic(g2)) {
                r.status = RelationStatus::fail;
                r.failures.emplace_back(f.str(), (!is_analytic(g1) ? g1 : g2).str());
            }
        }
        if (r.status == RelationStatus::pass) r.note = std::to_string(samples) + " samples";
        rep.relations.push_back(std::move(r));
    }

    return rep;
}

} // namespace hsbrst
