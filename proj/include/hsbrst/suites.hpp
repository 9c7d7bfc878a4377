#pragma once

#include "hsbrst/report.hpp"
#include "hsbrst/rule_tables.hpp"

#include <string>
#include <vector>

namespace hsbrst {

/// Re-tabulate a derivation set with a parameter substituted by a number
/// (used for the zero-mass limit of the massive tables).
inline DerivationSet substitute_param(const DerivationSet& set, Param p, const GaussianRational& value) {
    DerivationSet out;
    out.table_warnings = set.table_warnings;
    for (const auto& [name, d] : set.by_name) {
        if (d->is_ghost_scale()) {
            out.by_name[name] = std::make_shared<Derivation>(
                Derivation::ghost_scale(name, d->alphabet(), d->ghost_lambda().substitute(p, value)));
            continue;
        }
        DerivationRule rules;
        for (const auto& [id, img] : d->rules()) rules[id] = img.substitute(p, value);
        out.by_name[name] = std::make_shared<Derivation>(Derivation::from_table(
            name, d->grading(), d->alphabet(), std::move(rules), d->commutes_with_dpp(),
            Derivation::Validation(false)));
    }
    return out;
}

inline bool same_rules(const DerivationSet& a, const DerivationSet& b, const AlphabetPtr& alphabet) {
    for (const auto& [name, da] : a.by_name) {
        auto it = b.by_name.find(name);
        if (it == b.by_name.end()) return false;
        const auto& db = it->second;
        for (GenId id : alphabet->base_ids()) {
            if (da->on_generator(id) != db->on_generator(id)) return false;
        }
    }
    return true;
}

/// The nilpotency/anticommutation relations of one gauge.
inline std::vector<RelationReport> brst_relations(const DerivationSet& set, const AlphabetPtr& a) {
    auto s = OperatorExpr::of(set.at("s"));
    auto sbar = OperatorExpr::of(set.at("sbar"));
    std::vector<RelationReport> out;
    out.push_back(check_relation("s^2=0", compose(s, s), OperatorExpr::zero(), a));
    out.push_back(check_relation("sbar^2=0", compose(sbar, sbar), OperatorExpr::zero(), a));
    out.push_back(check_relation("{s,sbar}=0", graded_bracket(s, sbar), OperatorExpr::zero(), a));
    return out;
}

/// The SL(2,R) ghost-flow algebra; when `massive`, the three squares close
/// on the ghost-flow transformations with strength 2*i*m2.
inline std::vector<RelationReport> no_algebra_relations(const DerivationSet& set, const AlphabetPtr& a,
                                                        bool massive) {
    auto s = OperatorExpr::of(set.at("s"));
    auto sbar = OperatorExpr::of(set.at("sbar"));
    auto d1 = OperatorExpr::of(set.at("d1"));
    auto d2 = OperatorExpr::of(set.at("d2"));
    auto dFP = OperatorExpr::of(set.at("dFP"));
    Scalar two_i_m2 = Scalar(2) * Scalar::i() * Scalar::param(Param::m2);
    std::vector<RelationReport> out;
    if (massive) {
        out.push_back(check_relation("[s,s]=-2*i*m2*d1", graded_bracket(s, s),
                                     OperatorExpr::scaled(-two_i_m2, d1), a));
        out.push_back(check_relation("[sbar,sbar]=2*i*m2*d2", graded_bracket(sbar, sbar),
                                     OperatorExpr::scaled(two_i_m2, d2), a));
        out.push_back(check_relation("[s,sbar]=2*i*m2*dFP", graded_bracket(s, sbar),
                                     OperatorExpr::scaled(two_i_m2, dFP), a));
    } else {
        out.push_back(check_relation("[s,s]=0", graded_bracket(s, s), OperatorExpr::zero(), a));
        out.push_back(check_relation("[sbar,sbar]=0", graded_bracket(sbar, sbar), OperatorExpr::zero(), a));
        out.push_back(check_relation("[s,sbar]=0", graded_bracket(s, sbar), OperatorExpr::zero(), a));
    }
    out.push_back(check_relation("[d1,d2]=-2*dFP", graded_bracket(d1, d2),
                                 OperatorExpr::scaled(Scalar(-2), dFP), a));
    out.push_back(check_relation("[d1,dFP]=-4*d1", graded_bracket(d1, dFP),
                                 OperatorExpr::scaled(Scalar(-4), d1), a));
    out.push_back(check_relation("[d2,dFP]=4*d2", graded_bracket(d2, dFP),
                                 OperatorExpr::scaled(Scalar(4), d2), a));
    out.push_back(check_relation("[s,dFP]=-2*s", graded_bracket(s, dFP),
                                 OperatorExpr::scaled(Scalar(-2), s), a));
    out.push_back(check_relation("[sbar,dFP]=2*sbar", graded_bracket(sbar, dFP),
                                 OperatorExpr::scaled(Scalar(2), sbar), a));
    out.push_back(check_relation("[s,d1]=0", graded_bracket(s, d1), OperatorExpr::zero(), a));
    out.push_back(check_relation("[sbar,d1]=-2*s", graded_bracket(sbar, d1),
                                 OperatorExpr::scaled(Scalar(-2), s), a));
    out.push_back(check_relation("[s,d2]=2*sbar", graded_bracket(s, d2),
                                 OperatorExpr::scaled(Scalar(2), sbar), a));
    out.push_back(check_relation("[sbar,d2]=0", graded_bracket(sbar, d2), OperatorExpr::zero(), a));
    return out;
}

inline VerificationReport verify_brst_suite(Gauge g, Convention c, const AlphabetPtr& a) {
    DerivationSet set = load_builtin_set(g, c, a);
    VerificationReport rep;
    rep.suite = std::string(gauge_name(g));
    rep.gauge = gauge_name(g);
    rep.convention = convention_name(c);
    rep.relations = brst_relations(set, a);
    rep.table_warnings = set.table_warnings;
    rep.inputs.emplace_back(std::string("rules/") + gauge_name(g) + "-" + convention_name(c),
                            sha256_hex(builtin_table_text(g, c)));
    return rep;
}

/// suite_name in {landau, linear, curci-ferrari, massive-cf,
/// no-algebra, no-algebra-massive}.
inline VerificationReport verify_suite(const std::string& suite_name, Convention c,
                                       const AlphabetPtr& a, Gauge no_algebra_gauge = Gauge::curci_ferrari) {
    if (suite_name == "landau") return verify_brst_suite(Gauge::landau, c, a);
    if (suite_name == "linear") return verify_brst_suite(Gauge::linear, c, a);
    if (suite_name == "curci-ferrari") return verify_brst_suite(Gauge::curci_ferrari, c, a);
    if (suite_name == "massive-cf") return verify_brst_suite(Gauge::massive_cf, c, a);
    if (suite_name == "no-algebra" || suite_name == "no-algebra-massive") {
        bool massive = suite_name == "no-algebra-massive";
        Gauge g = massive ? Gauge::massive_cf : no_algebra_gauge;
        DerivationSet set = load_builtin_set(g, c, a);
        VerificationReport rep;
        rep.suite = suite_name;
        rep.gauge = gauge_name(g);
        rep.convention = convention_name(c);
        rep.relations = no_algebra_relations(set, a, massive);
        rep.table_warnings = set.table_warnings;
        rep.inputs.emplace_back(std::string("rules/") + gauge_name(g) + "-" + convention_name(c),
                                sha256_hex(builtin_table_text(g, c)));
        return rep;
    }
    throw UsageError("unknown suite '" + suite_name + "'");
}

} // namespace hsbrst
