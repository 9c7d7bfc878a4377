#pragma once

#include "hsbrst/rule_tables.hpp"
#include "hsbrst/suites.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace hsbrst {

/// A rule family in which designated coefficients are unknowns drawn from a
/// finite grid. Unknowns live in the reserved calibration slots of Scalar.
struct ParametrizedRuleSet {
    DerivationSet set;
    std::vector<std::size_t> slots; // active calibration slots, each in one rule term
};

struct CalibrationRelation {
    std::string name;
    OperatorExpr lhs;
    OperatorExpr rhs;
    std::vector<GenId> generators; // empty = all base generators
};

struct CalibrationResult {
    /// Grid assignments under which every relation passes, in enumeration order.
    std::vector<std::map<std::size_t, GaussianRational>> solutions;
    /// When empty: the (relation, generator) checks at which the
    /// longest-surviving assignments died.
    std::vector<std::string> failing_core;
    std::size_t assignments_tried = 0;
};

inline std::vector<GaussianRational> default_calibration_grid() {
    return {GaussianRational(0),  GaussianRational::of(1, 2), GaussianRational::of(-1, 2),
            GaussianRational(1), GaussianRational(-1),        GaussianRational(2),
            GaussianRational(-2)};
}

namespace detail {

/// Stage of one residual check: 0 pure L, 1 pure R, 2 mixed/matter.
inline int check_stage(const Element& residual, const AlphabetPtr& a, GenId gen) {
    bool l = false, r = false, other = false;
    auto see = [&](GenId id) {
        switch (a->effective_sector(id)) {
            case Sector::L: l = true; break;
            case Sector::R: r = true; break;
            default: other = true; break;
        }
    };
    see(gen);
    for (const auto& [w, c] : residual.terms())
        for (GenId id : w.gens) see(id);
    if (other || (l && r)) return 2;
    return r ? 1 : 0;
}

struct SymbolicCheck {
    std::string relation;
    std::string generator;
    Element residual; // polynomial in the calibration slots
    int stage;
};

} // namespace detail

/// Exhaustive staged grid search. Residuals are computed once symbolically in
/// the unknowns; each assignment is then a substitution test, evaluated in
/// stage order (L relations, then R, then mixed) with early exit.
inline CalibrationResult calibrate(const ParametrizedRuleSet& params,
                                   const std::vector<CalibrationRelation>& relations,
                                   const std::vector<GaussianRational>& grid,
                                   const AlphabetPtr& alphabet, std::size_t max_unknowns = 12) {
    if (params.slots.size() > max_unknowns)
        throw ConfigError("calibration has " + std::to_string(params.slots.size()) +
                          " unknowns, above the bound of " + std::to_string(max_unknowns));
    double space = 1;
    for (std::size_t i = 0; i < params.slots.size(); ++i) space *= double(grid.size());
    if (space > 2e7)
        throw ConfigError("calibration search space too large; split the unknowns by sector");

    // Symbolic residuals, one per (relation, generator).
    std::vector<detail::SymbolicCheck> checks;
    for (const auto& rel : relations) {
        std::vector<GenId> gens = rel.generators.empty() ? alphabet->base_ids() : rel.generators;
        for (GenId g : gens) {
            detail::SymbolicCheck c;
            c.relation = rel.name;
            c.generator = alphabet->gen(g).name;
            c.residual = rel.lhs.apply_to_generator(alphabet, g) - rel.rhs.apply_to_generator(alphabet, g);
            c.stage = detail::check_stage(c.residual, alphabet, g);
            checks.push_back(std::move(c));
        }
    }
    std::stable_sort(checks.begin(), checks.end(),
                     [](const auto& x, const auto& y) { return x.stage < y.stage; });

    CalibrationResult result;
    const std::size_t k = params.slots.size();
    std::vector<std::size_t> idx(k, 0);
    std::size_t best_depth = 0;
    bool done = k == 0 && grid.empty();
    while (!done) {
        ++result.assignments_tried;
        std::size_t depth = 0;
        std::string death;
        bool alive = true;
        for (const auto& chk : checks) {
            Element r = chk.residual;
            for (std::size_t i = 0; i < k; ++i)
                r = r.substitute(calibration_param(params.slots[i]), grid[idx[i]]);
            if (!r.is_zero()) {
                alive = false;
                death = chk.relation + " on " + chk.generator;
                break;
            }
            ++depth;
        }
        if (alive) {
            std::map<std::size_t, GaussianRational> sol;
            for (std::size_t i = 0; i < k; ++i) sol[params.slots[i]] = grid[idx[i]];
            result.solutions.push_back(std::move(sol));
        } else if (depth > best_depth) {
            best_depth = depth;
            result.failing_core = {death};
        } else if (depth == best_depth && !death.empty()) {
            if (std::find(result.failing_core.begin(), result.failing_core.end(), death) ==
                result.failing_core.end())
                result.failing_core.push_back(death);
        }
        // advance the odometer
        if (k == 0) break;
        std::size_t pos = 0;
        while (pos < k) {
            if (++idx[pos] < grid.size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == k) done = true;
    }
    if (!result.solutions.empty()) result.failing_core.clear();
    return result;
}

// ---------------------------------------------------------------------------
// Built-in calibration problems.

/// Unknown kappa in s c_L = kappa * c_L*c_L against nilpotency on the gauge
/// superfield, with s V_L = Dpp(c_L) + [V_L, c_L].
inline CalibrationResult calibrate_ghost_self_coupling(const AlphabetPtr& a,
                                                       std::vector<GaussianRational> grid = {}) {
    if (grid.empty()) grid = default_calibration_grid();
    DerivationRule rules;
    GenId vL = a->id_of("V_L");
    GenId cL = a->id_of("c_L");
    rules[vL] = Element::gen(a, a->derived_of(cL)) +
                graded_commutator(Element::gen(a, vL), Element::gen(a, cL));
    rules[cL] = Scalar::unknown(0) * Element::word(a, {cL, cL});
    ParametrizedRuleSet params;
    params.slots = {0};
    params.set.by_name["s"] = std::make_shared<Derivation>(Derivation::from_table(
        "s", derivation_grading("s"), a, std::move(rules), true, Derivation::Validation(false)));
    auto s = OperatorExpr::of(params.set.at("s"));
    CalibrationRelation rel{"s^2 V_L = 0", compose(s, s), OperatorExpr::zero(), {vL, cL}};
    return calibrate(params, {rel}, grid, a);
}

/// Unknown lambda in dFP = lambda * gh against the ghost-flow filtration
/// relations; optionally adding the [d1,d2] closure, which is unsatisfiable
/// on the grid together with them.
inline CalibrationResult calibrate_fp_strength(const AlphabetPtr& a, bool with_closure,
                                               std::vector<GaussianRational> grid = {}) {
    if (grid.empty()) grid = default_calibration_grid();
    RuleTable flow = parse_rule_table(kGhostFlowTable, a);
    ParametrizedRuleSet params;
    params.slots = {0};
    for (auto& [name, rule] : flow.rules)
        params.set.by_name[name] = std::make_shared<Derivation>(Derivation::from_table(
            name, derivation_grading(name), a, std::move(rule), true, Derivation::Validation(true)));
    params.set.by_name["dFP"] =
        std::make_shared<Derivation>(Derivation::ghost_scale("dFP", a, Scalar::unknown(0)));
    auto d1 = OperatorExpr::of(params.set.at("d1"));
    auto d2 = OperatorExpr::of(params.set.at("d2"));
    auto dFP = OperatorExpr::of(params.set.at("dFP"));
    std::vector<CalibrationRelation> rels;
    rels.push_back({"[d1,dFP]=-4*d1", graded_bracket(d1, dFP), OperatorExpr::scaled(Scalar(-4), d1), {}});
    rels.push_back({"[d2,dFP]=4*d2", graded_bracket(d2, dFP), OperatorExpr::scaled(Scalar(4), d2), {}});
    if (with_closure)
        rels.push_back({"[d1,d2]=-2*dFP", graded_bracket(d1, d2), OperatorExpr::scaled(Scalar(-2), dFP), {}});
    return calibrate(params, rels, grid, a);
}

} // namespace hsbrst
