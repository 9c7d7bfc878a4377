#pragma once

#include "hsbrst/element.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hsbrst {

/// Image table of a derivation on generators.
using DerivationRule = std::map<GenId, Element>;

/// A graded derivation defined on generators and extended everywhere by the
/// graded Leibniz rule. Rules are either an explicit table or multiplication
/// by lambda * (ghost number).
class Derivation {
  public:
    struct Validation {
        bool strict; // reject grading-inhomogeneous images
        Validation(bool s = true) : strict(s) {}
    };

    static Derivation from_table(std::string name, Grading grading, AlphabetPtr alphabet,
                                 DerivationRule rules, bool commutes_with_dpp = true,
                                 Validation v = Validation()) {
        Derivation d;
        d.name_ = std::move(name);
        d.grading_ = grading;
        d.alphabet_ = std::move(alphabet);
        d.rules_ = std::move(rules);
        d.commutes_with_dpp_ = commutes_with_dpp;
        d.validate(v);
        return d;
    }

    /// e -> lambda * gh(e) * e; a derivation because ghost number is additive.
    static Derivation ghost_scale(std::string name, AlphabetPtr alphabet, Scalar lambda) {
        Derivation d;
        d.name_ = std::move(name);
        d.grading_ = {0, 0, 0};
        d.alphabet_ = std::move(alphabet);
        d.ghost_lambda_ = std::move(lambda);
        d.is_ghost_scale_ = true;
        d.commutes_with_dpp_ = true;
        return d;
    }

    const std::string& name() const { return name_; }
    const Grading& grading() const { return grading_; }
    const AlphabetPtr& alphabet() const { return alphabet_; }
    int parity() const { return grading_.parity; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const DerivationRule& rules() const { return rules_; }
    bool is_ghost_scale() const { return is_ghost_scale_; }
    const Scalar& ghost_lambda() const { return ghost_lambda_; }
    bool commutes_with_dpp() const { return commutes_with_dpp_; }

    /// Image of a single generator.
    Element on_generator(GenId id) const {
        const Generator& g = alphabet_->gen(id);
        if (is_ghost_scale_)
            return Element::gen(alphabet_, id, ghost_lambda_ * Scalar(g.grading.ghost));
        auto it = rules_.find(id);
        if (it != rules_.end()) return it->second;
        if (g.is_derived() && commutes_with_dpp_)
            return formal_dpp(on_generator(g.base));
        throw UndefinedActionError("derivation " + name_ + " has no rule for generator " + g.name);
    }

    /// Graded Leibniz extension: on a word g1..gn, sum over i of
    /// (-1)^{e(d) e(g1..g_{i-1})} g1.. d(gi) ..gn.
    Element apply(const Element& e) const {
        Element r(alphabet_);
        e.for_each_homogeneous_term([&](const Word& w, const Scalar& c, int /*term parity*/) {
            // the coefficient sits leftmost of the word
            int prefix_parity = c.parity();
            for (std::size_t i = 0; i < w.gens.size(); ++i) {
                const Generator& gi = alphabet_->gen(w.gens[i]);
                Element img = on_generator(w.gens[i]);
                if (!img.is_zero()) {
                    int sign = (grading_.parity && (prefix_parity & 1)) ? -1 : 1;
                    for (const auto& [iw, ic] : img.terms()) {
                        Word nw;
                        nw.traced = w.traced;
                        nw.gens.assign(w.gens.begin(), w.gens.begin() + i);
                        nw.gens.insert(nw.gens.end(), iw.gens.begin(), iw.gens.end());
                        nw.gens.insert(nw.gens.end(), w.gens.begin() + i + 1, w.gens.end());
                        Scalar coeff = c * ic;
                        if (sign < 0) coeff = -coeff;
                        r.add(std::move(nw), std::move(coeff));
                    }
                }
                prefix_parity += gi.grading.parity;
            }
        });
        return r;
    }

  private:
    void validate(Validation v) {
        for (const auto& [id, img] : rules_) {
            if (img.is_zero()) continue;
            Grading expect = alphabet_->gen(id).grading + grading_;
            bool ok = img.is_homogeneous() && img.grading() == expect;
            if (!ok) {
                std::string msg = "rule " + name_ + " " + alphabet_->gen(id).name +
                                  " has image off the expected grading " + expect.str();
                if (v.strict) throw GradingError(msg);
                warnings_.push_back(msg);
            }
        }
    }

    std::string name_;
    Grading grading_;
    AlphabetPtr alphabet_;
    DerivationRule rules_;
    Scalar ghost_lambda_;
    bool is_ghost_scale_ = false;
    bool commutes_with_dpp_ = true;
    std::vector<std::string> warnings_;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

/// A Scalar-weighted sum of compositions of derivations; the carrier for
/// relation checking. Chains apply right-to-left.
class OperatorExpr {
  public:
    struct Term {
        Scalar coeff;
        std::vector<DerivationPtr> chain;
    };

    OperatorExpr() = default;

    static OperatorExpr zero() { return {}; }
    static OperatorExpr of(DerivationPtr d, Scalar c = Scalar(1)) {
        OperatorExpr e;
        e.terms_.push_back({std::move(c), {std::move(d)}});
        return e;
    }
    static OperatorExpr scaled(Scalar c, const OperatorExpr& e) {
        OperatorExpr r;
        for (const auto& t : e.terms_) {
            Scalar nc = c * t.coeff;
            if (!nc.is_zero()) r.terms_.push_back({std::move(nc), t.chain});
        }
        return r;
    }

    bool empty() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    int parity() const {
        if (terms_.empty()) return 0;
        int p = chain_parity(terms_.front().chain);
        for (const auto& t : terms_)
            if (chain_parity(t.chain) != p)
                throw GradingError("parity-inhomogeneous operator expression");
        return p;
    }

    Grading grading() const {
        if (terms_.empty()) return {};
        Grading g = chain_grading(terms_.front().chain);
        for (const auto& t : terms_)
            if (!(chain_grading(t.chain) == g))
                throw GradingError("grading-inhomogeneous operator expression");
        return g;
    }

    friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
        OperatorExpr r = a;
        r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
        return r;
    }
    friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
        return a + scaled(Scalar(-1), b);
    }

    /// Composition a after b.
    friend OperatorExpr compose(const OperatorExpr& a, const OperatorExpr& b) {
        OperatorExpr r;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Term t;
                t.coeff = ta.coeff * tb.coeff;
                t.chain = ta.chain;
                t.chain.insert(t.chain.end(), tb.chain.begin(), tb.chain.end());
                r.terms_.push_back(std::move(t));
            }
        return r;
    }

    /// Graded bracket [a,b] = a b - (-1)^{e(a)e(b)} b a.
    friend OperatorExpr graded_bracket(const OperatorExpr& a, const OperatorExpr& b) {
        int pa = a.parity(), pb = b.parity();
        OperatorExpr ab = compose(a, b);
        OperatorExpr ba = compose(b, a);
        if (pa == 1 && pb == 1) return ab + ba;
        return ab - ba;
    }

    Element apply(const Element& e) const {
        if (terms_.empty()) {
            Element z(e.alphabet());
            return z;
        }
        Element r(e.alphabet());
        for (const auto& t : terms_) {
            Element acc = e;
            for (auto it = t.chain.rbegin(); it != t.chain.rend(); ++it) acc = (*it)->apply(acc);
            r += t.coeff * acc;
        }
        return r;
    }

    Element apply_to_generator(const AlphabetPtr& a, GenId id) const {
        return apply(Element::gen(a, id));
    }

  private:
    static int chain_parity(const std::vector<DerivationPtr>& chain) {
        int p = 0;
        for (const auto& d : chain) p ^= d->parity();
        return p;
    }
    static Grading chain_grading(const std::vector<DerivationPtr>& chain) {
        Grading g;
        for (const auto& d : chain) g = g + d->grading();
        return g;
    }

    std::vector<Term> terms_;
};

inline OperatorExpr graded_bracket(const DerivationPtr& a, const DerivationPtr& b) {
    return graded_bracket(OperatorExpr::of(a), OperatorExpr::of(b));
}

/// Evaluate [d1,d2] on a single generator.
inline Element commutator_of_derivations(const DerivationPtr& d1, const DerivationPtr& d2,
                                         const AlphabetPtr& a, GenId g) {
    return graded_bracket(d1, d2).apply_to_generator(a, g);
}

enum class RelationStatus { pass, fail, inconclusive };

inline const char* status_name(RelationStatus s) {
    switch (s) {
        case RelationStatus::pass: return "pass";
        case RelationStatus::fail: return "fail";
        case RelationStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Pass/fail evidence for one named relation, with per-generator residuals.
struct RelationReport {
    std::string name;
    RelationStatus status = RelationStatus::pass;
    // (generator name, canonical residual string), only for nonzero residuals
    std::vector<std::pair<std::string, std::string>> failures;
    std::string witness; // decomposition evidence, when a solver produced one
    std::string note;

    bool passed() const { return status == RelationStatus::pass; }
};

/// Check lhs = rhs on every base generator of the alphabet. Both sides are
/// derivations of equal grading, so agreement on generators is agreement
/// everywhere.
inline RelationReport check_relation(const std::string& name, const OperatorExpr& lhs,
                                     const OperatorExpr& rhs, const AlphabetPtr& alphabet) {
    if (!lhs.empty() && !rhs.empty() && !(lhs.grading() == rhs.grading()))
        throw GradingError("relation " + name + ": sides have different gradings");
    RelationReport rep;
    rep.name = name;
    for (GenId id : alphabet->base_ids()) {
        Element residual = lhs.apply_to_generator(alphabet, id) - rhs.apply_to_generator(alphabet, id);
        if (!residual.is_zero()) {
            rep.status = RelationStatus::fail;
            rep.failures.emplace_back(alphabet->gen(id).name, residual.str());
        }
    }
    return rep;
}

} // namespace hsbrst
