#pragma once

#include "hsbrst/alphabet.hpp"
#include "hsbrst/errors.hpp"
#include "hsbrst/grading.hpp"
#include "hsbrst/scalar.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace hsbrst {

/// A word over generator symbols, optionally wrapped in the graded cyclic
/// trace. The empty untraced word is the algebra unit.
struct Word {
    bool traced = false;
    std::vector<GenId> gens;

    std::size_t size() const { return gens.size(); }

    friend bool operator<(const Word& a, const Word& b) {
        if (a.traced != b.traced) return a.traced < b.traced;
        if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
        return a.gens < b.gens;
    }
    friend bool operator==(const Word& a, const Word& b) {
        return a.traced == b.traced && a.gens == b.gens;
    }
};

/// A finite linear combination of words with Scalar coefficients, kept in
/// canonical form: no zero coefficients, like words merged, trace words at
/// their sign-adjusted minimal cyclic rotation.
class Element {
  public:
    using Terms = std::map<Word, Scalar>;

    Element() = default;
    explicit Element(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

    static Element zero(AlphabetPtr a) { return Element(std::move(a)); }
    static Element unit(AlphabetPtr a, Scalar c = Scalar(1)) {
        Element e(std::move(a));
        e.add(Word{}, std::move(c));
        return e;
    }
    static Element gen(AlphabetPtr a, GenId id, Scalar c = Scalar(1)) {
        Element e(std::move(a));
        e.add(Word{false, {id}}, std::move(c));
        return e;
    }
    static Element gen(const AlphabetPtr& a, const std::string& name, Scalar c = Scalar(1)) {
        return gen(a, a->id_of(name), std::move(c));
    }
    static Element word(AlphabetPtr a, std::vector<GenId> gens, Scalar c = Scalar(1), bool traced = false) {
        Element e(std::move(a));
        e.add(Word{traced, std::move(gens)}, std::move(c));
        return e;
    }

    const AlphabetPtr& alphabet() const { return alphabet_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool has_traced_words() const {
        for (const auto& [w, c] : terms_)
            if (w.traced) return true;
        return false;
    }

    /// Sum of generator gradings of a word.
    Grading word_grading(const Word& w) const {
        Grading g;
        for (GenId id : w.gens) g = g + alphabet_->gen(id).grading;
        return g;
    }

    int word_parity(const Word& w) const { return word_grading(w).parity; }

    /// Parity of one stored term, coefficient included (odd A-entries in the
    /// coefficient ring count); requires a parity-homogeneous coefficient.
    int term_parity(const Word& w, const Scalar& c) const {
        return (word_parity(w) + c.parity()) & 1;
    }

    /// Split every term into parity-homogeneous (word, coefficient-part)
    /// pieces and visit them.
    template <class F>
    void for_each_homogeneous_term(F&& visit) const {
        for (const auto& [w, c] : terms_) {
            if (!c.has_odd_part()) {
                visit(w, c, word_parity(w));
                continue;
            }
            auto [even, odd] = c.parity_split();
            if (!even.is_zero()) visit(w, even, word_parity(w));
            visit(w, odd, word_parity(w) ^ 1);
        }
    }

    /// Canonicalizing insertion. Trace words are rotated to the minimal
    /// representative; a trace word equal to an odd rotation of itself is zero.
    void add(Word w, Scalar c) {
        if (c.is_zero()) return;
        if (w.traced) {
            if (w.gens.empty()) throw ConfigError("empty trace word");
            int sign = canonical_trace_rotation(w);
            if (sign == 0) return;
            if (sign < 0) c = -c;
        }
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const Element& other) {
        require_same_alphabet(other);
        for (const auto& [w, c] : other.terms_) add(w, c);
    }

    friend Element operator+(const Element& a, const Element& b) {
        Element r = a;
        r.add(b);
        return r;
    }
    friend Element operator-(const Element& a, const Element& b) {
        Element r = a;
        for (const auto& [w, c] : b.terms_) r.add(w, -c);
        return r;
    }
    friend Element operator-(const Element& a) {
        Element r(a.alphabet_);
        for (const auto& [w, c] : a.terms_) r.terms_[w] = -c;
        return r;
    }
    friend Element operator*(const Scalar& s, const Element& e) {
        Element r(e.alphabet_);
        if (s.is_zero()) return r;
        for (const auto& [w, c] : e.terms_) {
            Scalar sc = s * c;
            if (!sc.is_zero()) r.terms_[w] = std::move(sc);
        }
        return r;
    }
    Element& operator+=(const Element& o) { add(o); return *this; }
    Element& operator-=(const Element& o) { return *this = *this - o; }

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    /// Free product: bilinear concatenation, with the right factor's
    /// coefficient transported past the left word (Koszul sign for odd
    /// coefficients). Trace words can only be scaled, not multiplied.
    friend Element operator*(const Element& a, const Element& b) {
        a.require_same_alphabet(b);
        Element r(a.alphabet_);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                if (wa.traced || wb.traced) {
                    const Word& traced = wa.traced ? wa : wb;
                    const Word& other = wa.traced ? wb : wa;
                    if (!other.gens.empty() || other.traced)
                        throw ConfigError("trace words cannot be multiplied");
                    r.add(traced, ca * cb);
                    continue;
                }
                Word w;
                w.gens = wa.gens;
                w.gens.insert(w.gens.end(), wb.gens.begin(), wb.gens.end());
                Scalar c;
                if (cb.has_odd_part() && a.word_parity(wa)) {
                    auto [even, odd] = cb.parity_split();
                    c = ca * (even - odd);
                } else {
                    c = ca * cb;
                }
                r.add(std::move(w), std::move(c));
            }
        return r;
    }

    /// Wrap every word in the graded cyclic trace.
    Element traced() const {
        Element r(alphabet_);
        for (const auto& [w, c] : terms_) {
            if (w.traced) {
                r.add(w, c);
                continue;
            }
            if (w.gens.empty()) throw ConfigError("cannot trace the unit");
            r.add(Word{true, w.gens}, c);
        }
        return r;
    }

    /// Common grading of all terms (coefficient parity included); mask
    /// selects enforced components.
    Grading grading(GradingMask mask = GradingMask::all()) const {
        if (terms_.empty()) throw GradingError("grading of the zero element is undefined");
        bool first = true;
        Grading g;
        bool bad = false;
        for_each_homogeneous_term([&](const Word& w, const Scalar&, int parity) {
            Grading wg = word_grading(w);
            wg.parity = parity;
            if (first) {
                g = wg;
                first = false;
            } else if (!mask.agree(g, wg)) {
                bad = true;
            }
        });
        if (bad) {
            std::string msg = "inhomogeneous element:";
            for_each_homogeneous_term([&](const Word& w, const Scalar&, int parity) {
                Grading wg = word_grading(w);
                wg.parity = parity;
                msg += "\n  " + word_str(w) + " has grading " + wg.str();
            });
            throw GradingError(msg);
        }
        return g;
    }

    bool is_homogeneous(GradingMask mask = GradingMask::all()) const {
        if (terms_.empty()) return true;
        bool first = true;
        Grading g;
        bool ok = true;
        for_each_homogeneous_term([&](const Word& w, const Scalar&, int parity) {
            Grading wg = word_grading(w);
            wg.parity = parity;
            if (first) {
                g = wg;
                first = false;
            } else if (!mask.agree(g, wg)) {
                ok = false;
            }
        });
        return ok;
    }

    /// Parity of a homogeneous element (0 for the zero element).
    int parity() const {
        if (terms_.empty()) return 0;
        int p = -1;
        bool bad = false;
        for_each_homogeneous_term([&](const Word&, const Scalar&, int parity) {
            if (p < 0) p = parity;
            else if (p != parity) bad = true;
        });
        if (bad) throw GradingError("parity-inhomogeneous element: " + str());
        return p;
    }

    /// Tilde conjugation: antiautomorphism. Words reverse, generators map to
    /// their conj images, coefficients conjugate (i -> -i); an odd
    /// coefficient transports back to the front of the reversed word.
    Element conj() const {
        Element r(alphabet_);
        for (const auto& [w, c] : terms_) {
            Word cw;
            cw.traced = w.traced;
            for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
                GenId img = alphabet_->gen(*it).conj;
                if (img == kNoGen)
                    throw ConfigError("generator " + alphabet_->gen(*it).name + " has no conj_image");
                cw.gens.push_back(img);
            }
            Scalar cc;
            if (c.has_odd_part() && word_parity(cw)) {
                auto [even, odd] = c.parity_split();
                cc = (even - odd).conj();
            } else {
                cc = c.conj();
            }
            r.add(std::move(cw), std::move(cc));
        }
        return r;
    }

    /// Substitute a numeric value for a formal parameter in every coefficient.
    Element substitute(Param p, const GaussianRational& value) const {
        Element r(alphabet_);
        for (const auto& [w, c] : terms_) {
            Scalar sc = c.substitute(p, value);
            if (!sc.is_zero()) r.add(w, std::move(sc));
        }
        return r;
    }

    /// Substitute zero for a generator: words containing it are dropped.
    Element substitute_zero(GenId id) const {
        Element r(alphabet_);
        for (const auto& [w, c] : terms_) {
            bool hit = false;
            for (GenId g : w.gens) {
                GenId base = g;
                while (alphabet_->gen(base).is_derived()) base = alphabet_->gen(base).base;
                if (g == id || base == id) { hit = true; break; }
            }
            if (!hit) r.add(w, c);
        }
        return r;
    }

    std::string word_str(const Word& w) const {
        if (w.gens.empty()) return "1";
        std::string body;
        for (std::size_t i = 0; i < w.gens.size(); ++i) {
            if (i) body += "*";
            body += alphabet_->gen(w.gens[i]).name;
        }
        return w.traced ? "tr(" + body + ")" : body;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            std::string coeff;
            bool negated = false;
            if (c == Scalar(1)) {
                coeff = "";
            } else if (c == Scalar(-1)) {
                negated = true;
            } else {
                coeff = c.needs_parens() ? "(" + c.str() + ")" : c.str();
            }
            std::string piece = coeff;
            if (!w.gens.empty()) {
                if (!piece.empty()) piece += "*";
                piece += word_str(w);
            } else if (piece.empty()) {
                piece = "1";
            }
            if (negated) piece = "-" + piece;
            if (!first && piece[0] != '-') out += " + ";
            else if (!first) { out += " - "; piece = piece.substr(1); }
            out += piece;
            first = false;
        }
        return out;
    }

  private:
    void require_same_alphabet(const Element& o) const {
        if (alphabet_ && o.alphabet_ && alphabet_ != o.alphabet_)
            throw ConfigError("elements over different alphabets");
    }

    /// Rotate w to its lexicographically minimal cyclic representative,
    /// tracking the graded sign tr(AB) = (-1)^{e(A)e(B)} tr(BA).
    /// Returns +1/-1, or 0 when the word cancels against its own rotation.
    int canonical_trace_rotation(Word& w) const {
        const std::size_t n = w.gens.size();
        if (n <= 1) return 1;
        int total_parity = word_parity(w);
        std::vector<GenId> cur = w.gens;
        std::vector<GenId> best = cur;
        int sign = 1, best_sign = 1;
        bool ambiguous = false;
        for (std::size_t k = 1; k < n; ++k) {
            int p0 = alphabet_->gen(cur.front()).grading.parity;
            // moving the front symbol to the back: sign (-1)^{p0 * (P - p0)}
            if (p0 && ((total_parity - p0) & 1)) sign = -sign;
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (cur < best) {
                best = cur;
                best_sign = sign;
                ambiguous = false;
            } else if (cur == best && sign != best_sign) {
                ambiguous = true;
            }
        }
        if (ambiguous) return 0;
        w.gens = std::move(best);
        return best_sign;
    }

    AlphabetPtr alphabet_;
    Terms terms_;
};

/// Graded commutator [a,b] = ab - (-1)^{e(a)e(b)} ba for parity-homogeneous
/// inputs; the anticommutator when both are odd.
inline Element graded_commutator(const Element& a, const Element& b) {
    int pa = a.parity();
    int pb = b.parity();
    Element ab = a * b;
    Element ba = b * a;
    if (pa == 1 && pb == 1) return ab + ba;
    return ab - ba;
}

/// Formal D++ on an element: even Leibniz expansion into derived generators.
inline Element formal_dpp(const Element& e) {
    const AlphabetPtr& a = e.alphabet();
    Element r(a);
    for (const auto& [w, c] : e.terms()) {
        for (std::size_t i = 0; i < w.gens.size(); ++i) {
            Word img = w;
            img.gens[i] = a->derived_of(w.gens[i]);
            r.add(std::move(img), c);
        }
    }
    return r;
}

} // namespace hsbrst
