#pragma once

#include "hsbrst/element.hpp"
#include "hsbrst/superpoly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hsbrst {

/// Deterministic cross-platform sampling: mt19937_64 with modulo draws
/// (std distributions are implementation-defined and would break
/// byte-identical reports).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }
    int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); } // inclusive

    GaussianRational small_coeff() {
        // nonzero, small, sometimes imaginary or half-integer
        int k = range(-3, 3);
        if (k == 0) k = 1;
        switch (below(4)) {
            case 0: return GaussianRational(k);
            case 1: return GaussianRational(Rational(k) / 2);
            case 2: return {Rational(0), Rational(k)};
            default: return {Rational(k), Rational(below(3) - 1)};
        }
    }

  private:
    std::mt19937_64 eng_;
};

struct SuperPolyShape {
    int max_terms = 4;
    int max_x_degree = 3;   // total degree over the three components
    int max_u_degree = 2;   // total harmonic degree
    bool full_theta = true; // allow all six thetas
};

inline SuperPoly random_superpoly(Rng& rng, const SuperPolyShape& shape = SuperPolyShape{},
                                  Basis basis = Basis::central) {
    SuperPoly p(basis);
    int terms = rng.range(1, shape.max_terms);
    for (int t = 0; t < terms; ++t) {
        STerm term;
        int xdeg = rng.below(shape.max_x_degree + 1);
        for (int d = 0; d < xdeg; ++d) term.x[rng.below(3)] += 1;
        if (shape.full_theta)
            term.theta = static_cast<std::uint8_t>(rng.below(64));
        int udeg = rng.below(shape.max_u_degree + 1);
        for (int d = 0; d < udeg; ++d) term.u[rng.below(4)] += 1;
        p.add(term, Scalar(rng.small_coeff()));
    }
    return p;
}

/// Random superspace polynomial of definite Grassmann parity.
inline SuperPoly random_homogeneous_superpoly(Rng& rng, int parity,
                                              const SuperPolyShape& shape = SuperPolyShape{},
                                              Basis basis = Basis::central) {
    SuperPoly p(basis);
    int terms = rng.range(1, shape.max_terms);
    for (int t = 0; t < terms; ++t) {
        STerm term;
        int xdeg = rng.below(shape.max_x_degree + 1);
        for (int d = 0; d < xdeg; ++d) term.x[rng.below(3)] += 1;
        std::uint8_t mask = 0;
        do {
            mask = static_cast<std::uint8_t>(rng.below(64));
        } while ((popcount8(mask) & 1) != parity);
        term.theta = mask;
        int udeg = rng.below(shape.max_u_degree + 1);
        for (int d = 0; d < udeg; ++d) term.u[rng.below(4)] += 1;
        p.add(term, Scalar(rng.small_coeff()));
    }
    return p;
}

struct ElementShape {
    int max_terms = 3;
    int max_word_length = 3;
    bool allow_traces = false;
};

inline Element random_element(Rng& rng, const AlphabetPtr& a, const ElementShape& shape = ElementShape{}) {
    auto bases = a->base_ids();
    Element e(a);
    int terms = rng.range(1, shape.max_terms);
    for (int t = 0; t < terms; ++t) {
        Word w;
        int len = rng.range(1, shape.max_word_length);
        for (int i = 0; i < len; ++i) w.gens.push_back(bases[rng.below(static_cast<int>(bases.size()))]);
        w.traced = shape.allow_traces && rng.below(3) == 0;
        e.add(std::move(w), Scalar(rng.small_coeff()));
    }
    return e;
}

/// Random element whose words all share one grading (single random word
/// grading, then more words drawn until they match it).
inline Element random_homogeneous_element(Rng& rng, const AlphabetPtr& a,
                                          const ElementShape& shape = ElementShape{}) {
    auto bases = a->base_ids();
    auto random_word = [&](int len) {
        Word w;
        for (int i = 0; i < len; ++i) w.gens.push_back(bases[rng.below(static_cast<int>(bases.size()))]);
        return w;
    };
    Element e(a);
    int len = rng.range(1, shape.max_word_length);
    Word first = random_word(len);
    Grading target = e.word_grading(first);
    e.add(first, Scalar(rng.small_coeff()));
    int extra = rng.below(shape.max_terms);
    int attempts = 0;
    while (extra > 0 && attempts < 100) {
        Word w = random_word(len);
        ++attempts;
        if (e.word_grading(w) == target) {
            e.add(std::move(w), Scalar(rng.small_coeff()));
            --extra;
        }
    }
    return e;
}

} // namespace hsbrst
