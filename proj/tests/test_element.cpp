#include <catch2/catch_amalgamated.hpp>

#include "hsbrst/element.hpp"
#include "hsbrst/sampling.hpp"

using namespace hsbrst;

namespace {
const AlphabetPtr& alph() {
    static AlphabetPtr a = make_brst_alphabet();
    return a;
}
Element gen(const char* n) { return Element::gen(alph(), n); }
} // namespace

TEST_CASE("free multiplication", "[element]") {
    auto cL = gen("c_L");
    auto bL = gen("b_L");

    SECTION("concatenation") {
        Element p = cL * cL;
        REQUIRE(p == Element::word(alph(), {alph()->id_of("c_L"), alph()->id_of("c_L")}));
        REQUIRE(p.str() == "c_L*c_L");
    }

    SECTION("bilinearity") {
        auto x = gen("V_L"), y = gen("b_L"), z = gen("q");
        REQUIRE((x + y) * z == x * z + y * z);
    }

    SECTION("scalar arithmetic with exact i") {
        Element p = (Scalar(2) * Scalar::i() * cL) * (Scalar::of(1, 2) * bL);
        REQUIRE(p == Scalar::i() * (cL * bL));
    }

    SECTION("alphabet mismatch is a configuration error") {
        auto other = make_brst_alphabet();
        REQUIRE_THROWS_AS(cL * Element::gen(other, "c_L"), ConfigError);
    }

    SECTION("trace words cannot be multiplied") {
        Element t = (gen("V_L") * gen("V_L")).traced();
        REQUIRE_THROWS_AS(t * cL, ConfigError);
        REQUIRE(Scalar(2) * t == t + t);
    }
}

TEST_CASE("graded commutator", "[element]") {
    auto cL = gen("c_L");
    auto vL = gen("V_L");
    auto bL = gen("b_L");

    REQUIRE(graded_commutator(cL, cL) == Scalar(2) * (cL * cL)); // both odd
    REQUIRE(graded_commutator(vL, cL) == vL * cL - cL * vL);
    REQUIRE(graded_commutator(bL, bL).is_zero());

    SECTION("parity-inhomogeneous input is rejected") {
        REQUIRE_THROWS_AS(graded_commutator(cL + bL, cL), GradingError);
    }
}

TEST_CASE("grading of elements", "[element]") {
    auto cL = gen("c_L"), cR = gen("c_R"), cbL = gen("cbar_L"), bL = gen("b_L");

    REQUIRE((cL * cR).grading() == Grading{0, 2, 0});
    REQUIRE((bL + cL * cbL).grading() == Grading{0, 0, 0});
    REQUIRE_THROWS_AS((bL + cL).grading(), GradingError);

    SECTION("the inhomogeneity report names each word") {
        try {
            (bL + cL).grading();
            FAIL("expected a grading error");
        } catch (const GradingError& e) {
            std::string msg = e.what();
            REQUIRE(msg.find("b_L") != std::string::npos);
            REQUIRE(msg.find("c_L") != std::string::npos);
        }
    }

    SECTION("additivity under multiplication") {
        Rng rng(11);
        for (int n = 0; n < 200; ++n) {
            Element a = random_homogeneous_element(rng, alph());
            Element b = random_homogeneous_element(rng, alph());
            Element p = a * b;
            if (p.is_zero()) continue;
            REQUIRE(p.grading() == a.grading() + b.grading());
        }
    }
}

TEST_CASE("tilde conjugation of elements", "[element]") {
    auto cL = gen("c_L"), cR = gen("c_R"), vL = gen("V_L");

    SECTION("antiautomorphism with i -> -i") {
        Element e = Scalar::i() * (cL * cR);
        // ghosts are self-conjugate in the default table
        REQUIRE(e.conj() == -Scalar::i() * (cR * cL));
    }

    SECTION("gauge superfields are configured self-conjugate") { REQUIRE(vL.conj() == vL); }

    SECTION("matter fields conjugate into each other") {
        REQUIRE(gen("q").conj() == gen("qbar"));
    }

    SECTION("involution on random elements") {
        Rng rng(23);
        for (int n = 0; n < 300; ++n) {
            Element e = random_element(rng, alph());
            REQUIRE(e.conj().conj() == e);
        }
    }
}

TEST_CASE("trace canonicalization", "[element]") {
    GenId v = alph()->id_of("V_L"), c = alph()->id_of("c_L"), cb = alph()->id_of("cbar_L");

    SECTION("a word and its graded cyclic rotation canonicalize identically") {
        // tr(c cbar V) vs tr(cbar V c): one rotation of an odd symbol past an
        // odd remainder, sign -1
        Element t1 = Element::word(alph(), {c, cb, v}, Scalar(1), true);
        Element t2 = Element::word(alph(), {cb, v, c}, Scalar(-1), true);
        REQUIRE(t1 == t2);
    }

    SECTION("even rotations carry no sign") {
        Element t1 = Element::word(alph(), {v, c, cb}, Scalar(1), true);
        Element t2 = Element::word(alph(), {c, cb, v}, Scalar(1), true);
        REQUIRE(t1 == t2); // rotating V (even) costs nothing
    }

    SECTION("odd self-rotations cancel the word") {
        REQUIRE(Element::word(alph(), {c, c}, Scalar(1), true).is_zero());
    }

    SECTION("canonical form is idempotent") {
        Rng rng(37);
        ElementShape shape;
        shape.allow_traces = true;
        for (int n = 0; n < 200; ++n) {
            Element e = random_element(rng, alph(), shape);
            Element again(alph());
            for (const auto& [w, coeff] : e.terms()) again.add(w, coeff);
            REQUIRE(again == e);
        }
    }
}

TEST_CASE("associativity on random triples", "[element][property]") {
    Rng rng(20240914);
    for (int n = 0; n < 1000; ++n) {
        Element a = random_element(rng, alph());
        Element b = random_element(rng, alph());
        Element c = random_element(rng, alph());
        REQUIRE((a * b) * c == a * (b * c));
    }
}

TEST_CASE("graded Jacobi identity", "[element][property]") {
    Rng rng(424243);
    for (int n = 0; n < 400; ++n) {
        Element a = random_homogeneous_element(rng, alph());
        Element b = random_homogeneous_element(rng, alph());
        Element c = random_homogeneous_element(rng, alph());
        int pa = a.parity(), pb = b.parity(), pc = c.parity();
        auto sgn = [](int e) { return e ? Scalar(-1) : Scalar(1); };
        Element jac = sgn(pa * pc) * graded_commutator(graded_commutator(a, b), c) +
                      sgn(pb * pa) * graded_commutator(graded_commutator(b, c), a) +
                      sgn(pc * pb) * graded_commutator(graded_commutator(c, a), b);
        REQUIRE(jac.is_zero());
    }
}

TEST_CASE("formal derivative depth bound", "[element]") {
    auto cL = gen("c_L");
    Element d1 = formal_dpp(cL);
    Element d2 = formal_dpp(d1);
    REQUIRE_THROWS_AS(formal_dpp(d2), DepthError);
}
