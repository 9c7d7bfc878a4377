#include <catch2/catch_amalgamated.hpp>

#include "hsbrst/star.hpp"

using namespace hsbrst;

namespace {
SuperPoly th(int idx) { return SuperPoly::theta(idx); }
const DeformationTensor& A() {
    static DeformationTensor t = DeformationTensor::symbolic();
    return t;
}
} // namespace

TEST_CASE("defining commutator", "[star]") {
    for (int a = 1; a <= 2; ++a)
        for (int mu = 0; mu < 3; ++mu) {
            SuperPoly lhs = star_commutator(th(theta_index(0, a)), SuperPoly::x(mu), A());
            REQUIRE(lhs == SuperPoly::constant(A().at(a, mu)));
        }
}

TEST_CASE("undeformed sectors", "[star]") {
    SECTION("theta-theta anticommutators are untouched") {
        REQUIRE(star_commutator(th(th_pp1), th(th_pp2), A()).is_zero());
    }
    SECTION("x-x commutators receive no contribution") {
        REQUIRE(star_commutator(SuperPoly::x(0), SuperPoly::x(1), A()).is_zero());
    }
    SECTION("only theta^{++} is deformed") {
        for (int fam = 1; fam <= 2; ++fam)
            for (int a = 1; a <= 2; ++a)
                for (int mu = 0; mu < 3; ++mu)
                    REQUIRE(star_commutator(th(theta_index(fam, a)), SuperPoly::x(mu), A()).is_zero());
    }
}

TEST_CASE("pointwise limits", "[star]") {
    SECTION("x-only inputs multiply pointwise") {
        REQUIRE(star(SuperPoly::x(0), SuperPoly::x(1), A()) == SuperPoly::x(0) * SuperPoly::x(1));
    }
    SECTION("A -> 0 degeneration on random inputs") {
        Rng rng(14);
        for (int n = 0; n < 100; ++n) {
            SuperPoly f = random_superpoly(rng);
            SuperPoly g = random_superpoly(rng);
            REQUIRE(star(f, g, DeformationTensor::zero()) == f * g);
        }
    }
}

TEST_CASE("associativity and parity", "[star][property]") {
    Rng rng(15);
    SuperPolyShape shape;
    shape.max_terms = 3;
    shape.max_x_degree = 2;
    shape.max_u_degree = 1;
    int max_order = 0;
    for (int n = 0; n < 60; ++n) {
        SuperPoly f = random_superpoly(rng, shape);
        SuperPoly g = random_superpoly(rng, shape);
        SuperPoly h = random_superpoly(rng, shape);
        int o = 0;
        SuperPoly left = star(star(f, g, A(), ExponentForm::antisymmetric, &o), h, A());
        max_order = std::max(max_order, o);
        REQUIRE(left == star(f, star(g, h, A()), A()));
    }
    REQUIRE(max_order <= kStarOrderBound);

    SECTION("parity is additive") {
        for (int n = 0; n < 60; ++n) {
            int pf = rng.below(2), pg = rng.below(2);
            SuperPoly f = random_homogeneous_superpoly(rng, pf, shape);
            SuperPoly g = random_homogeneous_superpoly(rng, pg, shape);
            SuperPoly prod = star(f, g, A());
            if (!prod.is_zero()) REQUIRE(prod.parity() == ((pf + pg) & 1));
        }
    }

    SECTION("parity-inhomogeneous commutator input is rejected") {
        REQUIRE_THROWS_AS(star_commutator(th(th_pp1) + SuperPoly::x(0), SuperPoly::x(1), A()),
                          GradingError);
    }
}

TEST_CASE("exponent form flag", "[star]") {
    // the symmetric reading of the exponent kills the defining commutator;
    // it ships only to document why the antisymmetric form is the default
    SuperPoly sym = star_commutator(th(th_pp1), SuperPoly::x(0), A(), ExponentForm::symmetric);
    REQUIRE(sym.is_zero());
    SuperPoly anti = star_commutator(th(th_pp1), SuperPoly::x(0), A(), ExponentForm::antisymmetric);
    REQUIRE(anti == SuperPoly::constant(A().at(1, 0)));
}

TEST_CASE("space-like restriction", "[star]") {
    DeformationTensor spatial = A().spacelike();
    REQUIRE(star_commutator(th(th_pp1), SuperPoly::x(0), spatial).is_zero());
    REQUIRE(star_commutator(th(th_pp1), SuperPoly::x(1), spatial) ==
            SuperPoly::constant(A().at(1, 1)));
}

TEST_CASE("full property suite", "[star]") {
    VerificationReport rep = verify_star_properties(A(), 20240914, 40);
    REQUIRE(rep.status() == RelationStatus::pass);
}
