#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace qsha;

namespace {

ExtendedQuiver make_a2() { return extend_quiver(cartan_to_quiver({{{2, -1}, {-1, 2}}, {1, 1}})); }
ExtendedQuiver make_b2() { return extend_quiver(cartan_to_quiver({{{2, -1}, {-2, 2}}, {2, 1}})); }
ExtendedQuiver make_g2() { return extend_quiver(cartan_to_quiver({{{2, -1}, {-3, 2}}, {3, 1}})); }

std::set<Generator> cut_H(const ExtendedQuiver& eq) {
    std::set<Generator> cut;
    for (int k = 0; k < eq.arrow_count(); ++k) cut.insert(arrow_gen(k));
    return cut;
}

std::set<Generator> cut_Hop(const ExtendedQuiver& eq) {
    std::set<Generator> cut;
    for (int k = 0; k < eq.arrow_count(); ++k) cut.insert(reversed_gen(k));
    return cut;
}

std::set<Generator> cut_B(const ExtendedQuiver& eq) {
    std::set<Generator> cut;
    for (int i = 0; i < eq.vertex_count(); ++i) cut.insert(loop_gen(i));
    return cut;
}

} // namespace

TEST_CASE("build_potential instantiates the superpotential") {
    SECTION("B2: arrow 0->1, l_01 = 1, l_10 = 2 gives B_1^2 h h* - B_0 h* h") {
        const ExtendedQuiver eq = make_b2();
        NCPoly expected;
        expected.add_term(1, Path(eq, {loop_gen(1), loop_gen(1), arrow_gen(0), reversed_gen(0)}));
        expected.add_term(-1, Path(eq, {loop_gen(0), reversed_gen(0), arrow_gen(0)}));
        CHECK(build_potential(eq) == expected);
    }
    SECTION("A2: both exponents 1") {
        const ExtendedQuiver eq = make_a2();
        NCPoly expected;
        expected.add_term(1, Path(eq, {loop_gen(1), arrow_gen(0), reversed_gen(0)}));
        expected.add_term(-1, Path(eq, {loop_gen(0), reversed_gen(0), arrow_gen(0)}));
        CHECK(build_potential(eq) == expected);
    }
    SECTION("no arrows: zero potential") {
        const ExtendedQuiver empty = extend_quiver(QuiverWithSymmetrizer(2, {}, {}));
        CHECK(build_potential(empty).is_zero());
    }
    SECTION("every term is a cycle") {
        const NCPoly w = build_potential(make_g2());
        for (const auto& [p, c] : w.terms()) CHECK(p.is_cycle());
    }
}

TEST_CASE("cyclic_derivative cuts cycles at each occurrence") {
    const ExtendedQuiver eq = make_a2();
    // single cycle B_1 h h*
    const NCPoly cyc = NCPoly::term(1, Path(eq, {loop_gen(1), arrow_gen(0), reversed_gen(0)}));

    SECTION("derivative by h*") {
        const NCPoly expected = NCPoly::term(1, Path(eq, {loop_gen(1), arrow_gen(0)}));
        CHECK(cyclic_derivative(eq, cyc, reversed_gen(0)) == expected);
    }
    SECTION("derivative by the loop") {
        const NCPoly expected = NCPoly::term(1, Path(eq, {arrow_gen(0), reversed_gen(0)}));
        CHECK(cyclic_derivative(eq, cyc, loop_gen(1)) == expected);
    }
    SECTION("derivative by an absent generator vanishes") {
        const NCPoly hh = NCPoly::term(1, Path(eq, {arrow_gen(0), reversed_gen(0)}));
        CHECK(cyclic_derivative(eq, hh, loop_gen(0)).is_zero());
    }
    SECTION("non-cycle input is rejected") {
        const NCPoly bad = NCPoly::term(1, Path(eq, {arrow_gen(0)}));
        CHECK_THROWS_AS(cyclic_derivative(eq, bad, arrow_gen(0)), DomainError);
    }
    SECTION("cutting a length-one cycle leaves the idempotent") {
        const NCPoly loop = NCPoly::term(1, Path(eq, {loop_gen(0)}));
        CHECK(cyclic_derivative(eq, loop, loop_gen(0)) == NCPoly::term(1, Path(0)));
    }
}

TEST_CASE("closed-form derivatives match the cyclic derivative") {
    CHECK(verify_closed_form_derivatives(make_a2()));
    CHECK(verify_closed_form_derivatives(make_b2()));
    CHECK(verify_closed_form_derivatives(make_g2()));

    Sampler s(5);
    for (int trial = 0; trial < 8; ++trial)
        CHECK(verify_closed_form_derivatives(
            extend_quiver(testing::random_acyclic_quiver(s, 3, 3, 2))));
}

TEST_CASE("check_cut: H and H^op are cuts, B is not once l >= 2") {
    const ExtendedQuiver b2 = make_b2();
    const NCPoly w = build_potential(b2);
    CHECK(check_cut(w, cut_H(b2)));
    CHECK(check_cut(w, cut_Hop(b2)));
    CHECK_FALSE(check_cut(w, cut_B(b2))); // the B_1^2 term has degree 2

    // for A2 every l is 1, so B is a cut as well
    const ExtendedQuiver a2 = make_a2();
    CHECK(check_cut(build_potential(a2), cut_B(a2)));
}

TEST_CASE("Euler identity at the rotation-class level") {
    Sampler s(7);
    for (const ExtendedQuiver& eq :
         {make_a2(), make_b2(), make_g2(),
          extend_quiver(testing::random_acyclic_quiver(s, 4, 3, 2))}) {
        const NCPoly w = build_potential(eq);
        NCPoly recombined;
        for (const Generator& a : cut_H(eq))
            recombined += cyclic_derivative(eq, w, a) * NCPoly::term(1, Path(eq, {a}));
        CHECK(rotation_class_multiset(eq, recombined) == rotation_class_multiset(eq, w));
    }
}

TEST_CASE("cyclic_derivative is linear and rotation invariant") {
    const ExtendedQuiver eq = make_b2();
    const NCPoly w = build_potential(eq);
    std::vector<Path> cycles;
    for (const auto& [p, c] : w.terms()) cycles.push_back(p);
    REQUIRE(cycles.size() == 2);

    Sampler s(13);
    for (const Generator& a : eq.generators()) {
        const Rational alpha = s.rational(), beta = s.rational();
        NCPoly combo;
        combo.add_term(alpha, cycles[0]);
        combo.add_term(beta, cycles[1]);
        const NCPoly lin = alpha * cyclic_derivative(eq, NCPoly::term(1, cycles[0]), a) +
                           beta * cyclic_derivative(eq, NCPoly::term(1, cycles[1]), a);
        CHECK(cyclic_derivative(eq, combo, a) == lin);

        for (const Path& cyc : cycles)
            for (std::size_t r = 1; r < cyc.length(); ++r)
                CHECK(cyclic_derivative(eq, NCPoly::term(1, cyc.rotated(eq, r)), a) ==
                      cyclic_derivative(eq, NCPoly::term(1, cyc), a));
    }
}

TEST_CASE("path composition respects endpoints") {
    const ExtendedQuiver eq = make_a2();
    const Path h(eq, {arrow_gen(0)});
    const Path hs(eq, {reversed_gen(0)});
    const auto cycle = h.compose(hs); // h* first, then h: cycle at vertex 1
    REQUIRE(cycle.has_value());
    CHECK(cycle->is_cycle());
    CHECK(cycle->source() == 1);
    CHECK_FALSE(h.compose(h).has_value()); // 0->1 after 0->1 does not compose

    CHECK_THROWS_AS(Path(eq, {arrow_gen(0), arrow_gen(0)}), StructuralError);

    // incomposable products vanish inside NCPoly
    const NCPoly hh = NCPoly::term(1, h) * NCPoly::term(1, h);
    CHECK(hh.is_zero());
}
