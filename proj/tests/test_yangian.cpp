#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace qsha;

namespace {
const CartanData kA1{{{2}}, {1}};
const CartanData kA1xA1{{{2, 0}, {0, 2}}, {1, 1}};
const CartanData kA2{{{2, -1}, {-1, 2}}, {1, 1}};
const CartanData kB2{{{2, -1}, {-2, 2}}, {2, 1}};
const CartanData kG2{{{2, -1}, {-3, 2}}, {3, 1}};
const CartanData kGcd2{{{2, -2}, {-2, 2}}, {1, 1}};

std::vector<CartanData> default_suite() { return {kA1, kA1xA1, kA2, kB2, kG2, kGcd2}; }
} // namespace

TEST_CASE("build_context computes the pair arithmetic") {
    SECTION("A2 pair (0,1)") {
        const YangianContext ctx(kA2);
        const PairData p = ctx.pair_data(0, 1);
        CHECK(p.n == 1);
        CHECK(p.d == 1);
        CHECK(p.a == 1);
        CHECK(p.S == std::vector<int>{1});
        CHECK(p.S_prime.empty());
    }
    SECTION("B2 pair (0,1)") {
        const YangianContext ctx(kB2);
        const PairData p = ctx.pair_data(0, 1);
        CHECK(p.n == 1);
        CHECK(p.d == 2);
        CHECK(p.a == 2);
        CHECK(p.S == std::vector<int>{2});
    }
    SECTION("G2 pair (0,1)") {
        const YangianContext ctx(kG2);
        const PairData p = ctx.pair_data(0, 1);
        CHECK(p.n == 1);
        CHECK(p.d == 3);
        CHECK(p.a == 3);
        CHECK(p.S == std::vector<int>{3});
    }
    SECTION("gcd-2 matrix pair (0,1): n = 2") {
        const YangianContext ctx(kGcd2);
        const PairData p = ctx.pair_data(0, 1);
        CHECK(p.n == 2);
        CHECK(p.d == 1);
        CHECK(p.a == 2);
        CHECK(p.S == std::vector<int>{2, 0});
        CHECK(p.S_prime == std::vector<int>{0});
    }
    SECTION("non-adjacent pair carries zeros") {
        const YangianContext ctx(kA1xA1);
        const PairData p = ctx.pair_data(0, 1);
        CHECK(p.n == 0);
        CHECK(p.a == 0);
        CHECK(p.S.empty());
    }
    SECTION("a = -d_k a_kl = -d_l a_lk over the whole suite") {
        for (const CartanData& cd : default_suite()) {
            const YangianContext ctx(cd);
            for (int k = 0; k < ctx.rank(); ++k)
                for (int l = 0; l < ctx.rank(); ++l) {
                    if (k == l) continue;
                    const PairData p = ctx.pair_data(k, l);
                    CHECK(p.a == -cd.D[static_cast<std::size_t>(k)] *
                                     cd.A[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);
                    CHECK(p.a == -cd.D[static_cast<std::size_t>(l)] *
                                     cd.A[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)]);
                }
        }
    }
    SECTION("coprimality of the symmetrizer is advisory") {
        const YangianContext ctx(CartanData{{{2, 0}, {0, 2}}, {2, 2}});
        CHECK_FALSE(ctx.d_relatively_prime());
        CHECK(verify_Y1(ctx, 0, 0).ok()); // relations still verify
    }
}

TEST_CASE("quadratic relation Y1") {
    SECTION("A2: both orders and the diagonal") {
        const YangianContext ctx(kA2);
        for (const auto& [k, l] :
             std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {0, 0}, {1, 1}}) {
            const Y1Result r = verify_Y1(ctx, k, l);
            CHECK(r.relation_ok);
            CHECK(r.closed_form_ok);
        }
    }
    SECTION("B2 pair (1,0) has a = 2") {
        const YangianContext ctx(kB2);
        CHECK(ctx.pair_data(1, 0).a == 2);
        CHECK(verify_Y1(ctx, 1, 0).ok());
    }
    SECTION("no arrows: both sides vanish") {
        const YangianContext ctx(kA1xA1);
        const Y1Result r = verify_Y1(ctx, 0, 1);
        CHECK(r.ok());
    }
    SECTION("multiple arrows: the gcd-2 matrix") {
        const YangianContext ctx(kGcd2);
        CHECK(verify_Y1(ctx, 0, 1).ok());
        CHECK(verify_Y1(ctx, 1, 0).ok());
    }
}

TEST_CASE("mode-level check agrees with the rational identity") {
    const YangianContext a2(kA2);
    CHECK(verify_Y1_modes(a2, 0, 1, 3).ok);
    CHECK(verify_Y1_modes(a2, 0, 0, 2).ok);
    const YangianContext b2(kB2);
    CHECK(verify_Y1_modes(b2, 0, 1, 3).ok);
    CHECK(verify_Y1_modes(b2, 1, 0, 3).ok);
    CHECK(verify_Y1_modes(b2, 1, 1, 2).ok);
}

TEST_CASE("modes commute when a_kl = 0") {
    const YangianContext ctx(kA1xA1);
    const KernelConfig& cfg = ctx.cfg();
    for (int r = 0; r <= 2; ++r)
        for (int s = 0; s <= 2; ++s) {
            const MPoly ab = shuffle_mul(mode_element(2, 0, r), mode_element(2, 1, s), cfg).value;
            const MPoly ba = shuffle_mul(mode_element(2, 1, s), mode_element(2, 0, r), cfg).value;
            CHECK(ab == ba);
        }
}

TEST_CASE("Serre relation") {
    SECTION("A2: N = 2, both orders") {
        const YangianContext ctx(kA2);
        CHECK(verify_serre(ctx, 0, 1).ok);
        CHECK(verify_serre(ctx, 1, 0).ok);
    }
    SECTION("B2 is asymmetric: N = 2 one way, N = 3 the other") {
        const YangianContext ctx(kB2);
        const SerreResult fwd = verify_serre(ctx, 0, 1);
        CHECK(fwd.ok);
        CHECK(fwd.grade == DimensionVector{2, 1});
        const SerreResult rev = verify_serre(ctx, 1, 0);
        CHECK(rev.ok);
        CHECK(rev.grade == DimensionVector{1, 3}); // N e_k + e_l with k = 1, N = 3
    }
    SECTION("non-adjacent pairs degenerate to commutativity") {
        const YangianContext ctx(kA1xA1);
        CHECK(verify_serre(ctx, 0, 1).ok);
    }
    SECTION("gcd-2 matrix: N = 3") {
        const YangianContext ctx(kGcd2);
        CHECK(verify_serre(ctx, 0, 1).ok);
    }
    SECTION("diagonal is rejected") {
        const YangianContext ctx(kA2);
        CHECK_THROWS_AS(verify_serre(ctx, 0, 0), DomainError);
    }
}

TEST_CASE("reduced Serre identity matches the full computation") {
    for (const CartanData& cd : {kA2, kB2, kGcd2}) {
        const YangianContext ctx(cd);
        for (int k = 0; k < ctx.rank(); ++k)
            for (int l = 0; l < ctx.rank(); ++l) {
                if (!ctx.adjacent(k, l)) continue;
                const bool full = verify_serre(ctx, k, l).ok;
                const bool reduced = verify_reduced_serre_identity(ctx, k, l).ok;
                CHECK(full == reduced);
                CHECK(full);
            }
    }
}

TEST_CASE("closed-form cross-checks") {
    const YangianContext b2(kB2);
    CHECK(verify_closed_forms(b2, 0, 1, 3, 3).ok());
    CHECK(verify_closed_forms(b2, 1, 0, 3, 3).ok());
    const YangianContext a1(kA1);
    CHECK(verify_closed_forms(a1, 0, std::nullopt, 4, 0).ok()); // star powers only
}

TEST_CASE("negative control: the corrupted sign breaks the relations") {
    const YangianContext corrupted(kA2, /*corrupt_sign=*/true);
    const Y1Result y1 = verify_Y1(corrupted, 0, 1);
    CHECK_FALSE(y1.relation_ok);
    CHECK_FALSE(y1.residual.empty());
    const SerreResult serre = verify_serre(corrupted, 0, 1);
    CHECK_FALSE(serre.ok);
    CHECK_FALSE(serre.residual.is_zero());

    // the honest context still passes, so the control is not vacuous
    const YangianContext honest(kA2);
    CHECK(verify_Y1(honest, 0, 1).ok());
    CHECK(verify_serre(honest, 0, 1).ok);
}

TEST_CASE("suite runner aggregates deterministically") {
    SuiteOptions opts;
    opts.star_bound = 2;
    opts.pq_bound = 2;
    opts.max_degree = 1;
    const SuiteReport a = run_suite(kA2, opts);
    CHECK(a.all_ok());
    CHECK(a.pairs.size() == 4);

    opts.jobs = 2;
    const SuiteReport b = run_suite(kA2, opts);
    REQUIRE(b.pairs.size() == a.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        CHECK(a.pairs[i].k == b.pairs[i].k);
        CHECK(a.pairs[i].l == b.pairs[i].l);
        CHECK(a.pairs[i].ok() == b.pairs[i].ok());
    }

    opts.only_pair = {{0, 1}};
    const SuiteReport c = run_suite(kA2, opts);
    CHECK(c.pairs.size() == 1);
}
