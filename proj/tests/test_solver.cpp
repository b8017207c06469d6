#include <catch2/catch_amalgamated.hpp>

#include "twostripe/ggpath.hpp"
#include "twostripe/instance.hpp"
#include "twostripe/solver.hpp"
#include "test_util.hpp"

#include <bit>
#include <optional>
#include <string>

using namespace twostripe;
using testutil::FailureLog;

namespace {

struct BruteMStar {
    std::optional<i64> value;
    std::optional<MStarBranch> branch;
};

// Window scan over the defining congruences: smallest m >= ceil(-c/2) with
// c+2m = x or c+2m = -x (mod r), the first form preferred on a tie.
BruteMStar brute_m_star(u64 x, u64 r, u64 c)
{
    i64 lower = -static_cast<i64>(c / 2);
    for (i64 m = lower; m <= lower + 2 * static_cast<i64>(r); ++m) {
        u64 t = static_cast<u64>(static_cast<i64>(c) + 2 * m) % r;
        if (t == x) {
            return {m, MStarBranch::Plus};
        }
        if ((r - t) % r == x) {
            return {m, MStarBranch::Minus};
        }
    }
    return {};
}

} // namespace

TEST_CASE("compute_m_star on fixed inputs")
{
    MStarResult a = compute_m_star(3, 4, 3);
    CHECK(a.value == -1);
    CHECK(a.branch == MStarBranch::Minus);

    MStarResult b = compute_m_star(0, 4, 3);
    CHECK(!b.value);
    CHECK(!b.branch);

    MStarResult c = compute_m_star(7, 9, 5);
    CHECK(c.value == 1);
    CHECK(c.branch == MStarBranch::Plus);

    MStarResult d = compute_m_star(0, 3, 2); // tie between both forms
    CHECK(d.value == -1);
    CHECK(d.branch == MStarBranch::Plus);

    CHECK_THROWS_AS(compute_m_star(5, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(compute_m_star(0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(compute_m_star(0, 4, 1), std::invalid_argument);
}

TEST_CASE("compute_m_star agrees with a window scan everywhere")
{
    FailureLog log;
    for (u64 r = 2; r <= 30; ++r) {
        for (u64 c = 2; c <= 14; ++c) {
            for (u64 x = 0; x < r; ++x) {
                MStarResult got = compute_m_star(x, r, c);
                BruteMStar want = brute_m_star(x, r, c);
                log.expect(got.value == want.value && got.branch == want.branch, [&] {
                    return "r=" + std::to_string(r) + " c=" + std::to_string(c) +
                           " x=" + std::to_string(x);
                });
            }
        }
    }
    CAPTURE(log.bad, log.first);
    CHECK(log.ok());
}

TEST_CASE("solve on fixed instances")
{
    SECTION("infeasible")
    {
        SolveResult res = solve(build_instance(12, 3, 0, 6, 1));
        CHECK(res.triviality == Triviality::Infeasible);
        CHECK(!res.x);
        CHECK(!res.m_star.value);
        CHECK(!res.h_star);
        CHECK(!res.total_cost);
        CHECK(res.descriptor.tour_class == TourClass::Infeasible);
    }
    SECTION("single stripe")
    {
        SolveResult res = solve(build_instance(7, 2, 0, 3, 1));
        CHECK(res.triviality == Triviality::SingleStripe);
        CHECK(res.h_star == 0);
        CHECK(res.total_cost == u128{0});
        CHECK(res.descriptor.tour_class == TourClass::AllCheapCycle);
        SolveResult paid = solve(build_instance(7, 2, 3, 3, 7));
        CHECK(paid.total_cost == u128{21});
    }
    SECTION("gg path with wrap, negative m_star")
    {
        SolveResult res = solve(build_instance(12, 3, 0, 1, 1));
        CHECK(res.triviality == Triviality::NonTrivial);
        CHECK(res.x == 3);
        CHECK(res.m_star.value == -1);
        CHECK(res.m_star.branch == MStarBranch::Minus);
        CHECK(res.h_star == 3);
        CHECK(res.total_cost == u128{3});
        CHECK(res.descriptor.tour_class == TourClass::GgPlusWrap);
        REQUIRE(res.descriptor.params.has_value());
        CHECK(res.descriptor.params->m == 0);
        CHECK(res.descriptor.params->first_col_dir == ColumnDir::Down);
        CHECK(res.descriptor.params->second_col_end == 0);
        CHECK(res.descriptor.params->k == 0);
    }
    SECTION("serpentine when no budget works")
    {
        SolveResult res = solve(build_instance(12, 3, 0, 2, 1));
        CHECK(res.x == 2);
        CHECK(!res.m_star.value);
        CHECK(res.h_star == 4);
        CHECK(res.total_cost == u128{4});
        CHECK(res.descriptor.tour_class == TourClass::UpperBoundSerpentine);
        CHECK(!res.descriptor.params);

        SolveResult zero = solve(build_instance(12, 3, 0, 4, 1));
        CHECK(zero.x == 0);
        CHECK(!zero.m_star.value);
        CHECK(zero.h_star == 4);
    }
    SECTION("gg path with one extra pair")
    {
        SolveResult res = solve(build_instance(45, 5, 0, 2, 1));
        CHECK(res.x == 7);
        CHECK(res.m_star.value == 1);
        CHECK(res.m_star.branch == MStarBranch::Plus);
        CHECK(res.h_star == 7);
        CHECK(res.total_cost == u128{7});
        CHECK(res.descriptor.tour_class == TourClass::GgPlusWrap);
        REQUIRE(res.descriptor.params.has_value());
        CHECK(res.descriptor.params->m == 1);
        CHECK(res.descriptor.params->first_col_dir == ColumnDir::Up);
        CHECK(res.descriptor.params->second_col_end == 4);
        CHECK(res.descriptor.params->k == 3);
    }
    SECTION("two columns")
    {
        SolveResult res = solve(build_instance(6, 2, 0, 3, 1));
        CHECK(res.x == 0);
        CHECK(res.m_star.value == -1);
        CHECK(res.m_star.branch == MStarBranch::Plus);
        CHECK(res.h_star == 2);
        CHECK(res.total_cost == u128{2});
        CHECK(res.descriptor.tour_class == TourClass::GgPlusWrap);
        REQUIRE(res.descriptor.params.has_value());
        CHECK(res.descriptor.params->m == 0);
    }
    SECTION("equal costs run the full pipeline but hide x and m_star")
    {
        SolveResult res = solve(build_instance(12, 4, 3, 5, 3));
        CHECK(res.triviality == Triviality::EqualCosts);
        CHECK(res.decomposition.c == 4);
        CHECK(res.decomposition.r == 3);
        CHECK(!res.x);
        CHECK(!res.m_star.value);
        CHECK(res.h_star == 4);
        CHECK(res.total_cost == u128{36});
        CHECK(res.descriptor.tour_class == TourClass::EqualCostAny);
        REQUIRE(res.descriptor.nested.has_value());
        CHECK(*res.descriptor.nested == TourClass::GgPlusWrap);
        REQUIRE(res.descriptor.params.has_value());
        CHECK(res.descriptor.params->m == 0);
        CHECK(res.descriptor.params->first_col_dir == ColumnDir::Down);
        CHECK(res.descriptor.params->second_col_end == 0);
        CHECK(res.descriptor.params->k == 0);
    }
    SECTION("costs enter exactly, up to 128 bits")
    {
        u64 n = u64{1} << 61;
        SolveResult res = solve(build_instance(n, u64{1} << 60, u64{1} << 60, 3, u64{1} << 61));
        CHECK(res.decomposition.c == (u64{1} << 60));
        CHECK(res.decomposition.r == 2);
        CHECK(res.x == 1);
        CHECK(!res.m_star.value);
        CHECK(res.h_star == n - 2);
        u128 want = (static_cast<u128>(1) << 122) - (static_cast<u128>(1) << 61);
        CHECK(res.total_cost == want);
    }
}

TEST_CASE("decide compares the optimal cost against a budget")
{
    CHECK(decide(build_instance(12, 3, 0, 1, 1), 3));
    CHECK(!decide(build_instance(12, 3, 0, 1, 1), 2));
    CHECK(decide(build_instance(45, 5, 0, 2, 1), 7));
    CHECK(!decide(build_instance(45, 5, 0, 2, 1), 6));
    CHECK(!decide(build_instance(12, 3, 0, 6, 1), 1000000000000000000));
}

TEST_CASE("independent cost formula on fixed instances")
{
    CHECK(solve_via_gg_formula(build_instance(45, 5, 0, 2, 1)) == 7);
    CHECK(solve_via_gg_formula(build_instance(12, 3, 0, 2, 1)) == 4);
    CHECK(solve_via_gg_formula(build_instance(12, 3, 0, 1, 1)) == 3);
    CHECK(solve_via_gg_formula(build_instance(12, 3, 0, 4, 1)) == 4);
    CHECK(solve_via_gg_formula(build_instance(6, 2, 0, 3, 1)) == 2);
    CHECK(solve_via_gg_formula(build_instance(12, 4, 3, 5, 3)) == 4);
    CHECK(solve_via_gg_formula(build_instance(12, 3, 0, 6, 1)) == std::nullopt);
    CHECK(solve_via_gg_formula(build_instance(7, 2, 0, 3, 1)) == std::nullopt);
}

TEST_CASE("solver laws hold on every small instance")
{
    FailureLog log;
    for (u64 n = 4; n <= 200; ++n) {
        for (u64 s1 = 1; s1 <= n / 2; ++s1) {
            for (u64 s2 = 1; s2 <= n / 2; ++s2) {
                if (s1 == s2) {
                    continue;
                }
                TwoStripeInstance inst = build_instance(n, s1, 0, s2, 1);
                SolveResult res = solve(inst);
                Decomposition d = res.decomposition;
                auto tag = [&] {
                    return "n=" + std::to_string(n) + " a1=" + std::to_string(s1) +
                           " a2=" + std::to_string(s2);
                };
                if (d.g2 != 1) {
                    log.expect(res.triviality == Triviality::Infeasible && !res.h_star &&
                                   !res.total_cost,
                               tag);
                    continue;
                }
                if (d.g1 == 1) {
                    log.expect(res.triviality == Triviality::SingleStripe && res.h_star == 0 &&
                                   res.total_cost == u128{0} &&
                                   res.descriptor.tour_class == TourClass::AllCheapCycle,
                               tag);
                    continue;
                }
                if (res.triviality != Triviality::NonTrivial || !res.x || !res.h_star ||
                    !res.total_cost) {
                    log.fail(tag);
                    continue;
                }
                u64 h = *res.h_star;
                u64 c = d.c;
                log.expect(h >= c && h <= 2 * c - 2, tag);
                log.expect(res.total_cost == static_cast<u128>(h), tag);
                log.expect(solve_via_gg_formula(inst) == h, tag);

                std::optional<u64> mu = min_extra_pairs(*res.x, d.r, c);
                u64 want_h = mu ? std::min(c + 2 * *mu, 2 * c - 2) : 2 * c - 2;
                log.expect(h == want_h, tag);

                bool gg = res.m_star.value &&
                          2 * *res.m_star.value < static_cast<i64>(c) - 2;
                log.expect((res.descriptor.tour_class == TourClass::GgPlusWrap) == gg, tag);
                log.expect(res.descriptor.params.has_value() == gg, tag);
                if (gg) {
                    u64 m_eff = *res.m_star.value > 0 ? static_cast<u64>(*res.m_star.value) : 0;
                    log.expect(res.descriptor.params->m == m_eff && h == c + 2 * m_eff, tag);
                } else {
                    log.expect(res.descriptor.tour_class == TourClass::UpperBoundSerpentine &&
                                   h == 2 * c - 2,
                               tag);
                }
            }
        }
    }
    CAPTURE(log.bad, log.first);
    CHECK(log.ok());
}

TEST_CASE("equal costs reduce to the cheap-first ordering")
{
    FailureLog log;
    for (u64 n = 4; n <= 100; ++n) {
        for (u64 s1 = 1; s1 <= n / 2; ++s1) {
            for (u64 s2 = s1 + 1; s2 <= n / 2; ++s2) {
                TwoStripeInstance tied = build_instance(n, s1, 1, s2, 1);
                SolveResult res = solve(tied);
                Decomposition d = res.decomposition;
                auto tag = [&] {
                    return "n=" + std::to_string(n) + " s1=" + std::to_string(s1) +
                           " s2=" + std::to_string(s2);
                };
                if (d.g2 != 1 || d.g1 == 1) {
                    continue;
                }
                SolveResult ordered = solve(build_instance(n, s1, 0, s2, 1));
                bool ok = res.triviality == Triviality::EqualCosts && !res.x &&
                          !res.m_star.value && res.h_star == ordered.h_star &&
                          res.total_cost == static_cast<u128>(n) &&
                          res.descriptor.tour_class == TourClass::EqualCostAny &&
                          res.descriptor.nested == ordered.descriptor.tour_class;
                log.expect(ok, tag);
            }
        }
    }
    CAPTURE(log.bad, log.first);
    CHECK(log.ok());
}

TEST_CASE("scaling both costs scales the optimum and changes nothing else")
{
    FailureLog log;
    auto rng = testutil::seeded_rng(0x5eed0201);
    int done = 0;
    while (done < 300) {
        u64 n = testutil::draw(rng, 4, 1000000);
        u64 s1 = testutil::draw(rng, 1, n / 2);
        u64 s2 = testutil::draw(rng, 1, n / 2);
        if (s1 == s2) {
            continue;
        }
        u64 c1 = testutil::draw(rng, 0, u64{1} << 40);
        u64 c2 = testutil::draw(rng, c1, u64{1} << 40);
        TwoStripeInstance base = build_instance(n, s1, c1, s2, c2);
        TwoStripeInstance scaled = build_instance(n, s1, 5 * c1, s2, 5 * c2);
        SolveResult res = solve(base);
        SolveResult res5 = solve(scaled);
        bool ok = res.h_star == res5.h_star &&
                  res.descriptor.tour_class == res5.descriptor.tour_class &&
                  res.total_cost.has_value() == res5.total_cost.has_value();
        if (ok && res.total_cost) {
            ok = *res5.total_cost == 5 * *res.total_cost;
        }
        log.expect(ok, [&] {
            return "n=" + std::to_string(n) + " s1=" + std::to_string(s1) +
                   " s2=" + std::to_string(s2);
        });
        ++done;
    }
    CAPTURE(log.bad, log.first);
    CHECK(log.ok());
}

TEST_CASE("a solve stays within the Euclid iteration budget")
{
    ext_gcd_iteration_high_water = 0;
    solve(build_instance(45, 5, 0, 2, 1));
    CHECK(ext_gcd_iteration_high_water > 0);
    CHECK(ext_gcd_iteration_high_water <= 2 * 6 + 2); // 2*ceil(log2(45)) + 2
    ext_gcd_iteration_high_water = 0;
}
