#include <pmx/constants.hpp>
#include <pmx/containment.hpp>
#include <pmx/error.hpp>
#include <pmx/increment.hpp>
#include <pmx/oracle.hpp>
#include <pmx/search.hpp>

#include <doctest.h>

#include <cmath>

using namespace pmx;

TEST_SUITE("increment")
{
    TEST_CASE("proof constants")
    {
        const auto pc = make_constants(2, 2, 2, 2, 1.0);
        REQUIRE(pc.k.value);
        CHECK(*pc.k.value == 16);
        CHECK(pc.delta == doctest::Approx(0.25));
        CHECK(pc.c == doctest::Approx(0.015625));
        REQUIRE(pc.binom_k_r.value);
        CHECK(*pc.binom_k_r.value == 120);
        CHECK_THROWS_AS(make_constants(2, 2, 2, 2, 0.0), Error);
        CHECK_THROWS_AS(make_constants(2, 2, 2, 2, -1.0), Error);
        const auto o = make_constants(2, 2, 2, 2, 1.0, 4.0);
        CHECK(o.k_overridden);
        CHECK(*o.k.value == 4);
        CHECK(*o.k_formula.value == 16);
    }

    TEST_CASE("log and direct constants agree")
    {
        for (int t = 2; t <= 3; ++t)
            for (int r = 1; r <= 3; ++r)
                for (int s = 1; s <= 3; ++s)
                    for (double eps : {1.0, 2.0, 4.0}) {
                        const auto pc = make_constants(t, r, s, 2, eps);
                        const auto d = direct_constants(t, r, s, 2, eps);
                        CHECK(std::exp(pc.k.log) == doctest::Approx(d.k));
                        CHECK(pc.delta == doctest::Approx(d.delta));
                        if (std::isfinite(d.C) && d.C > 0)
                            CHECK(pc.C.log == doctest::Approx(std::log(d.C)));
                    }
    }

    TEST_CASE("lambda schedule")
    {
        const double eps = 1.0;
        const auto ls = lambda_schedule(2, 20, eps);
        const double eps0 = eps / 40.0;
        CHECK(ls.epsilon0 == doctest::Approx(eps0));
        CHECK(ls.at(2) == 1.0);
        CHECK(ls.at(3) == doctest::Approx(5.0 / 6.0 + eps0));
        CHECK(ls.at(21) == 0.0);
        CHECK(ls.strictly_decreasing);
        CHECK(ls.max_closed_gap < 1e-12);
        for (int u = 3; u <= 20; ++u)
            CHECK(ls.closed_form(u) == doctest::Approx(eps0 + 2.0 / (2 * (u - 1)) + 2.0 / (2 * u)));
        const double z = 10;
        const auto jumps = ls.jumps(z);
        CHECK(jumps.size() == 18);
        CHECK(ls.type_at(0, z) == 2);
        CHECK(ls.type_at(z, z) == 20);
        CHECK_THROWS_AS(lambda_schedule(2, 3, eps), Error);
        CHECK(default_U(2, 1.0) == 800);
    }

    TEST_CASE("column intervals")
    {
        const auto a = ZeroOneMatrix::from_strings({"0101", "1001", "1001", "0110"});
        const auto sizes = column_intervals(a, 2);
        CHECK(sizes.size() == 2);
        CHECK(sizes[0] + sizes[1] == 4);
        CHECK_THROWS_AS(column_intervals(ZeroOneMatrix::all_ones(1, 3), 2), Error);
    }

    TEST_CASE("step: all weight in the first block")
    {
        ZeroOneMatrix host(4, 4);
        for (int j = 0; j < 4; ++j) {
            host.set(0, j, true);
            host.set(1, j, true);
        }
        const auto step = density_increment_step(host, ZeroOneMatrix::all_ones(2, 2), 2, 2);
        CHECK(step.branch == StepBranch::densified);
        CHECK(step.block == 0);
        CHECK(step.count == 6);
        CHECK(step.count == step.total);
        CHECK(step.rows.begin == 0);
        CHECK(step.rows.count == 2);
    }

    TEST_CASE("step: planted pattern across blocks")
    {
        ZeroOneMatrix host(4, 4);
        host.set(0, 1, true);
        host.set(0, 3, true);
        host.set(2, 1, true);
        host.set(2, 3, true);
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        const auto step = density_increment_step(host, a, 2, 2);
        REQUIRE(step.branch == StepBranch::embedded);
        REQUIRE(step.embedding);
        CHECK(verify_embedding(host, a, *step.embedding));
        CHECK(oracle::embedding_ok(host, a, *step.embedding));
        CHECK_THROWS_AS(density_increment_step(ZeroOneMatrix(3, 4), a, 2, 2), Error);
        CHECK_THROWS_AS(density_increment_step(host, ZeroOneMatrix::all_ones(1, 3), 2, 2, StepOptions{2}), Error);
    }

    TEST_CASE("symmetric step")
    {
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        StepOptions no_embed;
        no_embed.try_embedding = false;
        const auto full = symmetric_increment_step(ZeroOneMatrix::all_ones(4, 4), a, 2, no_embed);
        CHECK(full.branch == StepBranch::densified);
        CHECK(full.count == 1);

        ZeroOneMatrix host(4, 4);
        for (int i : {0, 2})
            for (int j : {0, 2})
                host.set(i, j, true);
        const auto planted = symmetric_increment_step(host, a, 2);
        REQUIRE(planted.branch == StepBranch::embedded);
        CHECK(verify_embedding(host, a, *planted.embedding));
    }

    TEST_CASE("driver embeds in an all-ones host at level 0")
    {
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        for (auto mode : {DriverMode::thm21, DriverMode::thm12}) {
            DriverParams p;
            p.k = 2;
            p.depth = 2;
            const auto tr = run_driver(ZeroOneMatrix::all_ones(8, 8), a, mode, p);
            REQUIRE(tr.embedding);
            CHECK(verify_embedding(ZeroOneMatrix::all_ones(8, 8), a, *tr.embedding));
            REQUIRE_FALSE(tr.levels.empty());
            CHECK(tr.levels.front().level == 0);
            CHECK(tr.levels.back().branch == "embedded");
        }
    }

    TEST_CASE("driver on a pattern-free host")
    {
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        const auto host = deletion_lower_bound(16, a, 3).witness;
        REQUIRE_FALSE(contains(host, a));
        DriverParams p;
        p.k = 2;
        p.depth = 3;
        const auto tr = run_driver(host, a, DriverMode::thm21, p);
        CHECK_FALSE(tr.embedding);
        for (const auto & lv : tr.levels) {
            CHECK(lv.branch != "embedded");
            const auto block = host.block(lv.rows.begin, lv.rows.count, lv.cols.begin, lv.cols.count);
            if (lv.t > 0)
                CHECK(lv.count == oracle::count_all_ones(block, lv.u, lv.t));
        }
        CHECK(parse_driver_mode("thm11") == DriverMode::thm11);
        CHECK_THROWS_AS(parse_driver_mode("nope"), Error);
    }
}
