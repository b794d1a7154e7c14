#include <pmx/classify.hpp>
#include <pmx/containment.hpp>
#include <pmx/cycles.hpp>
#include <pmx/error.hpp>
#include <pmx/oracle.hpp>
#include <pmx/search.hpp>

#include <doctest.h>

using namespace pmx;

namespace {

// Hamiltonian cycles of K_{l,l}: (l!)^2 / (2 l)
std::size_t cycle_count(int l)
{
    std::size_t f = 1;
    for (int i = 2; i <= l; ++i)
        f *= static_cast<std::size_t>(i);
    return f * f / static_cast<std::size_t>(2 * l);
}

} // namespace

TEST_SUITE("cycles")
{
    TEST_CASE("enumerate_cycles counts")
    {
        CHECK(enumerate_cycles(4).size() == 1);
        CHECK(enumerate_cycles(4).front() == ZeroOneMatrix::all_ones(2, 2));
        for (int l = 2; l <= 5; ++l) {
            const auto cs = enumerate_cycles(2 * l);
            CHECK(cs.size() == cycle_count(l));
            for (const auto & c : cs) {
                CHECK(is_cycle(c));
                CHECK(c.weight() == static_cast<std::size_t>(2 * l));
            }
        }
        CHECK(enumerate_cycles(8).size() == 72);
        CHECK_THROWS_AS(enumerate_cycles(2), Error);
        CHECK_THROWS_AS(enumerate_cycles(7), Error);
    }

    TEST_CASE("is_r_balanced")
    {
        const auto ones = is_r_balanced(ZeroOneMatrix::all_ones(4, 3), 2);
        CHECK(ones.balanced);
        REQUIRE(ones.profiles.size() == 3);
        for (const auto & p : ones.profiles)
            CHECK(p == std::vector<int>{2, 2});
        ZeroOneMatrix single(4, 3);
        single.set(0, 1, true);
        const auto s = is_r_balanced(single, 2);
        CHECK_FALSE(s.balanced);
        CHECK(s.violating_column == 1);
        CHECK(is_r_balanced(ZeroOneMatrix(4, 3), 2).balanced);
        const auto bad = is_r_balanced(ZeroOneMatrix(5, 3), 2);
        CHECK_FALSE(bad.balanced);
        CHECK_FALSE(bad.diagnostic.empty());
    }

    TEST_CASE("balanced embedding")
    {
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        const auto e = embed_xmonotone_balanced(ZeroOneMatrix::all_ones(4, 4), a);
        REQUIRE(e);
        CHECK(oracle::embedding_ok(ZeroOneMatrix::all_ones(4, 4), a, e->embedding));
        // proper: pattern row j in band j
        CHECK(e->embedding.row_map[0] < 2);
        CHECK(e->embedding.row_map[1] >= 2);
        CHECK_FALSE(embed_xmonotone_balanced(ZeroOneMatrix(4, 4), a));
    }

    TEST_CASE("dense or balanced")
    {
        ZeroOneMatrix dense(8, 8);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 8; ++j)
                dense.set(i, j, true);
        const auto d = dense_or_balanced(dense, 2, 2, 4, 0.01);
        CHECK(d.branch == DichotomyBranch::dense);
        CHECK(d.dense_band == 1);
        CHECK(d.invariant_holds);
        CHECK(dense_invariant(d));

        // bands 1 and 2 full: weight 64 against the floor 2 * 1 * sqrt(16) * 4
        ZeroOneMatrix split(8, 16);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 16; ++j)
                split.set(i, j, true);
        const auto b = dense_or_balanced(split, 2, 1, 4, 0.01);
        CHECK(b.branch == DichotomyBranch::balanced);
        CHECK(b.bands == std::vector<int>{1, 2});
        CHECK(b.invariant_holds);
        CHECK(is_r_balanced(b.matrix, 2).balanced);
        CHECK_FALSE(b.switched);
        CHECK(balanced_invariant(b));

        CHECK_THROWS_AS(dense_or_balanced(ZeroOneMatrix(6, 8), 2, 2, 4, 0.01), Error);
    }

    TEST_CASE("cycle driver")
    {
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        const auto host = ZeroOneMatrix::all_ones(8, 8);
        const auto tr = cycle_driver(host, a, 2, 0.01, 3);
        REQUIRE(tr.embedding);
        CHECK(verify_embedding(host, a, *tr.embedding));
        CHECK(tr.levels.size() <= 2);

        const auto free_host = deletion_lower_bound(16, a, 5).witness;
        const auto ft = cycle_driver(free_host, a, 2, 0.01, 3);
        CHECK_FALSE(ft.embedding);
        for (const auto & lv : ft.levels)
            if (lv.dichotomy)
                CHECK(lv.dichotomy->invariant_holds);
    }
}
