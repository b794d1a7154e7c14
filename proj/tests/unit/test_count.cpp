#include <pmx/count.hpp>
#include <pmx/error.hpp>
#include <pmx/oracle.hpp>
#include <pmx/rng.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace pmx;

namespace {

const auto fig1_left = ZeroOneMatrix::from_strings({"0101", "1001", "1001", "0110"});

ZeroOneMatrix random_matrix(SplitMix64 & rng, int rows, int cols, double p)
{
    ZeroOneMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.set(i, j, rng.uniform() < p);
    return m;
}

} // namespace

TEST_SUITE("count")
{
    TEST_CASE("ext_binom")
    {
        CHECK(ext_binom(2, 3) == 0);
        for (int k = 1; k <= 5; ++k)
            CHECK(ext_binom(k, k) == doctest::Approx(1.0));
        CHECK(ext_binom(3.5, 2) == doctest::Approx(4.375));
        CHECK(ext_binom(10, 3) == doctest::Approx(120.0));
        CHECK_THROWS_AS(ext_binom(3, 0), Error);
    }

    TEST_CASE("binomial helpers")
    {
        CHECK(binomial(10, 3) == 120);
        CHECK(binomial(3, 5) == 0);
        CHECK(binomial(60, 30) == BigInt("118264581564861424"));
        CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)));
        CHECK(log_big(BigInt(1) << 200) == doctest::Approx(200 * std::log(2.0)));
        CHECK(std::isinf(log_big(0)));
    }

    TEST_CASE("common_lines")
    {
        const int rows23[] = {1, 2};
        CHECK(common_lines(fig1_left, rows23, Axis::rows) == std::vector<int>{0, 3});
        const int all3[] = {0, 1, 2};
        CHECK(common_lines(ZeroOneMatrix::all_ones(3, 3), all3, Axis::rows) == std::vector<int>{0, 1, 2});
        CHECK(common_lines(fig1_left, {}, Axis::rows) == std::vector<int>{0, 1, 2, 3});
        const int cols14[] = {0, 3};
        CHECK(common_lines(fig1_left, cols14, Axis::columns) == std::vector<int>{1, 2});
        const int bad[] = {7};
        CHECK_THROWS_AS(common_lines(fig1_left, bad, Axis::rows), Error);
    }

    TEST_CASE("count_copies examples")
    {
        CHECK(count_copies(ZeroOneMatrix::all_ones(4, 4), 2, 2).count == 36);
        CHECK(count_copies(fig1_left, 2, 2).count == 1);
        CHECK(count_copies(ZeroOneMatrix(5, 5), 2, 2).count == 0);
    }

    TEST_CASE("count_copies against direct enumeration")
    {
        SplitMix64 rng(5);
        for (int inst = 0; inst < 300; ++inst) {
            const auto m = random_matrix(rng, 1 + static_cast<int>(rng.below(7)), 1 + static_cast<int>(rng.below(7)), 0.6);
            const int u = 1 + static_cast<int>(rng.below(3));
            const int t = 1 + static_cast<int>(rng.below(3));
            const auto want = oracle::count_all_ones(m, u, t);
            CHECK(count_copies(m, u, t).count == want);
            CHECK(count_by_axis(m, u, t, Axis::rows) == want);
            CHECK(count_by_axis(m, u, t, Axis::columns) == want);
        }
    }

    TEST_CASE("supersaturation bound")
    {
        const auto small = supersat_bound(16, 4, 2, 2);
        CHECK_FALSE(small.applicable);
        CHECK(small.threshold == doctest::Approx(32));
        const auto big = supersat_bound(5000, 100, 2, 2);
        CHECK(big.applicable);
        CHECK(big.value == doctest::Approx(97656.25));
        CHECK_THROWS_AS(supersat_bound(1, 0, 2, 2), Error);
    }

    TEST_CASE("stepping bound precondition")
    {
        const long long n = 6;
        const int t = 2;
        const BigInt boundary = 2 * binomial(n, t);
        CHECK(stepping_bound(boundary, n, 1, t).applicable);
        CHECK(stepping_bound(boundary, n, 1, t).threshold == doctest::Approx(30));
        CHECK_FALSE(stepping_bound(boundary - 1, n, 1, t).applicable);
        CHECK_THROWS_AS(stepping_bound(1, 0, 1, 1), Error);
    }

    TEST_CASE("stated stepping bound fails on a 2x1 all-ones matrix")
    {
        // N = 2 copies of K_{1,1}, n = 1 column: the precondition holds but
        // only one K_{2,1} exists while the bound asks for 2
        const auto m = ZeroOneMatrix::all_ones(2, 1);
        const auto N = count_copies(m, 1, 1).count;
        const auto b = stepping_bound(N, 1, 1, 1);
        CHECK(b.applicable);
        CHECK(b.value == doctest::Approx(2.0));
        CHECK_FALSE(meets_bound(count_copies(m, 2, 1).count, b.log_value));
    }

    TEST_CASE("corrected stepping bound holds on random matrices")
    {
        SplitMix64 rng(9);
        for (int inst = 0; inst < 300; ++inst) {
            const auto m = random_matrix(rng, 1 + static_cast<int>(rng.below(9)), 1 + static_cast<int>(rng.below(7)), 0.7);
            const int u = 1 + static_cast<int>(rng.below(3));
            const int t = 1 + static_cast<int>(rng.below(3));
            const auto N = count_copies(m, u, t).count;
            const auto b = stepping_bound_corrected(N, m.cols(), u, t);
            CHECK(b.applicable);
            CHECK(meets_bound(count_copies(m, u + 1, t).count, b.log_value));
        }
    }

    TEST_CASE("meets_bound")
    {
        CHECK(meets_bound(10, std::log(10.0)));
        CHECK_FALSE(meets_bound(9, std::log(10.0)));
        CHECK(meets_bound(0, -std::numeric_limits<double>::infinity()));
    }
}
