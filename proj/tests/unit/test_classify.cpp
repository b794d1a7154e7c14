#include <pmx/classify.hpp>
#include <pmx/cycles.hpp>
#include <pmx/error.hpp>
#include <pmx/oracle.hpp>
#include <pmx/rng.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pmx;

namespace {

const auto fig1_left = ZeroOneMatrix::from_strings({"0101", "1001", "1001", "0110"});
const auto fig1_middle = ZeroOneMatrix::from_strings({"0100", "1011", "1010", "0101"});
const auto fig1_right = ZeroOneMatrix::from_strings({"0101", "1010", "1010", "0101"});

// brute force: can the columns be cut into `parts` intervals with one 1 per row in each
bool column_cut_ok(const ZeroOneMatrix & a, const std::vector<int> & cuts)
{
    std::vector<int> bounds{0};
    for (int c : cuts)
        bounds.push_back(c);
    bounds.push_back(a.cols());
    for (std::size_t p = 0; p + 1 < bounds.size(); ++p)
        for (int r = 0; r < a.rows(); ++r) {
            int ones = 0;
            for (int c = bounds[p]; c < bounds[p + 1]; ++c)
                ones += a.get(r, c) ? 1 : 0;
            if (ones > 1)
                return false;
        }
    return true;
}

int brute_min_column_parts(const ZeroOneMatrix & a)
{
    if (a.cols() <= 1)
        return 1;
    for (int k = 0; k < a.cols(); ++k)
        for (const auto & s : oracle::subsets(a.cols() - 1, k)) {
            std::vector<int> cuts;
            for (int v : s)
                cuts.push_back(v + 1);
            if (column_cut_ok(a, cuts))
                return k + 1;
        }
    return a.cols();
}

// winding number of a closed polygon around (px, py) by summing signed angles,
// with the y axis flipped to point up
int angle_winding(std::span<const Point> tour, double px, double py)
{
    double total = 0;
    for (std::size_t e = 0; e < tour.size(); ++e) {
        const Point & p = tour[e];
        const Point & q = tour[(e + 1) % tour.size()];
        const double ax = p.x - px;
        const double ay = -(p.y - py);
        const double bx = q.x - px;
        const double by = -(q.y - py);
        total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    }
    return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

} // namespace

TEST_SUITE("classify")
{
    TEST_CASE("interval partitions")
    {
        const auto lc = min_column_parts(fig1_left);
        CHECK(lc.parts == 2);
        CHECK(lc.cuts == std::vector<int>{2});
        CHECK(min_column_parts(ZeroOneMatrix::identity(3)).parts == 1);
        CHECK(min_column_parts(ZeroOneMatrix::all_ones(1, 3)).parts == 3);
        const auto mr = min_row_parts(fig1_middle);
        CHECK(mr.parts == 2);
        CHECK(mr.cuts == std::vector<int>{2});
        CHECK(min_row_parts(ZeroOneMatrix::identity(3)).parts == 1);
        CHECK(min_row_parts(ZeroOneMatrix::all_ones(3, 1)).parts == 3);
    }

    TEST_CASE("partite profile")
    {
        const auto p = partite_profile(fig1_right);
        CHECK(p.rows.parts == 2);
        CHECK(p.columns.parts == 2);
        CHECK(p.is_t_by_s(2, 2));
        CHECK_FALSE(p.is_t_by_s(1, 2));
        CHECK(partite_profile(ZeroOneMatrix::all_ones(2, 2)).is_t_by_s(2, 2));
        const auto id = partite_profile(ZeroOneMatrix::identity(2));
        CHECK(id.rows.parts == 1);
        CHECK(id.columns.parts == 1);
    }

    TEST_CASE("greedy column partition is optimal")
    {
        SplitMix64 rng(21);
        for (int inst = 0; inst < 400; ++inst) {
            ZeroOneMatrix a(1 + static_cast<int>(rng.below(4)), 1 + static_cast<int>(rng.below(6)));
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j)
                    a.set(i, j, rng.uniform() < 0.4);
            const auto got = min_column_parts(a);
            CHECK(got.parts == brute_min_column_parts(a));
            CHECK(static_cast<int>(got.cuts.size()) == got.parts - 1);
            CHECK(column_cut_ok(a, got.cuts));
            // rows of A are columns of the transpose
            CHECK(min_row_parts(a.transpose()).parts == got.parts);
        }
    }

    TEST_CASE("structure predicates")
    {
        CHECK(is_permutation(ZeroOneMatrix::identity(2)));
        CHECK_FALSE(is_permutation(ZeroOneMatrix::all_ones(1, 2)));
        CHECK_FALSE(is_permutation(fig1_left));
        CHECK(is_acyclic(ZeroOneMatrix::all_ones(1, 2)));
        CHECK_FALSE(is_acyclic(ZeroOneMatrix::all_ones(2, 2)));
        CHECK_FALSE(is_acyclic(fig1_right));
        CHECK(is_cycle(ZeroOneMatrix::all_ones(2, 2)));
        CHECK_FALSE(is_cycle(fig1_right));
        for (const auto & c : enumerate_cycles(6))
            CHECK(is_cycle(c));
        CHECK(strip_zero_lines(ZeroOneMatrix::from_strings({"000", "010", "000"})) == ZeroOneMatrix::all_ones(1, 1));
    }

    TEST_CASE("drawing")
    {
        const auto sq = drawing(ZeroOneMatrix::all_ones(2, 2));
        CHECK(sq.points.size() == 4);
        CHECK(sq.horizontal.size() == 2);
        CHECK(sq.vertical.size() == 2);
        CHECK(sq.orientation.size() == 4);
        CHECK(sq.orientation.front() == Point{1, 1});
        CHECK(sq.orientation[1] == Point{2, 1});

        const auto row = drawing(ZeroOneMatrix::all_ones(1, 3));
        CHECK(row.horizontal.size() == 2);
        CHECK(row.vertical.empty());
        CHECK(row.orientation.empty());
        CHECK_THROWS_AS(cycle_tour(ZeroOneMatrix::all_ones(1, 3)), Error);

        const auto hex = drawing(ZeroOneMatrix::from_strings({"110", "011", "101"}));
        CHECK(hex.orientation.size() == 6);
        CHECK(hex.horizontal.size() == 3);
        CHECK(hex.vertical.size() == 3);
        // rectilinear: consecutive tour points share a row or a column
        for (std::size_t i = 0; i < hex.orientation.size(); ++i) {
            const auto & p = hex.orientation[i];
            const auto & q = hex.orientation[(i + 1) % hex.orientation.size()];
            CHECK((p.x == q.x) != (p.y == q.y));
        }
    }

    TEST_CASE("x-monotone")
    {
        CHECK(is_x_monotone(ZeroOneMatrix::all_ones(2, 2)));
        for (const auto & c : enumerate_cycles(6))
            CHECK(is_x_monotone(c));
        bool found = false;
        for (const auto & c : enumerate_cycles(8)) {
            // independent straddle count: vertical lines between columns hit
            // by more than two horizontal edges
            bool straddle3 = false;
            for (int g = 0; g + 1 < c.cols(); ++g) {
                int hits = 0;
                for (const auto & s : drawing(c).horizontal) {
                    const int lo = std::min(s.from.x, s.to.x);
                    const int hi = std::max(s.from.x, s.to.x);
                    if (lo <= g + 1 && hi > g + 1)
                        ++hits;
                }
                straddle3 = straddle3 || hits > 2;
            }
            CHECK(is_x_monotone(c) == !straddle3);
            found = found || straddle3;
        }
        CHECK(found);
        CHECK_THROWS_AS(is_x_monotone(fig1_right), Error);
    }

    TEST_CASE("winding agrees with an angle-sum oracle")
    {
        for (int len : {4, 6, 8, 10}) {
            for (const auto & c : enumerate_cycles(len)) {
                const auto tour = cycle_tour(c);
                const auto w = winding_profile(c);
                REQUIRE(w.rows == c.rows() - 1);
                REQUIRE(w.cols == c.cols() - 1);
                for (int i = 0; i < w.rows; ++i)
                    for (int j = 0; j < w.cols; ++j)
                        REQUIRE(w.at(i, j) == angle_winding(tour, j + 1.5, i + 1.5));
            }
        }
    }

    TEST_CASE("positive cycles")
    {
        CHECK(is_positive_cycle(ZeroOneMatrix::all_ones(2, 2)));
        const auto w = winding_profile(ZeroOneMatrix::all_ones(2, 2));
        CHECK(std::abs(w.at(0, 0)) == 1);
        bool mixed = false;
        int positive6 = 0;
        for (int len : {6, 8, 10}) {
            for (const auto & c : enumerate_cycles(len)) {
                const auto tour = cycle_tour(c);
                bool pos = false;
                bool neg = false;
                for (int i = 0; i + 1 < c.rows(); ++i)
                    for (int j = 0; j + 1 < c.cols(); ++j) {
                        const int v = angle_winding(tour, j + 1.5, i + 1.5);
                        pos = pos || v > 0;
                        neg = neg || v < 0;
                    }
                CHECK(is_positive_cycle(c) == !(pos && neg));
                if (len == 6)
                    positive6 += is_positive_cycle(c) ? 1 : 0;
                else
                    mixed = mixed || (pos && neg);
            }
        }
        // two of the six 6-cycles cross themselves once
        CHECK(positive6 == 4);
        CHECK(mixed);
        CHECK_THROWS_AS(is_positive_cycle(fig1_right), Error);
    }

    TEST_CASE("classify report")
    {
        const auto r = classify_report(fig1_left);
        CHECK(r["minColumnParts"] == 2);
        CHECK(r["weight"] == 8);
        CHECK(r["isCycle"] == false);
    }
}
