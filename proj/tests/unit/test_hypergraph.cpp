#include <pmx/error.hpp>
#include <pmx/hypergraph.hpp>
#include <pmx/oracle.hpp>

#include <doctest.h>

#include <cmath>

using namespace pmx;

namespace {

// every transversal of the parts is an edge
bool complete_partite(const OrderedHypergraph & h, const std::vector<int> & a, const std::vector<int> & b)
{
    if (a.back() >= b.front())
        return false;
    for (int x : a)
        for (int y : b) {
            const int e[] = {x, y};
            if (!h.has_edge(e))
                return false;
        }
    return true;
}

} // namespace

TEST_SUITE("hypergraph")
{
    TEST_CASE("build_column_hypergraph")
    {
        const auto sq = build_column_hypergraph(ZeroOneMatrix::all_ones(2, 2), 2, 2);
        REQUIRE(sq.graph.edges.size() == 1);
        CHECK(sq.graph.edges[0] == std::vector<int>{1, 2});
        CHECK(sq.labels.blocks(sq.graph.edges[0]) == std::vector<int>{1, 2});

        const auto row = build_column_hypergraph(ZeroOneMatrix::from_strings({"101"}), 2, 1);
        REQUIRE(row.graph.edges.size() == 1);
        CHECK(row.graph.edges[0] == std::vector<int>{1, 3});
        CHECK(row.labels.blocks(row.graph.edges[0]) == std::vector<int>{1});

        const auto f = build_column_hypergraph(ZeroOneMatrix::from_strings({"0101", "1001", "1001", "0110"}), 2, 2);
        const int e14[] = {1, 4};
        CHECK(f.graph.has_edge(e14));
        CHECK(f.labels.blocks(e14) == std::vector<int>{1, 2});
        const int e13[] = {1, 3};
        CHECK_FALSE(f.graph.has_edge(e13));
        CHECK_THROWS_AS(f.labels.blocks(e13), Error);
        CHECK_THROWS_AS(build_column_hypergraph(ZeroOneMatrix::all_ones(3, 3), 2, 2), Error);
    }

    TEST_CASE("classify_edge")
    {
        LabelMap lm;
        lm.k = 5;
        lm.phi[{1, 2}] = {3};
        lm.phi[{1, 3}] = {1, 2, 4};
        lm.phi[{2, 3}] = {1, 2, 4, 5};
        const int a[] = {1, 2};
        const int b[] = {1, 3};
        const int c[] = {2, 3};
        CHECK_FALSE(classify_edge(lm, a, 2).heavy);
        const auto hb = classify_edge(lm, b, 3);
        CHECK(hb.heavy);
        CHECK(hb.label == std::vector<int>{1, 2, 4});
        const auto hc = classify_edge(lm, c, 2);
        CHECK(hc.heavy);
        CHECK(hc.label == std::vector<int>{1, 2});
        const int missing[] = {3, 4};
        CHECK_THROWS_AS(classify_edge(lm, missing, 1), Error);
    }

    TEST_CASE("cut probabilities")
    {
        for (int n = 2; n <= 12; ++n) {
            const int e[] = {1, n};
            CHECK(cut_probability(e, n) == Rational(n - 1, n));
            CHECK(cut_gap_product(e, n) == Rational(n - 1, n));
        }
        const int e37[] = {3, 7};
        CHECK(cut_probability(e37, 10) == Rational(2, 5));
        const int e159[] = {1, 5, 9};
        CHECK(cut_gap_product(e159, 10) == Rational(4, 25));
        // exact probability over the C(10,2) = 45 cuts
        CHECK(cut_probability(e159, 10) == Rational(16, 45));
        const int unsorted[] = {5, 1};
        CHECK_THROWS_AS(cut_probability(unsorted, 10), Error);
        const int dup[] = {2, 2};
        CHECK_THROWS_AS(cut_probability(dup, 10), Error);
    }

    TEST_CASE("exact cut probability by enumeration")
    {
        for (int n = 3; n <= 9; ++n)
            for (int t = 2; t <= 4 && t <= n; ++t) {
                const auto all_cuts = oracle::subsets(n, t - 1);
                for (const auto & e0 : oracle::subsets(n, t)) {
                    std::vector<int> e;
                    for (int v : e0)
                        e.push_back(v + 1);
                    int hits = 0;
                    for (const auto & c0 : all_cuts) {
                        TCut cut;
                        for (int v : c0)
                            cut.points.push_back(v + 1);
                        const bool lib = is_cut_by(e, cut, n);
                        REQUIRE(lib == oracle::cuts(e, cut.points, n));
                        hits += lib ? 1 : 0;
                    }
                    REQUIRE(cut_probability(e, n) == Rational(hits, static_cast<long long>(all_cuts.size())));
                    REQUIRE(cut_gap_product(e, n) <= cut_probability(e, n));
                }
            }
    }

    TEST_CASE("random cuts")
    {
        OrderedHypergraph h{2, 2, {{1, 2}}};
        SplitMix64 rng(1);
        const auto only = random_t_cut(2, 2, rng);
        CHECK(only.points.size() == 1);
        CHECK(edges_cut(h, TCut{{1}}).size() == 1);
        CHECK(edges_cut(h, TCut{{2}}).empty());

        SplitMix64 a(77);
        SplitMix64 b(77);
        for (int i = 0; i < 100; ++i) {
            const auto ca = random_t_cut(20, 4, a);
            CHECK(ca.points == random_t_cut(20, 4, b).points);
            REQUIRE(ca.points.size() == 3);
            CHECK(ca.points[0] < ca.points[1]);
            CHECK(ca.points[1] < ca.points[2]);
            CHECK(ca.points.front() >= 1);
            CHECK(ca.points.back() <= 20);
        }
        CHECK_THROWS_AS(random_t_cut(2, 5, rng), Error);
    }

    TEST_CASE("ordered complete partite search")
    {
        OrderedHypergraph kb{4, 2, {}};
        for (int i = 1; i <= 2; ++i)
            for (int j = 3; j <= 4; ++j)
                kb.edges.push_back({i, j});
        const auto parts = find_ordered_complete_t_partite(kb, 2);
        REQUIRE(parts);
        CHECK((*parts)[0] == std::vector<int>{1, 2});
        CHECK((*parts)[1] == std::vector<int>{3, 4});
        CHECK_FALSE(find_ordered_complete_t_partite(OrderedHypergraph{4, 2, {}}, 1));
    }

    TEST_CASE("partite search against brute force")
    {
        SplitMix64 rng(13);
        for (int inst = 0; inst < 150; ++inst) {
            OrderedHypergraph h{8, 2, {}};
            for (const auto & e : oracle::subsets(8, 2))
                if (rng.uniform() < 0.6)
                    h.edges.push_back({e[0] + 1, e[1] + 1});
            std::optional<std::pair<std::vector<int>, std::vector<int>>> want;
            for (const auto & a0 : oracle::subsets(8, 2)) {
                for (const auto & b0 : oracle::subsets(8, 2)) {
                    std::vector<int> a{a0[0] + 1, a0[1] + 1};
                    std::vector<int> b{b0[0] + 1, b0[1] + 1};
                    if (complete_partite(h, a, b)) {
                        want = std::make_pair(a, b);
                        break;
                    }
                }
                if (want)
                    break;
            }
            const auto got = find_ordered_complete_t_partite(h, 2);
            REQUIRE(got.has_value() == want.has_value());
            if (got) {
                CHECK((*got)[0] == want->first);
                CHECK((*got)[1] == want->second);
            }
        }
    }

    TEST_CASE("avoidance threshold")
    {
        const auto a = avoidance_threshold(16, 2, 2);
        CHECK(a.threshold == doctest::Approx(256));
        CHECK(a.delta == doctest::Approx(0.25));
        CHECK(a.gamma == doctest::Approx(0.25));
        CHECK(avoidance_threshold(9, 2, 1).threshold == doctest::Approx(2 * std::pow(9.0, 1.5)));
        CHECK_THROWS_AS(avoidance_threshold(0, 2, 2), Error);
    }
}
