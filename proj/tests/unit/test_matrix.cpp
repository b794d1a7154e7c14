#include <pmx/containment.hpp>
#include <pmx/error.hpp>
#include <pmx/matrix.hpp>
#include <pmx/oracle.hpp>
#include <pmx/rng.hpp>

#include <doctest.h>

#include <bit>

using namespace pmx;

namespace {

const ZeroOneMatrix fig1_left = ZeroOneMatrix::from_strings({"0101", "1001", "1001", "0110"});

ErrorKind kind_of(auto && fn)
{
    try {
        fn();
    }
    catch (const Error & e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::io;
}

} // namespace

TEST_SUITE("matrix")
{
    TEST_CASE("parse_pattern")
    {
        const auto m = parse_pattern("11\n11");
        CHECK(m == ZeroOneMatrix::all_ones(2, 2));
        CHECK(m.weight() == 4);
        const auto f = parse_pattern("0101\n1001\n1001\n0110\n");
        CHECK(f.rows() == 4);
        CHECK(f.cols() == 4);
        CHECK(f.weight() == 8);
        CHECK(kind_of([] { parse_pattern("01\n011"); }) == ErrorKind::format);
        CHECK(kind_of([] { parse_pattern("0a\n01"); }) == ErrorKind::format);
        CHECK(kind_of([] { parse_pattern("# only a comment\n"); }) == ErrorKind::format);
        CHECK(parse_pattern("# header\n1 0\n0 1\n") == ZeroOneMatrix::identity(2));
    }

    TEST_CASE("format and json round trip")
    {
        SplitMix64 rng(7);
        for (int inst = 0; inst < 50; ++inst) {
            ZeroOneMatrix m(1 + static_cast<int>(rng.below(9)), 1 + static_cast<int>(rng.below(70)));
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    if (rng() & 1U)
                        m.set(i, j, true);
            CHECK(parse_pattern(format_pattern(m)) == m);
            CHECK(matrix_from_json(to_json(m)) == m);
            CHECK(matrix_from_key(canonical_key(m)) == m);
            CHECK(m.recount_weight() == m.weight());
            CHECK(m.transpose().transpose() == m);
        }
    }

    TEST_CASE("find_embedding examples")
    {
        const auto e = find_embedding(ZeroOneMatrix::from_strings({"01", "00"}), ZeroOneMatrix::from_strings({"1"}));
        REQUIRE(e);
        CHECK(e->row_map == std::vector<int>{0});
        CHECK(e->col_map == std::vector<int>{1});

        CHECK_FALSE(find_embedding(ZeroOneMatrix::from_strings({"01", "10"}), ZeroOneMatrix::identity(2)));

        const auto k = find_embedding(fig1_left, ZeroOneMatrix::all_ones(2, 2));
        REQUIRE(k);
        CHECK(k->row_map == std::vector<int>{1, 2});
        CHECK(k->col_map == std::vector<int>{0, 3});
        CHECK(to_json(*k)["rowMap"] == nlohmann::json({2, 3}));
        CHECK(embedding_from_json(to_json(*k)) == *k);
    }

    TEST_CASE("find_embedding agrees with the injection oracle")
    {
        SplitMix64 rng(11);
        for (int inst = 0; inst < 3000; ++inst) {
            ZeroOneMatrix a(1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)));
            ZeroOneMatrix m(1 + static_cast<int>(rng.below(6)), 1 + static_cast<int>(rng.below(6)));
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j)
                    a.set(i, j, rng.uniform() < 0.5);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    m.set(i, j, rng.uniform() < 0.6);
            const auto fast = find_embedding(m, a);
            const auto slow = oracle::injection_search(m, a);
            REQUIRE(fast.has_value() == slow.has_value());
            if (fast)
                CHECK(*fast == *slow);
        }
    }

    TEST_CASE("windowed search respects the windows")
    {
        const auto m = ZeroOneMatrix::all_ones(4, 4);
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        const RowWindow w[] = {{2, 2}, {3, 3}};
        const auto e = find_embedding_within(m, a, w);
        REQUIRE(e);
        CHECK(e->row_map == std::vector<int>{2, 3});
        const RowWindow bad[] = {{3, 3}, {0, 3}};
        CHECK_FALSE(find_embedding_within(m, a, bad));
    }

    TEST_CASE("verify_embedding")
    {
        const auto a = ZeroOneMatrix::all_ones(2, 2);
        const auto e = *find_embedding(fig1_left, a);
        CHECK(verify_embedding(fig1_left, a, e));
        CHECK_FALSE(verify_embedding(fig1_left, a, Embedding{{2, 1}, {0, 3}}));
        const auto miss = check_embedding(fig1_left, a, Embedding{{0, 1}, {0, 3}});
        CHECK_FALSE(miss.valid);
        CHECK_FALSE(miss.diagnostic.empty());
        CHECK_FALSE(verify_embedding(fig1_left, a, Embedding{{1, 9}, {0, 3}}));
    }

    TEST_CASE("partition")
    {
        const auto m = fig1_left;
        const auto h = partition(m, 2, BlockMode::horizontal);
        REQUIRE(h.blocks.size() == 2);
        CHECK(h.blocks[0].matrix == ZeroOneMatrix::from_strings({"0101", "1001"}));
        CHECK(h.blocks[1].rows.begin == 2);
        const auto g = partition(m, 2, BlockMode::grid);
        REQUIRE(g.blocks.size() == 4);
        CHECK(g.blocks[1].matrix == ZeroOneMatrix::from_strings({"01", "01"}));
        CHECK(g.blocks[2].rows.begin == 2);
        CHECK(g.blocks[2].cols.begin == 0);
        CHECK(kind_of([&] { partition(m, 3, BlockMode::horizontal); }) == ErrorKind::divisibility);
        const auto v = partition(m, 4, BlockMode::vertical);
        CHECK(v.blocks[3].matrix == ZeroOneMatrix::from_strings({"1", "1", "1", "0"}));
    }

    TEST_CASE("from_ordered_bigraph")
    {
        const std::pair<int, int> id[] = {{1, 1}, {2, 2}};
        CHECK(from_ordered_bigraph(id, 2, 2) == ZeroOneMatrix::identity(2));
        CHECK(from_ordered_bigraph({}, 2, 3) == ZeroOneMatrix(2, 3));
        const std::pair<int, int> hex[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 1}};
        CHECK(from_ordered_bigraph(hex, 3, 3) == ZeroOneMatrix::from_strings({"110", "011", "101"}));
        const std::pair<int, int> bad[] = {{3, 1}};
        CHECK(kind_of([&] { from_ordered_bigraph(bad, 2, 2); }) == ErrorKind::input);
    }

    TEST_CASE("canonical_key")
    {
        auto a = ZeroOneMatrix::all_ones(3, 5);
        auto b = ZeroOneMatrix::all_ones(3, 5);
        CHECK(canonical_key(a) == canonical_key(b));
        b.set(2, 4, false);
        CHECK(canonical_key(a) != canonical_key(b));
        CHECK(canonical_key(ZeroOneMatrix(1, 4)) != canonical_key(ZeroOneMatrix(4, 1)));
        CHECK(canonical_key(ZeroOneMatrix::all_ones(2, 2)) == "2x2-f");
    }

    TEST_CASE("kernel variants match the scalar reference")
    {
        SplitMix64 rng(3);
        const auto & ref = bits::scalar_kernels();
        std::vector<const bits::KernelTable *> variants{&bits::active_kernels()};
        for (const auto * v : {bits::avx2_kernels(), bits::neon_kernels()})
            if (v != nullptr)
                variants.push_back(v);
        for (int inst = 0; inst < 500; ++inst) {
            const std::size_t n = rng.below(70);
            std::vector<Word> a(n), b(n), d0(n), d1(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = rng();
                b[i] = rng() & rng() & rng();
            }
            ref.and_into(d0.data(), a.data(), b.data(), n);
            std::size_t pc = 0;
            std::size_t apc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                pc += static_cast<std::size_t>(std::popcount(a[i]));
                apc += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
            }
            CHECK(ref.popcount(a.data(), n) == pc);
            CHECK(ref.and_popcount(a.data(), b.data(), n) == apc);
            for (const auto * v : variants) {
                CAPTURE(v->name);
                v->and_into(d1.data(), a.data(), b.data(), n);
                CHECK(d1 == d0);
                CHECK(v->popcount(a.data(), n) == pc);
                CHECK(v->and_popcount(a.data(), b.data(), n) == apc);
                CHECK(v->intersects(a.data(), b.data(), n) == (apc > 0));
            }
        }
    }

    TEST_CASE("next_set_bit and fill_prefix")
    {
        std::vector<Word> w(3, 0);
        bits::fill_prefix(w, 130);
        CHECK(bits::popcount(w) == 130);
        CHECK(w[2] == 0x3);
        std::vector<Word> s(3, 0);
        bits::set_bit(s, 5);
        bits::set_bit(s, 64);
        bits::set_bit(s, 190);
        CHECK(bits::next_set_bit(s, 0) == 5);
        CHECK(bits::next_set_bit(s, 6) == 64);
        CHECK(bits::next_set_bit(s, 65) == 190);
        CHECK(bits::next_set_bit(s, 191) == -1);
    }
}
