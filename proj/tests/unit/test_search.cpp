#include <pmx/containment.hpp>
#include <pmx/error.hpp>
#include <pmx/search.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace pmx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string & name)
{
    auto p = fs::temp_directory_path() / ("pmx-unit-" + std::to_string(::getpid()) + "-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const ZeroOneMatrix k22 = ZeroOneMatrix::all_ones(2, 2);

} // namespace

TEST_SUITE("search")
{
    TEST_CASE("one row of two ones")
    {
        const auto a = ZeroOneMatrix::all_ones(1, 2);
        for (int n = 1; n <= 4; ++n) {
            const auto r = brute_force_ex(n, a);
            CHECK(r.value == static_cast<std::size_t>(n));
            CHECK(r.status == RecordStatus::exact);
            CHECK_FALSE(contains(r.witness, a));
        }
    }

    TEST_CASE("brute force and branch and bound agree")
    {
        const ZeroOneMatrix patterns[] = {
            k22,
            ZeroOneMatrix::identity(2),
            ZeroOneMatrix::from_strings({"01", "10"}),
            ZeroOneMatrix::from_strings({"11", "10"}),
            ZeroOneMatrix::from_strings({"101", "010"}),
        };
        for (const auto & a : patterns)
            for (int n = 1; n <= 4; ++n) {
                const auto b = brute_force_ex(n, a);
                const auto e = exact_ex(n, a, 0);
                CHECK(b.value == e.value);
                CHECK(e.status == RecordStatus::exact);
                CHECK(e.witness.weight() == e.value);
                CHECK_FALSE(contains(e.witness, a));
            }
        CHECK(brute_force_ex(3, ZeroOneMatrix::identity(2)).value == 5);
        CHECK_THROWS_AS(brute_force_ex(6, k22), Error);
    }

    TEST_CASE("k22 regression values")
    {
        const std::size_t want[] = {3, 6, 9, 12};
        for (int n = 2; n <= 5; ++n)
            CHECK(exact_ex(n, k22, 0).value == want[n - 2]);
    }

    TEST_CASE("budget exhaustion degrades to a lower bound")
    {
        const auto r = exact_ex(9, k22, 1e-9);
        CHECK(r.status == RecordStatus::lower_bound);
        REQUIRE(r.upper_bound);
        CHECK(*r.upper_bound >= r.value);
        CHECK_FALSE(contains(r.witness, k22));
        CHECK(r.witness.weight() == r.value);
    }

    TEST_CASE("deletion lower bound")
    {
        const auto a = deletion_lower_bound(16, k22, 42);
        const auto b = deletion_lower_bound(16, k22, 42);
        CHECK(a.witness == b.witness);
        CHECK(a.status == RecordStatus::lower_bound);
        CHECK_FALSE(contains(a.witness, k22));
        CHECK(a.witness.weight() == a.value);
        CHECK(deletion_probability(16, k22) > 0);
        CHECK_THROWS_AS(deletion_lower_bound(4, ZeroOneMatrix::all_ones(1, 1), 1), Error);
    }

    TEST_CASE("record json round trip")
    {
        const auto r = exact_ex(3, k22, 0);
        const auto j = to_json(r);
        CHECK(j["status"] == "exact");
        const auto back = record_from_json(j, canonical_key(k22));
        CHECK(back.value == r.value);
        CHECK(back.witness == r.witness);
        CHECK(back.status == r.status);
    }

    TEST_CASE("cache directory precedence")
    {
        ::unsetenv("PATTERN_EXTREMAL_CACHE");
        CHECK(default_cache_dir() == fs::path(".pmx-cache"));
        ::setenv("PATTERN_EXTREMAL_CACHE", "/tmp/pmx-env-cache", 1);
        CHECK(default_cache_dir() == fs::path("/tmp/pmx-env-cache"));
        ::unsetenv("PATTERN_EXTREMAL_CACHE");
    }

    TEST_CASE("cache store")
    {
        const auto dir = scratch("store");
        CacheStore store(dir);
        CHECK_FALSE(store.get(k22, 3));
        const auto exact = exact_ex(3, k22, 0);
        store.put(k22, exact);
        const auto got = store.get(k22, 3);
        REQUIRE(got);
        CHECK(got->value == 6);
        // a weaker record never replaces a stronger one
        auto weak = exact;
        weak.status = RecordStatus::lower_bound;
        for (int i = 0, done = 0; i < 9 && !done; ++i)
            if (weak.witness.get(i / 3, i % 3)) {
                weak.witness.set(i / 3, i % 3, false);
                done = 1;
            }
        weak.value = weak.witness.weight();
        CHECK(weak.value == 5);
        store.put(k22, weak);
        CHECK(store.get(k22, 3)->status == RecordStatus::exact);
        CHECK(stronger(exact, weak));
        CHECK_FALSE(stronger(weak, exact));

        // forged witness is rejected with a rebuild hint
        auto j = nlohmann::json::parse(std::ifstream(store.file_for(k22)));
        j["records"][0]["witness"] = nlohmann::json::array({"111", "111", "111"});
        j["records"][0]["value"] = 9;
        std::ofstream(store.file_for(k22)) << j.dump();
        try {
            (void)store.get(k22, 3);
            FAIL("forged cache accepted");
        }
        catch (const Error & e) {
            CHECK(e.kind() == ErrorKind::cache);
            CHECK(std::string(e.what()).find("rebuild hint") != std::string::npos);
        }
        fs::remove_all(dir);
    }

    TEST_CASE("extremal table is monotone and cached")
    {
        const auto dir = scratch("table");
        CacheStore store(dir);
        const auto t = extremal_table(k22, 1, 5, 0, &store);
        REQUIRE(t.size() == 5);
        for (std::size_t i = 1; i < t.size(); ++i)
            CHECK(t[i].value >= t[i - 1].value);
        CHECK(t[4].value == 12);
        const auto again = extremal_table(k22, 1, 5, 0, &store);
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(again[i].value == t[i].value);
            CHECK(again[i].witness == t[i].witness);
        }
        CHECK(pad_witness(ZeroOneMatrix::all_ones(1, 1)) == ZeroOneMatrix::from_strings({"10", "00"}));
        fs::remove_all(dir);
    }
}
