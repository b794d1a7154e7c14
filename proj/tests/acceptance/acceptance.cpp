// One line per acceptance criterion: "criterion N: PASS|FAIL <detail> (<secs> s, limit L s)".
// With an argument only that criterion runs; exit status is nonzero on any failure.

#include <pmx/cli.hpp>
#include <pmx/verify.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Criterion {
    int number;
    const char * item; // suite item id, or nullptr for the determinism check
    double limit;      // seconds; 0 means none
};

const Criterion criteria[] = {
    {1, "A1", 60},   {2, "A2", 1},    {3, "A3", 300},  {4, "A4", 120},  {5, "A5", 120},  {6, "A6", 120},
    {7, "A7", 300},  {8, "A8", 1},    {9, "A9", 300},  {10, "A10", 120}, {11, "A11", 1}, {12, nullptr, 0},
};

fs::path fresh_dir(const std::string & tag)
{
    const fs::path dir = fs::temp_directory_path() / ("pmx-acceptance-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string suite_report(const fs::path & cache, int & code)
{
    const std::string dir = cache.string();
    const char * argv[] = {"pmx", "verify-suite", "--cache-dir", dir.c_str()};
    std::ostringstream out;
    std::ostringstream err;
    code = pmx::run_cli(4, argv, out, err);
    return out.str();
}

pmx::SuiteOutcome determinism()
{
    const fs::path a = fresh_dir("a");
    const fs::path b = fresh_dir("b");
    int code_a = 0;
    int code_b = 0;
    const std::string first = suite_report(a, code_a);
    const std::string second = suite_report(b, code_b);
    fs::remove_all(a);
    fs::remove_all(b);
    if (first.empty())
        return {false, "verify-suite produced no report"};
    if (first != second || code_a != code_b)
        return {false, "two runs from clean caches differ"};
    return {true, "two verify-suite runs from clean caches are byte-identical (" + std::to_string(first.size()) +
                      " bytes, exit " + std::to_string(code_a) + ")"};
}

bool run(const Criterion & c)
{
    const auto start = std::chrono::steady_clock::now();
    pmx::SuiteOutcome res;
    if (c.item == nullptr)
        res = determinism();
    else {
        const fs::path cache = fresh_dir(c.item);
        pmx::SuiteOptions opts;
        opts.cache_dir = cache;
        for (const auto & item : pmx::suite_items())
            if (item.id == c.item)
                res = pmx::run_item(item, opts);
        fs::remove_all(cache);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = res.passed;
    std::string detail = res.detail;
    if (ok && c.limit > 0 && secs > c.limit) {
        ok = false;
        detail += "; over the time limit";
    }
    char timing[64];
    if (c.limit > 0)
        std::snprintf(timing, sizeof timing, " (%.3f s, limit %.0f s)", secs, c.limit);
    else
        std::snprintf(timing, sizeof timing, " (%.3f s)", secs);
    std::cout << "criterion " << c.number << ": " << (ok ? "PASS " : "FAIL ") << detail << timing << '\n';
    return ok;
}

} // namespace

int main(int argc, char ** argv)
{
    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);
    if (argc > 2 || (argc > 1 && (only < 1 || only > 12))) {
        std::cerr << "usage: pmx_acceptance [criterion 1-12]\n";
        return 2;
    }
    int failures = 0;
    for (const auto & c : criteria)
        if (only == 0 || c.number == only)
            failures += run(c) ? 0 : 1;
    return failures == 0 ? 0 : 1;
}
