#pragma once

#include <pmx/rng.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace pmx {

struct SuiteOptions {
    std::string filter;                 // group name or item id; empty runs everything
    std::filesystem::path cache_dir;    // records produced by the search items land here
    std::uint64_t seed = default_seed;
};

struct SuiteOutcome {
    bool passed = false;
    std::string detail; // deterministic; no timings
};

struct SuiteItem {
    std::string id;    // A1..A11 for the acceptance properties
    std::string group; // containment, classify, counting, hypergraph, increment, constants, cycles, search, cache
    std::string name;
    std::function<SuiteOutcome(const SuiteOptions &)> run;
};

const std::vector<SuiteItem> & suite_items();

bool matches_filter(const SuiteItem & item, const std::string & filter);

// Runs one item, turning any escaped exception into a failure.
SuiteOutcome run_item(const SuiteItem & item, const SuiteOptions & options);

// One "PASS|FAIL <id> <group>/<name>: <detail>" line per item on out; timings
// go to diag. Returns the number of failures.
int run_suite(const SuiteOptions & options, std::ostream & out, std::ostream & diag);

} // namespace pmx
