#pragma once

#include <pmx/matrix.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pmx {

enum class RecordStatus { exact, lower_bound };

struct ExtremalRecord {
    std::string pattern_key;
    int n = 0;
    std::size_t value = 0;
    RecordStatus status = RecordStatus::lower_bound;
    ZeroOneMatrix witness;
    std::string solver;
    double budget_seconds = 0;
    std::optional<std::size_t> upper_bound; // when the search stopped early
};

std::string_view to_string(RecordStatus s);

nlohmann::json to_json(const ExtremalRecord & rec);
ExtremalRecord record_from_json(const nlohmann::json & j, const std::string & pattern_key);

// Exhaustive over all n x n matrices, row by row, abandoning any prefix that
// already contains the pattern. Refuses n*n above cap_cells.
ExtremalRecord brute_force_ex(int n, const ZeroOneMatrix & pattern, int cap_cells = 25);

// Branch and bound. budget_seconds <= 0 means no limit.
ExtremalRecord exact_ex(int n, const ZeroOneMatrix & pattern, double budget_seconds);

// Random matrix with density 1/2 n^{-(r+s-2)/(w-1)}, then one 1-entry of
// every remaining copy is removed. The result is verified free of the pattern.
ExtremalRecord deletion_lower_bound(int n, const ZeroOneMatrix & pattern, std::uint64_t seed);
double deletion_probability(int n, const ZeroOneMatrix & pattern);

// True when adding `row` as row `index` of `prefix` (rows 0..index-1 already
// free of the pattern) creates a copy. Rows past index are ignored.
bool row_creates_copy(const ZeroOneMatrix & prefix, int index, const ZeroOneMatrix & pattern);

class CacheStore {
public:
    explicit CacheStore(std::filesystem::path dir);

    const std::filesystem::path & dir() const { return dir_; }

    // Strongest stored record for (pattern, n); witnesses are re-verified.
    std::optional<ExtremalRecord> get(const ZeroOneMatrix & pattern, int n) const;
    // Stores unless an equal or stronger record is already present.
    void put(const ZeroOneMatrix & pattern, const ExtremalRecord & rec);

    std::filesystem::path file_for(const ZeroOneMatrix & pattern) const;

private:
    std::vector<ExtremalRecord> load(const ZeroOneMatrix & pattern) const;

    std::filesystem::path dir_;
};

// exact beats lower bound; a larger lower bound beats a smaller one
bool stronger(const ExtremalRecord & a, const ExtremalRecord & b);

std::filesystem::path default_cache_dir();

enum class TableMode { exact, brute, random };

std::vector<ExtremalRecord> extremal_table(const ZeroOneMatrix & pattern, int n_from, int n_to, double budget_seconds,
                                           CacheStore * cache, TableMode mode = TableMode::exact,
                                           std::uint64_t seed = 0x5EED);

// Pads a witness with a zero last row and column.
ZeroOneMatrix pad_witness(const ZeroOneMatrix & w);

} // namespace pmx
