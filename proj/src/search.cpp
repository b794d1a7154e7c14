#include <pmx/containment.hpp>
#include <pmx/error.hpp>
#include <pmx/rng.hpp>
#include <pmx/search.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pmx {

std::string_view to_string(RecordStatus s)
{
    return s == RecordStatus::exact ? "exact" : "lowerBound";
}

nlohmann::json to_json(const ExtremalRecord & rec)
{
    nlohmann::json j{
        {"patternKey", rec.pattern_key},
        {"n", rec.n},
        {"value", rec.value},
        {"status", to_string(rec.status)},
        {"witness", rec.witness.row_strings()},
        {"solver", rec.solver},
        {"budget", rec.budget_seconds},
    };
    if (rec.upper_bound)
        j["upperBound"] = *rec.upper_bound;
    return j;
}

ExtremalRecord record_from_json(const nlohmann::json & j, const std::string & pattern_key)
{
    ExtremalRecord rec;
    rec.pattern_key = j.value("patternKey", pattern_key);
    rec.n = j.at("n").get<int>();
    rec.value = j.at("value").get<std::size_t>();
    const auto status = j.at("status").get<std::string>();
    if (status == "exact")
        rec.status = RecordStatus::exact;
    else if (status == "lowerBound")
        rec.status = RecordStatus::lower_bound;
    else
        fail(ErrorKind::format, "unknown record status '" + status + "'");
    const auto rows = j.at("witness").get<std::vector<std::string>>();
    rec.witness = rows.empty() ? ZeroOneMatrix() : ZeroOneMatrix::from_strings(rows);
    rec.solver = j.value("solver", "");
    rec.budget_seconds = j.value("budget", 0.0);
    if (j.contains("upperBound"))
        rec.upper_bound = j.at("upperBound").get<std::size_t>();
    return rec;
}

bool row_creates_copy(const ZeroOneMatrix & prefix, int index, const ZeroOneMatrix & pattern)
{
    const int r = pattern.rows();
    if (r > index + 1 || pattern.cols() > prefix.cols())
        return false;
    std::vector<RowWindow> windows(static_cast<std::size_t>(r), RowWindow{0, index - 1});
    windows.back() = {index, index};
    return find_embedding_within(prefix, pattern, windows).has_value();
}

namespace {

std::vector<Word> mask_row(std::uint64_t mask)
{
    return {mask};
}

// all row masks, heaviest first, ties by increasing mask
std::vector<std::uint64_t> masks_by_weight(int n)
{
    std::vector<std::uint64_t> out(std::size_t{1} << n);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = i;
    std::stable_sort(out.begin(), out.end(), [] (std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) > std::popcount(b);
    });
    return out;
}

void check_size(int n)
{
    if (n < 1)
        fail(ErrorKind::domain, "n must be positive");
    if (n > 20)
        fail(ErrorKind::budget, "exact search is limited to n <= 20");
}

} // namespace

ExtremalRecord brute_force_ex(int n, const ZeroOneMatrix & pattern, int cap_cells)
{
    check_size(n);
    if (n * n > cap_cells)
        fail(ErrorKind::budget, "brute force refuses n=" + std::to_string(n) + ": " + std::to_string(n * n) +
                                    " cells exceed the cap of " + std::to_string(cap_cells));
    ZeroOneMatrix cur(n, n);
    ZeroOneMatrix best;
    long long best_w = -1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    auto rec = [&] (auto && self, int row, long long w) -> void {
        if (row == n) {
            if (w > best_w) {
                best_w = w;
                best = cur;
            }
            return;
        }
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            cur.set_row(row, mask_row(mask));
            if (row_creates_copy(cur, row, pattern))
                continue;
            self(self, row + 1, w + std::popcount(mask));
        }
        cur.set_row(row, mask_row(0));
    };
    rec(rec, 0, 0);
    if (best_w < 0)
        fail(ErrorKind::unsupported, "every " + std::to_string(n) + "x" + std::to_string(n) + " matrix contains the pattern");
    ExtremalRecord out;
    out.pattern_key = canonical_key(pattern);
    out.n = n;
    out.value = static_cast<std::size_t>(best_w);
    out.status = RecordStatus::exact;
    out.witness = best;
    out.solver = "brute";
    return out;
}

ExtremalRecord exact_ex(int n, const ZeroOneMatrix & pattern, double budget_seconds)
{
    check_size(n);
    using clock = std::chrono::steady_clock;
    const bool limited = budget_seconds > 0;
    const auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(
                                             limited ? budget_seconds : 0.0));
    const auto order = masks_by_weight(n);

    ZeroOneMatrix cur(n, n);
    ZeroOneMatrix best;
    long long best_w = -1;
    bool timed_out = false;
    long long nodes = 0;
    std::size_t root_bound = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

    auto rec = [&] (auto && self, int row, long long w) -> void {
        if (row == n) {
            if (w > best_w) {
                best_w = w;
                best = cur;
            }
            return;
        }
        if (limited && (++nodes & 63) == 0 && clock::now() > deadline)
            timed_out = true;
        if (timed_out)
            return;
        // feasible next rows; the set only shrinks further down, so the
        // heaviest feasible row bounds every remaining row
        std::vector<std::uint64_t> feasible;
        for (std::uint64_t mask : order) {
            cur.set_row(row, mask_row(mask));
            if (!row_creates_copy(cur, row, pattern))
                feasible.push_back(mask);
        }
        cur.set_row(row, mask_row(0));
        if (feasible.empty())
            return;
        const long long top = std::popcount(feasible.front());
        if (row == 0)
            root_bound = static_cast<std::size_t>(top * n);
        if (w + top * (n - row) <= best_w)
            return;
        for (std::uint64_t mask : feasible) {
            const long long pw = std::popcount(mask);
            if (w + pw + top * (n - row - 1) <= best_w)
                break;
            cur.set_row(row, mask_row(mask));
            self(self, row + 1, w + pw);
            if (timed_out)
                break;
        }
        cur.set_row(row, mask_row(0));
    };
    rec(rec, 0, 0);

    ExtremalRecord out;
    out.pattern_key = canonical_key(pattern);
    out.n = n;
    out.solver = "bnb";
    out.budget_seconds = limited ? budget_seconds : 0.0;
    if (best_w < 0) {
        if (!timed_out)
            fail(ErrorKind::unsupported,
                 "every " + std::to_string(n) + "x" + std::to_string(n) + " matrix contains the pattern");
        best = ZeroOneMatrix(n, n);
        best_w = 0;
        if (contains(best, pattern))
            fail(ErrorKind::budget, "budget exhausted before any pattern-free matrix was found");
    }
    out.value = static_cast<std::size_t>(best_w);
    out.witness = best;
    out.status = timed_out ? RecordStatus::lower_bound : RecordStatus::exact;
    if (timed_out)
        out.upper_bound = root_bound;
    return out;
}

double deletion_probability(int n, const ZeroOneMatrix & pattern)
{
    const double w = static_cast<double>(pattern.weight());
    const double exponent = (pattern.rows() + pattern.cols() - 2) / (w - 1);
    return std::clamp(0.5 * std::pow(static_cast<double>(n), -exponent), 0.0, 1.0);
}

ExtremalRecord deletion_lower_bound(int n, const ZeroOneMatrix & pattern, std::uint64_t seed)
{
    if (n < 1)
        fail(ErrorKind::domain, "n must be positive");
    if (pattern.weight() <= 1)
        fail(ErrorKind::unsupported, "the deletion method needs a pattern with at least two 1-entries");
    const double p = deletion_probability(n, pattern);
    SplitMix64 rng(seed);
    ZeroOneMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rng.uniform() < p)
                m.set(i, j, true);

    // the last 1-entry of the pattern in row-major order
    int li = 0;
    int lj = 0;
    for (int i = 0; i < pattern.rows(); ++i)
        for (int j = 0; j < pattern.cols(); ++j)
            if (pattern.get(i, j)) {
                li = i;
                lj = j;
            }
    while (auto e = find_embedding(m, pattern))
        m.set(e->row_map[static_cast<std::size_t>(li)], e->col_map[static_cast<std::size_t>(lj)], false);
    if (contains(m, pattern))
        fail(ErrorKind::precondition, "internal: deletion left a copy behind");

    ExtremalRecord out;
    out.pattern_key = canonical_key(pattern);
    out.n = n;
    out.value = m.weight();
    out.status = RecordStatus::lower_bound;
    out.witness = std::move(m);
    out.solver = "deletion(seed=" + std::to_string(seed) + ")";
    return out;
}

bool stronger(const ExtremalRecord & a, const ExtremalRecord & b)
{
    if (a.status != b.status)
        return a.status == RecordStatus::exact;
    if (a.status == RecordStatus::lower_bound)
        return a.value > b.value;
    return false;
}

std::filesystem::path default_cache_dir()
{
    if (const char * env = std::getenv("PATTERN_EXTREMAL_CACHE"); env != nullptr && *env != '\0')
        return env;
    return ".pmx-cache";
}

CacheStore::CacheStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CacheStore::file_for(const ZeroOneMatrix & pattern) const
{
    return dir_ / (canonical_key(pattern) + ".json");
}

std::vector<ExtremalRecord> CacheStore::load(const ZeroOneMatrix & pattern) const
{
    const auto path = file_for(pattern);
    std::vector<ExtremalRecord> out;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        return out;
    const std::string hint = " (rebuild hint: delete " + path.string() + " or point --cache-dir at an empty directory)";
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::io, "cannot read " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    }
    catch (const std::exception & ex) {
        fail(ErrorKind::cache, "corrupt cache file " + path.string() + ": " + ex.what() + hint);
    }
    const std::string key = canonical_key(pattern);
    try {
        if (doc.at("key").get<std::string>() != key)
            fail(ErrorKind::cache, "cache file " + path.string() + " holds another pattern" + hint);
        for (const auto & j : doc.at("records"))
            out.push_back(record_from_json(j, key));
    }
    catch (const Error &) {
        throw;
    }
    catch (const std::exception & ex) {
        fail(ErrorKind::cache, "malformed cache file " + path.string() + ": " + ex.what() + hint);
    }
    for (const auto & rec : out) {
        const bool shape = rec.witness.rows() == rec.n && rec.witness.cols() == rec.n;
        if (!shape || rec.witness.weight() != rec.value || contains(rec.witness, pattern))
            fail(ErrorKind::cache, "cache record for n=" + std::to_string(rec.n) + " in " + path.string() +
                                       " fails witness verification" + hint);
    }
    return out;
}

std::optional<ExtremalRecord> CacheStore::get(const ZeroOneMatrix & pattern, int n) const
{
    std::optional<ExtremalRecord> best;
    for (auto & rec : load(pattern))
        if (rec.n == n && (!best || stronger(rec, *best)))
            best = std::move(rec);
    return best;
}

void CacheStore::put(const ZeroOneMatrix & pattern, const ExtremalRecord & rec)
{
    auto records = load(pattern);
    for (const auto & old : records)
        if (old.n == rec.n && !stronger(rec, old))
            return;
    std::erase_if(records, [&] (const ExtremalRecord & old) { return old.n == rec.n; });
    records.push_back(rec);
    std::sort(records.begin(), records.end(), [] (const ExtremalRecord & a, const ExtremalRecord & b) { return a.n < b.n; });

    nlohmann::json doc{{"key", canonical_key(pattern)}, {"pattern", to_json(pattern)}, {"records", nlohmann::json::array()}};
    for (const auto & r : records)
        doc["records"].push_back(to_json(r));
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec)
        fail(ErrorKind::io, "cannot create cache directory " + dir_.string() + ": " + ec.message());
    const auto path = file_for(pattern);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            fail(ErrorKind::io, "cannot write " + tmp);
        out << doc.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        fail(ErrorKind::io, "cannot replace " + path.string() + ": " + ec.message());
}

ZeroOneMatrix pad_witness(const ZeroOneMatrix & w)
{
    ZeroOneMatrix out(w.rows() + 1, w.cols() + 1);
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (w.get(i, j))
                out.set(i, j, true);
    return out;
}

std::vector<ExtremalRecord> extremal_table(const ZeroOneMatrix & pattern, int n_from, int n_to, double budget_seconds,
                                           CacheStore * cache, TableMode mode, std::uint64_t seed)
{
    if (n_from < 1 || n_to < n_from)
        fail(ErrorKind::domain, "invalid n range");
    auto compute = [&] (int n, double budget) {
        switch (mode) {
        case TableMode::brute: return brute_force_ex(n, pattern);
        case TableMode::random: return deletion_lower_bound(n, pattern, seed + static_cast<std::uint64_t>(n));
        case TableMode::exact: break;
        }
        return exact_ex(n, pattern, budget);
    };
    std::vector<ExtremalRecord> table;
    for (int n = n_from; n <= n_to; ++n) {
        std::optional<ExtremalRecord> cached = cache != nullptr ? cache->get(pattern, n) : std::nullopt;
        if (cached && (cached->status == RecordStatus::exact || mode == TableMode::random)) {
            table.push_back(*cached);
            continue;
        }
        ExtremalRecord rec = compute(n, budget_seconds);
        if (cached && stronger(*cached, rec))
            rec = *cached;
        if (cache != nullptr)
            cache->put(pattern, rec);
        table.push_back(std::move(rec));
    }
    // ex(n) <= ex(n+1): a padded witness is still free of the pattern
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        if (table[i].value <= table[i + 1].value)
            continue;
        if (table[i + 1].status == RecordStatus::exact) {
            table[i] = compute(table[i].n, budget_seconds * 4);
            table[i + 1] = compute(table[i + 1].n, budget_seconds * 4);
            if (table[i].value > table[i + 1].value)
                fail(ErrorKind::precondition, "table is not monotone after recomputation");
        }
        else {
            ExtremalRecord padded = table[i];
            padded.n = table[i + 1].n;
            padded.witness = pad_witness(table[i].witness);
            padded.status = RecordStatus::lower_bound;
            padded.upper_bound.reset();
            padded.solver = "padded(" + table[i].solver + ")";
            table[i + 1] = padded;
        }
        if (cache != nullptr) {
            cache->put(pattern, table[i]);
            cache->put(pattern, table[i + 1]);
        }
    }
    return table;
}

} // namespace pmx
