#include <pmx/classify.hpp>
#include <pmx/constants.hpp>
#include <pmx/containment.hpp>
#include <pmx/count.hpp>
#include <pmx/cycles.hpp>
#include <pmx/error.hpp>
#include <pmx/hypergraph.hpp>
#include <pmx/increment.hpp>
#include <pmx/oracle.hpp>
#include <pmx/search.hpp>
#include <pmx/verify.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace pmx {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

int uniform_int(SplitMix64 & rng, int lo, int hi)
{
    return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

ZeroOneMatrix random_matrix(SplitMix64 & rng, int rows, int cols, double p)
{
    ZeroOneMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (rng.uniform() < p)
                m.set(i, j, true);
    return m;
}

// k distinct sorted values from [0, n), partial Fisher-Yates
std::vector<int> random_subset(SplitMix64 & rng, int n, int k)
{
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i)
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(uniform_int(rng, i, n - 1))]);
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

SuiteOutcome pass(std::string detail)
{
    return {true, std::move(detail)};
}

SuiteOutcome fail_with(std::string detail)
{
    return {false, std::move(detail)};
}

std::string where(int instance)
{
    return "instance " + std::to_string(instance) + ": ";
}

// ---- containment

SuiteOutcome injection_agreement(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed);
    int found = 0;
    for (int inst = 0; inst < 10000; ++inst) {
        ZeroOneMatrix pattern;
        do
            pattern = random_matrix(rng, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), 0.5);
        while (pattern.weight() == 0 && rng.uniform() < 0.9);
        const double density = 0.3 + 0.5 * rng.uniform();
        const ZeroOneMatrix host = random_matrix(rng, uniform_int(rng, 1, 5), uniform_int(rng, 1, 5), density);
        const auto fast = find_embedding(host, pattern);
        const auto slow = oracle::injection_search(host, pattern);
        if (fast.has_value() != slow.has_value())
            return fail_with(where(inst) + "find_embedding says " + (fast ? "yes" : "no") + ", oracle disagrees");
        if (fast) {
            if (!oracle::embedding_ok(host, pattern, *fast))
                return fail_with(where(inst) + "certificate rejected by the oracle");
            if (!(*fast == *slow))
                return fail_with(where(inst) + "certificate is not the lexicographically least one");
            ++found;
        }
    }
    return pass("10000 instances, 0 disagreements, " + std::to_string(found) + " contained");
}

SuiteOutcome kernels_agree(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0xB175);
    std::vector<const bits::KernelTable *> variants{&bits::scalar_kernels()};
    for (const auto * v : {bits::avx2_kernels(), bits::neon_kernels()})
        if (v != nullptr)
            variants.push_back(v);
    variants.push_back(&bits::active_kernels());
    const auto & ref = bits::scalar_kernels();
    for (int inst = 0; inst < 2000; ++inst) {
        const std::size_t n = rng.below(41);
        std::vector<Word> a(n), b(n), d0(n), d1(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng();
            b[i] = inst % 3 == 0 ? 0 : rng() & rng();
        }
        ref.and_into(d0.data(), a.data(), b.data(), n);
        for (const auto * v : variants) {
            v->and_into(d1.data(), a.data(), b.data(), n);
            if (v->popcount(a.data(), n) != ref.popcount(a.data(), n) ||
                v->and_popcount(a.data(), b.data(), n) != ref.and_popcount(a.data(), b.data(), n) ||
                v->intersects(a.data(), b.data(), n) != ref.intersects(a.data(), b.data(), n) || d0 != d1)
                return fail_with(where(inst) + std::string(v->name) + " disagrees with the scalar kernels");
        }
    }
    return pass("2000 random word arrays, every compiled kernel variant matches the scalar reference");
}

// ---- classify

SuiteOutcome figure_fixtures(const SuiteOptions &)
{
    const auto left = ZeroOneMatrix::from_strings({"0101", "1001", "1001", "0110"});
    const auto middle = ZeroOneMatrix::from_strings({"0100", "1011", "1010", "0101"});
    const auto right = ZeroOneMatrix::from_strings({"0101", "1010", "1010", "0101"});
    const IntervalCut lc = min_column_parts(left);
    if (lc.parts != 2 || lc.cuts != std::vector<int>{2})
        return fail_with("left matrix: minColumnParts " + std::to_string(lc.parts));
    const IntervalCut mr = min_row_parts(middle);
    if (mr.parts != 2 || mr.cuts != std::vector<int>{2})
        return fail_with("middle matrix: minRowParts " + std::to_string(mr.parts));
    const PartiteProfile rp = partite_profile(right);
    if (rp.rows.parts != 2 || rp.columns.parts != 2)
        return fail_with("right matrix: profile (" + std::to_string(rp.rows.parts) + "," +
                         std::to_string(rp.columns.parts) + ")");

    std::set<std::vector<std::string>> figure{
        {"110", "011", "101"}, {"011", "110", "101"}, {"101", "110", "011"},
        {"101", "011", "110"}, {"110", "101", "011"}, {"011", "101", "110"},
    };
    // complements of the 3x3 permutation matrices are exactly the 6-cycles
    std::set<std::vector<std::string>> complements;
    std::vector<int> perm{0, 1, 2};
    do {
        std::vector<std::string> rows(3, "111");
        for (int i = 0; i < 3; ++i)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = '0';
        complements.insert(rows);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (complements != figure)
        return fail_with("transcribed cycle figure does not match the permutation-complement oracle");

    const auto cycles = enumerate_cycles(6);
    std::set<std::vector<std::string>> got;
    for (const auto & c : cycles) {
        got.insert(c.row_strings());
        if (!is_x_monotone(c))
            return fail_with("cycle " + format_pattern(c) + " is not x-monotone");
    }
    if (cycles.size() != 6 || got != figure)
        return fail_with("enumerate_cycles(6) returned " + std::to_string(cycles.size()) + " matrices, not the figure set");
    return pass("left minColumnParts=2, middle minRowParts=2, right profile (2,2); 6 six-cycles match the figure, all x-monotone");
}

// ---- counting

SuiteOutcome supersaturation(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0x22);
    struct Pair {
        int u, t, lo, hi, quota;
    };
    // (3,2) needs 6 n^{5/3} < n^2, i.e. n > 216; it is exercised just above that
    const Pair pairs[] = {{2, 2, 20, 40, 120}, {2, 3, 37, 40, 80}, {3, 2, 217, 228, 12}};
    int checked = 0;
    int small = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto & p : pairs) {
        for (int done = 0; done < p.quota;) {
            const int n = uniform_int(rng, p.lo, p.hi);
            const double need = p.t * p.u * std::pow(n, 2.0 - 1.0 / p.u) / (static_cast<double>(n) * n);
            const double density = std::min(1.0, need + (1.0 - need) * rng.uniform() * 0.5 + 0.002);
            const ZeroOneMatrix m = random_matrix(rng, n, n, density);
            const BoundCheck b = supersat_bound(static_cast<double>(m.weight()), n, p.u, p.t);
            if (!b.applicable)
                continue;
            const BigInt byrows = count_by_axis(m, p.u, p.t, Axis::rows);
            const BigInt bycols = count_by_axis(m, p.u, p.t, Axis::columns);
            const BigInt count = count_copies(m, p.u, p.t).count;
            if (byrows != bycols || count != byrows)
                return fail_with(where(checked) + "row and column enumeration disagree");
            if (!meets_bound(count, b.log_value))
                return fail_with(where(checked) + "count " + count.str() + " below bound " + fmt(b.value) + " for (u,t)=(" +
                                 std::to_string(p.u) + "," + std::to_string(p.t) + ")");
            worst = std::min(worst, log_big(count) - b.log_value);
            ++done;
            ++checked;
            small += n <= 40 ? 1 : 0;
        }
    }
    return pass(std::to_string(small) + " instances with n<=40 for (2,2),(2,3) and " + std::to_string(checked - small) +
                " for (3,2) at n in [217,228] (no n<=40 satisfies its precondition); 0 violations; min log-slack " +
                fmt(worst));
}

// The stated K_{u+1,t} bound, over the same instance stream as the corrected
// one below. Violations are counted rather than stopping at the first.
struct SteppingTally {
    int checked = 0;
    int stated_violations = 0;
    int corrected_violations = 0;
    std::string first_stated;
    std::string first_corrected;
};

std::optional<SteppingTally> stepping_instances(const SuiteOptions & o, std::string & error)
{
    SplitMix64 rng(o.seed ^ 0x41);
    const std::pair<int, int> pairs[] = {{1, 2}, {2, 2}, {2, 3}, {3, 2}};
    SteppingTally tally;
    int attempts = 0;
    while (tally.checked < 200) {
        if (++attempts > 200000) {
            error = "could not generate applicable instances";
            return std::nullopt;
        }
        const auto [u, t] = pairs[tally.checked % 4];
        const int rows = uniform_int(rng, u + 2, 12);
        const int cols = uniform_int(rng, t + 1, 10);
        const ZeroOneMatrix m = random_matrix(rng, rows, cols, 0.5 + 0.45 * rng.uniform());
        const BigInt N = count_copies(m, u, t).count;
        const BoundCheck b = stepping_bound(N, cols, u, t);
        if (!b.applicable)
            continue;
        const BigInt next = count_copies(m, u + 1, t).count;
        if (next != BigInt(oracle::count_all_ones(m, u + 1, t)) || N != BigInt(oracle::count_all_ones(m, u, t))) {
            error = where(tally.checked) + "count_copies disagrees with direct enumeration";
            return std::nullopt;
        }
        const std::string label = where(tally.checked) + std::to_string(rows) + "x" + std::to_string(cols) + " (u,t)=(" +
                                  std::to_string(u) + "," + std::to_string(t) + ") K_{" + std::to_string(u + 1) + "," +
                                  std::to_string(t) + "} count " + next.str();
        if (!meets_bound(next, b.log_value)) {
            if (tally.stated_violations++ == 0)
                tally.first_stated = label + " < " + fmt(b.value);
        }
        const BoundCheck fixed = stepping_bound_corrected(N, cols, u, t);
        if (!meets_bound(next, fixed.log_value)) {
            if (tally.corrected_violations++ == 0)
                tally.first_corrected = label + " < " + fmt(fixed.value);
        }
        ++tally.checked;
    }
    return tally;
}

SuiteOutcome stepping_up(const SuiteOptions & o)
{
    std::string error;
    const auto tally = stepping_instances(o, error);
    if (!tally)
        return fail_with(error);
    // smallest instance where the stated bound fails: 2x1 all-ones, u = t = 1
    const ZeroOneMatrix tiny = ZeroOneMatrix::all_ones(2, 1);
    const BoundCheck tb = stepping_bound(count_copies(tiny, 1, 1).count, 1, 1, 1);
    const bool tiny_fails = tb.applicable && !meets_bound(count_copies(tiny, 2, 1).count, tb.log_value);
    if (tally->stated_violations > 0 || tiny_fails)
        return fail_with(std::to_string(tally->stated_violations) + " of 200 applicable instances violate the bound 1/2 N^{(u+1)/u} n^{-t/u}; first: " +
                         tally->first_stated + (tiny_fails ? "; also 2x1 all-ones with u=t=1: N=2, K_{2,1} count 1 < 2" : ""));
    return pass("200 applicable instances over (u,t) in {(1,2),(2,2),(2,3),(3,2)}, 0 violations");
}

SuiteOutcome stepping_up_corrected(const SuiteOptions & o)
{
    std::string error;
    const auto tally = stepping_instances(o, error);
    if (!tally)
        return fail_with(error);
    if (tally->corrected_violations > 0)
        return fail_with("random " + tally->first_corrected);
    // every 0-1 matrix up to 3x3, every u, t <= 3
    long long exhaustive = 0;
    for (int rows = 1; rows <= 3; ++rows)
        for (int cols = 1; cols <= 3; ++cols)
            for (std::uint32_t bitsv = 0; bitsv < (1U << (rows * cols)); ++bitsv) {
                ZeroOneMatrix m(rows, cols);
                for (int i = 0; i < rows * cols; ++i)
                    if ((bitsv >> i) & 1U)
                        m.set(i / cols, i % cols, true);
                for (int u = 1; u <= 3; ++u)
                    for (int t = 1; t <= 3; ++t) {
                        const BigInt N(oracle::count_all_ones(m, u, t));
                        const BigInt next(oracle::count_all_ones(m, u + 1, t));
                        if (!meets_bound(next, stepping_bound_corrected(N, cols, u, t).log_value))
                            return fail_with("exhaustive: " + format_pattern(m) + " u=" + std::to_string(u) +
                                             " t=" + std::to_string(t));
                        ++exhaustive;
                    }
            }
    return pass("corrected bound C(n,t)^{-1/u} N^{(u+1)/u}/(u+1)^2 - C(n,t) holds on the 200 instances and on " +
                std::to_string(exhaustive) + " exhaustive (matrix, u, t) triples up to 3x3");
}

SuiteOutcome axis_symmetry(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0x5A);
    for (int inst = 0; inst < 300; ++inst) {
        const ZeroOneMatrix m = random_matrix(rng, uniform_int(rng, 1, 8), uniform_int(rng, 1, 8), rng.uniform());
        const int u = uniform_int(rng, 1, 3);
        const int t = uniform_int(rng, 1, 3);
        const BigInt want(oracle::count_all_ones(m, u, t));
        if (count_by_axis(m, u, t, Axis::rows) != want || count_by_axis(m, u, t, Axis::columns) != want ||
            count_copies(m, u, t).count != want)
            return fail_with(where(inst) + "count differs from direct enumeration " + want.str());
    }
    return pass("300 random matrices up to 8x8: both enumeration axes equal direct enumeration");
}

// ---- hypergraph

SuiteOutcome tcut_statistics(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0x7C);
    const int trials = 100000;
    double worst_z = 0;
    for (int inst = 0; inst < 20; ++inst) {
        const int t = 2 + inst % 2;
        const int n = uniform_int(rng, t, 50);
        std::vector<int> e = random_subset(rng, n, t);
        for (int & x : e)
            ++x;
        const double p = static_cast<double>(cut_probability(e, n));
        int hits = 0;
        for (int i = 0; i < trials; ++i)
            hits += oracle::cuts(e, random_t_cut(n, t, rng).points, n) ? 1 : 0;
        const double freq = static_cast<double>(hits) / trials;
        const double sigma = std::sqrt(p * (1 - p) / trials);
        if (sigma == 0 ? freq != p : std::abs(freq - p) > 3 * sigma)
            return fail_with(where(inst) + "frequency " + fmt(freq) + " vs exact " + fmt(p));
        if (sigma > 0)
            worst_z = std::max(worst_z, std::abs(freq - p) / sigma);
    }
    long long edges = 0;
    for (int t = 2; t <= 3; ++t)
        for (int n = t; n <= 12; ++n) {
            const auto cutsets = oracle::subsets(n, t - 1);
            for (auto e : oracle::subsets(n, t)) {
                for (int & x : e)
                    ++x;
                long long count = 0;
                for (auto pts : cutsets) {
                    for (int & x : pts)
                        ++x;
                    const bool mine = oracle::cuts(e, pts, n);
                    if (mine != is_cut_by(e, TCut{pts}, n))
                        return fail_with("is_cut_by disagrees with the membership rule at n=" + std::to_string(n));
                    count += mine ? 1 : 0;
                }
                if (Rational(count, static_cast<long long>(cutsets.size())) != cut_probability(e, n) ||
                    BigInt(count) != cuts_through(e, n))
                    return fail_with("exhaustive cut count differs from cut_probability at n=" + std::to_string(n));
                ++edges;
            }
        }
    return pass("20 edges within 3 sigma over 1e5 draws (max |z| " + fmt(worst_z) + "); " + std::to_string(edges) +
                " edges with n<=12 match exhaustive cut counts exactly");
}

// ---- increment

ZeroOneMatrix random_partite_pattern(SplitMix64 & rng, int & t)
{
    for (;;) {
        const int r = uniform_int(rng, 2, 3);
        const int s = uniform_int(rng, 3, 5);
        ZeroOneMatrix a(r, s);
        for (int i = 0; i < r; ++i) {
            while (a.row_weight(i) == 0)
                for (int j = 0; j < s; ++j)
                    if (rng.uniform() < 0.4)
                        a.set(i, j, true);
        }
        t = std::max(2, min_column_parts(a).parts);
        if (t <= 3 && t <= s)
            return a;
    }
}

SuiteOutcome increment_soundness(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0x91);
    const int k = 4;
    for (int inst = 0; inst < 100; ++inst) {
        int t = 2;
        const ZeroOneMatrix a = random_partite_pattern(rng, t);
        const int h = 3;
        const int cols = 14;
        ZeroOneMatrix host = random_matrix(rng, k * h, cols, 0.15);
        const auto blocks = random_subset(rng, k, a.rows());
        const auto support = random_subset(rng, cols, a.cols());
        for (int b : blocks) {
            const int row = b * h + uniform_int(rng, 0, h - 1);
            for (int c : support)
                host.set(row, c, true);
        }
        StepOptions opts;
        opts.t = t;
        const StepResult step = density_increment_step(host, a, 2, k, opts);
        if (step.branch != StepBranch::embedded || !step.embedding)
            return fail_with("planted " + where(inst) + "no embedding returned");
        if (!oracle::embedding_ok(host, a, *step.embedding))
            return fail_with("planted " + where(inst) + "embedding rejected by the oracle");
    }

    const ZeroOneMatrix patterns[] = {
        ZeroOneMatrix::from_strings({"11", "11"}),
        ZeroOneMatrix::from_strings({"11", "10"}),
        ZeroOneMatrix::from_strings({"101", "011"}),
    };
    const int u = 2;
    int conditional = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const ZeroOneMatrix & a = patterns[inst % 3];
        const ZeroOneMatrix host = deletion_lower_bound(16, a, o.seed + static_cast<std::uint64_t>(inst)).witness;
        if (oracle::injection_search(host, a))
            return fail_with("A-free " + where(inst) + "deletion host contains the pattern");
        const StepResult step = density_increment_step(host, a, u, k);
        if (step.branch == StepBranch::embedded)
            return fail_with("A-free " + where(inst) + "embedding reported in a pattern-free host");
        const int t = step.t;
        const int h = host.rows() / k;
        std::uint64_t narrow = 0;
        std::uint64_t best = 0;
        for (int b = 0; b < k; ++b) {
            const std::uint64_t c = oracle::count_all_ones(host.block(b * h, h, 0, host.cols()), u, t);
            narrow += c;
            best = std::max(best, c);
        }
        const ZeroOneMatrix chosen = host.block(step.rows.begin, step.rows.count, step.cols.begin, step.cols.count);
        const std::uint64_t recount = oracle::count_all_ones(chosen, u, t);
        if (BigInt(recount) != step.count || recount != best)
            return fail_with("A-free " + where(inst) + "reported count " + step.count.str() + ", recount " +
                             std::to_string(recount));
        if (BigInt(narrow) != step.narrow_total || recount * static_cast<std::uint64_t>(k) < narrow)
            return fail_with("A-free " + where(inst) + "pigeonhole floor violated");
        if (BigInt(oracle::count_all_ones(host, u, t)) != step.total)
            return fail_with("A-free " + where(inst) + "total count wrong");
        const ProofConstants pc = make_constants(t, a.rows(), a.cols(), u, 1.0, k);
        const double need = pc.C.log + std::max(u * std::log(host.rows()), t * std::log(host.cols()));
        if (step.total > 0 && log_big(step.total) > need) {
            ++conditional;
            if (!step.guarantee_met)
                return fail_with("A-free " + where(inst) + "guarantee precondition holds but the guarantee failed");
        }
    }
    return pass("100 planted instances embedded and verified; 100 deletion hosts with exact block counts and the "
                "pigeonhole floor; conditional guarantee applicable on " +
                std::to_string(conditional) + " hosts");
}

SuiteOutcome lambda_identity(const SuiteOptions &)
{
    double worst = 0;
    int schedules = 0;
    for (double eps : {1.0, 0.5}) {
        for (int t = 2; t <= 5; ++t) {
            for (int U = t + 2; U <= 200; ++U) {
                const LambdaSchedule ls = lambda_schedule(t, U, eps);
                const double e0 = eps / (10.0 * t * t);
                double rec = 1.0 - 1.0 / (2.0 * (t + 1)) + e0;
                for (int u = t + 1; u <= U; ++u) {
                    if (u > t + 1)
                        rec -= t / (static_cast<double>(u - 2) * u);
                    const double closed = e0 + t / (2.0 * (u - 1)) + t / (2.0 * u);
                    worst = std::max({worst, std::abs(rec - closed), std::abs(ls.at(u) - rec),
                                      std::abs(ls.closed_form(u) - closed)});
                }
                if (ls.at(t) != 1.0 || ls.at(U + 1) != 0.0 || !ls.strictly_decreasing)
                    return fail_with("schedule t=" + std::to_string(t) + " U=" + std::to_string(U) + " has wrong ends");
                ++schedules;
            }
        }
    }
    if (worst > 1e-12)
        return fail_with("recurrence and closed form differ by " + fmt(worst));
    return pass(std::to_string(schedules) + " schedules (t<=5, U<=200, eps in {1,0.5}); max gap below 1e-12");
}

// ---- cycles

SuiteOutcome balanced_embedding(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0xCE);
    const ZeroOneMatrix a = ZeroOneMatrix::from_strings({"11", "11"});
    const int r = 2;
    int decomposition = 0;
    for (int inst = 0; inst < 500; ++inst) {
        const int n = 2 * uniform_int(rng, 1, 12);
        const int m = uniform_int(rng, 17, 24);
        const int h = n / r;
        const double bound = r * 2 * std::sqrt(static_cast<double>(m)) * n;
        ZeroOneMatrix host;
        for (int attempt = 0;; ++attempt) {
            host = ZeroOneMatrix(n, m);
            const int max_gap = attempt > 50 ? 0 : std::max(1, h / 4);
            for (int c = 0; c < m; ++c) {
                const int per = h - uniform_int(rng, 0, std::min(max_gap, h));
                for (int b = 0; b < r; ++b)
                    for (int i : random_subset(rng, h, per))
                        host.set(b * h + i, c, true);
            }
            if (static_cast<double>(host.weight()) > bound)
                break;
        }
        if (!oracle::balanced(host, r))
            return fail_with(where(inst) + "generated host is not balanced");
        const auto res = embed_xmonotone_balanced(host, a);
        if (!res)
            return fail_with(where(inst) + "no embedding in a " + std::to_string(n) + "x" + std::to_string(m) + " host");
        const auto & e = res->embedding;
        if (!oracle::embedding_ok(host, a, e) || e.row_map[0] >= h || e.row_map[1] < h)
            return fail_with(where(inst) + "embedding is not a proper copy");
        decomposition += res->method == "decomposition" ? 1 : 0;
    }
    return pass("500 balanced hosts (r=s=2, n,m<=24) above the weight bound: all embedded properly (" +
                std::to_string(decomposition) + " by decomposition)");
}

SuiteOutcome dichotomy_soundness(const SuiteOptions & o)
{
    SplitMix64 rng(o.seed ^ 0xD1);
    const int r = 2;
    const int s = 2;
    int dense = 0;
    int balanced = 0;
    int flagged = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const int k = inst % 2 == 0 ? 2 : 4;
        const int family = inst % 5;
        int n = 16;
        ZeroOneMatrix m;
        if (family <= 1) {
            const int h = n / k;
            const int band = uniform_int(rng, 0, k - 1);
            m = ZeroOneMatrix(n, n);
            for (int i = 0; i < h; ++i)
                for (int j = 0; j < n; ++j)
                    if (rng.uniform() < 0.9)
                        m.set(band * h + i, j, true);
        }
        else if (family <= 3) {
            n = 32;
            const int h = n / k;
            const auto bands = random_subset(rng, k, r);
            m = ZeroOneMatrix(n, n);
            for (int j = 0; j < n; ++j) {
                const int per = h - uniform_int(rng, 0, h * 15 / 100);
                for (int b : bands)
                    for (int i : random_subset(rng, h, per))
                        m.set(b * h + i, j, true);
            }
        }
        else
            m = random_matrix(rng, n, n, 0.05);
        const double scale = static_cast<double>(m.weight()) / std::pow(n, 1.5);
        const double c = family == 4 ? 2 * scale + 1 : 0.5 * scale;
        const DichotomyResult d = dense_or_balanced(m, r, s, k, c);
        if (family == 4) {
            if (d.precondition_met)
                return fail_with(where(inst) + "sparse instance not flagged");
            ++flagged;
            continue;
        }
        if (!d.precondition_met || !d.invariant_holds)
            return fail_with(where(inst) + "branch invariant fails although the weight precondition holds");
        if (d.matrix.weight() != d.weight)
            return fail_with(where(inst) + "reported weight differs from the matrix");
        const ZeroOneMatrix sub = m.submatrix(d.row_indices, d.col_indices);
        for (int i = 0; i < sub.rows(); ++i)
            for (int j = 0; j < sub.cols(); ++j)
                if (d.matrix.get(i, j) && !sub.get(i, j))
                    return fail_with(where(inst) + "result has a 1 the host lacks");
        if (d.branch == DichotomyBranch::dense) {
            const double side = static_cast<double>(n) / k;
            if (d.matrix != sub || d.matrix.rows() != n / k || d.matrix.cols() != n / k ||
                static_cast<double>(d.weight) < 2 * c * std::pow(side, 1.5))
                return fail_with(where(inst) + "dense result fails the independent check");
            ++dense;
        }
        else {
            const double need = r * s * std::sqrt(static_cast<double>(d.matrix.cols())) * d.matrix.rows();
            if (!oracle::balanced(d.matrix, r) || d.matrix.rows() != n * r / k || static_cast<double>(d.weight) < need)
                return fail_with(where(inst) + "balanced result fails the independent check");
            ++balanced;
        }
    }
    return pass("100 instances (k in {2,4}): " + std::to_string(dense) + " dense, " + std::to_string(balanced) +
                " balanced, all invariants hold; " + std::to_string(flagged) + " sparse instances flagged");
}

// ---- constants

SuiteOutcome constants_arithmetic(const SuiteOptions &)
{
    const ProofConstants pc = make_constants(2, 2, 2, 2, 1.0);
    if (!pc.k.value || *pc.k.value != 16.0)
        return fail_with("k for t=2, r=2, eps=1 is not 16");
    if (pc.delta != 0.25)
        return fail_with("delta for t=2, s=2 is " + fmt(pc.delta));
    if (pc.c != 0.015625)
        return fail_with("c for t=2 is " + fmt(pc.c));
    double worst = 0;
    int compared = 0;
    for (int t = 2; t <= 4; ++t)
        for (int r = 1; r <= 3; ++r)
            for (int s = 1; s <= 3; ++s)
                for (int u = t; u <= t + 2; ++u)
                    for (double eps : {2.0, 1.0, 0.5, 0.25}) {
                        const ProofConstants lc = make_constants(t, r, s, u, eps);
                        const DirectConstants dc = direct_constants(t, r, s, u, eps);
                        const std::pair<const Magnitude *, double> pairs[] = {
                            {&lc.k, dc.k}, {&lc.binom_k_r, dc.binom_k_r}, {&lc.C0, dc.C0},
                            {&lc.Cprime, dc.Cprime}, {&lc.C, dc.C}};
                        for (const auto & [mag, direct] : pairs) {
                            if (!std::isfinite(direct) || direct <= 0)
                                continue;
                            worst = std::max(worst, std::abs(mag->log - std::log(direct)));
                            ++compared;
                        }
                        worst = std::max({worst, std::abs(lc.delta - dc.delta), std::abs(lc.c - dc.c)});
                    }
    if (worst > 1e-9)
        return fail_with("log-space and direct evaluation differ by " + fmt(worst));
    return pass("k=16, delta=1/4, c=2^-6; " + std::to_string(compared) +
                " finite values agree between log-space and direct evaluation within 1e-9");
}

// ---- search

SuiteOutcome extremal_regression(const SuiteOptions & o)
{
    const ZeroOneMatrix k22 = ZeroOneMatrix::all_ones(2, 2);
    const ZeroOneMatrix i2 = ZeroOneMatrix::identity(2);
    const std::size_t frozen[] = {3, 6, 9, 12};
    auto check = [&] (const ExtremalRecord & rec, const ZeroOneMatrix & a, std::size_t want, const char * who)
        -> std::optional<std::string> {
        const std::string tag = std::string(who) + " n=" + std::to_string(rec.n) + ": ";
        if (rec.value != want || rec.status != RecordStatus::exact)
            return tag + "value " + std::to_string(rec.value) + ", expected " + std::to_string(want);
        if (rec.witness.recount_weight() != want || rec.witness.rows() != rec.n || rec.witness.cols() != rec.n)
            return tag + "witness has the wrong shape or weight";
        if (oracle::injection_search(rec.witness, a))
            return tag + "witness contains the pattern";
        return std::nullopt;
    };
    for (int n = 2; n <= 5; ++n) {
        const std::size_t want = frozen[n - 2];
        if (auto err = check(brute_force_ex(n, k22), k22, want, "brute"))
            return fail_with(*err);
        const ExtremalRecord bnb = exact_ex(n, k22, 0);
        if (auto err = check(bnb, k22, want, "bnb"))
            return fail_with(*err);
        if (count_copies(bnb.witness, 2, 2).count != 0)
            return fail_with("bnb witness has a K_{2,2} copy");
    }
    if (auto err = check(brute_force_ex(3, i2), i2, 5, "brute identity"))
        return fail_with(*err);
    if (auto err = check(exact_ex(3, i2, 0), i2, 5, "bnb identity"))
        return fail_with(*err);

    CacheStore cache(o.cache_dir);
    const auto table = extremal_table(k22, 2, 5, 0, &cache);
    for (const auto & rec : table)
        if (auto err = check(rec, k22, frozen[rec.n - 2], "table"))
            return fail_with(*err);
    if (auto err = check(extremal_table(i2, 3, 3, 0, &cache).front(), i2, 5, "table identity"))
        return fail_with(*err);
    return pass("ex(n, 2x2 all-ones) = 3,6,9,12 for n=2..5 and ex(3, 2x2 identity) = 5 from brute force, matched by "
                "branch and bound and the cached table");
}

SuiteOutcome deletion_sandwich(const SuiteOptions & o)
{
    const ZeroOneMatrix k22 = ZeroOneMatrix::all_ones(2, 2);
    const std::size_t exact[] = {3, 6, 9, 12};
    for (int n = 2; n <= 5; ++n)
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const ExtremalRecord rec = deletion_lower_bound(n, k22, o.seed + seed);
            if (rec.value > exact[n - 2] || oracle::injection_search(rec.witness, k22))
                return fail_with("n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": bound " +
                                 std::to_string(rec.value) + " not sandwiched");
        }
    std::ostringstream means;
    for (int n : {16, 32}) {
        double sum = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const ExtremalRecord rec = deletion_lower_bound(n, k22, o.seed + seed);
            if (contains(rec.witness, k22) || rec.witness.recount_weight() != rec.value)
                return fail_with("deletion witness invalid at n=" + std::to_string(n));
            sum += static_cast<double>(rec.value);
        }
        const double floor = 0.25 * std::pow(n, 2.0 - 2.0 / 3.0);
        if (sum / 50 < floor)
            return fail_with("mean weight " + fmt(sum / 50) + " below " + fmt(floor) + " at n=" + std::to_string(n));
        means << " n=" << n << " mean " << fmt(sum / 50) << " >= " << fmt(floor) << ';';
    }
    const auto a = deletion_lower_bound(12, k22, o.seed);
    const auto b = deletion_lower_bound(12, k22, o.seed);
    if (!(a.witness == b.witness))
        return fail_with("same seed gave different witnesses");
    return pass("lower bounds never exceed exact values for n=2..5;" + means.str() + " seeded runs reproducible");
}

// ---- cache

ZeroOneMatrix drop_ones(ZeroOneMatrix m, std::size_t count)
{
    for (int i = 0; i < m.rows() && count > 0; ++i)
        for (int j = 0; j < m.cols() && count > 0; ++j)
            if (m.get(i, j)) {
                m.set(i, j, false);
                --count;
            }
    return m;
}

ExtremalRecord lower(const ExtremalRecord & exact, std::size_t drop)
{
    ExtremalRecord r = exact;
    r.witness = drop_ones(exact.witness, drop);
    r.value = exact.value - drop;
    r.status = RecordStatus::lower_bound;
    r.solver = "test";
    return r;
}

SuiteOutcome cache_precedence(const SuiteOptions & o)
{
    const auto scratch = o.cache_dir / "suite-scratch";
    std::error_code ec;
    std::filesystem::remove_all(scratch, ec);
    const ZeroOneMatrix k22 = ZeroOneMatrix::all_ones(2, 2);
    CacheStore store(scratch);
    auto done = [&] (SuiteOutcome out) {
        std::filesystem::remove_all(scratch, ec);
        return out;
    };
    if (store.get(k22, 4))
        return done(fail_with("empty cache returned a record"));
    const ExtremalRecord e4 = brute_force_ex(4, k22);
    store.put(k22, e4);
    store.put(k22, lower(e4, 1));
    const auto g4 = store.get(k22, 4);
    if (!g4 || g4->status != RecordStatus::exact || g4->value != 9)
        return done(fail_with("exact 9 was downgraded by lowerBound 8"));
    if (to_json(*g4).dump() != to_json(e4).dump())
        return done(fail_with("record did not round-trip bit for bit"));
    const ExtremalRecord e5 = exact_ex(5, k22, 0);
    store.put(k22, lower(e5, 5));
    store.put(k22, lower(e5, 4));
    store.put(k22, lower(e5, 6));
    const auto g5 = store.get(k22, 5);
    if (!g5 || g5->value != 8 || g5->status != RecordStatus::lower_bound)
        return done(fail_with("lowerBound 8 did not win over 7 and 6"));

    const ZeroOneMatrix i2 = ZeroOneMatrix::identity(2);
    {
        std::ofstream bad(store.file_for(i2));
        bad << "{\"key\": \"" << canonical_key(i2) << "\", \"records\": [{\"n\": 2, \"value\": 4, "
            << "\"status\": \"exact\", \"witness\": [\"11\", \"11\"]}]}\n";
    }
    try {
        store.get(i2, 2);
        return done(fail_with("a forged witness was accepted"));
    }
    catch (const Error & e) {
        if (e.kind() != ErrorKind::cache || std::string(e.what()).find("rebuild hint") == std::string::npos)
            return done(fail_with("forged witness raised the wrong error"));
    }
    return done(pass("empty get is none; exact beats lowerBound; larger lowerBound wins; round-trip is bit-identical; "
                     "forged witness rejected with a rebuild hint"));
}

SuiteOutcome cache_integrity(const SuiteOptions & o)
{
    CacheStore store(o.cache_dir);
    const ZeroOneMatrix patterns[] = {ZeroOneMatrix::all_ones(2, 2), ZeroOneMatrix::identity(2)};
    int records = 0;
    for (const auto & a : patterns)
        for (int n = 1; n <= 8; ++n)
            if (auto rec = store.get(a, n)) {
                if (oracle::injection_search(rec->witness, a) || rec->witness.recount_weight() != rec->value)
                    return fail_with("cached witness for n=" + std::to_string(n) + " fails re-verification");
                ++records;
            }
    return pass(std::to_string(records) + " cached records re-verified");
}

} // namespace

const std::vector<SuiteItem> & suite_items()
{
    static const std::vector<SuiteItem> items{
        {"A1", "containment", "injection-oracle-agreement", injection_agreement},
        {"A2", "classify", "figure-fixtures", figure_fixtures},
        {"A3", "search", "exact-extremal-regression", extremal_regression},
        {"A4", "counting", "supersaturation-inequality", supersaturation},
        {"A5", "counting", "stepping-up-inequality", stepping_up},
        {"A6", "hypergraph", "t-cut-statistics", tcut_statistics},
        {"A7", "increment", "density-increment-soundness", increment_soundness},
        {"A8", "increment", "lambda-schedule-identity", lambda_identity},
        {"A9", "cycles", "balanced-embedding", balanced_embedding},
        {"A10", "cycles", "dichotomy-soundness", dichotomy_soundness},
        {"A11", "constants", "constants-arithmetic", constants_arithmetic},
        {"K1", "containment", "kernel-variants-agree", kernels_agree},
        {"C1", "counting", "axis-symmetry", axis_symmetry},
        {"C2", "counting", "stepping-up-corrected", stepping_up_corrected},
        {"S1", "search", "deletion-sandwich", deletion_sandwich},
        {"X1", "cache", "cache-precedence", cache_precedence},
        {"X2", "cache", "cache-integrity", cache_integrity},
    };
    return items;
}

bool matches_filter(const SuiteItem & item, const std::string & filter)
{
    if (filter.empty())
        return true;
    std::istringstream in(filter);
    std::string part;
    while (std::getline(in, part, ','))
        if (part == item.group || part == item.id || part == item.name)
            return true;
    return false;
}

SuiteOutcome run_item(const SuiteItem & item, const SuiteOptions & options)
{
    try {
        return item.run(options);
    }
    catch (const Error & e) {
        return fail_with(std::string(to_string(e.kind())) + ": " + e.what());
    }
    catch (const std::exception & e) {
        return fail_with(e.what());
    }
}

int run_suite(const SuiteOptions & options, std::ostream & out, std::ostream & diag)
{
    int failures = 0;
    int ran = 0;
    for (const auto & item : suite_items()) {
        if (!matches_filter(item, options.filter))
            continue;
        const auto start = std::chrono::steady_clock::now();
        const SuiteOutcome res = run_item(item, options);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << (res.passed ? "PASS " : "FAIL ") << item.id << ' ' << item.group << '/' << item.name << ": " << res.detail
            << '\n';
        out.flush();
        diag << item.id << ' ' << fmt(secs) << " s\n";
        failures += res.passed ? 0 : 1;
        ++ran;
    }
    if (ran == 0)
        fail(ErrorKind::input, "no suite item matches '" + options.filter + "'");
    out << "summary: " << ran - failures << " passed, " << failures << " failed\n";
    return failures;
}

} // namespace pmx
