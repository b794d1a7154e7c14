#include <pmx/classify.hpp>
#include <pmx/containment.hpp>
#include <pmx/count.hpp>
#include <pmx/cycles.hpp>
#include <pmx/error.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numeric>

namespace pmx {

BalanceCheck is_r_balanced(const ZeroOneMatrix & m, int r)
{
    BalanceCheck out;
    out.r = r;
    if (r < 1) {
        out.diagnostic = "r must be positive";
        return out;
    }
    if (m.rows() % r != 0) {
        out.diagnostic = "r=" + std::to_string(r) + " does not divide " + std::to_string(m.rows()) + " rows";
        return out;
    }
    const int band = m.rows() / r;
    out.balanced = true;
    for (int c = 0; c < m.cols(); ++c) {
        std::vector<int> counts(static_cast<std::size_t>(r), 0);
        for (int row = 0; row < m.rows(); ++row)
            if (m.get(row, c))
                ++counts[static_cast<std::size_t>(row / band)];
        if (out.balanced && std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) {
            out.balanced = false;
            out.violating_column = c;
            out.diagnostic = "column " + std::to_string(c + 1) + " has unequal band counts";
        }
        out.profiles.push_back(std::move(counts));
    }
    return out;
}

namespace {

int highest_bit(std::span<const Word> a)
{
    for (std::size_t w = a.size(); w-- > 0;)
        if (a[w] != 0)
            return static_cast<int>(w) * bits::word_bits + (bits::word_bits - 1 - std::countl_zero(a[w]));
    return -1;
}

// Pattern as a list of columns, each holding its two 1-rows.
using ColumnPairs = std::vector<std::pair<int, int>>;

struct Stage {
    int a = 0;          // first-column row that continues into column 2
    int b = 0;          // the other first-column row; glue row of the reduction
    bool base = false;  // two columns on the same row pair
    std::unique_ptr<Stage> child;
    // reach[x]: host entries (h, c) such that a proper copy of this suffix
    // pattern exists with its first column at c and row x at h
    ZeroOneMatrix reach_a;
    ZeroOneMatrix reach_b;
};

class Decomposition {
public:
    Decomposition(const ZeroOneMatrix & host, int r) : host_(host), band_(host.rows() / r) {}

    std::unique_ptr<Stage> build(ColumnPairs cols)
    {
        if (cols.size() < 2)
            return nullptr;
        auto st = std::make_unique<Stage>();
        auto [p, q] = cols[0];
        if (cols.size() == 2) {
            if (cols[1] != cols[0])
                return nullptr;
            st->a = p;
            st->b = q;
            st->base = true;
        }
        else {
            const auto next = cols[1];
            const bool p_next = next.first == p || next.second == p;
            const bool q_next = next.first == q || next.second == q;
            if (p_next == q_next)
                return nullptr; // not an x-monotone cycle suffix
            st->a = p_next ? p : q;
            st->b = p_next ? q : p;
            // drop column 1, move the continuing row's entry in column 2 to b
            ColumnPairs reduced(cols.begin() + 1, cols.end());
            auto & c2 = reduced[0];
            const int other = c2.first == st->a ? c2.second : c2.first;
            c2 = std::minmax(other, st->b);
            if (c2.first == c2.second)
                return nullptr;
            st->child = build(std::move(reduced));
            if (!st->child)
                return nullptr;
        }
        fill_reach(*st);
        return st;
    }

    // Completes a proper copy of the stage's suffix with row x at (h, c).
    bool reconstruct(const Stage & st, int x, int h, int c, std::vector<int> & rows, std::vector<int> & cols) const
    {
        const int other = x == st.a ? st.b : st.a;
        for (int ho = band_begin(other); ho < band_begin(other) + band_; ++ho) {
            if (!host_.get(ho, c))
                continue;
            const int ha = x == st.a ? h : ho;
            const int hb = x == st.a ? ho : h;
            for (int c2 = c + 1; c2 < host_.cols(); ++c2) {
                if (!host_.get(ha, c2))
                    continue;
                const bool tail = st.base ? host_.get(hb, c2) : glue(st).get(hb, c2);
                if (!tail)
                    continue;
                rows[static_cast<std::size_t>(st.a)] = ha;
                rows[static_cast<std::size_t>(st.b)] = hb;
                cols.push_back(c);
                if (st.base) {
                    cols.push_back(c2);
                    return true;
                }
                if (reconstruct(*st.child, st.b, hb, c2, rows, cols))
                    return true;
                cols.pop_back();
            }
        }
        return false;
    }

    int band_begin(int j) const { return j * band_; }

private:
    // reach set of the child for the glue row b
    const ZeroOneMatrix & glue(const Stage & st) const
    {
        const Stage & ch = *st.child;
        return ch.a == st.b ? ch.reach_a : ch.reach_b;
    }

    void fill_reach(Stage & st)
    {
        st.reach_a = ZeroOneMatrix(host_.rows(), host_.cols());
        st.reach_b = ZeroOneMatrix(host_.rows(), host_.cols());
        const std::size_t stride = host_.stride();
        std::vector<Word> x(stride);
        std::vector<Word> y(stride);
        std::vector<Word> acc_a(stride);
        std::vector<Word> acc_b(stride);
        for (int hb = band_begin(st.b); hb < band_begin(st.b) + band_; ++hb) {
            std::fill(acc_b.begin(), acc_b.end(), 0);
            auto tail_b = st.base ? host_.row(hb) : glue(st).row(hb);
            for (int ha = band_begin(st.a); ha < band_begin(st.a) + band_; ++ha) {
                bits::and_into(x, host_.row(ha), tail_b);
                const int last = highest_bit(x);
                if (last <= 0)
                    continue;
                bits::and_into(y, host_.row(ha), host_.row(hb));
                // keep columns strictly left of the last tail column
                std::vector<Word> mask(stride);
                bits::fill_prefix(mask, last);
                bits::and_into(y, y, mask);
                for (std::size_t w = 0; w < stride; ++w)
                    acc_b[w] |= y[w];
                auto cur = st.reach_a.row(ha);
                std::copy(cur.begin(), cur.end(), acc_a.begin());
                for (std::size_t w = 0; w < stride; ++w)
                    acc_a[w] |= y[w];
                st.reach_a.set_row(ha, acc_a);
            }
            st.reach_b.set_row(hb, acc_b);
        }
    }

    const ZeroOneMatrix & host_;
    int band_;
};

bool proper(const Embedding & e, int band)
{
    for (std::size_t j = 0; j < e.row_map.size(); ++j)
        if (e.row_map[j] / band != static_cast<int>(j))
            return false;
    return true;
}

} // namespace

std::optional<Embedding> decomposition_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern)
{
    const int r = pattern.rows();
    if (r < 1 || host.rows() % r != 0 || host.rows() == 0)
        return std::nullopt;
    ColumnPairs cols;
    for (int j = 0; j < pattern.cols(); ++j) {
        std::vector<int> ones;
        for (int i = 0; i < r; ++i)
            if (pattern.get(i, j))
                ones.push_back(i);
        if (ones.size() != 2)
            return std::nullopt;
        cols.emplace_back(ones[0], ones[1]);
    }
    Decomposition dec(host, r);
    auto root = dec.build(cols);
    if (!root)
        return std::nullopt;
    const int band = host.rows() / r;
    // anchor on the first-column row a; any entry of reach_a starts a copy
    for (int h = dec.band_begin(root->a); h < dec.band_begin(root->a) + band; ++h)
        for (int c = bits::next_set_bit(root->reach_a.row(h), 0); c >= 0; c = bits::next_set_bit(root->reach_a.row(h), c + 1)) {
            std::vector<int> rows(static_cast<std::size_t>(r), -1);
            std::vector<int> cmap;
            if (!dec.reconstruct(*root, root->a, h, c, rows, cmap))
                continue;
            for (int i = 0; i < r; ++i)
                if (rows[static_cast<std::size_t>(i)] < 0)
                    rows[static_cast<std::size_t>(i)] = i * band; // zero row: any row of its band
            Embedding e{rows, cmap};
            if (verify_embedding(host, pattern, e) && proper(e, band))
                return e;
        }
    return std::nullopt;
}

std::optional<BalancedEmbedding> embed_xmonotone_balanced(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern)
{
    const int r = pattern.rows();
    std::vector<int> nonzero_cols;
    std::vector<int> all_rows(static_cast<std::size_t>(r));
    std::iota(all_rows.begin(), all_rows.end(), 0);
    const ZeroOneMatrix tp = pattern.transpose();
    for (int j = 0; j < pattern.cols(); ++j)
        if (tp.row_weight(j) > 0)
            nonzero_cols.push_back(j);
    const ZeroOneMatrix core = pattern.submatrix(all_rows, nonzero_cols);
    const ZeroOneMatrix cycle = strip_zero_lines(pattern);
    if (!is_cycle(cycle) || !is_x_monotone(cycle))
        fail(ErrorKind::precondition, "pattern is not an x-monotone cycle");
    if (host.rows() % r != 0)
        fail(ErrorKind::precondition, "pattern row count " + std::to_string(r) + " does not divide host rows");
    const BalanceCheck bc = is_r_balanced(host, r);
    if (!bc.balanced)
        fail(ErrorKind::precondition, "host is not " + std::to_string(r) + "-balanced: " + bc.diagnostic);
    const int band = host.rows() / r;

    if (auto e = decomposition_embedding(host, core)) {
        // put the zero columns back, each in the first free host column
        Embedding full;
        full.row_map = e->row_map;
        std::size_t next_core = 0;
        int prev = -1;
        bool ok = true;
        for (int j = 0; j < pattern.cols() && ok; ++j) {
            if (next_core < nonzero_cols.size() && nonzero_cols[next_core] == j) {
                prev = e->col_map[next_core++];
            }
            else {
                ++prev;
                const int limit = next_core < nonzero_cols.size() ? e->col_map[next_core] : host.cols();
                ok = prev < limit;
            }
            full.col_map.push_back(prev);
        }
        if (ok && verify_embedding(host, pattern, full))
            return BalancedEmbedding{full, "decomposition"};
    }

    std::vector<RowWindow> windows;
    for (int j = 0; j < r; ++j)
        windows.push_back({j * band, (j + 1) * band - 1});
    if (auto e = find_embedding_within(host, pattern, windows))
        return BalancedEmbedding{*e, "exhaustive"};
    return std::nullopt;
}

namespace {

std::vector<std::vector<int>> r_subsets(int k, int r)
{
    std::vector<std::vector<int>> out;
    if (r > k || r < 1)
        return out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == k - r + i)
            --i;
        if (i < 0)
            break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

} // namespace

bool dense_invariant(const DichotomyResult & d)
{
    const int n = static_cast<int>(d.row_indices.size()) * d.k;
    const double side = static_cast<double>(n) / d.k;
    return d.matrix.rows() == static_cast<int>(side) && d.matrix.cols() == static_cast<int>(side) &&
           static_cast<double>(d.weight) >= 2 * d.c * std::pow(side, 1.5) * (1 - 1e-12);
}

bool balanced_invariant(const DichotomyResult & d)
{
    const int m = d.matrix.cols();
    if (m < 1)
        return false;
    if (!is_r_balanced(d.matrix, d.r).balanced)
        return false;
    return static_cast<double>(d.weight) >=
           static_cast<double>(d.r) * d.s * std::sqrt(static_cast<double>(m)) * d.matrix.rows() * (1 - 1e-12);
}

DichotomyResult dense_or_balanced(const ZeroOneMatrix & m, int r, int s, int k, double c)
{
    if (r < 1 || s < 1 || k < 1)
        fail(ErrorKind::domain, "r, s and k must be positive");
    if (m.rows() % k != 0)
        fail(ErrorKind::divisibility, "k=" + std::to_string(k) + " does not divide " + std::to_string(m.rows()) + " rows");
    const int n = m.rows();
    const int band = n / k;
    const double alpha = 1.0 / (2.0 * k);

    DichotomyResult res;
    res.r = r;
    res.s = s;
    res.k = k;
    res.c = c;
    res.nominal_k = 256.0 * r * r;
    res.nominal_c = Magnitude::from_log(std::log(8.0 * r * s) + log_choose_small(res.nominal_k, false, r));
    res.precondition_met = static_cast<double>(m.weight()) >= c * std::pow(static_cast<double>(n), 1.5);

    // per column: band counts and total
    std::vector<std::vector<int>> cnt(static_cast<std::size_t>(m.cols()), std::vector<int>(static_cast<std::size_t>(k), 0));
    std::vector<int> total(static_cast<std::size_t>(m.cols()), 0);
    for (int row = 0; row < n; ++row)
        for (int col = bits::next_set_bit(m.row(row), 0); col >= 0; col = bits::next_set_bit(m.row(row), col + 1)) {
            ++cnt[static_cast<std::size_t>(col)][static_cast<std::size_t>(row / band)];
            ++total[static_cast<std::size_t>(col)];
        }
    const double light_limit = c * std::sqrt(static_cast<double>(n)) / 2.0;
    std::vector<int> kept;
    for (int col = 0; col < m.cols(); ++col) {
        if (total[static_cast<std::size_t>(col)] < light_limit)
            ++res.light_columns;
        else
            kept.push_back(col);
    }

    std::vector<std::vector<int>> dense_sets(static_cast<std::size_t>(m.cols()));
    std::vector<char> balanced_col(static_cast<std::size_t>(m.cols()), 0);
    std::size_t kept_weight = 0;
    for (int col : kept) {
        const auto & cc = cnt[static_cast<std::size_t>(col)];
        const double sc = total[static_cast<std::size_t>(col)];
        for (int i = 0; i < k; ++i)
            if (cc[static_cast<std::size_t>(i)] >= alpha * sc)
                dense_sets[static_cast<std::size_t>(col)].push_back(i);
        balanced_col[static_cast<std::size_t>(col)] = static_cast<int>(dense_sets[static_cast<std::size_t>(col)].size()) >= r;
        kept_weight += static_cast<std::size_t>(sc);
        if (balanced_col[static_cast<std::size_t>(col)])
            res.balanced_weight += static_cast<std::size_t>(sc);
        else
            res.imbalanced_weight += static_cast<std::size_t>(sc);
    }
    res.rule_branch = 2 * res.imbalanced_weight >= kept_weight ? DichotomyBranch::dense : DichotomyBranch::balanced;

    // dense candidate: heavy column-block of every imbalanced column
    DichotomyResult dense = res;
    dense.branch = DichotomyBranch::dense;
    {
        std::vector<std::vector<int>> heavy_in(static_cast<std::size_t>(k));
        std::vector<long long> coverage(static_cast<std::size_t>(k), 0);
        for (int col : kept) {
            if (balanced_col[static_cast<std::size_t>(col)])
                continue;
            const auto & cc = cnt[static_cast<std::size_t>(col)];
            const int h = static_cast<int>(std::max_element(cc.begin(), cc.end()) - cc.begin());
            heavy_in[static_cast<std::size_t>(h)].push_back(col);
            coverage[static_cast<std::size_t>(h)] += cc[static_cast<std::size_t>(h)];
        }
        const int bi = static_cast<int>(std::max_element(coverage.begin(), coverage.end()) - coverage.begin());
        auto by_count = [&] (int x, int y) {
            const int cx = cnt[static_cast<std::size_t>(x)][static_cast<std::size_t>(bi)];
            const int cy = cnt[static_cast<std::size_t>(y)][static_cast<std::size_t>(bi)];
            return cx != cy ? cx > cy : x < y;
        };
        std::vector<int> chosen = heavy_in[static_cast<std::size_t>(bi)];
        std::sort(chosen.begin(), chosen.end(), by_count);
        const int width = std::min(band, m.cols());
        if (static_cast<int>(chosen.size()) > width)
            chosen.resize(static_cast<std::size_t>(width));
        if (static_cast<int>(chosen.size()) < width) {
            std::vector<int> extra;
            for (int col = 0; col < m.cols(); ++col)
                if (std::find(chosen.begin(), chosen.end(), col) == chosen.end())
                    extra.push_back(col);
            std::sort(extra.begin(), extra.end(), by_count);
            for (int col : extra) {
                if (static_cast<int>(chosen.size()) == width)
                    break;
                chosen.push_back(col);
            }
        }
        std::sort(chosen.begin(), chosen.end());
        dense.dense_band = bi + 1;
        dense.row_indices.resize(static_cast<std::size_t>(band));
        std::iota(dense.row_indices.begin(), dense.row_indices.end(), bi * band);
        dense.col_indices = chosen;
        dense.matrix = m.submatrix(dense.row_indices, dense.col_indices);
        dense.weight = dense.matrix.weight();
        dense.invariant_bound = 2 * c * std::pow(static_cast<double>(band), 1.5);
    }

    // balanced candidate: the r-set I with the largest truncated weight
    DichotomyResult bal = res;
    bal.branch = DichotomyBranch::balanced;
    {
        const auto subsets = r_subsets(k, r);
        if (subsets.size() > 1000000)
            fail(ErrorKind::unsupported, "too many band subsets to scan");
        long long best_score = -1;
        std::vector<int> best_set;
        std::vector<int> best_cols;
        for (const auto & I : subsets) {
            long long score = 0;
            std::vector<int> cols;
            for (int col : kept) {
                if (!balanced_col[static_cast<std::size_t>(col)])
                    continue;
                const auto & ds = dense_sets[static_cast<std::size_t>(col)];
                if (!std::includes(ds.begin(), ds.end(), I.begin(), I.end()))
                    continue;
                int low = n;
                for (int i : I)
                    low = std::min(low, cnt[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)]);
                score += static_cast<long long>(r) * low;
                cols.push_back(col);
            }
            if (score > best_score) {
                best_score = score;
                best_set = I;
                best_cols = cols;
            }
        }
        for (int i : best_set) {
            bal.bands.push_back(i + 1);
            for (int row = i * band; row < (i + 1) * band; ++row)
                bal.row_indices.push_back(row);
        }
        bal.col_indices = best_cols;
        ZeroOneMatrix out(static_cast<int>(bal.row_indices.size()), static_cast<int>(best_cols.size()));
        for (std::size_t j = 0; j < best_cols.size(); ++j) {
            const int col = best_cols[j];
            int low = n;
            for (int i : best_set)
                low = std::min(low, cnt[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)]);
            // topmost `low` ones of each selected column-block survive
            for (std::size_t q = 0; q < best_set.size(); ++q) {
                const int i = best_set[q];
                int kept_here = 0;
                for (int row = i * band; row < (i + 1) * band && kept_here < low; ++row)
                    if (m.get(row, col)) {
                        out.set(static_cast<int>(q) * band + (row - i * band), static_cast<int>(j), true);
                        ++kept_here;
                    }
            }
        }
        bal.matrix = std::move(out);
        bal.weight = bal.matrix.weight();
        bal.invariant_bound = static_cast<double>(r) * s * std::sqrt(static_cast<double>(best_cols.size())) *
                              static_cast<double>(bal.row_indices.size());
    }

    dense.candidate = {bal.matrix, bal.row_indices, bal.col_indices, bal.bands};
    bal.candidate = dense.candidate;
    const bool dense_ok = dense_invariant(dense);
    const bool bal_ok = balanced_invariant(bal);
    const bool rule_dense = res.rule_branch == DichotomyBranch::dense;
    DichotomyResult out = rule_dense ? dense : bal;
    out.invariant_holds = rule_dense ? dense_ok : bal_ok;
    if (!out.invariant_holds && (rule_dense ? bal_ok : dense_ok)) {
        out = rule_dense ? bal : dense;
        out.invariant_holds = true;
        out.switched = true;
    }
    return out;
}

nlohmann::json to_json(const DichotomyResult & d, bool include_matrix)
{
    auto name = [] (DichotomyBranch b) { return b == DichotomyBranch::dense ? "dense" : "balanced"; };
    auto one_based = [] (const std::vector<int> & v) {
        std::vector<int> out(v);
        for (int & x : out)
            ++x;
        return out;
    };
    nlohmann::json j{
        {"branch", name(d.branch)},
        {"ruleBranch", name(d.rule_branch)},
        {"switched", d.switched},
        {"preconditionMet", d.precondition_met},
        {"invariantHolds", d.invariant_holds},
        {"weight", d.weight},
        {"invariantBound", d.invariant_bound},
        {"rows", one_based(d.row_indices)},
        {"cols", one_based(d.col_indices)},
        {"lightColumns", d.light_columns},
        {"imbalancedWeight", d.imbalanced_weight},
        {"balancedWeight", d.balanced_weight},
        {"r", d.r},
        {"s", d.s},
        {"k", d.k},
        {"c", d.c},
        {"nominalK", d.nominal_k},
        {"nominalC", to_json(d.nominal_c)},
    };
    if (d.branch == DichotomyBranch::balanced)
        j["bands"] = d.bands;
    else
        j["denseBand"] = d.dense_band;
    if (include_matrix)
        j["matrix"] = to_json(d.matrix);
    return j;
}

CycleTrace cycle_driver(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int k, double c, int depth)
{
    if (k < 1)
        fail(ErrorKind::domain, "k must be positive");
    const ZeroOneMatrix cycle = strip_zero_lines(pattern);
    if (!is_cycle(cycle) || !is_x_monotone(cycle))
        fail(ErrorKind::precondition, "pattern is not an x-monotone cycle");
    const int r = pattern.rows();
    const int s = pattern.cols();
    const double n = host.rows();

    CycleTrace trace;
    std::vector<int> rows(static_cast<std::size_t>(host.rows()));
    std::vector<int> cols(static_cast<std::size_t>(host.cols()));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);

    for (int i = 0;; ++i) {
        CycleLevel lv;
        lv.level = i;
        lv.row_indices = rows;
        lv.col_indices = cols;
        const ZeroOneMatrix cur = host.submatrix(rows, cols);
        lv.weight = cur.weight();
        const double side = n / std::pow(static_cast<double>(k), i);
        lv.weight_doubling = static_cast<double>(lv.weight) >= std::pow(2.0, i) * c * std::pow(side, 1.5) * (1 - 1e-12);

        auto finish = [&] (std::string outcome, std::string why) {
            lv.outcome = std::move(outcome);
            lv.stop = std::move(why);
            trace.levels.push_back(std::move(lv));
        };
        if (lv.weight == 0) {
            finish("exhausted", "weight reached zero");
            break;
        }
        if (i >= depth) {
            finish("exhausted", "depth reached");
            break;
        }
        if (cur.rows() % k != 0 || cur.rows() < k) {
            finish("exhausted", "k does not divide the current dimensions");
            break;
        }
        DichotomyResult d = dense_or_balanced(cur, r, s, k, c);
        // the balanced restriction is tried even when its weight floor fails;
        // any copy it yields is checked against the original host
        const auto & cand = d.candidate;
        std::optional<BalancedEmbedding> be;
        if (cand.matrix.cols() > 0 && cand.matrix.rows() % r == 0 && is_r_balanced(cand.matrix, r).balanced)
            be = embed_xmonotone_balanced(cand.matrix, pattern);
        if (be) {
            Embedding e;
            for (int x : be->embedding.row_map)
                e.row_map.push_back(rows[static_cast<std::size_t>(cand.row_indices[static_cast<std::size_t>(x)])]);
            for (int x : be->embedding.col_map)
                e.col_map.push_back(cols[static_cast<std::size_t>(cand.col_indices[static_cast<std::size_t>(x)])]);
            if (!verify_embedding(host, pattern, e))
                fail(ErrorKind::precondition, "internal: mapped embedding failed verification");
            trace.embedding = e;
            lv.dichotomy = std::move(d);
            finish("embedded", "embedding found");
            break;
        }
        if (d.branch == DichotomyBranch::balanced) {
            lv.dichotomy = std::move(d);
            finish("balanced-no-copy", "balanced matrix without a proper copy");
            break;
        }
        std::vector<int> next_rows;
        std::vector<int> next_cols;
        for (int x : d.row_indices)
            next_rows.push_back(rows[static_cast<std::size_t>(x)]);
        for (int x : d.col_indices)
            next_cols.push_back(cols[static_cast<std::size_t>(x)]);
        rows = std::move(next_rows);
        cols = std::move(next_cols);
        lv.dichotomy = std::move(d);
        lv.outcome = "dense";
        trace.levels.push_back(std::move(lv));
    }
    return trace;
}

nlohmann::json to_json(const CycleLevel & lv)
{
    auto one_based = [] (const std::vector<int> & v) {
        std::vector<int> out(v);
        for (int & x : out)
            ++x;
        return out;
    };
    nlohmann::json j{
        {"level", lv.level},
        {"rows", one_based(lv.row_indices)},
        {"cols", one_based(lv.col_indices)},
        {"weight", lv.weight},
        {"weightDoubling", lv.weight_doubling},
        {"outcome", lv.outcome},
    };
    if (lv.dichotomy)
        j["dichotomy"] = to_json(*lv.dichotomy, false);
    if (!lv.stop.empty())
        j["stop"] = lv.stop;
    return j;
}

std::vector<ZeroOneMatrix> enumerate_cycles(int length)
{
    if (length < 4 || length % 2 != 0)
        fail(ErrorKind::domain, "cycle length must be even and at least 4, got " + std::to_string(length));
    const int l = length / 2;
    std::vector<ZeroOneMatrix> out;
    ZeroOneMatrix cur(l, l);
    std::vector<int> colcount(static_cast<std::size_t>(l), 0);
    auto rec = [&] (auto && self, int row) -> void {
        if (row == l) {
            if (is_cycle(cur))
                out.push_back(cur);
            return;
        }
        for (int a = 0; a < l; ++a) {
            if (colcount[static_cast<std::size_t>(a)] == 2)
                continue;
            for (int b = a + 1; b < l; ++b) {
                if (colcount[static_cast<std::size_t>(b)] == 2)
                    continue;
                ++colcount[static_cast<std::size_t>(a)];
                ++colcount[static_cast<std::size_t>(b)];
                cur.set(row, a, true);
                cur.set(row, b, true);
                self(self, row + 1);
                cur.set(row, a, false);
                cur.set(row, b, false);
                --colcount[static_cast<std::size_t>(a)];
                --colcount[static_cast<std::size_t>(b)];
            }
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [] (const ZeroOneMatrix & x, const ZeroOneMatrix & y) {
        return x.row_strings() < y.row_strings();
    });
    return out;
}

} // namespace pmx
