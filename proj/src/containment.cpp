#include <pmx/containment.hpp>
#include <pmx/error.hpp>

#include <algorithm>
#include <vector>

namespace pmx {

namespace {

// Pattern rows are assigned top-down. For every pattern column j the search
// keeps S_j, the host columns still compatible with the rows placed so far
// (the AND of the host rows carrying a 1 of column j). A column map exists
// for a full row assignment iff the greedy leftmost chain through S_1..S_s
// succeeds, and the same greedy test on partial S_j prunes early.
class EmbeddingSearch {
public:
    EmbeddingSearch(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, std::span<const RowWindow> windows)
        : host_(host), pattern_(pattern), windows_(windows), stride_(host.stride())
    {
        const int r = pattern.rows();
        const int s = pattern.cols();
        ones_.resize(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < s; ++j)
                if (pattern.get(i, j))
                    ones_[static_cast<std::size_t>(i)].push_back(j);

        // one frame of S vectors per depth so backtracking never copies
        frames_.assign(static_cast<std::size_t>(r + 1) * static_cast<std::size_t>(s) * stride_, 0);
        for (int j = 0; j < s; ++j)
            bits::fill_prefix(column_set(0, j), host.cols());
        row_map_.assign(static_cast<std::size_t>(r), -1);
    }

    std::optional<Embedding> run()
    {
        if (pattern_.rows() > host_.rows() || pattern_.cols() > host_.cols())
            return std::nullopt;
        if (!descend(0, 0))
            return std::nullopt;
        Embedding e;
        e.row_map = row_map_;
        e.col_map = greedy_columns(pattern_.rows());
        return e;
    }

private:
    std::span<Word> column_set(int depth, int j)
    {
        const std::size_t offset =
            (static_cast<std::size_t>(depth) * static_cast<std::size_t>(pattern_.cols()) + static_cast<std::size_t>(j)) *
            stride_;
        return {frames_.data() + offset, stride_};
    }

    bool chain_feasible(int depth)
    {
        int prev = -1;
        for (int j = 0; j < pattern_.cols(); ++j) {
            prev = bits::next_set_bit(column_set(depth, j), prev + 1);
            if (prev < 0)
                return false;
        }
        return true;
    }

    std::vector<int> greedy_columns(int depth)
    {
        std::vector<int> cols;
        int prev = -1;
        for (int j = 0; j < pattern_.cols(); ++j) {
            prev = bits::next_set_bit(column_set(depth, j), prev + 1);
            cols.push_back(prev);
        }
        return cols;
    }

    bool descend(int i, int min_row)
    {
        const int r = pattern_.rows();
        if (i == r)
            return true;

        int lo = min_row;
        int hi = host_.rows() - (r - i);
        if (!windows_.empty()) {
            lo = std::max(lo, windows_[static_cast<std::size_t>(i)].first);
            hi = std::min(hi, windows_[static_cast<std::size_t>(i)].last);
        }
        const auto & ones = ones_[static_cast<std::size_t>(i)];
        const int s = pattern_.cols();

        for (int h = lo; h <= hi; ++h) {
            auto host_row = host_.row(h);
            bool dead = false;
            for (int j = 0; j < s; ++j) {
                auto src = column_set(i, j);
                auto dst = column_set(i + 1, j);
                std::copy(src.begin(), src.end(), dst.begin());
            }
            for (int j : ones) {
                auto dst = column_set(i + 1, j);
                bits::and_into(dst, dst, host_row);
                if (bits::popcount(dst) == 0) {
                    dead = true;
                    break;
                }
            }
            if (!dead && chain_feasible(i + 1)) {
                row_map_[static_cast<std::size_t>(i)] = h;
                if (descend(i + 1, h + 1))
                    return true;
            }
            // an all-zero pattern row gains nothing from a later host row
            if (ones.empty())
                break;
        }
        return false;
    }

    const ZeroOneMatrix & host_;
    const ZeroOneMatrix & pattern_;
    std::span<const RowWindow> windows_;
    std::size_t stride_;
    std::vector<std::vector<int>> ones_;
    std::vector<Word> frames_;
    std::vector<int> row_map_;
};

} // namespace

std::optional<Embedding> find_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern)
{
    return EmbeddingSearch(host, pattern, {}).run();
}

std::optional<Embedding> find_embedding_within(
    const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, std::span<const RowWindow> windows)
{
    if (static_cast<int>(windows.size()) != pattern.rows())
        fail(ErrorKind::input, "one row window per pattern row is required");
    return EmbeddingSearch(host, pattern, windows).run();
}

CertificateCheck check_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, const Embedding & e)
{
    auto bad = [] (std::string why) { return CertificateCheck{false, std::move(why)}; };
    if (static_cast<int>(e.row_map.size()) != pattern.rows())
        return bad("row map has " + std::to_string(e.row_map.size()) + " entries, pattern has " +
                   std::to_string(pattern.rows()) + " rows");
    if (static_cast<int>(e.col_map.size()) != pattern.cols())
        return bad("column map has " + std::to_string(e.col_map.size()) + " entries, pattern has " +
                   std::to_string(pattern.cols()) + " columns");
    for (std::size_t i = 0; i < e.row_map.size(); ++i) {
        if (e.row_map[i] < 0 || e.row_map[i] >= host.rows())
            return bad("row map sends pattern row " + std::to_string(i + 1) + " to " +
                       std::to_string(e.row_map[i] + 1) + ", outside 1.." + std::to_string(host.rows()));
        if (i > 0 && e.row_map[i] <= e.row_map[i - 1])
            return bad("row map not strictly increasing at pattern row " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < e.col_map.size(); ++j) {
        if (e.col_map[j] < 0 || e.col_map[j] >= host.cols())
            return bad("column map sends pattern column " + std::to_string(j + 1) + " to " +
                       std::to_string(e.col_map[j] + 1) + ", outside 1.." + std::to_string(host.cols()));
        if (j > 0 && e.col_map[j] <= e.col_map[j - 1])
            return bad("column map not strictly increasing at pattern column " + std::to_string(j + 1));
    }
    for (int i = 0; i < pattern.rows(); ++i)
        for (int j = 0; j < pattern.cols(); ++j)
            if (pattern.get(i, j) && !host.get(e.row_map[static_cast<std::size_t>(i)], e.col_map[static_cast<std::size_t>(j)]))
                return bad("pattern 1-entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") lands on host 0-entry (" + std::to_string(e.row_map[static_cast<std::size_t>(i)] + 1) +
                           "," + std::to_string(e.col_map[static_cast<std::size_t>(j)] + 1) + ")");
    return {true, {}};
}

} // namespace pmx
