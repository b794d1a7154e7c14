#include <pmx/oracle.hpp>

namespace pmx::oracle {

std::vector<std::vector<int>> subsets(int n, int k)
{
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n)
        return out;
    std::vector<int> cur;
    auto rec = [&] (auto && self, int next) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = next; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

bool embedding_ok(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, const Embedding & e)
{
    if (static_cast<int>(e.row_map.size()) != pattern.rows() || static_cast<int>(e.col_map.size()) != pattern.cols())
        return false;
    for (std::size_t i = 0; i < e.row_map.size(); ++i) {
        if (e.row_map[i] < 0 || e.row_map[i] >= host.rows())
            return false;
        if (i > 0 && e.row_map[i] <= e.row_map[i - 1])
            return false;
    }
    for (std::size_t j = 0; j < e.col_map.size(); ++j) {
        if (e.col_map[j] < 0 || e.col_map[j] >= host.cols())
            return false;
        if (j > 0 && e.col_map[j] <= e.col_map[j - 1])
            return false;
    }
    for (int i = 0; i < pattern.rows(); ++i)
        for (int j = 0; j < pattern.cols(); ++j)
            if (pattern.get(i, j) && !host.get(e.row_map[static_cast<std::size_t>(i)], e.col_map[static_cast<std::size_t>(j)]))
                return false;
    return true;
}

std::optional<Embedding> injection_search(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern)
{
    const auto rows = subsets(host.rows(), pattern.rows());
    const auto cols = subsets(host.cols(), pattern.cols());
    for (const auto & rm : rows)
        for (const auto & cm : cols) {
            Embedding e{rm, cm};
            if (embedding_ok(host, pattern, e))
                return e;
        }
    return std::nullopt;
}

std::uint64_t count_all_ones(const ZeroOneMatrix & m, int u, int t)
{
    std::uint64_t total = 0;
    const auto cols = subsets(m.cols(), t);
    for (const auto & rs : subsets(m.rows(), u))
        for (const auto & cs : cols) {
            bool full = true;
            for (int i : rs)
                for (int j : cs)
                    full = full && m.get(i, j);
            total += full ? 1 : 0;
        }
    return total;
}

bool cuts(const std::vector<int> & e, const std::vector<int> & points, int n)
{
    // part j covers (points[j-1], points[j]] with points[-1] = 0, points[t-1] = n
    for (std::size_t j = 0; j < e.size(); ++j) {
        const int lo = j == 0 ? 0 : points[j - 1];
        const int hi = j + 1 == e.size() ? n : points[j];
        if (e[j] <= lo || e[j] > hi)
            return false;
    }
    return true;
}

bool balanced(const ZeroOneMatrix & m, int r)
{
    if (r < 1 || m.rows() % r != 0)
        return false;
    const int h = m.rows() / r;
    for (int j = 0; j < m.cols(); ++j) {
        int first = -1;
        for (int b = 0; b < r; ++b) {
            int c = 0;
            for (int i = b * h; i < (b + 1) * h; ++i)
                c += m.get(i, j) ? 1 : 0;
            if (b == 0)
                first = c;
            else if (c != first)
                return false;
        }
    }
    return true;
}

} // namespace pmx::oracle
