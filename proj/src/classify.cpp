#include <pmx/classify.hpp>
#include <pmx/error.hpp>

#include <algorithm>
#include <numeric>

namespace pmx {

namespace {

// Greedy leftmost cut: extend the current part until some row would receive
// a second 1-entry. Optimal by the usual exchange argument for interval
// constraints.
IntervalCut greedy_column_cut(const ZeroOneMatrix & a)
{
    IntervalCut out;
    std::vector<char> used(static_cast<std::size_t>(a.rows()), 0);
    for (int c = 0; c < a.cols(); ++c) {
        bool clash = false;
        for (int r = 0; r < a.rows() && !clash; ++r)
            clash = a.get(r, c) && used[static_cast<std::size_t>(r)];
        if (clash) {
            out.cuts.push_back(c); // last column of the previous part, 1-based
            std::fill(used.begin(), used.end(), 0);
        }
        for (int r = 0; r < a.rows(); ++r)
            if (a.get(r, c))
                used[static_cast<std::size_t>(r)] = 1;
    }
    out.parts = static_cast<int>(out.cuts.size()) + 1;
    return out;
}

struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n))
    {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }

    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

std::vector<int> ones_in_row(const ZeroOneMatrix & a, int r)
{
    std::vector<int> out;
    for (int c = 0; c < a.cols(); ++c)
        if (a.get(r, c))
            out.push_back(c);
    return out;
}

std::vector<int> ones_in_col(const ZeroOneMatrix & a, int c)
{
    std::vector<int> out;
    for (int r = 0; r < a.rows(); ++r)
        if (a.get(r, c))
            out.push_back(r);
    return out;
}

} // namespace

IntervalCut min_column_parts(const ZeroOneMatrix & a)
{
    return greedy_column_cut(a);
}

IntervalCut min_row_parts(const ZeroOneMatrix & a)
{
    return greedy_column_cut(a.transpose());
}

PartiteProfile partite_profile(const ZeroOneMatrix & a)
{
    return {min_row_parts(a), min_column_parts(a)};
}

bool is_permutation(const ZeroOneMatrix & a)
{
    if (a.rows() != a.cols())
        return false;
    for (int r = 0; r < a.rows(); ++r)
        if (a.row_weight(r) != 1)
            return false;
    auto t = a.transpose();
    for (int c = 0; c < t.rows(); ++c)
        if (t.row_weight(c) != 1)
            return false;
    return true;
}

bool is_acyclic(const ZeroOneMatrix & a)
{
    // vertices: rows 0..r-1, columns r..r+s-1
    DisjointSets sets(a.rows() + a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a.get(r, c) && !sets.unite(r, a.rows() + c))
                return false;
    return true;
}

bool is_cycle(const ZeroOneMatrix & a)
{
    if (a.weight() < 4)
        return false;
    for (int r = 0; r < a.rows(); ++r)
        if (a.row_weight(r) != 2)
            return false;
    auto t = a.transpose();
    for (int c = 0; c < t.rows(); ++c)
        if (t.row_weight(c) != 2)
            return false;
    // 2-regular, so connected iff a single cycle
    DisjointSets sets(a.rows() + a.cols());
    int components = a.rows() + a.cols();
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a.get(r, c) && sets.unite(r, a.rows() + c))
                --components;
    return components == 1;
}

ZeroOneMatrix strip_zero_lines(const ZeroOneMatrix & a)
{
    std::vector<int> rows;
    std::vector<int> cols;
    for (int r = 0; r < a.rows(); ++r)
        if (a.row_weight(r) > 0)
            rows.push_back(r);
    auto t = a.transpose();
    for (int c = 0; c < a.cols(); ++c)
        if (t.row_weight(c) > 0)
            cols.push_back(c);
    return a.submatrix(rows, cols);
}

std::vector<Point> cycle_tour(const ZeroOneMatrix & a)
{
    if (!is_cycle(a))
        fail(ErrorKind::unsupported, "orientation is only defined for cycle patterns");
    int r0 = 0;
    int c0 = ones_in_row(a, 0).front();
    std::vector<Point> tour;
    int r = r0;
    int c = c0;
    bool horizontal = true;
    do {
        tour.push_back({c + 1, r + 1});
        if (horizontal) {
            auto ones = ones_in_row(a, r);
            c = ones[0] == c ? ones[1] : ones[0];
        }
        else {
            auto ones = ones_in_col(a, c);
            r = ones[0] == r ? ones[1] : ones[0];
        }
        horizontal = !horizontal;
    } while (r != r0 || c != c0);
    return tour;
}

Drawing drawing(const ZeroOneMatrix & a)
{
    Drawing d;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a.get(r, c))
                d.points.push_back({c + 1, r + 1});
    for (int r = 0; r < a.rows(); ++r) {
        auto ones = ones_in_row(a, r);
        for (std::size_t i = 1; i < ones.size(); ++i)
            d.horizontal.push_back({{ones[i - 1] + 1, r + 1}, {ones[i] + 1, r + 1}});
    }
    for (int c = 0; c < a.cols(); ++c) {
        auto ones = ones_in_col(a, c);
        for (std::size_t i = 1; i < ones.size(); ++i)
            d.vertical.push_back({{c + 1, ones[i - 1] + 1}, {c + 1, ones[i] + 1}});
    }
    if (is_cycle(a))
        d.orientation = cycle_tour(a);
    return d;
}

bool is_x_monotone(const ZeroOneMatrix & a)
{
    if (!is_cycle(a))
        fail(ErrorKind::unsupported, "x-monotonicity is only defined for cycle patterns");
    for (int gap = 0; gap + 1 < a.cols(); ++gap) {
        int straddling = 0;
        for (int r = 0; r < a.rows(); ++r) {
            auto ones = ones_in_row(a, r);
            for (std::size_t i = 1; i < ones.size(); ++i)
                if (ones[i - 1] <= gap && ones[i] > gap)
                    ++straddling;
        }
        if (straddling > 2)
            return false;
    }
    return true;
}

WindingProfile winding_profile(std::span<const Point> tour, int rows, int cols)
{
    WindingProfile w{std::max(rows - 1, 0), std::max(cols - 1, 0), {}};
    w.cells.assign(static_cast<std::size_t>(w.rows * w.cols), 0);
    const std::size_t n = tour.size();
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j) {
            // centre (j + 1.5, i + 1.5); doubled to stay in integers
            const int cx2 = 2 * j + 3;
            const int cy2 = 2 * i + 3;
            int winding = 0;
            for (std::size_t e = 0; e < n; ++e) {
                const Point & p = tour[e];
                const Point & q = tour[(e + 1) % n];
                if (p.x != q.x || 2 * p.x <= cx2)
                    continue;
                const int lo = 2 * std::min(p.y, q.y);
                const int hi = 2 * std::max(p.y, q.y);
                if (lo < cy2 && cy2 < hi)
                    winding += q.y < p.y ? 1 : -1; // upward on screen is y-up positive
            }
            w.cells[static_cast<std::size_t>(i * w.cols + j)] = winding;
        }
    return w;
}

WindingProfile winding_profile(const ZeroOneMatrix & a)
{
    auto tour = cycle_tour(a);
    return winding_profile(tour, a.rows(), a.cols());
}

bool is_positive_cycle(const ZeroOneMatrix & a)
{
    auto w = winding_profile(a);
    const bool nonneg = std::all_of(w.cells.begin(), w.cells.end(), [] (int v) { return v >= 0; });
    const bool nonpos = std::all_of(w.cells.begin(), w.cells.end(), [] (int v) { return v <= 0; });
    return nonneg || nonpos;
}

nlohmann::json classify_report(const ZeroOneMatrix & a)
{
    auto profile = partite_profile(a);
    const bool cycle = is_cycle(a);
    nlohmann::json j{
        {"pattern", to_json(a)},
        {"weight", a.weight()},
        {"minColumnParts", profile.columns.parts},
        {"columnCuts", profile.columns.cuts},
        {"minRowParts", profile.rows.parts},
        {"rowCuts", profile.rows.cuts},
        {"profile", {profile.rows.parts, profile.columns.parts}},
        {"isPermutation", is_permutation(a)},
        {"isAcyclic", is_acyclic(a)},
        {"isCycle", cycle},
    };
    auto d = drawing(a);
    auto pts = [] (std::span<const Point> ps) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto & p : ps)
            arr.push_back({p.x, p.y});
        return arr;
    };
    auto segs = [&] (const std::vector<Segment> & ss) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto & s : ss)
            arr.push_back({{s.from.x, s.from.y}, {s.to.x, s.to.y}});
        return arr;
    };
    j["drawing"] = {{"points", pts(d.points)}, {"horizontal", segs(d.horizontal)}, {"vertical", segs(d.vertical)}};
    if (cycle) {
        j["drawing"]["orientation"] = pts(d.orientation);
        j["isXMonotone"] = is_x_monotone(a);
        auto w = winding_profile(a);
        nlohmann::json grid = nlohmann::json::array();
        for (int i = 0; i < w.rows; ++i) {
            std::vector<int> line(w.cells.begin() + i * w.cols, w.cells.begin() + (i + 1) * w.cols);
            grid.push_back(line);
        }
        j["winding"] = grid;
        j["isPositiveCycle"] = is_positive_cycle(a);
    }
    else {
        j["isXMonotone"] = nullptr;
        j["winding"] = nullptr;
        j["isPositiveCycle"] = nullptr;
    }
    return j;
}

} // namespace pmx
