#include <pmx/count.hpp>
#include <pmx/error.hpp>
#include <pmx/hypergraph.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace pmx {

bool OrderedHypergraph::has_edge(std::span<const int> e) const
{
    std::vector<int> key(e.begin(), e.end());
    return std::binary_search(edges.begin(), edges.end(), key);
}

const std::vector<int> & LabelMap::blocks(std::span<const int> e) const
{
    auto it = phi.find(std::vector<int>(e.begin(), e.end()));
    if (it == phi.end())
        fail(ErrorKind::input, "edge is not in the hypergraph");
    return it->second;
}

namespace {

template <typename Visit>
void for_each_subset(const std::vector<int> & items, int size, Visit && visit)
{
    const int n = static_cast<int>(items.size());
    if (size > n || size < 0)
        return;
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        for (int i = 0; i < size; ++i)
            pick[static_cast<std::size_t>(i)] = items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        visit(pick);
        int i = size - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i)
            --i;
        if (i < 0)
            return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

void check_edge(std::span<const int> e, int n)
{
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1 || e[i] > n)
            fail(ErrorKind::input, "vertex " + std::to_string(e[i]) + " outside 1.." + std::to_string(n));
        if (i > 0 && e[i] <= e[i - 1])
            fail(ErrorKind::input, "edge vertices must be strictly increasing");
    }
}

} // namespace

ColumnHypergraph build_column_hypergraph(const ZeroOneMatrix & m, int t, int k)
{
    if (t < 1 || k < 1)
        fail(ErrorKind::domain, "t and k must be positive");
    if (m.rows() % k != 0)
        fail(ErrorKind::divisibility, "k=" + std::to_string(k) + " does not divide " + std::to_string(m.rows()) + " rows");
    const int band = m.rows() / k;
    ColumnHypergraph out;
    out.graph.n = m.cols();
    out.graph.t = t;
    out.labels.k = k;
    for (int r = 0; r < m.rows(); ++r) {
        std::vector<int> ones;
        for (int c = bits::next_set_bit(m.row(r), 0); c >= 0; c = bits::next_set_bit(m.row(r), c + 1))
            ones.push_back(c + 1);
        const int block = r / band + 1;
        for_each_subset(ones, t, [&] (const std::vector<int> & e) {
            auto & blocks = out.labels.phi[e];
            if (blocks.empty() || blocks.back() != block)
                blocks.push_back(block); // rows ascend, so blocks arrive sorted
        });
    }
    out.graph.edges.reserve(out.labels.phi.size());
    for (const auto & entry : out.labels.phi)
        out.graph.edges.push_back(entry.first);
    return out;
}

EdgeClass classify_edge(const LabelMap & labels, std::span<const int> e, int r)
{
    const auto & blocks = labels.blocks(e);
    if (static_cast<int>(blocks.size()) < r)
        return {};
    return {true, std::vector<int>(blocks.begin(), blocks.begin() + r)};
}

boost::multiprecision::cpp_int cuts_through(std::span<const int> e, int n)
{
    check_edge(e, n);
    boost::multiprecision::cpp_int ways = 1;
    for (std::size_t j = 1; j < e.size(); ++j)
        ways *= e[j] - e[j - 1];
    return ways;
}

boost::multiprecision::cpp_int total_cuts(int n, int t)
{
    return binomial(n, t - 1);
}

Rational cut_probability(std::span<const int> e, int n)
{
    const int t = static_cast<int>(e.size());
    if (t == 0)
        fail(ErrorKind::input, "empty edge");
    return Rational(cuts_through(e, n), total_cuts(n, t));
}

Rational cut_gap_product(std::span<const int> e, int n)
{
    check_edge(e, n);
    Rational p = 1;
    for (std::size_t j = 1; j < e.size(); ++j)
        p *= Rational(e[j] - e[j - 1], n);
    return p;
}

TCut random_t_cut(int n, int t, SplitMix64 & rng)
{
    if (t < 1)
        fail(ErrorKind::domain, "t must be positive");
    const int m = t - 1;
    if (n < m)
        fail(ErrorKind::domain, "n=" + std::to_string(n) + " is too small for a " + std::to_string(t) + "-cut");
    // Floyd's sampling: a uniform m-subset of [n] with m draws
    std::set<int> chosen;
    for (int j = n - m + 1; j <= n; ++j) {
        const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(j))) + 1;
        if (!chosen.insert(x).second)
            chosen.insert(j);
    }
    return {std::vector<int>(chosen.begin(), chosen.end())};
}

bool is_cut_by(std::span<const int> e, const TCut & cut, int n)
{
    if (e.size() != cut.points.size() + 1)
        fail(ErrorKind::input, "edge size does not match the cut");
    int lo = 0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        const int hi = j < cut.points.size() ? cut.points[j] : n;
        if (e[j] <= lo || e[j] > hi)
            return false;
        lo = hi;
    }
    return true;
}

std::vector<std::vector<int>> edges_cut(const OrderedHypergraph & h, const TCut & cut)
{
    std::vector<std::vector<int>> out;
    for (const auto & e : h.edges)
        if (is_cut_by(e, cut, h.n))
            out.push_back(e);
    return out;
}

namespace {

using Tuple = std::vector<int>;
using TupleSet = std::vector<Tuple>; // sorted, unique

// Picks the parts one at a time. After V_p is fixed, the remaining problem is
// the same search on the common link {f : {v} + f is an edge for all v in
// V_p, f above V_p}, which has one fewer part.
class PartiteSearch {
public:
    explicit PartiteSearch(std::span<const int> sizes) : sizes_(sizes.begin(), sizes.end()) {}

    bool run(const TupleSet & edges, std::size_t part, int min_vertex)
    {
        const std::size_t parts_left = sizes_.size() - part;
        const int need = sizes_[part];
        if (parts_left == 1) {
            std::vector<int> verts;
            for (const auto & e : edges)
                if (e[0] >= min_vertex)
                    verts.push_back(e[0]);
            if (static_cast<int>(verts.size()) < need)
                return false;
            chosen_.emplace_back(verts.begin(), verts.begin() + need);
            return true;
        }
        // group edges by their smallest vertex
        std::map<int, TupleSet> by_first;
        for (const auto & e : edges)
            if (e[0] >= min_vertex)
                by_first[e[0]].emplace_back(e.begin() + 1, e.end());
        std::vector<int> starts;
        for (const auto & entry : by_first)
            starts.push_back(entry.first);
        std::vector<int> current;
        chosen_.emplace_back();
        if (extend(by_first, starts, 0, need, current, nullptr, part))
            return true;
        chosen_.pop_back();
        return false;
    }

    std::vector<std::vector<int>> parts() const { return chosen_; }

private:
    static TupleSet above(const TupleSet & s, int v)
    {
        TupleSet out;
        for (const auto & f : s)
            if (f[0] > v)
                out.push_back(f);
        return out;
    }

    bool extend(const std::map<int, TupleSet> & by_first, const std::vector<int> & starts, std::size_t from, int need,
                std::vector<int> & current, const TupleSet * link, std::size_t part)
    {
        if (static_cast<int>(current.size()) == need) {
            chosen_.back() = current;
            if (run(*link, part + 1, current.back() + 1))
                return true;
            chosen_.back().clear();
            return false;
        }
        const std::size_t remaining = static_cast<std::size_t>(need) - current.size();
        for (std::size_t i = from; i + remaining <= starts.size(); ++i) {
            const int v = starts[i];
            TupleSet next = above(by_first.at(v), v);
            if (link != nullptr) {
                TupleSet filtered = above(*link, v);
                TupleSet both;
                std::set_intersection(filtered.begin(), filtered.end(), next.begin(), next.end(), std::back_inserter(both));
                next = std::move(both);
            }
            if (next.empty())
                continue;
            current.push_back(v);
            if (extend(by_first, starts, i + 1, need, current, &next, part))
                return true;
            current.pop_back();
        }
        return false;
    }

    std::vector<int> sizes_;
    std::vector<std::vector<int>> chosen_;
};

} // namespace

std::optional<std::vector<std::vector<int>>> find_ordered_complete_t_partite(
    const OrderedHypergraph & h, std::span<const int> sizes)
{
    if (static_cast<int>(sizes.size()) != h.t)
        fail(ErrorKind::input, "one part size per hypergraph layer is required");
    for (int s : sizes)
        if (s < 1)
            fail(ErrorKind::domain, "part sizes must be positive");
    if (h.edges.empty())
        return std::nullopt;
    PartiteSearch search(sizes);
    if (!search.run(h.edges, 0, 1))
        return std::nullopt;
    return search.parts();
}

std::optional<std::vector<std::vector<int>>> find_ordered_complete_t_partite(const OrderedHypergraph & h, int s)
{
    std::vector<int> sizes(static_cast<std::size_t>(h.t), s);
    return find_ordered_complete_t_partite(h, sizes);
}

AvoidanceThreshold avoidance_threshold(double n, int t, int s)
{
    if (n <= 0 || t < 1 || s < 1)
        fail(ErrorKind::domain, "n, t and s must be positive");
    AvoidanceThreshold a;
    const double denom = t * std::pow(static_cast<double>(s), t - 1);
    a.delta = 1.0 / denom;
    a.gamma = (t - 1) / denom;
    a.threshold = 2.0 * std::pow(n, t - a.delta);
    return a;
}

nlohmann::json to_json(const TCut & cut)
{
    return cut.points;
}

} // namespace pmx
