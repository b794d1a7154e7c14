#pragma once

#include <pmx/matrix.hpp>
#include <pmx/rng.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace pmx {

using Rational = boost::multiprecision::cpp_rational;

// Vertices are 1..n. Every edge is a strictly increasing t-tuple; the edge
// list is sorted lexicographically.
struct OrderedHypergraph {
    int n = 0;
    int t = 0;
    std::vector<std::vector<int>> edges;

    bool has_edge(std::span<const int> e) const;
};

// phi maps an edge to the sorted 1-based horizontal blocks that hold a row
// with 1s in all of its columns.
struct LabelMap {
    int k = 0;
    std::map<std::vector<int>, std::vector<int>> phi;

    const std::vector<int> & blocks(std::span<const int> e) const;
};

struct ColumnHypergraph {
    OrderedHypergraph graph;
    LabelMap labels;
};

ColumnHypergraph build_column_hypergraph(const ZeroOneMatrix & m, int t, int k);

struct EdgeClass {
    bool heavy = false;
    std::vector<int> label; // the r smallest blocks of phi(e) when heavy
};

EdgeClass classify_edge(const LabelMap & labels, std::span<const int> e, int r);

// 1-based cut points i_1 < ... < i_{t-1} drawn from [n].
struct TCut {
    std::vector<int> points;
};

// Number of increasing (t-1)-tuples over [n] that cut e: the product of the
// gaps x_{j+1} - x_j.
boost::multiprecision::cpp_int cuts_through(std::span<const int> e, int n);
boost::multiprecision::cpp_int total_cuts(int n, int t);

// Exact probability that a uniform random t-cut cuts e.
Rational cut_probability(std::span<const int> e, int n);
// The product of normalized gaps prod (x_{j+1} - x_j) / n. Equal to the exact
// probability for t = 2 and a lower bound on it otherwise.
Rational cut_gap_product(std::span<const int> e, int n);

TCut random_t_cut(int n, int t, SplitMix64 & rng);
bool is_cut_by(std::span<const int> e, const TCut & cut, int n);
std::vector<std::vector<int>> edges_cut(const OrderedHypergraph & h, const TCut & cut);

// Parts V_1 < ... < V_t of the requested sizes, every transversal an edge.
// Exhaustive; among all solutions the lexicographically least concatenation
// V_1 V_2 ... V_t is returned.
std::optional<std::vector<std::vector<int>>> find_ordered_complete_t_partite(
    const OrderedHypergraph & h, std::span<const int> sizes);
std::optional<std::vector<std::vector<int>>> find_ordered_complete_t_partite(const OrderedHypergraph & h, int s);

struct AvoidanceThreshold {
    double threshold = 0; // 2 n^{t - delta}
    double delta = 0;     // 1 / (t s^{t-1})
    double gamma = 0;     // (t - 1) / (t s^{t-1})
};

AvoidanceThreshold avoidance_threshold(double n, int t, int s);

nlohmann::json to_json(const TCut & cut);

} // namespace pmx
