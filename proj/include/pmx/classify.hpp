#pragma once

#include <pmx/matrix.hpp>

#include <json.hpp>

#include <optional>
#include <vector>

namespace pmx {

// Minimum interval partition. cuts holds the 1-based index of the last
// line of every part except the final one, so parts() == cuts.size() + 1.
struct IntervalCut {
    int parts = 1;
    std::vector<int> cuts;
};

IntervalCut min_column_parts(const ZeroOneMatrix & a);
IntervalCut min_row_parts(const ZeroOneMatrix & a);

struct PartiteProfile {
    IntervalCut rows;    // row-t-partite witness
    IntervalCut columns; // column-s-partite witness

    bool is_t_by_s(int t, int s) const { return rows.parts <= t && columns.parts <= s; }
};

PartiteProfile partite_profile(const ZeroOneMatrix & a);

bool is_permutation(const ZeroOneMatrix & a);
bool is_acyclic(const ZeroOneMatrix & a);
bool is_cycle(const ZeroOneMatrix & a);

// Drops all-zero rows and columns.
ZeroOneMatrix strip_zero_lines(const ZeroOneMatrix & a);

struct Point {
    int x = 0; // column, 1-based, grows rightward
    int y = 0; // row, 1-based, grows downward

    friend bool operator==(const Point &, const Point &) = default;
};

struct Segment {
    Point from;
    Point to;
};

struct Drawing {
    std::vector<Point> points;
    std::vector<Segment> horizontal;
    std::vector<Segment> vertical;
    // For cycles: the closed tour, starting at the first 1-entry in row-major
    // order and leaving it horizontally. Empty for non-cycles.
    std::vector<Point> orientation;
};

Drawing drawing(const ZeroOneMatrix & a);

// Cyclic tour of a cycle pattern; throws unsupported on non-cycles.
std::vector<Point> cycle_tour(const ZeroOneMatrix & a);

bool is_x_monotone(const ZeroOneMatrix & a);

// Winding numbers sampled at the centres of the unit cells spanned by the
// 1-entry lattice: cell (i, j) is centred at (x, y) = (j + 1.5, i + 1.5) in
// 1-based coordinates, so the grid is (rows-1) x (cols-1).
struct WindingProfile {
    int rows = 0;
    int cols = 0;
    std::vector<int> cells; // row-major

    int at(int i, int j) const { return cells[static_cast<std::size_t>(i * cols + j)]; }
};

// Counter-clockwise (in the y-up sense) encirclement counts positive.
WindingProfile winding_profile(std::span<const Point> tour, int rows, int cols);
WindingProfile winding_profile(const ZeroOneMatrix & a);
bool is_positive_cycle(const ZeroOneMatrix & a);

nlohmann::json classify_report(const ZeroOneMatrix & a);

} // namespace pmx
