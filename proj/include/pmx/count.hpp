#pragma once

#include <pmx/matrix.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <vector>

namespace pmx {

using BigInt = boost::multiprecision::cpp_int;

// x(x-1)...(x-k+1)/k! for x >= k-1, otherwise 0.
double ext_binom(double x, int k);

BigInt binomial(long long n, long long k);
double log_binomial(double n, double k);

// Natural log of a positive big integer; -inf for zero.
double log_big(const BigInt & x);

enum class Axis { rows, columns };

// Axis::rows: the columns that carry a 1 in every listed row. Axis::columns:
// the rows that carry a 1 in every listed column. Indices are 0-based.
std::vector<int> common_lines(const ZeroOneMatrix & m, std::span<const int> lines, Axis axis);

struct CopyCount {
    int u = 0; // rows of the all-ones block
    int t = 0; // columns of the all-ones block
    BigInt count;
    Axis enumerated = Axis::rows;
};

// Number of (u-row, t-column) all-ones submatrices.
CopyCount count_copies(const ZeroOneMatrix & m, int u, int t);

// Sum over u-subsets of one axis of C(|common lines|, t): the generic form
// used by both counting identities. Exposed so the two axes can be checked
// against each other.
BigInt count_by_axis(const ZeroOneMatrix & m, int u, int t, Axis axis);

struct BoundCheck {
    bool applicable = false;
    double threshold = 0; // the precondition quantity
    double log_value = 0; // natural log of the bound (meaningful when applicable)
    double value = 0;     // exp(log_value), may be inf
};

inline constexpr double bound_slack = 1e-9;

// Whether an exact count meets a real bound given in log form, with the
// relative slack granted to the bound.
bool meets_bound(const BigInt & count, double log_bound);

// The K_{u,t} supersaturation bound for an n x n matrix of weight w.
BoundCheck supersat_bound(double w, double n, int u, int t);

// The stepping-up bound on K_{u+1,t} copies given N copies of K_{u,t} in a
// matrix with n columns.
BoundCheck stepping_bound(const BigInt & N, long long n, int u, int t);

// What the convexity argument behind the stepping-up bound does give, with
// the 1/(u+1)^2 factor kept: C(n,t)^{-1/u} N^{(u+1)/u} / (u+1)^2 - C(n,t).
// Holds for every matrix; applicable is always true.
BoundCheck stepping_bound_corrected(const BigInt & N, long long n, int u, int t);

} // namespace pmx
