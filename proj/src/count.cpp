#include <pmx/count.hpp>
#include <pmx/error.hpp>

#include <cmath>
#include <limits>
#include <map>

namespace pmx {

double ext_binom(double x, int k)
{
    if (k <= 0)
        fail(ErrorKind::domain, "extended binomial needs k >= 1, got " + std::to_string(k));
    if (x < k - 1)
        return 0.0;
    double v = 1.0;
    for (int i = 0; i < k; ++i)
        v *= (x - i) / (i + 1);
    return v;
}

BigInt binomial(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt v = 1;
    for (long long i = 1; i <= k; ++i) {
        v *= n - k + i;
        v /= i;
    }
    return v;
}

double log_binomial(double n, double k)
{
    if (k < 0 || k > n)
        return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

double log_big(const BigInt & x)
{
    if (x <= 0)
        return -std::numeric_limits<double>::infinity();
    const auto top = boost::multiprecision::msb(x);
    if (top < 1000)
        return std::log(x.convert_to<double>());
    const auto shift = top - 60;
    BigInt head = x >> shift;
    return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::vector<int> common_lines(const ZeroOneMatrix & m, std::span<const int> lines, Axis axis)
{
    const ZeroOneMatrix & src = axis == Axis::rows ? m : m.transpose();
    for (int i : lines)
        if (i < 0 || i >= src.rows())
            fail(ErrorKind::input, "line index " + std::to_string(i + 1) + " out of range");
    std::vector<Word> acc(src.stride());
    bits::fill_prefix(acc, src.cols());
    for (int i : lines)
        bits::and_into(acc, acc, src.row(i));
    std::vector<int> out;
    for (int c = bits::next_set_bit(acc, 0); c >= 0; c = bits::next_set_bit(acc, c + 1))
        out.push_back(c);
    return out;
}

namespace {

// Depth-first over increasing u-subsets of the rows of src, carrying the AND
// of the chosen rows. Subtrees whose AND already has fewer than t bits are
// skipped since every extension contributes C(a, t) = 0.
class SubsetWalk {
public:
    SubsetWalk(const ZeroOneMatrix & src, int u, int t) : src_(src), u_(u), t_(t)
    {
        stack_.assign(static_cast<std::size_t>(u + 1) * src.stride(), 0);
        bits::fill_prefix(level(0), src.cols());
    }

    BigInt total()
    {
        walk(0, 0);
        BigInt sum = 0;
        for (const auto & [a, times] : histogram_)
            sum += binomial(a, t_) * times;
        return sum;
    }

private:
    std::span<Word> level(int d)
    {
        return {stack_.data() + static_cast<std::size_t>(d) * src_.stride(), src_.stride()};
    }

    void walk(int depth, int from)
    {
        if (depth == u_) {
            ++histogram_[static_cast<long long>(bits::popcount(level(depth)))];
            return;
        }
        for (int i = from; i <= src_.rows() - (u_ - depth); ++i) {
            auto next = level(depth + 1);
            bits::and_into(next, level(depth), src_.row(i));
            if (static_cast<int>(bits::popcount(next)) < t_)
                continue;
            walk(depth + 1, i + 1);
        }
    }

    const ZeroOneMatrix & src_;
    int u_;
    int t_;
    std::vector<Word> stack_;
    std::map<long long, unsigned long long> histogram_;
};

} // namespace

BigInt count_by_axis(const ZeroOneMatrix & m, int u, int t, Axis axis)
{
    if (u < 1 || t < 1)
        fail(ErrorKind::domain, "copy sizes must be positive");
    if (axis == Axis::rows)
        return SubsetWalk(m, u, t).total();
    auto tr = m.transpose();
    return SubsetWalk(tr, t, u).total();
}

CopyCount count_copies(const ZeroOneMatrix & m, int u, int t)
{
    if (u < 1 || t < 1)
        fail(ErrorKind::domain, "copy sizes must be positive");
    const Axis axis = log_binomial(m.rows(), u) <= log_binomial(m.cols(), t) ? Axis::rows : Axis::columns;
    return {u, t, count_by_axis(m, u, t, axis), axis};
}

bool meets_bound(const BigInt & count, double log_bound)
{
    if (log_bound == -std::numeric_limits<double>::infinity())
        return true;
    if (count <= 0)
        return false;
    return log_big(count) >= log_bound + std::log1p(-bound_slack);
}

BoundCheck supersat_bound(double w, double n, int u, int t)
{
    if (n <= 0)
        fail(ErrorKind::domain, "n must be positive");
    if (u < 1 || t < 1)
        fail(ErrorKind::domain, "copy sizes must be positive");
    BoundCheck b;
    b.threshold = t * u * std::pow(n, 2.0 - 1.0 / u);
    b.applicable = w > b.threshold;
    const double tu = static_cast<double>(t) * u;
    b.log_value = tu * std::log(w) - (tu - t + u) * std::log(static_cast<double>(u)) - t * std::log(static_cast<double>(t)) -
                  (2 * tu - u - t) * std::log(n);
    b.value = std::exp(b.log_value);
    return b;
}

BoundCheck stepping_bound(const BigInt & N, long long n, int u, int t)
{
    if (n <= 0)
        fail(ErrorKind::domain, "n must be positive");
    if (u < 1 || t < 1)
        fail(ErrorKind::domain, "copy sizes must be positive");
    BoundCheck b;
    const BigInt need = 2 * binomial(n, t);
    b.threshold = need.convert_to<double>();
    b.applicable = N >= need;
    b.log_value = -std::log(2.0) + (u + 1.0) / u * log_big(N) - static_cast<double>(t) / u * std::log(static_cast<double>(n));
    b.value = std::exp(b.log_value);
    return b;
}

BoundCheck stepping_bound_corrected(const BigInt & N, long long n, int u, int t)
{
    if (n <= 0)
        fail(ErrorKind::domain, "n must be positive");
    if (u < 1 || t < 1)
        fail(ErrorKind::domain, "copy sizes must be positive");
    BoundCheck b;
    b.applicable = true;
    const BigInt lines = binomial(n, t);
    const double log_lines = log_big(lines);
    const double main = -2 * std::log(u + 1.0) - log_lines / u + (u + 1.0) / u * log_big(N);
    if (lines == 0 || !(main > log_lines))
        b.log_value = -std::numeric_limits<double>::infinity();
    else
        b.log_value = main + std::log1p(-std::exp(log_lines - main));
    b.value = std::exp(b.log_value);
    return b;
}

} // namespace pmx
