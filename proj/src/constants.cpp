#include <pmx/constants.hpp>
#include <pmx/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmx {

namespace {

const double log_printable = std::log(printable_limit);

double log_factorial(int n)
{
    return std::lgamma(n + 1.0);
}

// Ceiling that ignores the last few ulps, so a formula landing on an integer
// (such as 16 for t = r = 2, eps = 1) is not bumped up by rounding noise.
double ceil_snapped(double v)
{
    const double nearest = std::round(v);
    if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, std::abs(v)))
        return nearest;
    return std::ceil(v);
}

// log ceil(exp(x)); the ceiling stops mattering long before doubles run out
double log_ceil_exp(double x)
{
    if (x < 40)
        return std::log(ceil_snapped(std::exp(x)));
    return x;
}

// k and C(k, r) are integers; keep them exact while doubles can
Magnitude integral(double log_value)
{
    if (log_value < 36)
        return Magnitude::from_value(std::round(std::exp(log_value)));
    return Magnitude::from_log(log_value);
}

} // namespace

Magnitude Magnitude::from_log(double log_value)
{
    Magnitude m;
    m.log = log_value;
    if (log_value < log_printable)
        m.value = std::exp(log_value);
    return m;
}

Magnitude Magnitude::from_value(double v)
{
    Magnitude m;
    m.log = std::log(v);
    if (v < printable_limit)
        m.value = v;
    return m;
}

nlohmann::json to_json(const Magnitude & m)
{
    nlohmann::json j{{"log", m.log}};
    j["value"] = m.value ? nlohmann::json(*m.value) : nlohmann::json(nullptr);
    return j;
}

double log_choose_small(double n, bool n_is_log, int k)
{
    if (k < 0)
        return -std::numeric_limits<double>::infinity();
    double acc = -log_factorial(k);
    if (n_is_log && n > 36) {
        // n - i == n to double precision
        return acc + k * n;
    }
    const double value = n_is_log ? std::exp(n) : n;
    for (int i = 0; i < k; ++i) {
        if (value - i <= 0)
            return -std::numeric_limits<double>::infinity();
        acc += std::log(value - i);
    }
    return acc;
}

ProofConstants make_constants(int t, int r, int s, int u, double epsilon, std::optional<double> k_override)
{
    if (!(epsilon > 0))
        fail(ErrorKind::domain, "epsilon must be positive");
    if (t < 2)
        fail(ErrorKind::domain, "t must be at least 2");
    if (r < 1 || s < 1 || u < 1)
        fail(ErrorKind::domain, "r, s and u must be positive");
    ProofConstants pc;
    pc.t = t;
    pc.r = r;
    pc.s = s;
    pc.u = u;
    pc.epsilon = epsilon;

    const double log_base = std::log(4.0) + (t - 1) * std::log(static_cast<double>(r)) + t * std::log(static_cast<double>(t)) -
                            log_factorial(t);
    pc.k_formula = integral(log_ceil_exp(log_base / epsilon));
    const double log_sym = std::log(16.0) + (t - 1) * std::log(static_cast<double>(r) * s) + 2 * t * std::log(static_cast<double>(t)) -
                           2 * log_factorial(t);
    pc.k_symmetric = integral(log_ceil_exp(log_sym / epsilon));
    if (k_override) {
        if (!(*k_override >= 1))
            fail(ErrorKind::domain, "k must be at least 1");
        pc.k = Magnitude::from_value(*k_override);
        pc.k_overridden = true;
    }
    else {
        pc.k = pc.k_formula;
    }

    pc.delta = 1.0 / (t * std::pow(static_cast<double>(s), t - 1));
    const double log_binom = pc.k.value ? log_choose_small(*pc.k.value, false, r) : log_choose_small(pc.k.log, true, r);
    pc.binom_k_r = std::isfinite(log_binom) && pc.k.value && *pc.k.value == std::floor(*pc.k.value) ? integral(log_binom)
                                                                                                   : Magnitude::from_log(log_binom);

    // C(k, r) = 0 when k < r; the defining inequality then holds for C0 = 1
    const double log_c0 = std::isfinite(log_binom) ? (std::log(8.0) + t * std::log(static_cast<double>(t)) + log_binom) / pc.delta : 0.0;
    pc.C0 = Magnitude::from_log(log_c0);
    const double log_cprime = std::isfinite(log_binom) ? std::log(8.0) + log_binom + (t - pc.delta) * log_c0
                                                       : -std::numeric_limits<double>::infinity();
    pc.Cprime = Magnitude::from_log(log_cprime);
    const double log_other = std::log(4.0) + log_choose_small(static_cast<double>(r) * u, false, u);
    pc.C = Magnitude::from_log(std::max(log_cprime, log_other));
    pc.c = std::pow(static_cast<double>(t), -(t * t + t));
    return pc;
}

DirectConstants direct_constants(int t, int r, int s, int u, double epsilon, std::optional<double> k_override)
{
    DirectConstants d;
    double fact_t = 1;
    for (int i = 2; i <= t; ++i)
        fact_t *= i;
    const double base = 4.0 * std::pow(static_cast<double>(r), t - 1) * std::pow(static_cast<double>(t), t) / fact_t;
    d.k = k_override ? *k_override : ceil_snapped(std::pow(base, 1.0 / epsilon));
    d.delta = 1.0 / (t * std::pow(static_cast<double>(s), t - 1));
    double binom = 1;
    for (int i = 0; i < r; ++i)
        binom *= (d.k - i) / (i + 1);
    d.binom_k_r = std::max(binom, 0.0);
    d.C0 = binom > 0 ? std::pow(8.0 * std::pow(static_cast<double>(t), t) * binom, 1.0 / d.delta) : 1.0;
    d.Cprime = 8.0 * binom * std::pow(d.C0, t - d.delta);
    double binom_ru = 1;
    for (int i = 0; i < u; ++i)
        binom_ru *= static_cast<double>(r * u - i) / (i + 1);
    d.C = std::max(d.Cprime, 4.0 * binom_ru);
    d.c = std::pow(static_cast<double>(t), -(t * t + t));
    return d;
}

nlohmann::json to_json(const ProofConstants & pc)
{
    return {
        {"t", pc.t},
        {"r", pc.r},
        {"s", pc.s},
        {"u", pc.u},
        {"epsilon", pc.epsilon},
        {"k", to_json(pc.k)},
        {"kOverridden", pc.k_overridden},
        {"kFormula", to_json(pc.k_formula)},
        {"kSymmetric", to_json(pc.k_symmetric)},
        {"delta", pc.delta},
        {"binomKR", to_json(pc.binom_k_r)},
        {"C0", to_json(pc.C0)},
        {"Cprime", to_json(pc.Cprime)},
        {"C", to_json(pc.C)},
        {"c", pc.c},
    };
}

double LambdaSchedule::closed_form(int u) const
{
    if (u < t + 1 || u > U)
        return std::numeric_limits<double>::quiet_NaN();
    return epsilon0 + t / (2.0 * (u - 1)) + t / (2.0 * u);
}

int LambdaSchedule::type_at(double i, double z) const
{
    const double left = z - i;
    for (int u = t; u <= U; ++u)
        if (z * at(u + 1) < left && left <= z * at(u))
            return u;
    return left <= 0 ? U : t;
}

std::vector<double> LambdaSchedule::jumps(double z) const
{
    std::vector<double> out;
    for (int u = t + 1; u <= U; ++u)
        out.push_back(z - z * at(u));
    return out;
}

int default_U(int t, double epsilon)
{
    const double eps0 = epsilon / (10.0 * t * t);
    return static_cast<int>(std::ceil(10.0 * t / eps0));
}

LambdaSchedule lambda_schedule(int t, int U, double epsilon)
{
    if (t < 1)
        fail(ErrorKind::domain, "t must be positive");
    if (!(epsilon > 0))
        fail(ErrorKind::domain, "epsilon must be positive");
    if (U <= t + 1)
        fail(ErrorKind::domain, "U must exceed t + 1");
    LambdaSchedule ls;
    ls.t = t;
    ls.U = U;
    ls.epsilon = epsilon;
    ls.epsilon0 = epsilon / (10.0 * t * t);
    ls.delta_small = epsilon / (10.0 * U);
    ls.lambda.assign(static_cast<std::size_t>(U - t + 2), 0.0);
    ls.lambda[0] = 1.0;
    ls.lambda[1] = 1.0 - 1.0 / (2.0 * (t + 1)) + ls.epsilon0;
    for (int u = t + 1; u <= U - 1; ++u)
        ls.lambda[static_cast<std::size_t>(u + 1 - t)] = ls.at(u) - static_cast<double>(t) / ((u - 1.0) * (u + 1.0));
    ls.lambda.back() = 0.0;
    ls.closed.assign(ls.lambda.size(), std::numeric_limits<double>::quiet_NaN());
    for (int u = t + 1; u <= U; ++u) {
        const double cf = ls.closed_form(u);
        ls.closed[static_cast<std::size_t>(u - t)] = cf;
        ls.max_closed_gap = std::max(ls.max_closed_gap, std::abs(cf - ls.at(u)));
    }
    ls.strictly_decreasing = true;
    for (std::size_t i = 1; i < ls.lambda.size(); ++i)
        if (!(ls.lambda[i] < ls.lambda[i - 1]))
            ls.strictly_decreasing = false;
    return ls;
}

nlohmann::json to_json(const LambdaSchedule & ls)
{
    nlohmann::json lambdas = nlohmann::json::object();
    for (int u = ls.t; u <= ls.U + 1; ++u)
        lambdas[std::to_string(u)] = ls.at(u);
    return {
        {"t", ls.t},
        {"U", ls.U},
        {"epsilon", ls.epsilon},
        {"epsilon0", ls.epsilon0},
        {"deltaSmall", ls.delta_small},
        {"lambda", lambdas},
        {"maxClosedFormGap", ls.max_closed_gap},
        {"strictlyDecreasing", ls.strictly_decreasing},
    };
}

} // namespace pmx
