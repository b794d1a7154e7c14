#pragma once

#include <json.hpp>

#include <optional>
#include <vector>

namespace pmx {

// A positive real kept as its natural log. value is filled in whenever the
// number is small enough to print as a double.
struct Magnitude {
    double log = 0;
    std::optional<double> value;

    static Magnitude from_log(double log_value);
    static Magnitude from_value(double v);
};

inline constexpr double printable_limit = 1e300;

nlohmann::json to_json(const Magnitude & m);

struct ProofConstants {
    int t = 0;
    int r = 0;
    int s = 0;
    int u = 0;
    double epsilon = 0;
    Magnitude k;            // ceil((4 r^{t-1} t^t / t!)^{1/eps}), or the override
    bool k_overridden = false;
    Magnitude k_formula;    // the formula value regardless of the override
    Magnitude k_symmetric;  // ceil((16 (rs)^{t-1} t^{2t} / (t!)^2)^{1/eps})
    double delta = 0;       // 1 / (t s^{t-1})
    Magnitude binom_k_r;    // C(k, r)
    Magnitude C0;           // C0^delta = 8 t^t C(k, r)
    Magnitude Cprime;       // 8 C(k, r) C0^{t - delta}
    Magnitude C;            // max(C', 4 C(ru, u))
    double c = 0;           // t^{-t^2 - t}
};

// Evaluated in logarithms throughout. k_override replaces k in every
// quantity derived from it.
ProofConstants make_constants(int t, int r, int s, int u, double epsilon, std::optional<double> k_override = {});

// Plain double evaluation of the same formulas; fields are inf once they
// overflow. Used to cross-check the log route.
struct DirectConstants {
    double k = 0;
    double delta = 0;
    double binom_k_r = 0;
    double C0 = 0;
    double Cprime = 0;
    double C = 0;
    double c = 0;
};

DirectConstants direct_constants(int t, int r, int s, int u, double epsilon, std::optional<double> k_override = {});

nlohmann::json to_json(const ProofConstants & pc);

// log C(n, k) for real n >= k >= 0 and small integer k, stable for huge n.
double log_choose_small(double log_n_or_value, bool n_is_log, int k);

struct LambdaSchedule {
    int t = 0;
    int U = 0;
    double epsilon = 0;
    double epsilon0 = 0;    // eps / (10 t^2)
    double delta_small = 0; // eps / (10 U)
    std::vector<double> lambda;  // lambda[u - t] for u = t .. U+1, from the recurrence
    std::vector<double> closed;  // closed form for u = t+1 .. U, NaN elsewhere
    double max_closed_gap = 0;
    bool strictly_decreasing = false;

    double at(int u) const { return lambda[static_cast<std::size_t>(u - t)]; }
    double closed_form(int u) const;
    // The u with z*lambda_{u+1} < z - i <= z*lambda_u; U when i >= z.
    int type_at(double i, double z) const;
    // z - z*lambda_u for u = t+1 .. U.
    std::vector<double> jumps(double z) const;
};

int default_U(int t, double epsilon);
LambdaSchedule lambda_schedule(int t, int U, double epsilon);

nlohmann::json to_json(const LambdaSchedule & ls);

} // namespace pmx
