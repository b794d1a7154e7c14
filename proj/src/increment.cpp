#include <pmx/containment.hpp>
#include <pmx/error.hpp>
#include <pmx/hypergraph.hpp>
#include <pmx/increment.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmx {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

std::string big_string(const BigInt & v)
{
    return v.str();
}

nlohmann::json range_json(IndexRange r)
{
    return nlohmann::json::array({r.begin + 1, r.end()});
}

// lexicographic r-subsets of 1..k
std::vector<std::vector<int>> all_labels(int k, int r)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == k - r + i + 1)
            --i;
        if (i < 0)
            break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::size_t argmax(const std::vector<BigInt> & v)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best])
            best = i;
    return best;
}

} // namespace

std::vector<int> column_intervals(const ZeroOneMatrix & pattern, int t)
{
    const IntervalCut cut = min_column_parts(pattern);
    if (cut.parts > t)
        fail(ErrorKind::precondition, "pattern needs " + std::to_string(cut.parts) + " column parts, more than t=" +
                                          std::to_string(t));
    if (pattern.cols() < t)
        fail(ErrorKind::precondition, "pattern has " + std::to_string(pattern.cols()) +
                                          " columns, too few for " + std::to_string(t) + " nonempty intervals");
    std::vector<int> sizes;
    int prev = 0;
    for (int c : cut.cuts) {
        sizes.push_back(c - prev);
        prev = c;
    }
    sizes.push_back(pattern.cols() - prev);
    // refining an interval keeps the at-most-one-per-row property
    while (static_cast<int>(sizes.size()) < t) {
        auto it = std::find_if(sizes.begin(), sizes.end(), [] (int s) { return s >= 2; });
        const int rest = *it - 1;
        *it = 1;
        sizes.insert(it + 1, rest);
    }
    return sizes;
}

std::optional<Embedding> heavy_label_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int t, int k,
                                               int label_cap, std::vector<int> * label_used, int * labels_examined)
{
    if (labels_examined != nullptr)
        *labels_examined = 0;
    const int r = pattern.rows();
    const int s = pattern.cols();
    if (r > k || r < 1 || s < 1)
        return std::nullopt;
    const std::vector<int> sizes = column_intervals(pattern, t);

    // b(a, c): offset inside interval c of the 1 in pattern row a, or -1
    std::vector<int> starts;
    int acc = 0;
    for (int sz : sizes) {
        starts.push_back(acc);
        acc += sz;
    }
    std::vector<std::vector<int>> offset(static_cast<std::size_t>(r), std::vector<int>(sizes.size(), -1));
    for (int a = 0; a < r; ++a)
        for (std::size_t c = 0; c < sizes.size(); ++c)
            for (int o = 0; o < sizes[c]; ++o)
                if (pattern.get(a, starts[c] + o))
                    offset[static_cast<std::size_t>(a)][c] = o;

    const ColumnHypergraph hg = build_column_hypergraph(host, t, k);
    std::vector<std::pair<const std::vector<int> *, const std::vector<int> *>> heavy;
    for (const auto & [edge, blocks] : hg.labels.phi)
        if (static_cast<int>(blocks.size()) >= r)
            heavy.emplace_back(&edge, &blocks);
    if (heavy.empty())
        return std::nullopt;

    std::vector<std::vector<int>> labels;
    if (binomial(k, r) <= label_cap) {
        labels = all_labels(k, r);
    }
    else {
        for (const auto & h : heavy)
            labels.emplace_back(h.second->begin(), h.second->begin() + r);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        if (static_cast<int>(labels.size()) > label_cap)
            labels.resize(static_cast<std::size_t>(label_cap));
    }

    long long needed = 1;
    for (int sz : sizes)
        needed *= sz;
    const int band = host.rows() / k;

    for (const auto & label : labels) {
        if (labels_examined != nullptr)
            ++*labels_examined;
        OrderedHypergraph cls{host.cols(), t, {}};
        for (const auto & h : heavy)
            if (std::includes(h.second->begin(), h.second->end(), label.begin(), label.end()))
                cls.edges.push_back(*h.first);
        if (static_cast<long long>(cls.edges.size()) < needed)
            continue;
        auto parts = find_ordered_complete_t_partite(cls, sizes);
        if (!parts)
            continue;

        Embedding e;
        for (const auto & part : *parts)
            for (int v : part)
                e.col_map.push_back(v - 1);
        bool ok = true;
        for (int a = 0; a < r && ok; ++a) {
            std::vector<int> cols;
            for (std::size_t c = 0; c < sizes.size(); ++c) {
                const int o = offset[static_cast<std::size_t>(a)][c];
                cols.push_back((*parts)[c][static_cast<std::size_t>(o < 0 ? 0 : o)] - 1);
            }
            const int first = (label[static_cast<std::size_t>(a)] - 1) * band;
            int found = -1;
            for (int row = first; row < first + band && found < 0; ++row) {
                bool all = true;
                for (int c : cols)
                    all = all && host.get(row, c);
                if (all)
                    found = row;
            }
            ok = found >= 0;
            e.row_map.push_back(found);
        }
        if (ok && verify_embedding(host, pattern, e)) {
            if (label_used != nullptr)
                *label_used = label;
            return e;
        }
    }
    return std::nullopt;
}

StepResult density_increment_step(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int u, int k,
                                  StepOptions options)
{
    if (u < 1 || k < 1)
        fail(ErrorKind::domain, "u and k must be positive");
    if (host.rows() % k != 0)
        fail(ErrorKind::divisibility, "k=" + std::to_string(k) + " does not divide " + std::to_string(host.rows()) + " rows");
    const int parts = min_column_parts(pattern).parts;
    const int t = options.t > 0 ? options.t : parts;
    if (parts > t)
        fail(ErrorKind::precondition, "pattern is not column-" + std::to_string(t) + "-partite");

    StepResult res;
    res.t = t;
    res.u = u;
    res.total = count_copies(host, u, t).count;

    if (options.try_embedding) {
        auto e = heavy_label_embedding(host, pattern, t, k, options.label_cap, &res.label, &res.labels_examined);
        if (e) {
            res.branch = StepBranch::embedded;
            res.embedding = std::move(e);
            return res;
        }
    }

    auto bp = partition(host, k, BlockMode::horizontal);
    for (const auto & b : bp.blocks) {
        res.block_counts.push_back(count_copies(b.matrix, u, t).count);
        res.narrow_total += res.block_counts.back();
    }
    const std::size_t best = argmax(res.block_counts);
    res.branch = StepBranch::densified;
    res.block = static_cast<int>(best);
    res.rows = bp.blocks[best].rows;
    res.cols = bp.blocks[best].cols;
    res.count = res.block_counts[best];
    const int r = pattern.rows();
    res.log_guarantee = res.total > 0 ? std::lgamma(u + 1.0) - std::log(4.0) - (u - 1) * std::log(static_cast<double>(r)) -
                                            u * std::log(static_cast<double>(u)) + log_big(res.total) -
                                            std::log(static_cast<double>(k))
                                      : neg_inf;
    res.guarantee_met = meets_bound(res.count, res.log_guarantee);
    return res;
}

StepResult symmetric_increment_step(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int k, StepOptions options)
{
    if (k < 1)
        fail(ErrorKind::domain, "k must be positive");
    if (host.rows() % k != 0 || host.cols() % k != 0)
        fail(ErrorKind::divisibility, "k=" + std::to_string(k) + " does not divide both dimensions of the " +
                                          std::to_string(host.rows()) + "x" + std::to_string(host.cols()) + " host");
    const PartiteProfile profile = partite_profile(pattern);
    const int t = options.t > 0 ? options.t : std::max(profile.rows.parts, profile.columns.parts);
    if (!profile.is_t_by_s(t, t))
        fail(ErrorKind::precondition, "pattern is not " + std::to_string(t) + "x" + std::to_string(t) + "-partite");

    StepResult res;
    res.t = t;
    res.u = t;
    res.total = count_copies(host, t, t).count;

    if (options.try_embedding) {
        auto e = heavy_label_embedding(host, pattern, t, k, options.label_cap, &res.label, &res.labels_examined);
        if (!e) {
            int more = 0;
            auto et = heavy_label_embedding(host.transpose(), pattern.transpose(), t, k, options.label_cap, &res.label, &more);
            res.labels_examined += more;
            if (et)
                e = Embedding{et->col_map, et->row_map};
        }
        if (e) {
            res.branch = StepBranch::embedded;
            res.embedding = std::move(e);
            return res;
        }
    }

    auto grid = partition(host, k, BlockMode::grid);
    for (const auto & b : grid.blocks) {
        res.block_counts.push_back(count_copies(b.matrix, t, t).count);
        res.narrow_total += res.block_counts.back();
    }
    const std::size_t best = argmax(res.block_counts);
    res.branch = StepBranch::densified;
    res.block = static_cast<int>(best);
    res.rows = grid.blocks[best].rows;
    res.cols = grid.blocks[best].cols;
    res.count = res.block_counts[best];

    // the two-stage choice: best horizontal block, then its best vertical block
    auto horizontal = partition(host, k, BlockMode::horizontal);
    std::vector<BigInt> hcounts;
    for (const auto & b : horizontal.blocks)
        hcounts.push_back(count_copies(b.matrix, t, t).count);
    const int p = static_cast<int>(argmax(hcounts));
    std::vector<BigInt> vcounts;
    for (int q = 0; q < k; ++q)
        vcounts.push_back(res.block_counts[static_cast<std::size_t>(p * k + q)]);
    res.composed_block = p * k + static_cast<int>(argmax(vcounts));

    const double log_rs = std::log(static_cast<double>(pattern.rows()) * pattern.cols());
    res.log_guarantee = res.total > 0 ? 2 * std::lgamma(t + 1.0) - std::log(16.0) - (t - 1) * log_rs -
                                            2 * t * std::log(static_cast<double>(t)) + log_big(res.total) -
                                            2 * std::log(static_cast<double>(k))
                                      : neg_inf;
    res.guarantee_met = meets_bound(res.count, res.log_guarantee);
    return res;
}

nlohmann::json to_json(const StepResult & step)
{
    nlohmann::json j{{"t", step.t}, {"u", step.u}, {"total", big_string(step.total)}};
    if (step.branch == StepBranch::embedded) {
        j["branch"] = "embedded";
        j["embedding"] = to_json(*step.embedding);
        j["label"] = step.label;
        j["labelsExamined"] = step.labels_examined;
        return j;
    }
    j["branch"] = "densified";
    j["block"] = step.block + 1;
    j["rows"] = range_json(step.rows);
    j["cols"] = range_json(step.cols);
    j["count"] = big_string(step.count);
    j["narrowTotal"] = big_string(step.narrow_total);
    nlohmann::json counts = nlohmann::json::array();
    for (const auto & c : step.block_counts)
        counts.push_back(big_string(c));
    j["blockCounts"] = counts;
    j["logGuarantee"] = std::isfinite(step.log_guarantee) ? nlohmann::json(step.log_guarantee) : nlohmann::json(nullptr);
    j["guaranteeMet"] = step.guarantee_met;
    j["labelsExamined"] = step.labels_examined;
    if (step.composed_block >= 0)
        j["composedBlock"] = step.composed_block + 1;
    return j;
}

DriverMode parse_driver_mode(std::string_view name)
{
    if (name == "thm21")
        return DriverMode::thm21;
    if (name == "thm12")
        return DriverMode::thm12;
    if (name == "thm11")
        return DriverMode::thm11;
    fail(ErrorKind::input, "unknown driver mode '" + std::string(name) + "'");
}

std::string_view to_string(DriverMode mode)
{
    switch (mode) {
    case DriverMode::thm21: return "thm21";
    case DriverMode::thm12: return "thm12";
    case DriverMode::thm11: return "thm11";
    }
    return "?";
}

namespace {

ThresholdCheck check(std::string name, double lhs_log, double rhs_log)
{
    return {std::move(name), lhs_log, rhs_log, lhs_log >= rhs_log + std::log1p(-bound_slack)};
}

ThresholdCheck strict_check(std::string name, double lhs_log, double rhs_log)
{
    return {std::move(name), lhs_log, rhs_log, lhs_log > rhs_log};
}

double log_or_ninf(const BigInt & v)
{
    return v > 0 ? log_big(v) : neg_inf;
}

} // namespace

IncrementTrace run_driver(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, DriverMode mode,
                          const DriverParams & params)
{
    if (params.k < 2)
        fail(ErrorKind::domain, "k must be at least 2");
    if (params.depth < 0)
        fail(ErrorKind::domain, "depth must be nonnegative");
    const PartiteProfile profile = partite_profile(pattern);
    int t = params.t;
    if (t == 0)
        t = mode == DriverMode::thm12 ? std::max({profile.rows.parts, profile.columns.parts, 2})
                                      : std::max(profile.columns.parts, 2);
    const int r = pattern.rows();
    const int s = pattern.cols();
    const double eps = params.epsilon;
    const double n = host.cols();
    const double log_n = std::log(n);
    const double log_k = std::log(static_cast<double>(params.k));

    IncrementTrace trace;
    trace.mode = mode;
    trace.k = params.k;
    trace.t = t;
    trace.z = log_n / log_k;

    const ProofConstants pc = make_constants(t, r, s, t, eps, params.k);
    double log_C = pc.C.log;
    std::optional<LambdaSchedule> ls;
    if (mode == DriverMode::thm12) {
        const ProofConstants swapped = make_constants(t, s, r, t, eps, params.k);
        log_C = std::log(4.0) + (t - 1) * std::log(static_cast<double>(s)) + t * std::log(static_cast<double>(t)) + log_k -
                std::lgamma(t + 1.0) + std::max(pc.C.log, swapped.C.log);
    }
    if (mode == DriverMode::thm11) {
        const int U = params.U > 0 ? params.U : default_U(t, eps);
        ls = lambda_schedule(t, U, eps);
        for (int u = t; u <= U; ++u)
            log_C = std::max(log_C, make_constants(t, r, s, u, eps, params.k).C.log);
    }
    const int checkpoint_level = static_cast<int>(std::ceil((1.0 - eps / t) * trace.z - 1e-12));
    trace.checkpoint = {{"level", checkpoint_level}, {"reached", false}};

    IndexRange rows{0, host.rows()};
    IndexRange cols{0, host.cols()};
    ZeroOneMatrix cur = host;
    BigInt N0;
    int prev_u = t;

    for (int i = 0;; ++i) {
        TraceLevel lv;
        lv.level = i;
        lv.rows = rows;
        lv.cols = cols;
        lv.t = t;
        lv.u = ls ? ls->type_at(i, trace.z) : t;
        const int u = lv.u;
        lv.count = count_copies(cur, u, t).count;
        if (i == 0)
            N0 = lv.count;
        const double log_N = log_or_ninf(lv.count);
        const double log_N0 = log_or_ninf(N0);
        const double log_c = std::log(pc.c);

        switch (mode) {
        case DriverMode::thm21:
            if (i == 0)
                lv.checks.push_back(check("supersaturation", log_N, log_c + (t + 1 + 2 * eps) * log_n));
            lv.checks.push_back(check("trackedDecay", log_N, log_N0 - (1 + eps) * i * log_k));
            lv.checks.push_back(strict_check("stepPrecondition", log_N,
                                             log_C + std::max(u * std::log(static_cast<double>(cur.rows())), t * log_n)));
            break;
        case DriverMode::thm12:
            if (i == 0)
                lv.checks.push_back(check("supersaturation", log_N, log_c + (t + 2 * eps) * log_n));
            lv.checks.push_back(check("trackedDecay", log_N, log_N0 - (2 + eps) * i * log_k));
            lv.checks.push_back(strict_check("stepPrecondition", log_N, log_C + t * (log_n - i * log_k)));
            break;
        case DriverMode::thm11: {
            const double z = trace.z;
            const double ds = ls->delta_small;
            if (i == 0)
                lv.checks.push_back(check("supersaturation", log_N, log_c + (t + 0.5 + 2 * eps) * log_n));
            if (u == t)
                lv.checks.push_back(check("trackedDecay", log_N, log_N0 - (1 + ds) * i * log_k));
            else
                lv.checks.push_back(check("trackedGrowth", log_N,
                                          (u * ls->at(u) + eps) * log_n - (1 + ds) * (i - z + z * ls->at(u)) * log_k));
            lv.checks.push_back(check("claimColumns", log_N, log_C + t * log_n));
            lv.checks.push_back(check("claimRows", log_N, log_C + u * (log_n - i * log_k)));
            if (i > 0 && u > prev_u) {
                const BigInt below = count_copies(cur, u - 1, t).count;
                const BoundCheck sb = stepping_bound(below, host.cols(), u - 1, t);
                lv.checks.push_back({"steppingApplicable", log_or_ninf(below), std::log(sb.threshold), sb.applicable});
                if (sb.applicable)
                    lv.checks.push_back(check("steppingBound", log_N, sb.log_value));
            }
            break;
        }
        }
        prev_u = u;

        if (mode != DriverMode::thm12 && i == checkpoint_level) {
            trace.checkpoint["reached"] = true;
            trace.checkpoint["rowsBelow"] = std::log(static_cast<double>(cur.rows())) < eps / t * log_n;
            trace.checkpoint["countAbove"] = log_N > (t + eps) * log_n;
        }

        auto finish = [&] (std::string reason) {
            lv.branch = "exhausted";
            lv.stop = std::move(reason);
            trace.levels.push_back(std::move(lv));
        };
        if (lv.count == 0) {
            finish("count reached zero");
            break;
        }
        if (i >= params.depth) {
            finish("depth reached");
            break;
        }
        const bool divides = cur.rows() % params.k == 0 && (mode != DriverMode::thm12 || cur.cols() % params.k == 0);
        if (!divides || cur.rows() < params.k) {
            finish("k does not divide the current dimensions");
            break;
        }

        StepOptions opts;
        opts.t = t;
        opts.label_cap = params.label_cap;
        StepResult step = mode == DriverMode::thm12 ? symmetric_increment_step(cur, pattern, params.k, opts)
                                                    : density_increment_step(cur, pattern, u, params.k, opts);
        if (step.branch == StepBranch::embedded) {
            Embedding e = *step.embedding;
            for (int & x : e.row_map)
                x += rows.begin;
            for (int & x : e.col_map)
                x += cols.begin;
            if (!verify_embedding(host, pattern, e))
                fail(ErrorKind::precondition, "internal: mapped embedding failed verification");
            lv.branch = "embedded";
            lv.embedding = e;
            lv.step = std::move(step);
            lv.stop = "embedding found";
            trace.embedding = e;
            trace.levels.push_back(std::move(lv));
            break;
        }
        lv.branch = "densified";
        const IndexRange next_rows{rows.begin + step.rows.begin, step.rows.count};
        const IndexRange next_cols{cols.begin + step.cols.begin, step.cols.count};
        cur = cur.block(step.rows.begin, step.rows.count, step.cols.begin, step.cols.count);
        rows = next_rows;
        cols = next_cols;
        lv.step = std::move(step);
        trace.levels.push_back(std::move(lv));
    }
    return trace;
}

nlohmann::json to_json(const ThresholdCheck & c)
{
    auto num = [] (double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"name", c.name}, {"lhsLog", num(c.lhs_log)}, {"rhsLog", num(c.rhs_log)}, {"holds", c.holds}};
}

nlohmann::json to_json(const TraceLevel & lv)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto & c : lv.checks)
        checks.push_back(to_json(c));
    nlohmann::json j{
        {"level", lv.level},
        {"rows", range_json(lv.rows)},
        {"cols", range_json(lv.cols)},
        {"u", lv.u},
        {"t", lv.t},
        {"count", big_string(lv.count)},
        {"checks", checks},
        {"branch", lv.branch},
    };
    if (lv.step)
        j["step"] = to_json(*lv.step);
    if (lv.embedding)
        j["embedding"] = to_json(*lv.embedding);
    if (!lv.stop.empty())
        j["stop"] = lv.stop;
    return j;
}

} // namespace pmx
