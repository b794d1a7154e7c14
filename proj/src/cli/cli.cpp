#include <pmx/classify.hpp>
#include <pmx/cli.hpp>
#include <pmx/containment.hpp>
#include <pmx/count.hpp>
#include <pmx/cycles.hpp>
#include <pmx/error.hpp>
#include <pmx/hypergraph.hpp>
#include <pmx/increment.hpp>
#include <pmx/matrix.hpp>
#include <pmx/rng.hpp>
#include <pmx/search.hpp>
#include <pmx/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pmx {

namespace {

using nlohmann::json;

enum class Format { json, csv, text };

struct RunConfig {
    std::uint64_t seed = default_seed;
    std::string cache_dir;
    std::string format = "json";
    std::optional<double> budget;
};

Format parse_format(const std::string & name)
{
    if (name == "json")
        return Format::json;
    if (name == "csv")
        return Format::csv;
    if (name == "text")
        return Format::text;
    fail(ErrorKind::input, "unknown format '" + name + "' (json, csv, text)");
}

std::filesystem::path cache_dir_for(const RunConfig & cfg)
{
    return cfg.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cfg.cache_dir);
}

// one "key: value" line per top-level field
void emit_text(std::ostream & out, const json & j)
{
    if (!j.is_object()) {
        out << j.dump() << '\n';
        return;
    }
    for (const auto & [key, value] : j.items())
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

void emit(std::ostream & out, Format format, const json & j, const char * command)
{
    switch (format) {
    case Format::json: out << j.dump(2) << '\n'; return;
    case Format::text: emit_text(out, j); return;
    case Format::csv: break;
    }
    fail(ErrorKind::unsupported, std::string("csv output is not available for ") + command + " (use json or text)");
}

json bound_json(const BoundCheck & b)
{
    json j{{"applicable", b.applicable}, {"threshold", b.threshold}, {"log", b.log_value}};
    j["value"] = std::isfinite(b.value) ? json(b.value) : json(nullptr);
    return j;
}

std::string rational_string(const Rational & q)
{
    std::ostringstream os;
    os << boost::multiprecision::numerator(q) << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

int cmd_classify(const std::string & file, Format format, std::ostream & out)
{
    emit(out, format, classify_report(read_pattern_file(file)), "classify");
    return 0;
}

int cmd_contains(const std::string & host_file, const std::string & pattern_file, Format format, std::ostream & out)
{
    const auto host = read_pattern_file(host_file);
    const auto pattern = read_pattern_file(pattern_file);
    json j;
    if (auto e = find_embedding(host, pattern)) {
        j["contains"] = true;
        j["embedding"] = to_json(*e);
    }
    else
        j["contains"] = false;
    emit(out, format, j, "contains");
    return 0;
}

int cmd_count(const std::string & file, int u, int t, bool bounds, Format format, std::ostream & out)
{
    const auto m = read_pattern_file(file);
    const CopyCount c = count_copies(m, u, t);
    json j{{"u", u}, {"t", t}, {"count", c.count.str()}, {"enumerated", c.enumerated == Axis::rows ? "rows" : "columns"}};
    if (bounds) {
        const BoundCheck ss = supersat_bound(static_cast<double>(m.weight()), static_cast<double>(m.cols()), u, t);
        json s = bound_json(ss);
        s["met"] = ss.applicable ? json(meets_bound(c.count, ss.log_value)) : json(nullptr);
        j["supersatBound"] = s;

        const BoundCheck st = stepping_bound(c.count, m.cols(), u, t);
        json p = bound_json(st);
        if (st.applicable && u + 1 <= m.rows()) {
            const BigInt next = count_copies(m, u + 1, t).count;
            p["nextCount"] = next.str();
            p["met"] = meets_bound(next, st.log_value);
        }
        else
            p["met"] = nullptr;
        j["steppingBound"] = p;
        const BoundCheck fixed = stepping_bound_corrected(c.count, m.cols(), u, t);
        json q = bound_json(fixed);
        if (u + 1 <= m.rows())
            q["met"] = meets_bound(count_copies(m, u + 1, t).count, fixed.log_value);
        j["steppingBoundCorrected"] = q;
    }
    emit(out, format, j, "count");
    return 0;
}

int cmd_tcut(const std::string & file, int t, int s, int trials, std::uint64_t seed, Format format, std::ostream & out)
{
    const auto m = read_pattern_file(file);
    if (t < 1 || s < 1)
        fail(ErrorKind::domain, "t and s must be positive");
    if (trials < 0)
        fail(ErrorKind::domain, "trials must be nonnegative");
    const int n = m.cols();
    const OrderedHypergraph h = build_column_hypergraph(m, t, 1).graph;
    const AvoidanceThreshold at = avoidance_threshold(n, t, s);

    json j{{"n", n}, {"t", t}, {"s", s}, {"edgeCount", h.edges.size()}};
    j["threshold"] = {{"value", at.threshold}, {"delta", at.delta}, {"gamma", at.gamma},
                      {"exceeded", static_cast<double>(h.edges.size()) > at.threshold}};
    if (auto parts = find_ordered_complete_t_partite(h, s))
        j["foundParts"] = *parts;
    else
        j["foundParts"] = nullptr;

    Rational expected = 0;
    for (const auto & e : h.edges)
        expected += cut_probability(e, n);
    SplitMix64 rng(seed);
    double sum = 0;
    std::size_t most = 0;
    for (int i = 0; i < trials; ++i) {
        const TCut cut = random_t_cut(n, t, rng);
        const std::size_t hit = edges_cut(h, cut).size();
        sum += static_cast<double>(hit);
        most = std::max(most, hit);
    }
    json mc{{"trials", trials}, {"seed", seed}, {"expectedCut", rational_string(expected)},
            {"expectedCutValue", static_cast<double>(expected)}};
    mc["meanCut"] = trials > 0 ? json(sum / trials) : json(nullptr);
    mc["maxCut"] = most;
    j["monteCarloReport"] = mc;
    emit(out, format, j, "tcut");
    return 0;
}

int cmd_increment(const std::string & host_file, const std::string & pattern_file, const std::string & mode_name,
                  const DriverParams & params, Format format, std::ostream & out)
{
    const auto host = read_pattern_file(host_file);
    const auto pattern = read_pattern_file(pattern_file);
    const DriverMode mode = parse_driver_mode(mode_name);
    const IncrementTrace trace = run_driver(host, pattern, mode, params);

    if (format == Format::csv) {
        out << "level,rowBegin,rowCount,colBegin,colCount,u,t,count,branch,stop\n";
        for (const auto & lv : trace.levels)
            out << lv.level << ',' << lv.rows.begin + 1 << ',' << lv.rows.count << ',' << lv.cols.begin + 1 << ','
                << lv.cols.count << ',' << lv.u << ',' << lv.t << ',' << lv.count.str() << ',' << lv.branch << ",\""
                << lv.stop << "\"\n";
        return 0;
    }
    for (const auto & lv : trace.levels) {
        if (format == Format::text)
            emit_text(out, to_json(lv));
        else
            out << to_json(lv).dump() << '\n';
    }
    json summary{{"mode", to_string(trace.mode)}, {"k", trace.k}, {"t", trace.t}, {"z", trace.z},
                 {"levels", trace.levels.size()}, {"checkpoint", trace.checkpoint}};
    summary["embedding"] = trace.embedding ? to_json(*trace.embedding) : json(nullptr);
    if (format == Format::text)
        emit_text(out, summary);
    else
        out << summary.dump() << '\n';
    return 0;
}

int cmd_cycles_enumerate(int length, Format format, std::ostream & out)
{
    const auto cycles = enumerate_cycles(length);
    json list = json::array();
    for (const auto & c : cycles) {
        json item = to_json(c);
        item["isXMonotone"] = is_x_monotone(c);
        item["isPositiveCycle"] = is_positive_cycle(c);
        list.push_back(item);
    }
    emit(out, format, json{{"length", length}, {"count", cycles.size()}, {"cycles", list}}, "cycles enumerate");
    return 0;
}

int cmd_cycles_embed(const std::string & host_file, const std::string & pattern_file, int r, Format format,
                     std::ostream & out)
{
    const auto host = read_pattern_file(host_file);
    const auto pattern = read_pattern_file(pattern_file);
    const int bands = r > 0 ? r : pattern.rows();
    const BalanceCheck bc = is_r_balanced(host, bands);
    json j{{"r", bands}, {"balanced", bc.balanced}};
    if (!bc.balanced) {
        j["diagnostic"] = bc.diagnostic;
        j["found"] = false;
        emit(out, format, j, "cycles embed");
        fail(ErrorKind::precondition, bc.diagnostic);
    }
    const auto res = embed_xmonotone_balanced(host, pattern);
    j["found"] = res.has_value();
    if (res) {
        j["embedding"] = to_json(res->embedding);
        j["method"] = res->method;
        j["verified"] = verify_embedding(host, pattern, res->embedding);
    }
    emit(out, format, j, "cycles embed");
    return 0;
}

int cmd_cycles_dichotomy(const std::string & host_file, int k, double c, int r, int s, Format format,
                         std::ostream & out)
{
    const auto host = read_pattern_file(host_file);
    emit(out, format, to_json(dense_or_balanced(host, r, s, k, c)), "cycles dichotomy");
    return 0;
}

int cmd_ex(const std::string & file, int n, int n_from, const std::string & mode, const RunConfig & cfg,
           Format format, std::ostream & out, std::ostream & err)
{
    const auto pattern = read_pattern_file(file);
    TableMode tm = TableMode::exact;
    double budget = cfg.budget.value_or(0.0);
    if (mode == "bnb") {
        if (!cfg.budget)
            budget = 60.0;
    }
    else if (mode == "random")
        tm = TableMode::random;
    else if (mode == "brute")
        tm = TableMode::brute;
    else if (mode != "exact")
        fail(ErrorKind::input, "unknown mode '" + mode + "' (exact, bnb, brute, random)");
    const int lo = n_from > 0 ? n_from : n;

    CacheStore cache(cache_dir_for(cfg));
    const auto start = std::chrono::steady_clock::now();
    const auto table = extremal_table(pattern, lo, n, budget, &cache, tm, cfg.seed);
    err << "ex: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";

    bool partial = false;
    for (const auto & rec : table)
        partial = partial || (rec.status == RecordStatus::lower_bound && tm != TableMode::random);

    if (format == Format::csv) {
        out << "n,value,status,solver,upperBound\n";
        for (const auto & rec : table)
            out << rec.n << ',' << rec.value << ',' << to_string(rec.status) << ',' << rec.solver << ','
                << (rec.upper_bound ? std::to_string(*rec.upper_bound) : "") << '\n';
    }
    else if (table.size() == 1)
        emit(out, format, to_json(table.front()), "ex");
    else {
        json arr = json::array();
        for (const auto & rec : table)
            arr.push_back(to_json(rec));
        emit(out, format, json{{"records", arr}}, "ex");
    }
    if (partial) {
        err << "ex: budget exhausted; reported values are lower bounds\n";
        return 2;
    }
    return 0;
}

int exit_code(ErrorKind kind)
{
    return kind == ErrorKind::budget ? 2 : 1;
}

} // namespace

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"pmx: ordered 0-1 matrix patterns"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    double budget = 0;
    app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "result cache directory (overrides PATTERN_EXTREMAL_CACHE)");
    app.add_option("--format", cfg.format, "json, csv or text")->capture_default_str();
    auto * budget_opt = app.add_option("--budget", budget, "time budget in seconds");

    std::string a_file;
    std::string b_file;

    auto * classify = app.add_subcommand("classify", "structural report for a pattern");
    classify->add_option("pattern", a_file)->required();

    auto * contains_cmd = app.add_subcommand("contains", "containment with a certificate");
    contains_cmd->add_option("host", a_file)->required();
    contains_cmd->add_option("pattern", b_file)->required();

    int u = 2;
    int t = 2;
    bool bounds = false;
    auto * count = app.add_subcommand("count", "count K_{u,t} copies");
    count->add_option("host", a_file)->required();
    count->add_option("--u", u)->capture_default_str();
    count->add_option("--t", t)->capture_default_str();
    count->add_flag("--bounds", bounds, "evaluate the supersaturation and stepping-up bounds");

    int s = 2;
    int trials = 1000;
    auto * tcut = app.add_subcommand("tcut", "t-cuts of the column hypergraph");
    tcut->add_option("host", a_file)->required();
    tcut->add_option("--t", t)->capture_default_str();
    tcut->add_option("--s", s)->capture_default_str();
    tcut->add_option("--trials", trials)->capture_default_str();

    std::string mode = "thm21";
    DriverParams params;
    int big_u = 0;
    auto * increment = app.add_subcommand("increment", "density-increment trace, one JSON line per level");
    increment->add_option("host", a_file)->required();
    increment->add_option("pattern", b_file)->required();
    increment->add_option("--mode", mode, "thm21, thm12 or thm11")->capture_default_str();
    increment->add_option("--k", params.k)->capture_default_str();
    increment->add_option("--u", big_u, "largest tracked u (thm11); 0 uses the default");
    increment->add_option("--t", params.t, "copy width; 0 derives it from the pattern");
    increment->add_option("--depth", params.depth)->capture_default_str();
    increment->add_option("--epsilon", params.epsilon)->capture_default_str();
    increment->add_option("--label-cap", params.label_cap)->capture_default_str();

    auto * cycles = app.add_subcommand("cycles", "cycle patterns");
    cycles->require_subcommand(1);
    int length = 4;
    auto * enumerate = cycles->add_subcommand("enumerate", "all cycle patterns with L ones");
    enumerate->add_option("--length", length)->required();
    int r = 0;
    auto * embed = cycles->add_subcommand("embed", "proper embedding into an r-balanced host");
    embed->add_option("host", a_file)->required();
    embed->add_option("pattern", b_file)->required();
    embed->add_option("--r", r, "bands; defaults to the pattern's rows");
    int k = 2;
    double c = 1.0;
    int dr = 2;
    int ds = 2;
    auto * dichotomy = cycles->add_subcommand("dichotomy", "dense band or balanced submatrix");
    dichotomy->add_option("host", a_file)->required();
    dichotomy->add_option("--k", k)->capture_default_str();
    dichotomy->add_option("--c", c)->capture_default_str();
    dichotomy->add_option("--r", dr)->capture_default_str();
    dichotomy->add_option("--s", ds)->capture_default_str();

    int n = 0;
    int n_from = 0;
    std::string ex_mode = "exact";
    auto * ex = app.add_subcommand("ex", "extremal number with a verified witness");
    ex->add_option("pattern", a_file)->required();
    ex->add_option("--n", n)->required();
    ex->add_option("--from", n_from, "first n of a table ending at --n");
    ex->add_option("--mode", ex_mode, "exact, bnb, brute or random")->capture_default_str();

    std::string filter;
    auto * suite = app.add_subcommand("verify-suite", "run the acceptance properties");
    suite->add_option("--filter", filter, "group name or item id");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e, out, err);
        err << app.help();
        return 1;
    }
    if (budget_opt->count() > 0)
        cfg.budget = budget;

    try {
        const Format format = parse_format(cfg.format);
        if (classify->parsed())
            return cmd_classify(a_file, format, out);
        if (contains_cmd->parsed())
            return cmd_contains(a_file, b_file, format, out);
        if (count->parsed())
            return cmd_count(a_file, u, t, bounds, format, out);
        if (tcut->parsed())
            return cmd_tcut(a_file, t, s, trials, cfg.seed, format, out);
        if (increment->parsed()) {
            params.U = big_u;
            return cmd_increment(a_file, b_file, mode, params, format, out);
        }
        if (enumerate->parsed())
            return cmd_cycles_enumerate(length, format, out);
        if (embed->parsed())
            return cmd_cycles_embed(a_file, b_file, r, format, out);
        if (dichotomy->parsed())
            return cmd_cycles_dichotomy(a_file, k, c, dr, ds, format, out);
        if (ex->parsed())
            return cmd_ex(a_file, n, n_from, ex_mode, cfg, format, out, err);
        if (suite->parsed()) {
            SuiteOptions opts;
            opts.filter = filter;
            opts.cache_dir = cache_dir_for(cfg);
            opts.seed = cfg.seed;
            return run_suite(opts, out, err) == 0 ? 0 : 1;
        }
    }
    catch (const Error & e) {
        err << "pmx: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    }
    catch (const std::exception & e) {
        err << "pmx: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 1;
}

} // namespace pmx
