#include "cli.hpp"

#include <CLI11.hpp>

#include <bit>
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "prodcode/analysis.hpp"
#include "prodcode/bounds.hpp"
#include "prodcode/serialize.hpp"

namespace prodcode::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Params {
    int n = 0;
    int r = 0;
    std::string k;
    int q_log = 0;
    std::string field_poly;
    std::string c;
    std::string format;
    std::string out;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string budget;
    // command specific
    bool ref = false;
    std::string msg;
    std::string model = "uniform";
    double p = 0.1;
    int t = 0;
    std::optional<int> a;
    std::optional<int> b;
    std::uint64_t trials = 0;
    std::string level = "fast";
    std::string name;
};

std::uint64_t parse_u64(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw UsageError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

/// Decimal or 2^e.
std::uint64_t parse_budget(const std::string& s) {
    if (s.empty()) return kDefaultBudget;
    if (s.rfind("2^", 0) == 0) {
        const std::uint64_t e = parse_u64(s.substr(2), "budget exponent");
        if (e > 62) throw UsageError("budget exponent above 62");
        return std::uint64_t{1} << e;
    }
    return parse_u64(s, "budget");
}

/// "a" or "a..b".
std::pair<std::int64_t, std::int64_t> parse_k(const std::string& s, std::int64_t lo, std::int64_t hi) {
    std::pair<std::int64_t, std::int64_t> range{lo, hi};
    if (!s.empty()) {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            range.first = range.second = static_cast<std::int64_t>(parse_u64(s, "--k"));
        } else {
            range.first = static_cast<std::int64_t>(parse_u64(s.substr(0, dots), "--k"));
            range.second = static_cast<std::int64_t>(parse_u64(s.substr(dots + 2), "--k"));
        }
    }
    if (range.first < lo || range.second > hi || range.first > range.second)
        throw UsageError("--k " + s + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return range;
}

void check_n_r(const Params& p) {
    if (p.n < 1) throw UsageError("--n must be positive");
    if (p.n > 4096) throw UsageError("--n above 4096 is not supported");
    if (p.r < 1 || p.r > p.n) throw UsageError("--r must satisfy 1 <= r <= n");
}

int resolve_q_log(const Params& p) {
    int q_log = p.q_log;
    if (p.n > 0) {
        if (!std::has_single_bit(static_cast<unsigned>(p.n)) || p.n < 2)
            throw UsageError("--n must be a power of two >= 2 for code construction");
        const int from_n = std::countr_zero(static_cast<unsigned>(p.n));
        if (q_log > 0 && q_log != from_n) throw UsageError("--n and --q-log disagree");
        q_log = from_n;
    }
    if (q_log < 1 || 2 * q_log > Field::kMaxDegree) throw UsageError("--q-log must be in [1, 12]");
    return q_log;
}

std::optional<std::uint64_t> parse_poly(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return from_hex(s);
}

LinearizedPair make_pair(const Params& p) {
    std::optional<Elem> c;
    if (!p.c.empty()) c = static_cast<Elem>(from_hex(p.c));
    return instantiate_standard(resolve_q_log(p), parse_poly(p.field_poly), c);
}

CodeInstance make_code(const Params& p) {
    const int q_log = resolve_q_log(p);
    const int n = 1 << q_log;
    if (p.r < 1 || p.r > n) throw UsageError("--r must satisfy 1 <= r <= n");
    const auto k = parse_k(p.k.empty() ? std::to_string(p.r * p.r) : p.k, 1, std::int64_t{p.r} * p.r).first;
    auto pair = std::make_shared<const LinearizedPair>(make_pair(p));
    return build_code(std::move(pair), p.r, static_cast<int>(k));
}

std::string format_or(const Params& p, const char* fallback) {
    const std::string f = p.format.empty() ? fallback : p.format;
    if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
    return f;
}

/// --out file or the default stream.
class Sink {
public:
    Sink(const Params& p, std::ostream& fallback) : stream_(&fallback) {
        if (!p.out.empty()) {
            file_ = std::make_unique<std::ofstream>(p.out, std::ios::binary);
            if (!*file_) throw UsageError("cannot open --out " + p.out);
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void cmd_bounds(const Params& p, std::ostream& os) {
    check_n_r(p);
    const auto profile = degree_profile(p.n, p.r);
    const auto [k0, k1] = parse_k(p.k, 1, std::int64_t{p.r} * p.r);
    if (format_or(p, "csv") == "csv") {
        os << kBoundsCsvHeader << '\n';
        for (auto k = k0; k <= k1; ++k) os << bound_csv_row(bound_report(profile, k)) << '\n';
    } else {
        Json j{{"n_frak", p.n}, {"r", p.r}, {"delta", p.n - p.r + 1}};
        Json rows = Json::array();
        for (auto k = k0; k <= k1; ++k) rows.push_back(bound_json(bound_report(profile, k)));
        j["rows"] = rows;
        os << j.dump(2) << '\n';
    }
}

void cmd_profile(const Params& p, std::ostream& os) {
    check_n_r(p);
    const auto profile = degree_profile(p.n, p.r);
    if (format_or(p, "json") == "csv") {
        os << "k,partial_k,breakpoint\n";
        for (std::int64_t k = 1; k <= std::int64_t{p.r} * p.r; ++k)
            os << k << ',' << profile.partial(k) << ',' << (profile.is_breakpoint(k) ? 1 : 0) << '\n';
        return;
    }
    Json j = profile_json(profile);
    if (p.ref) {
        const auto pair = make_pair(p);
        const auto oracle = ref_degree_oracle(pair, p.r);
        j["ref_oracle"] = {{"D", oracle}, {"agrees", oracle == profile.D}};
    }
    os << j.dump(2) << '\n';
}

void cmd_build(const Params& p, std::ostream& os) {
    const auto code = make_code(p);
    if (format_or(p, "csv") == "csv") {
        write_generator_csv(os, code);
        return;
    }
    Json j;
    j["pair"] = pair_json(*code.pair);
    j["r"] = code.r;
    j["k"] = code.k;
    j["coordinate_order"] = "Zf-major";
    j["partials"] = std::vector<std::int64_t>(code.profile.partials.begin(), code.profile.partials.begin() + code.k);
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < code.G.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < code.G.cols(); ++c) row.push_back(to_hex(code.G(i, c)));
        rows.push_back(row);
    }
    j["G"] = rows;
    os << j.dump(2) << '\n';
}

void cmd_encode(const Params& p, std::ostream& os) {
    const auto code = make_code(p);
    std::vector<Elem> msg;
    std::stringstream ss(p.msg);
    for (std::string tok; std::getline(ss, tok, ',');) {
        const auto v = from_hex(tok);
        if (!code.field().contains(v)) throw UsageError("--msg symbol " + tok + " is not a field element");
        msg.push_back(static_cast<Elem>(v));
    }
    if (static_cast<int>(msg.size()) != code.k)
        throw UsageError("--msg needs exactly k = " + std::to_string(code.k) + " symbols");
    const RowVector word = encode(code, msg);
    if (format_or(p, "csv") == "csv") {
        for (Eigen::Index j = 0; j < word.size(); ++j) os << (j ? "," : "") << to_hex(word(j));
        os << '\n';
        return;
    }
    const GridWord grid = relabel(*code.pair, word);
    Json g = Json::array();
    for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < grid.cols(); ++j) row.push_back(to_hex(grid(i, j)));
        g.push_back(row);
    }
    os << Json{{"k", code.k}, {"weight", (word.array() != 0).count()}, {"grid", g}}.dump(2) << '\n';
}

void cmd_distance(const Params& p, std::ostream& os, std::ostream& err) {
    const auto code = make_code(p);
    const auto budget = parse_budget(p.budget);
    if (budget > kDefaultBudget)
        err << "warning: budget " << budget << " exceeds the default of 2^28; exhaustive runs may take long\n";
    const auto rep = bound_report(code.profile, code.k);
    const std::string fmt = format_or(p, "json");
    try {
        const auto res = exhaustive_distance(code, budget, p.threads);
        if (fmt == "csv") {
            write_spectrum_csv(os, res.spectrum);
            return;
        }
        Json j{{"n_frak", code.n()}, {"r", code.r}, {"k", code.k}, {"distance", res.distance}, {"exact", true},
               {"lower_opt", rep.lower.value}, {"best_upper", rep.best_upper()}};
        j["exact_formula"] = rep.exact ? Json(*rep.exact) : Json(nullptr);
        j["second_weight"] = res.spectrum.second_nonzero();
        j["spectrum"] = spectrum_json(res.spectrum);
        os << j.dump(2) << '\n';
    } catch (const BudgetExceeded& e) {
        const std::uint64_t trials = p.trials ? p.trials : 10000;
        err << "warning: " << e.what() << "; sampling " << trials << " random messages instead\n";
        const int est = sampled_distance(code, trials, p.seed);
        if (fmt == "csv") {
            os << "distance_upper_estimate,trials\n" << est << ',' << trials << '\n';
            return;
        }
        Json j{{"n_frak", code.n()}, {"r", code.r}, {"k", code.k}, {"distance_upper_estimate", est},
               {"exact", false}, {"trials", trials}, {"seed", p.seed}, {"lower_opt", rep.lower.value},
               {"best_upper", rep.best_upper()}};
        // Below the estimate the true distance is only bracketed by the bounds.
        j["status"] = rep.lower.value == est ? "settled" : "inconclusive";
        os << j.dump(2) << '\n';
    }
}

void cmd_erasure_sim(const Params& p, std::ostream& os) {
    const auto code = make_code(p);
    const int n = code.n();
    MaskModel model;
    Json params;
    if (p.model == "uniform") {
        if (!(p.p >= 0.0 && p.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
        model = UniformErasures{p.p};
        params["p"] = p.p;
    } else if (p.model == "cells") {
        if (p.t < 0 || p.t > n * n) throw UsageError("--t must lie in [0, n^2]");
        model = RandomCells{p.t};
        params["t"] = p.t;
    } else if (p.model == "fig1") {
        const auto w = grid_upper(n, code.r, code.k);
        const int a = p.a.value_or(static_cast<int>(w.a));
        const int b = p.b.value_or(static_cast<int>(w.b));
        if (a < 0 || b < 0 || a > code.r || b > code.r) throw UsageError("fig1 needs 0 <= a, b <= r");
        model = GridPattern{a, b};
        params = {{"a", a}, {"b", b}, {"size_condition", std::int64_t{a} * b >= std::int64_t{code.r} * code.r - code.k + 1}};
    } else if (p.model == "fig2") {
        int a = 0, b = 0;
        if (p.a && p.b) {
            a = *p.a;
            b = *p.b;
        } else {
            if (code.r < 2 || code.k < code.r + 1) throw UsageError("fig2 defaults need r >= 2 and k >= r + 1; pass --a and --b");
            std::tie(a, b) = strip_bound_parameters(n, code.r, code.k);
        }
        if (a < 0 || b < 0 || a > n - 1 || b > n - 1) throw UsageError("fig2 needs 0 <= a, b <= n - 1");
        model = StripPattern{a, b};
        params = {{"a", a}, {"b", b}, {"size_condition", a * (code.r - 1) + b >= n * code.r - code.k + 1}};
    } else {
        throw UsageError("--model must be uniform, cells, fig1 or fig2");
    }
    const std::uint64_t trials = p.trials ? p.trials : 1000;
    const auto stats = simulate_erasures(code, model, trials, p.seed, p.threads);
    Json j{{"n_frak", n}, {"r", code.r}, {"k", code.k}, {"model", p.model}, {"params", params},
           {"trials", stats.trials}, {"seed", p.seed}, {"recoverable", stats.recoverable}, {"rate", stats.rate()},
           {"mean_erasures", static_cast<double>(stats.total_erasures) / static_cast<double>(stats.trials)}};
    os << j.dump(2) << '\n';
}

struct FigureParams {
    const char* name;
    int n;
    int r;
};
constexpr FigureParams kFigures[] = {{"eg1", 32, 8}, {"eg2a", 32, 16}, {"eg2b", 128, 64}, {"eg3", 32, 25}};

void cmd_figure(const Params& p, std::ostream& os) {
    const FigureParams* fig = nullptr;
    for (const auto& f : kFigures)
        if (p.name == f.name) fig = &f;
    if (!fig) throw UsageError("--name must be one of eg1, eg2a, eg2b, eg3");
    const auto profile = degree_profile(fig->n, fig->r);
    os << "k,value,series\n";
    for (std::int64_t k = 1; k <= std::int64_t{fig->r} * fig->r; ++k) {
        const auto rep = bound_report(profile, k);
        os << k << ',' << rep.lower.value << ",lower_opt\n";
        os << k << ',' << rep.grid.value << ",grid_upper\n";
        if (rep.gridv2_upper) os << k << ',' << *rep.gridv2_upper << ",gridv2_upper\n";
    }
}

int cmd_verify(const Params& p, std::ostream& os) {
    if (p.level != "fast" && p.level != "full") throw UsageError("--level must be fast or full");
    VerifyOptions opts;
    opts.full = p.level == "full";
    opts.injected_poly = parse_poly(p.field_poly);
    opts.threads = p.threads;
    opts.seed = p.seed;
    const int failures = run_checks(verify_checks(opts), os);
    os << (failures ? "verify: " + std::to_string(failures) + " check(s) failed" : std::string("verify: all checks passed"))
       << '\n';
    return failures ? kVerifyFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Subcodes of Reed-Solomon product codes: bounds, construction and oracles", "prodcode"};
    app.require_subcommand(1);
    Params p;

    auto common = [&p](CLI::App* sub) {
        sub->add_option("--format", p.format, "csv or json");
        sub->add_option("--out", p.out, "write output to this file");
        sub->add_option("--threads", p.threads, "worker threads (0 = hardware)");
    };
    auto size = [&p](CLI::App* sub) {
        sub->add_option("--n", p.n, "local length");
        sub->add_option("--r", p.r, "local dimension")->required();
        sub->add_option("--k", p.k, "dimension, a or a..b");
    };
    auto field = [&p](CLI::App* sub) {
        sub->add_option("--q-log", p.q_log, "q = 2^q_log, field GF(q^2)");
        sub->add_option("--field-poly", p.field_poly, "reduction polynomial of GF(q^2) in hex");
        sub->add_option("--c", p.c, "scaling element c in hex (default: smallest outside GF(q))");
    };

    auto* bounds = app.add_subcommand("bounds", "bound table over a range of k");
    size(bounds);
    common(bounds);
    bounds->get_option("--n")->required();

    auto* profile = app.add_subcommand("profile", "degree set and partial degrees");
    size(profile);
    common(profile);
    field(profile);
    profile->get_option("--n")->required();
    profile->add_flag("--ref", p.ref, "cross-check against the row-echelon oracle");

    auto* build = app.add_subcommand("build", "export the generator matrix");
    size(build);
    field(build);
    common(build);

    auto* enc = app.add_subcommand("encode", "encode one message");
    size(enc);
    field(enc);
    common(enc);
    enc->add_option("--msg", p.msg, "k comma-separated hex symbols")->required();

    auto* dist = app.add_subcommand("distance", "exhaustive minimum distance and spectrum");
    size(dist);
    field(dist);
    common(dist);
    dist->add_option("--budget", p.budget, "message budget, decimal or 2^e (default 2^28)");
    dist->add_option("--trials", p.trials, "random messages when the budget is exceeded");
    dist->add_option("--seed", p.seed);

    auto* sim = app.add_subcommand("erasure-sim", "Monte-Carlo erasure recoverability");
    size(sim);
    field(sim);
    common(sim);
    sim->add_option("--model", p.model, "uniform, cells, fig1 or fig2");
    sim->add_option("--p", p.p, "erasure probability (uniform)");
    sim->add_option("--t", p.t, "number of erased cells (cells)");
    sim->add_option("--a", p.a, "pattern parameter a (fig1, fig2)");
    sim->add_option("--b", p.b, "pattern parameter b (fig1, fig2)");
    sim->add_option("--trials", p.trials, "number of masks (default 1000)");
    sim->add_option("--seed", p.seed);

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--level", p.level, "fast or full");
    verify->add_option("--field-poly", p.field_poly, "inject this GF(16) modulus into the field checks");
    verify->add_option("--threads", p.threads);
    verify->add_option("--seed", p.seed);

    auto* figure = app.add_subcommand("figure", "bound curves in long CSV format");
    figure->add_option("--name", p.name, "eg1, eg2a, eg2b or eg3")->required();
    figure->add_option("--out", p.out);

    std::vector<const char*> argv{"prodcode"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        // Sub-command help requests arrive here as well.
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        Sink sink(p, out);
        std::ostream& os = *sink;
        if (bounds->parsed()) cmd_bounds(p, os);
        else if (profile->parsed()) cmd_profile(p, os);
        else if (build->parsed()) cmd_build(p, os);
        else if (enc->parsed()) cmd_encode(p, os);
        else if (dist->parsed()) cmd_distance(p, os, err);
        else if (sim->parsed()) cmd_erasure_sim(p, os);
        else if (figure->parsed()) cmd_figure(p, os);
        else if (verify->parsed()) return cmd_verify(p, os);
        return kOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
}

int run_checks(const std::vector<Check>& checks, std::ostream& out) {
    int failures = 0;
    for (const auto& check : checks) {
        CheckResult res;
        try {
            res = check.run();
        } catch (const std::exception& e) {
            res = std::string("exception: ") + e.what();
        }
        if (res) {
            ++failures;
            out << "FAIL " << check.name << ": " << *res << '\n';
        } else {
            out << "PASS " << check.name << '\n';
        }
        out.flush();
    }
    return failures;
}

}  // namespace prodcode::cli
