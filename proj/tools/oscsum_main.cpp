// Command-line front end: single evaluations, formula-vs-oracle comparisons,
// parameter sweeps, bound reports, and figure-data emission.
//
// Output contract: JSON for eval/compare/bounds, CSV for sweep/figure, floats
// printed with 17 significant digits, field order fixed. Identical inputs
// produce byte-identical output apart from wall_time_ms.
//
// Exit codes: 0 success, 2 validation, 3 non-finite result, 4 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <oscsum/oscsum.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

using oscsum::complex;

namespace {

struct IoFailure {
    std::string message;
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string jescape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') { out += '\\'; out += c; }
        else if (c == '\n') out += "\\n";
        else out += c;
    }
    return out;
}

std::string value_block(complex v) {
    return "{\"re\": " + num(v.real()) + ", \"im\": " + num(v.imag())
         + ", \"abs\": " + num(std::abs(v)) + ", \"arg\": " + num(std::arg(v)) + "}";
}

// Effective option values after merging flags, config file, and defaults.
struct Options {
    std::string command;
    std::string method = "closed";
    double A = 0.0, B = 0.0, N = 1e4;
    int s = 1;
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, b3 = 0.0;
    double q = 0.0;
    double widen = 1.0;
    std::string profile;
    std::string axis;
    std::string values;
    int figure = 0;
    std::string format;
    std::string out;
    std::string config;
    std::optional<double> bracket_a;
    std::string a_grid;
    bool n_given = false;
};

oscsum::oracle::OracleConfig oracle_config(const Options& o) {
    oscsum::oracle::OracleConfig cfg;
    cfg.widen = o.widen;
    return cfg;
}

oscsum::asymptotics::FourierProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open profile file: " + path};
    nlohmann::json j = nlohmann::json::parse(in);  // parse_error handled as validation
    for (const char* key : {"p_min", "p_max", "step", "values"}) {
        if (!j.contains(key))
            throw std::invalid_argument(std::string("profile file missing key: ") + key);
    }
    oscsum::asymptotics::FourierProfile f;
    f.p_min = j["p_min"].get<double>();
    f.p_max = j["p_max"].get<double>();
    double step = j["step"].get<double>();
    for (const auto& pair : j["values"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("profile values must be [re, im] pairs");
        f.values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    oscsum::asymptotics::validate_profile(f);
    double span = f.p_max - f.p_min;
    double implied = step * double(f.values.size() - 1);
    if (std::abs(implied - span) > 1e-9 * std::max(1.0, std::abs(span)))
        throw std::invalid_argument("profile step is inconsistent with p_min/p_max/values");
    return f;
}

std::string params_block(const oscsum::Evaluation& ev, const Options& o) {
    if (std::holds_alternative<oscsum::SumParams>(ev.params)) {
        const auto& p = std::get<oscsum::SumParams>(ev.params);
        std::string s = "{\"A\": " + num(p.A) + ", \"B\": " + num(p.B)
                      + ", \"N\": " + num(p.N);
        if (o.method == "zs") s += ", \"s\": " + std::to_string(o.s);
        if (o.method == "windowed" || o.method == "full")
            s += ", \"widen\": " + num(o.widen);
        return s + "}";
    }
    if (std::holds_alternative<oscsum::DoubleSumParams>(ev.params)) {
        const auto& d = std::get<oscsum::DoubleSumParams>(ev.params);
        return "{\"a1\": " + num(d.a1) + ", \"a2\": " + num(d.a2)
             + ", \"b1\": " + num(d.b1) + ", \"b2\": " + num(d.b2)
             + ", \"b3\": " + num(d.b3) + ", \"N\": " + num(d.N) + "}";
    }
    const auto& z = std::get<oscsum::ZfParams>(ev.params);
    return "{\"q\": " + num(z.q) + ", \"N\": " + num(z.N)
         + ", \"p_min\": " + num(z.p_min) + ", \"p_max\": " + num(z.p_max)
         + ", \"samples\": " + std::to_string(z.samples) + "}";
}

oscsum::Evaluation run_eval_method(const Options& o) {
    if (o.method == "closed")
        return oscsum::asymptotics::z_closed(oscsum::validate(o.A, o.B, o.N));
    if (o.method == "windowed")
        return oscsum::oracle::sum_z_windowed(oscsum::validate(o.A, o.B, o.N),
                                              oracle_config(o));
    if (o.method == "full")
        return oscsum::oracle::sum_z_full(oscsum::validate(o.A, o.B, o.N),
                                          oracle_config(o));
    if (o.method == "ztilde")
        return oscsum::asymptotics::ztilde_closed(oscsum::validate(o.A, o.B, o.N));
    if (o.method == "zs")
        return oscsum::asymptotics::zs_closed(oscsum::validate(o.A, o.B, o.N), o.s);
    if (o.method == "zdouble")
        return oscsum::asymptotics::zdouble_closed(
            oscsum::validate_double(o.a1, o.a2, o.b1, o.b2, o.b3, o.N));
    if (o.method == "zf") {
        if (o.profile.empty())
            throw std::invalid_argument("method zf requires --profile");
        auto f = load_profile(o.profile);
        if (!oscsum::asymptotics::zf_regime_ok(f, o.q, o.N))
            std::fprintf(stderr,
                         "warning: profile support plus q is too wide for the "
                         "narrow-support regime at N=%s; kernel error is "
                         "uncontrolled\n",
                         num(o.N).c_str());
        return oscsum::asymptotics::zf_quadrature(f, o.q, o.N);
    }
    throw std::invalid_argument("unknown eval method: " + o.method);
}

std::string cmd_eval(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    if (o.method == "stage") {
        auto p = oscsum::validate(o.A, o.B, o.N);
        auto rep = oscsum::asymptotics::stage_pipeline(p, oracle_config(o));
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        std::string out = "{\n";
        out += "  \"method\": \"stage\",\n";
        out += "  \"params\": {\"A\": " + num(p.A) + ", \"B\": " + num(p.B)
             + ", \"N\": " + num(p.N) + ", \"widen\": " + num(o.widen) + "},\n";
        out += "  \"value\": " + value_block(rep.closed_form) + ",\n";
        out += "  \"stages\": {\n";
        out += "    \"windowed_sum\": " + value_block(rep.windowed_sum) + ",\n";
        out += "    \"integral_exact\": " + value_block(rep.integral_exact) + ",\n";
        out += "    \"integral_expanded\": " + value_block(rep.integral_expanded) + ",\n";
        out += "    \"closed_form\": " + value_block(rep.closed_form) + "\n";
        out += "  },\n";
        out += "  \"deltas\": {\"delta_12\": " + num(rep.delta_12)
             + ", \"delta_23\": " + num(rep.delta_23)
             + ", \"delta_34\": " + num(rep.delta_34) + "},\n";
        out += "  \"wall_time_ms\": " + num(ms) + "\n";
        out += "}\n";
        return out;
    }
    auto ev = run_eval_method(o);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::string out = "{\n";
    out += "  \"method\": \"" + o.method + "\",\n";
    out += "  \"params\": " + params_block(ev, o) + ",\n";
    out += "  \"value\": " + value_block(ev.value) + ",\n";
    if (ev.error_bound)
        out += "  \"error_bound\": " + num(*ev.error_bound) + ",\n";
    out += "  \"wall_time_ms\": " + num(ms) + "\n";
    out += "}\n";
    return out;
}

struct CompareResult {
    oscsum::Evaluation closed;
    oscsum::Evaluation oracle;
    const char* oracle_kind;
    std::optional<double> budget;
};

CompareResult run_compare(const Options& o) {
    auto cfg = oracle_config(o);
    if (o.method == "closed") {
        // The windowed sum is the reference: its truncation is covered by the
        // reported tail bound, and it stays affordable at any eligible N. The
        // exhaustive sum is reachable via --method windowed (windowed vs full).
        auto p = oscsum::validate(o.A, o.B, o.N);
        auto c = oscsum::asymptotics::z_closed(p);
        return {c, oscsum::oracle::sum_z_windowed(p, cfg), "windowed", c.error_bound};
    }
    if (o.method == "windowed") {
        auto p = oscsum::validate(o.A, o.B, o.N);
        auto c = oscsum::oracle::sum_z_windowed(p, cfg);
        return {c, oscsum::oracle::sum_z_full(p, cfg), "full", std::nullopt};
    }
    if (o.method == "ztilde") {
        auto p = oscsum::validate(o.A, o.B, o.N);
        return {oscsum::asymptotics::ztilde_closed(p),
                oscsum::oracle::sum_ztilde(p, cfg), "windowed", std::nullopt};
    }
    if (o.method == "zs") {
        auto p = oscsum::validate(o.A, o.B, o.N);
        auto c = oscsum::asymptotics::zs_closed(p, o.s);
        return {c, oscsum::oracle::sum_zs(p, o.s, cfg), "windowed", c.error_bound};
    }
    if (o.method == "zdouble") {
        auto d = oscsum::validate_double(o.a1, o.a2, o.b1, o.b2, o.b3, o.N);
        return {oscsum::asymptotics::zdouble_closed(d),
                oscsum::oracle::sum_zdouble(d, cfg), "windowed", std::nullopt};
    }
    throw std::invalid_argument("method not comparable: " + o.method);
}

std::string cmd_compare(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_compare(o);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    double diff = std::abs(r.closed.value - r.oracle.value);
    std::string out = "{\n";
    out += "  \"method\": \"" + o.method + "\",\n";
    out += "  \"params\": " + params_block(r.closed, o) + ",\n";
    out += "  \"closed\": " + value_block(r.closed.value) + ",\n";
    out += "  \"oracle\": {\"kind\": \"" + std::string(r.oracle_kind) + "\", "
         + value_block(r.oracle.value).substr(1);
    if (r.oracle.error_bound) {
        out.pop_back();  // drop '}'
        out += ", \"error_bound\": " + num(*r.oracle.error_bound) + "}";
    }
    out += ",\n";
    out += "  \"abs_difference\": " + num(diff) + ",\n";
    out += "  \"difference_times_n\": " + num(diff * o.N) + ",\n";
    if (r.budget)
        out += "  \"error_budget\": " + num(*r.budget) + ",\n";
    out += "  \"wall_time_ms\": " + num(ms) + "\n";
    out += "}\n";
    return out;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> vals;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty entry in --values");
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument("cannot parse value: " + tok);
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("--values is empty");
    return vals;
}

void apply_axis(Options& o, const std::string& axis, double v) {
    if (axis == "A") o.A = v;
    else if (axis == "B") o.B = v;
    else if (axis == "N") o.N = v;
    else if (axis == "q") o.q = v;
    else if (axis == "s") o.s = int(v);
    else if (axis == "widen") o.widen = v;
    else if (axis == "a1") o.a1 = v;
    else if (axis == "a2") o.a2 = v;
    else if (axis == "b1") o.b1 = v;
    else if (axis == "b2") o.b2 = v;
    else if (axis == "b3") o.b3 = v;
    else throw std::invalid_argument("unknown sweep axis: " + axis);
}

std::string cmd_sweep(const Options& o) {
    if (o.axis.empty()) throw std::invalid_argument("sweep requires --axis");
    auto vals = parse_values(o.values);
    { Options probe = o; apply_axis(probe, o.axis, vals[0]); }  // axis name check

    const bool compare = (o.method == "compare");
    std::string header = o.axis + ",re,im,abs,arg,";
    header += compare ? "abs_difference,difference_times_n" : "error_bound";

    std::vector<std::string> rows(vals.size());
    auto make_row = [&](std::size_t i) {
        Options ro = o;
        apply_axis(ro, o.axis, vals[i]);
        std::string line = num(vals[i]);
        if (compare) {
            ro.method = "closed";
            auto r = run_compare(ro);
            double diff = std::abs(r.closed.value - r.oracle.value);
            complex v = r.closed.value;
            line += "," + num(v.real()) + "," + num(v.imag()) + ","
                  + num(std::abs(v)) + "," + num(std::arg(v)) + ","
                  + num(diff) + "," + num(diff * ro.N);
        } else {
            auto ev = run_eval_method(ro);
            complex v = ev.value;
            line += "," + num(v.real()) + "," + num(v.imag()) + ","
                  + num(std::abs(v)) + "," + num(std::arg(v)) + ",";
            if (ev.error_bound) line += num(*ev.error_bound);
        }
        return line;
    };

    unsigned threads = 1;
    if (const char* env = std::getenv("THREADS")) {
        long t = std::strtol(env, nullptr, 10);
        if (t > 1) threads = unsigned(t);
    }
    if (threads <= 1 || vals.size() <= 1) {
        for (std::size_t i = 0; i < vals.size(); ++i) rows[i] = make_row(i);
    } else {
        // Workers claim row indices; assembly below is by index, so the
        // output is byte-identical to the serial order.
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex err_mu;
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= vals.size()) return;
                try {
                    rows[i] = make_row(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(threads, vals.size()); ++t)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::string out = header + "\n";
    for (const auto& r : rows) out += r + "\n";
    return out;
}

std::string cmd_bounds(const Options& o) {
    std::vector<std::string> sections;
    if (o.n_given) {
        double bound = oscsum::bounds::tail_weight_bound(o.N);
        std::string s = "  \"tail\": {\"N\": " + num(o.N)
                      + ", \"tail_weight_bound\": " + num(bound);
        if (oscsum::validate(0.0, 0.0, o.N).oracle_eligible) {
            double exact = oscsum::oracle::tail_weight_exact(o.N, oracle_config(o));
            s += ", \"tail_weight_exact\": " + num(exact);
            s += std::string(", \"exact_within_bound\": ")
               + (exact <= bound ? "true" : "false");
        }
        sections.push_back(s + "}");
    }
    auto bracket_entry = [](double a) {
        auto br = oscsum::bounds::komatsu_tail(a);
        double truth = 2.5066282746310005 * std::erfc(a / std::sqrt(2.0));
        bool contained = br.lower <= truth && truth <= br.upper;
        return "{\"a\": " + num(a) + ", \"lower\": " + num(br.lower)
             + ", \"upper\": " + num(br.upper) + ", \"truth\": " + num(truth)
             + std::string(", \"contained\": ") + (contained ? "true" : "false") + "}";
    };
    if (o.bracket_a) {
        sections.push_back("  \"bracket\": " + bracket_entry(*o.bracket_a));
    }
    if (!o.a_grid.empty()) {
        double lo, hi, step;
        if (std::sscanf(o.a_grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3
            || step <= 0.0 || hi < lo)
            throw std::invalid_argument("--a-grid expects lo:hi:step with step > 0");
        std::string entries;
        bool all = true;
        for (double a = lo; a <= hi + step * 0.5; a += step) {
            if (!entries.empty()) entries += ",\n    ";
            std::string e = bracket_entry(a);
            if (e.find("\"contained\": false") != std::string::npos) all = false;
            entries += e;
        }
        sections.push_back("  \"bracket_grid\": {\"entries\": [\n    " + entries
                           + "\n  ], \"all_contained\": "
                           + (all ? "true" : "false") + "}");
    }
    if (sections.empty())
        throw std::invalid_argument("bounds requires --N, --a, or --a-grid");
    std::string out = "{\n";
    for (std::size_t i = 0; i < sections.size(); ++i)
        out += sections[i] + (i + 1 < sections.size() ? ",\n" : "\n");
    out += "}\n";
    return out;
}

std::string cmd_figure(const Options& o) {
    if (o.figure < 1 || o.figure > 3)
        throw std::invalid_argument("figure id must be 1, 2, or 3");
    std::string out;
    if (o.figure == 1 || o.figure == 2) {
        double N = o.n_given ? o.N : 1e4;
        auto r = oscsum::window(N);
        out = (o.figure == 1) ? "n,poisson,gaussian,corrected_diff_x1e5\n"
                              : "n,d1,d2_x100\n";
        for (std::int64_t n = r.window.n_lo; n <= r.window.n_hi; ++n) {
            double y = double(n);
            double P = oscsum::poisson::log_pmf(y, N).p;
            out += std::to_string(n) + ",";
            if (o.figure == 1) {
                double x = oscsum::scale_index(y, N);
                double cg = oscsum::poisson::corrected_gaussian_density(x, N);
                out += num(P) + "," + num(cg) + "," + num((P - cg) * 1e5);
            } else {
                out += num(P * oscsum::poisson::pmf_d1_ratio(y, N)) + ","
                     + num(100.0 * P * oscsum::poisson::pmf_d2_ratio(y, N));
            }
            out += "\n";
        }
        return out;
    }
    double N = o.n_given ? o.N : 1e3;
    out = "A,B,abs_error\n";
    for (int i = 0; i <= 30; ++i) {
        for (int j = 0; j <= 30; ++j) {
            double A = 0.1 * i, B = 0.1 * j;
            auto p = oscsum::validate(A, B, N);
            double err = std::abs(oscsum::asymptotics::z_closed(p).value
                                  - oscsum::oracle::sum_z_full(p).value);
            out += num(A) + "," + num(B) + "," + num(err) + "\n";
        }
    }
    return out;
}

void emit(const Options& o, const std::string& payload) {
    if (o.out.empty()) {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw IoFailure{"cannot open output file: " + o.out};
    f << payload;
    if (!f.good()) throw IoFailure{"failed writing output file: " + o.out};
}

int fail(int code, const std::string& message) {
    std::fprintf(stderr, "{\"error\": {\"code\": %d, \"message\": \"%s\"}}\n", code,
                 jescape(message).c_str());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Poisson-weighted oscillating sum evaluator"};
    app.add_option("command", o.command, "eval | compare | sweep | bounds | figure")
        ->required()
        ->check(CLI::IsMember({"eval", "compare", "sweep", "bounds", "figure"}));
    auto* m = app.add_option("--method", o.method,
                             "closed | windowed | full | stage | ztilde | zs | "
                             "zdouble | zf (eval); closed | windowed | ztilde | "
                             "zs | zdouble (compare); compare (sweep)");
    auto* fa = app.add_option("--A", o.A, "linear phase coefficient");
    auto* fb = app.add_option("--B", o.B, "quadratic phase coefficient");
    auto* fn = app.add_option("--N", o.N, "Poisson mean (accepts 1e23)");
    auto* fs = app.add_option("--s", o.s, "power weight, 1 or 2");
    auto* f1 = app.add_option("--a1", o.a1, "double-sum linear coefficient 1");
    auto* f2 = app.add_option("--a2", o.a2, "double-sum linear coefficient 2");
    auto* f3 = app.add_option("--b1", o.b1, "double-sum quadratic coefficient 1");
    auto* f4 = app.add_option("--b2", o.b2, "double-sum quadratic coefficient 2");
    auto* f5 = app.add_option("--b3", o.b3, "double-sum cross coefficient");
    auto* fq = app.add_option("--q", o.q, "quadratic coefficient for profile runs");
    auto* fw = app.add_option("--widen", o.widen, "window widening factor");
    auto* fp = app.add_option("--profile", o.profile, "profile JSON file for method zf");
    auto* fx = app.add_option("--axis", o.axis, "sweep parameter name");
    auto* fv = app.add_option("--values", o.values, "comma-separated sweep values");
    auto* ff = app.add_option("--figure", o.figure, "figure id 1|2|3");
    auto* fm = app.add_option("--format", o.format, "json | csv");
    app.add_option("--out", o.out, "write output to file instead of stdout");
    app.add_option("--config", o.config, "JSON config file (flags take precedence)");
    auto* fba = app.add_option("--a", o.bracket_a, "tail bracket threshold");
    auto* fgr = app.add_option("--a-grid", o.a_grid, "bracket grid lo:hi:step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, e.what());
    }

    try {
        if (!o.config.empty()) {
            std::ifstream in(o.config);
            if (!in) throw IoFailure{"cannot open config file: " + o.config};
            nlohmann::json cfg = nlohmann::json::parse(in);
            auto merge_d = [&](CLI::Option* opt, const char* key, double& slot) {
                if (opt->count() == 0 && cfg.contains(key)) slot = cfg[key].get<double>();
            };
            auto merge_s = [&](CLI::Option* opt, const char* key, std::string& slot) {
                if (opt->count() == 0 && cfg.contains(key))
                    slot = cfg[key].get<std::string>();
            };
            merge_s(m, "method", o.method);
            merge_d(fa, "A", o.A);
            merge_d(fb, "B", o.B);
            merge_d(fn, "N", o.N);
            if (fs->count() == 0 && cfg.contains("s")) o.s = cfg["s"].get<int>();
            merge_d(f1, "a1", o.a1);
            merge_d(f2, "a2", o.a2);
            merge_d(f3, "b1", o.b1);
            merge_d(f4, "b2", o.b2);
            merge_d(f5, "b3", o.b3);
            merge_d(fq, "q", o.q);
            merge_d(fw, "widen", o.widen);
            merge_s(fp, "profile", o.profile);
            merge_s(fx, "axis", o.axis);
            merge_s(fv, "values", o.values);
            if (ff->count() == 0 && cfg.contains("figure"))
                o.figure = cfg["figure"].get<int>();
            merge_s(fm, "format", o.format);
            if (fba->count() == 0 && cfg.contains("a"))
                o.bracket_a = cfg["a"].get<double>();
            merge_s(fgr, "a-grid", o.a_grid);
            if (fn->count() == 0 && cfg.contains("N")) o.n_given = true;
        }
        if (fn->count() > 0) o.n_given = true;

        const bool csv_command = (o.command == "sweep" || o.command == "figure");
        if (!o.format.empty()) {
            if (o.format != "json" && o.format != "csv")
                throw std::invalid_argument("--format must be json or csv");
            if (csv_command != (o.format == "csv"))
                throw std::invalid_argument("command " + o.command + " emits "
                                            + (csv_command ? "csv" : "json") + " only");
        }

        std::string payload;
        if (o.command == "eval") payload = cmd_eval(o);
        else if (o.command == "compare") payload = cmd_compare(o);
        else if (o.command == "sweep") payload = cmd_sweep(o);
        else if (o.command == "bounds") payload = cmd_bounds(o);
        else payload = cmd_figure(o);
        emit(o, payload);
        return 0;
    } catch (const IoFailure& e) {
        return fail(4, e.message);
    } catch (const nlohmann::json::exception& e) {
        return fail(2, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, e.what());
    } catch (const std::domain_error& e) {
        return fail(2, e.what());
    } catch (const std::runtime_error& e) {
        return fail(3, e.what());
    } catch (const std::exception& e) {
        return fail(3, e.what());
    }
}
