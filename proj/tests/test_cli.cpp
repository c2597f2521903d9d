// End-to-end tests for the command-line tool. The binary path comes from the
// OSCSUM_CLI environment variable (set by the build); every test spawns a
// fresh process and inspects its output and exit code.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

using nlohmann::json;

std::string cli_path() {
    const char* p = std::getenv("OSCSUM_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    std::string errfile = "/tmp/oscsum_cli_err_" + std::to_string(getpid()) + ".txt";
    std::string cmd = env_prefix + "\"" + cli_path() + "\" " + args + " 2>" + errfile;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = out;
    r.err = slurp(errfile);
    std::remove(errfile.c_str());
    return r;
}

int line_count(const std::string& s) {
    int c = 0;
    for (char ch : s)
        if (ch == '\n') ++c;
    return c;
}

} // namespace

TEST_CASE("eval closed form at the origin") {
    auto r = run("eval --method closed --A 0 --B 0 --N 1e6");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["method"] == "closed");
    CHECK(j["value"]["re"].get<double>() == 1.0);
    CHECK(j["value"]["im"].get<double>() == 0.0);
    CHECK(j["params"]["N"].get<double>() == 1e6);
    CHECK(j.contains("error_bound"));
    CHECK(j.contains("wall_time_ms"));
}

TEST_CASE("eval closed form at extreme scale") {
    auto r = run("eval --method closed --A 0.5 --B 0.3 --N 1e23");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    double abs = j["value"]["abs"].get<double>();
    CHECK(std::isfinite(abs));
    CHECK(abs <= 1.0 + 1e-6);
    CHECK_FALSE(j.contains("error_bound"));
}

TEST_CASE("exit codes") {
    CHECK(run("eval --method full --A 0.5 --B 0.3 --N 1e9").exit_code == 2);
    CHECK(run("eval --method closed --A 1e308 --B 0 --N 1e4").exit_code == 3);
    CHECK(run("eval --method nope --N 1e4").exit_code == 2);
    CHECK(run("figure --figure 7").exit_code == 2);
    CHECK(run("sweep --values 1,2").exit_code == 2);
    CHECK(run("sweep --axis junk --values 1,2").exit_code == 2);
    CHECK(run("bounds").exit_code == 2);
    CHECK(run("eval --method zf --profile /does/not/exist.json --q 0.2 --N 1e4")
              .exit_code == 4);
    CHECK(run("eval --method closed --N 50 --out /does/not/exist/out.json")
              .exit_code == 4);
    CHECK(run("nonsense").exit_code == 2);

    auto r = run("eval --method full --A 0.5 --B 0.3 --N 1e9");
    json e = json::parse(r.err);
    CHECK(e["error"]["code"].get<int>() == 2);
    CHECK_FALSE(e["error"]["message"].get<std::string>().empty());
}

TEST_CASE("malformed profile file is a validation error") {
    std::string path = "/tmp/oscsum_cli_badprofile.json";
    { std::ofstream f(path); f << "this is not json {{{"; }
    CHECK(run("eval --method zf --profile " + path + " --q 0.2 --N 1e4").exit_code == 2);
    { std::ofstream f(path); f << "{\"p_min\": 0, \"p_max\": 1}"; }
    CHECK(run("eval --method zf --profile " + path + " --q 0.2 --N 1e4").exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("zf evaluation from a profile file") {
    std::string path = "/tmp/oscsum_cli_box.json";
    {
        std::ofstream f(path);
        f << "{\"p_min\": -0.5, \"p_max\": 0.5, \"step\": 0.1, \"values\": [";
        for (int i = 0; i <= 10; ++i) f << (i ? "," : "") << "[1.0, 0.0]";
        f << "]}";
    }
    auto r = run("eval --method zf --profile " + path + " --q 0.2 --N 1e4");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["params"]["samples"].get<int>() == 11);
    CHECK(j["value"]["abs"].get<double>() > 0.0);
    CHECK(j.contains("error_bound"));
    std::remove(path.c_str());
}

TEST_CASE("repeat runs are identical apart from wall time") {
    auto strip = [](const std::string& text) {
        json j = json::parse(text);
        j.erase("wall_time_ms");
        return j.dump();
    };
    auto r1 = run("eval --method windowed --A 0.7 --B 0.2 --N 1e4");
    auto r2 = run("eval --method windowed --A 0.7 --B 0.2 --N 1e4");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(strip(r1.out) == strip(r2.out));
}

TEST_CASE("parallel sweep output is byte-identical to serial") {
    std::string args = "sweep --axis N --values 1e3,2e3,5e3,1e4,2e4,5e4 "
                       "--A 0.5 --B 0.3 --method compare";
    auto serial = run(args, "THREADS=1 ");
    auto parallel = run(args, "THREADS=4 ");
    REQUIRE(serial.exit_code == 0);
    REQUIRE(parallel.exit_code == 0);
    CHECK(serial.out == parallel.out);
    CHECK(line_count(serial.out) == 7);
}

TEST_CASE("sweep over an eval method") {
    auto r = run("sweep --axis A --values 0,0.1,0.2,0.3 --B 0.3 --N 1e3 "
                 "--method windowed");
    REQUIRE(r.exit_code == 0);
    CHECK(line_count(r.out) == 5);
    CHECK(r.out.rfind("A,re,im,abs,arg,error_bound\n", 0) == 0);
}

TEST_CASE("config file fills defaults and flags win") {
    std::string path = "/tmp/oscsum_cli_cfg.json";
    { std::ofstream f(path); f << "{\"A\": 0.5, \"B\": 0.3, \"N\": 1e4}"; }
    auto base = run("eval --method closed --config " + path);
    REQUIRE(base.exit_code == 0);
    json jb = json::parse(base.out);
    CHECK(jb["params"]["A"].get<double>() == 0.5);
    CHECK(jb["params"]["N"].get<double>() == 1e4);

    auto override_run = run("eval --method closed --config " + path + " --A 1.0");
    REQUIRE(override_run.exit_code == 0);
    json jo = json::parse(override_run.out);
    CHECK(jo["params"]["A"].get<double>() == 1.0);
    CHECK(jo["params"]["B"].get<double>() == 0.3);

    CHECK(run("eval --config /missing/cfg.json").exit_code == 4);
    { std::ofstream f(path); f << "{broken"; }
    CHECK(run("eval --config " + path).exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("figure row counts") {
    auto f1 = run("figure --figure 1");
    REQUIRE(f1.exit_code == 0);
    CHECK(line_count(f1.out) == 860);
    CHECK(f1.out.rfind("n,poisson,gaussian,corrected_diff_x1e5\n", 0) == 0);

    auto f2 = run("figure --figure 2");
    REQUIRE(f2.exit_code == 0);
    CHECK(line_count(f2.out) == 860);
    CHECK(f2.out.rfind("n,d1,d2_x100\n", 0) == 0);

    auto f3 = run("figure --figure 3");
    REQUIRE(f3.exit_code == 0);
    CHECK(line_count(f3.out) == 962);
    CHECK(f3.out.rfind("A,B,abs_error\n", 0) == 0);
}

TEST_CASE("output file matches standard output") {
    std::string path = "/tmp/oscsum_cli_fig2.csv";
    auto direct = run("figure --figure 2");
    auto filed = run("figure --figure 2 --out " + path);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(path) == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("bounds report") {
    auto r = run("bounds --N 1e4 --a 0");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["tail"]["tail_weight_exact"].get<double>() == Catch::Approx(1.76e-5).epsilon(0.01));
    CHECK(j["tail"]["exact_within_bound"].get<bool>());
    CHECK(j["bracket"]["lower"].get<double>() == 2.0);
    CHECK(j["bracket"]["upper"].get<double>()
          == Catch::Approx(2.8284271247461901).epsilon(1e-15));
    CHECK(j["bracket"]["truth"].get<double>()
          == Catch::Approx(2.5066282746310005).epsilon(1e-14));
    CHECK(j["bracket"]["contained"].get<bool>());

    auto g = run("bounds --a-grid 0:8:0.25");
    REQUIRE(g.exit_code == 0);
    json jg = json::parse(g.out);
    CHECK(jg["bracket_grid"]["entries"].size() == 33);
    CHECK(jg["bracket_grid"]["all_contained"].get<bool>());
}

TEST_CASE("compare origin difference is at tail scale") {
    auto r = run("compare --A 0 --B 0 --N 1e4");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["oracle"]["kind"] == "windowed");
    double d = j["abs_difference"].get<double>();
    CHECK(d > 1e-5);
    CHECK(d < 3e-5);
    CHECK(j["difference_times_n"].get<double>() == Catch::Approx(d * 1e4));
    CHECK(j.contains("error_budget"));
}

TEST_CASE("format must match the command") {
    CHECK(run("eval --method closed --N 100 --format json").exit_code == 0);
    CHECK(run("eval --method closed --N 100 --format csv").exit_code == 2);
    CHECK(run("figure --figure 2 --format json").exit_code == 2);
    CHECK(run("figure --figure 2 --format csv").exit_code == 0);
    CHECK(run("eval --method closed --N 100 --format yaml").exit_code == 2);
}

TEST_CASE("profile regime warning goes to standard error") {
    std::string path = "/tmp/oscsum_cli_wide.json";
    {
        std::ofstream f(path);
        f << "{\"p_min\": -5, \"p_max\": 5, \"step\": 1, \"values\": [";
        for (int i = 0; i <= 10; ++i) f << (i ? "," : "") << "[1.0, 0.0]";
        f << "]}";
    }
    auto r = run("eval --method zf --profile " + path + " --q 3 --N 100");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    std::remove(path.c_str());
}
