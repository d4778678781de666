#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dds/envelope.hpp"
#include "dds/errors.hpp"
#include "dds/series.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string dds_bin() {
    const char* p = std::getenv("DDS_BIN");
    REQUIRE_MESSAGE(p != nullptr, "DDS_BIN must point at the built CLI");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    RunResult res;
    std::string cmd = dds_bin() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("dds_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("envelope JSON round trip") {
    dds::io::ResultEnvelope env;
    env.command = "sum";
    env.params = {{"kernel", "csc"}, {"v", 2.0}, {"s", 3.0}, {"from", 1}, {"to", 10}};
    env.results = {{"value", 3.5387181516747726}, {"tiny", 5.5522241657e-18}};
    env.diagnostics = {{"spikes", json::array({{{"index", 1}, {"magnitude", 1.41}}})}};
    env.tool_version = "1.0.0";
    std::string text = dds::io::json_string(env.to_json());
    auto parsed = dds::io::ResultEnvelope::from_json(json::parse(text));
    CHECK(parsed.to_json() == env.to_json());
    // a second emission is byte-identical
    CHECK(dds::io::json_string(parsed.to_json()) == text);
}

TEST_CASE("17-significant-digit float emission round-trips exactly") {
    for (double v : {30.314510833013896, 5.5522241657299e-18, -2.667641890624223e-7,
                     1.0 / 3.0, 78.1160806386756}) {
        json j = v;
        std::string s = dds::io::json_string(j);
        double back = json::parse(s).get<double>();
        CHECK(back == v);
    }
}

TEST_CASE("config file parsing and layering") {
    TempDir tmp;
    fs::path conf = tmp.path / "dds.conf";
    {
        std::ofstream f(conf);
        f << "# comment line\n";
        f << "format = json\n";
        f << "precision = fast\n";
        f << "cache_dir = " << (tmp.path / "cache").string() << "\n";
    }
    dds::io::RunConfig cfg;
    CHECK(dds::io::apply_config_file(cfg, conf.string()));
    CHECK(cfg.format == dds::io::Format::json);
    CHECK(cfg.precision == dds::io::Precision::fast);
    REQUIRE(cfg.cache_dir.has_value());
    CHECK_FALSE(dds::io::apply_config_file(cfg, (tmp.path / "absent.conf").string()));
    {
        std::ofstream f(conf);
        f << "bogus = 1\n";
    }
    CHECK_THROWS_AS(dds::io::apply_config_file(cfg, conf.string()), dds::ParseError);
}

TEST_CASE("cache store and lookup round trip") {
    TempDir tmp;
    dds::io::ResultEnvelope env;
    env.command = "lambda";
    env.params = {{"sigma", 50}};
    env.results = {{"lambda", 12.5}};
    env.tool_version = "1.0.0";
    std::string key = dds::io::cache_key(env);
    CHECK(key.size() == 16);
    CHECK_FALSE(dds::io::cache_lookup(tmp.path.string(), key).has_value());
    dds::io::cache_store(tmp.path.string(), key, env);
    auto back = dds::io::cache_lookup(tmp.path.string(), key);
    REQUIRE(back.has_value());
    CHECK(back->to_json() == env.to_json());
    // version bump changes the key
    env.tool_version = "1.0.1";
    CHECK(dds::io::cache_key(env) != key);
}

TEST_CASE("cli: single cot term") {
    auto r = run("sum --kernel cot --v 2 --s 3 --from 1 --to 1 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["command"] == "sum");
    CHECK(j["results"]["value"].get<double>() ==
          doctest::Approx(0.41228292743739191).epsilon(1e-14));
}

TEST_CASE("cli: Cookson-Hills partial sum has no pole error") {
    auto r = run("sum --kernel sec --v 2 --s 3 --from 1 --to 1000 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["results"]["value"].get<double>() > 0.0);
}

TEST_CASE("cli: lambda equals the library value") {
    auto r = run("lambda --sigma 3 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["results"]["lambda"].get<double>() ==
          doctest::Approx(dds::series::lambda_elementary(3)).epsilon(1e-13));
    CHECK(j["diagnostics"].contains("path_rel_gap"));
}

TEST_CASE("cli: domain error exits 2 with a machine-readable object") {
    auto r = run("fermi --p 2 --x 1 --format json");
    CHECK(r.exit_code == 2);
    json j = json::parse(r.output);
    CHECK(j["error"]["type"] == "domain");
}

TEST_CASE("cli: pole error exits 3") {
    auto r = run("sum --kernel csc --v 2 --s 3 --phi 1.5707963267948966 --from 1 --to 3");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli: usage errors exit 64") {
    CHECK(run("").exit_code == 64);
    CHECK(run("verify --suite bogus").exit_code == 64);
    CHECK(run("verify --suite \"\"").exit_code == 64);
    CHECK(run("sum --kernel csc").exit_code == 64);  // missing required options
    CHECK(run("sum --kernel tan --from 1 --to 2").exit_code == 64);
    CHECK(run("lambda --sigma 5 --format xml").exit_code == 64);
    CHECK(run("lambda --sigma 5 --precision double").exit_code == 64);
}

TEST_CASE("cli: cache hit returns byte-identical results") {
    TempDir tmp;
    std::string base = "lambda --sigma 40 --format json --cache-dir " + tmp.path.string();
    auto first = run(base);
    CHECK(first.exit_code == 0);
    json j1 = json::parse(first.output);
    CHECK(j1["diagnostics"]["cache_hit"] == false);
    auto second = run(base);
    json j2 = json::parse(second.output);
    CHECK(j2["diagnostics"]["cache_hit"] == true);
    CHECK(dds::io::json_string(j1["results"]) == dds::io::json_string(j2["results"]));
    // --no-cache bypasses the stored entry
    auto third = run(base + " --no-cache");
    json j3 = json::parse(third.output);
    CHECK(j3["diagnostics"]["cache_hit"] == false);
}

TEST_CASE("cli: config file is honored and flags override it") {
    TempDir tmp;
    {
        std::ofstream f(tmp.path / "dds.conf");
        f << "format = json\n";
    }
    std::string cd = "cd " + tmp.path.string() + " && ";
    RunResult conf_run;
    {
        std::string cmd = cd + dds_bin() + " lambda --sigma 2 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe);
        char buf[4096];
        while (size_t got = fread(buf, 1, sizeof buf, pipe))
            conf_run.output.append(buf, got);
        conf_run.exit_code = WEXITSTATUS(pclose(pipe));
    }
    CHECK(conf_run.exit_code == 0);
    CHECK_NOTHROW(json::parse(conf_run.output));  // config switched output to JSON
}

TEST_CASE("cli: --out writes the rendered output to a file") {
    TempDir tmp;
    fs::path out = tmp.path / "result.json";
    auto r = run("lambda --sigma 2 --format json --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream f(out);
    REQUIRE(f.good());
    json j;
    f >> j;
    CHECK(j["command"] == "lambda");
}

TEST_CASE("cli: slope-field CSV grid") {
    auto r = run("slope-field --t-lo 1 --t-hi 10 --steps 10 --format csv");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.output);
    std::string header;
    std::getline(is, header);
    CHECK(header == "lambda_prime,t");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ++rows;
        double lp = std::stod(line.substr(0, line.find(',')));
        CHECK(lp < 0.0);  // psi''' > 0 makes every slope negative
    }
    CHECK(rows == 10);
    auto two = run("slope-field --t-lo 1 --t-hi 2 --steps 2 --format csv");
    int n = 0;
    for (char c : two.output)
        if (c == '\n') ++n;
    CHECK(n == 3);  // header + 2 rows
}

TEST_CASE("cli: slope-field flatness at large t") {
    auto r = run("slope-field --t-lo 10001 --t-hi 10002 --steps 2 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    for (const auto& row : j["results"]["rows"])
        CHECK(std::fabs(row["lambda_prime"].get<double>()) < 1e-10);
}

TEST_CASE("cli: convergents table and history") {
    auto r = run("convergents --count 6 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    REQUIRE(j["results"]["rows"].size() == 6);
    CHECK(j["results"]["rows"][4]["p"] == "103993");
    CHECK(j["results"]["rows"][5]["p"] == "104348");
    CHECK(j["diagnostics"]["mu_history"].size() == 5);
}

TEST_CASE("cli: pi digit file override") {
    TempDir tmp;
    fs::path digits = tmp.path / "two.txt";
    {
        std::ofstream f(digits);
        f << "# an exact rational value\n";
        f << "2." << std::string(70, '0') << "\n";
    }
    auto r = run("convergents --count 3 --pi-digits " + digits.string() + " --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    REQUIRE(j["results"]["rows"].size() == 1);
    CHECK(j["results"]["rows"][0]["p"] == "2");
    CHECK(j["results"]["rows"][0]["exact"] == true);
}

TEST_CASE("cli: spikes command") {
    auto r = run("spikes --n-max 400 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    REQUIRE(j["results"]["rows"].size() == 5);
    CHECK(j["results"]["rows"][4]["index"] == 355);
    CHECK(j["results"]["rows"][4]["is_convergent_numerator"] == true);
    CHECK(j["results"]["rows"][0]["is_convergent_numerator"] == false);
}

TEST_CASE("cli: bounds command inside flag") {
    auto r = run("bounds --sigma 100 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["results"]["inside"] == true);
    CHECK(j["results"]["lower"].get<double>() <= j["results"]["upper"].get<double>());
}

TEST_CASE("cli: holder command, plain and weighted") {
    auto p = run("holder --p 2 --N 100 --format json");
    CHECK(p.exit_code == 0);
    CHECK(json::parse(p.output)["results"]["satisfied"] == true);
    auto w = run("holder --p 2 --N 100 --x -1 --format json");
    CHECK(w.exit_code == 0);
    json jw = json::parse(w.output);
    CHECK(jw["results"]["satisfied"] == true);
    CHECK(jw["params"].contains("x"));
}

TEST_CASE("cli: fermi closed-form diagnostics at x = 0") {
    auto r = run("fermi --p 3 --x 0 --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["diagnostics"]["closed_form_rel_gap"].get<double>() < 1e-14);
}

TEST_CASE("cli: reconstruct with direct comparison") {
    auto r = run("reconstruct --sigma 100 --compare-direct --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["diagnostics"]["reconstruction_rel_gap"].get<double>() < 1e-9);
}

TEST_CASE("cli: elliptic expansion command") {
    auto r = run("elliptic --from 1 --to 100 --chunk 2 --compare-direct --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["results"]["kappa_total"] == 100);
    CHECK(j["diagnostics"]["rel_gap"].get<double>() < 1e-9);
}

TEST_CASE("cli: DDS_CONFIG environment override") {
    TempDir tmp;
    fs::path conf = tmp.path / "alt.conf";
    {
        std::ofstream f(conf);
        f << "format = json\n";
    }
    std::string cmd = "DDS_CONFIG=" + conf.string() + " " + dds_bin() +
                      " lambda --sigma 2 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    json j = json::parse(out);
    CHECK(j["command"] == "lambda");
}

TEST_CASE("cli: DDS_PI_DIGITS environment override") {
    TempDir tmp;
    fs::path digits = tmp.path / "two.txt";
    {
        std::ofstream f(digits);
        f << "2." << std::string(70, '0') << "\n";
    }
    std::string cmd = "DDS_PI_DIGITS=" + digits.string() + " " + dds_bin() +
                      " convergents --count 4 --format json 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    json j = json::parse(out);
    REQUIRE(j["results"]["rows"].size() == 1);
    CHECK(j["results"]["rows"][0]["exact"] == true);
}

TEST_CASE("cli: fast precision mode stays close to extended") {
    auto ext = run("sum --kernel csc --v 2 --s 3 --from 1 --to 500 --format json");
    auto fast = run("sum --kernel csc --v 2 --s 3 --from 1 --to 500 --format json "
                    "--precision fast");
    REQUIRE(ext.exit_code == 0);
    REQUIRE(fast.exit_code == 0);
    double ve = json::parse(ext.output)["results"]["value"].get<double>();
    double vf = json::parse(fast.output)["results"]["value"].get<double>();
    CHECK(std::fabs(ve - vf) / ve < 1e-12);
    CHECK(json::parse(fast.output)["params"]["precision"] == "fast");
}

TEST_CASE("cli: periodic weight reproduces the character series") {
    auto r = run("sum --kernel one --v 0 --s 2 --from 1 --to 1000000 "
                 "--weight-period 1,-1 --format json");
    REQUIRE(r.exit_code == 0);
    double v = json::parse(r.output)["results"]["value"].get<double>();
    CHECK(std::fabs(v - 0.82246703342411321824) < 1e-11);
}

TEST_CASE("cli: verify sub-suites run clean") {
    CHECK(run("verify --suite identities").exit_code == 0);
    CHECK(run("verify --suite golden").exit_code == 0);
    auto j = run("verify --suite golden --format json");
    REQUIRE(j.exit_code == 0);
    json rep = json::parse(j.output);
    CHECK(rep["results"]["failed"] == 0);
    CHECK(rep["results"]["rows"].size() > 5);
}
