#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "tailband/data.hpp"
#include "tailband/distributions.hpp"
#include "tailband/limitsim.hpp"
#include "test_support.hpp"

using namespace tailband;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name)
{
    const auto d = fs::temp_directory_path() / "tailband_cli_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("analyze writes the QQ plot of a small file")
{
    const auto dir = fresh_dir("small");
    const auto f = tb_test::write_temp("cli_small.txt", "8\n4\n2\n1\n");
    const auto r = run({"analyze", "--plot", "qq", "--k", "2", "--eps", "0.01", f.string(), "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    std::istringstream csv(slurp(dir / "plot.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "x,y");
    std::getline(csv, line);
    CHECK(line == "0,0");
    std::getline(csv, line);
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(0, comma)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(std::stod(line.substr(comma + 1)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(fs::exists(dir / "manifest.json"));
    const auto meta = nlohmann::json::parse(slurp(dir / "analysis.json"));
    CHECK(meta.at("points") == 2);
}

TEST_CASE("domain errors exit with code 2 and one line")
{
    auto r = run({"analyze", "--plot", "qq", "--k", "2", "/nonexistent/file.txt"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("FileNotFound", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    const auto dir = fresh_dir("heavy");
    REQUIRE(run({"simulate", "--dist", "pareto", "--xi", "1.2", "--n", "5000", "--seed", "3", "--out-dir", dir.string()})
                .code == 0);
    r = run({"analyze", "--plot", "me", "--band", "--k", "200", "--eps", "0.1", (dir / "sample.txt").string(),
             "--out-dir", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err == "MeanDoesNotExist: no ME band for xi>=1\n");

    r = run({"analyze", "--k", "notanumber", "x.txt"});
    CHECK(r.code == 2);
    r = run({"quantiles", "--functional", "me-d", "--xi", "0.7"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("RegimeMismatch", 0) == 0);
}

TEST_CASE("simulate is deterministic and respects the support")
{
    const auto a = fresh_dir("sim_a");
    const auto b = fresh_dir("sim_b");
    for (const auto& d : {a, b}) {
        REQUIRE(run({"simulate", "--dist", "pareto", "--xi", "0.25", "--n", "4", "--seed", "1", "--out-dir", d.string()})
                    .code == 0);
    }
    CHECK(slurp(a / "sample.txt") == slurp(b / "sample.txt"));
    CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));

    const auto ns = fresh_dir("sim_ns");
    REQUIRE(run({"simulate", "--dist", "nonstd", "--n", "100", "--out-dir", ns.string()}).code == 0);
    const auto s = ingest(ns / "sample.txt");
    CHECK(s.size() == 100);
    CHECK(s.order_stat(100) >= 1.0);
}

TEST_CASE("simulated stable sample matches the stable characteristic function")
{
    const auto dir = fresh_dir("sim_stable");
    REQUIRE(run({"simulate", "--dist", "stable", "--xi", "0.6667", "--n", "100000", "--seed", "4", "--out-dir",
                 dir.string()})
                .code == 0);
    const auto s = ingest(dir / "sample.txt");
    double worst = 0.0;
    for (double t = -2.0; t <= 2.0; t += 0.1) {
        std::complex<double> ecf = 0.0;
        for (double x : s.values()) {
            ecf += std::exp(std::complex<double>(0.0, t * x));
        }
        ecf /= static_cast<double>(s.size());
        worst = std::max(worst, std::abs(ecf - stable_cf(1.0 / 0.6667, 1.0, t)));
    }
    CHECK(worst <= 0.01);
}

TEST_CASE("TAILBAND_SEED is the seed fallback")
{
    const auto a = fresh_dir("env_a");
    const auto b = fresh_dir("env_b");
    REQUIRE(run({"simulate", "--n", "10", "--seed", "77", "--out-dir", a.string()}).code == 0);
    setenv("TAILBAND_SEED", "77", 1);
    REQUIRE(run({"simulate", "--n", "10", "--out-dir", b.string()}).code == 0);
    unsetenv("TAILBAND_SEED");
    CHECK(slurp(a / "sample.txt") == slurp(b / "sample.txt"));
    const auto m = nlohmann::json::parse(slurp(b / "manifest.json"));
    CHECK(m.at("seed") == 77);
}

TEST_CASE("bands, SVG, replay and thread independence")
{
    const auto data = fresh_dir("band_data");
    REQUIRE(run({"simulate", "--xi", "0.25", "--n", "5000", "--seed", "2", "--out-dir", data.string()}).code == 0);
    const auto sample = (data / "sample.txt").string();

    const auto qq = fresh_dir("band_qq");
    REQUIRE(run({"analyze", "--plot", "qq", "--band", "--k", "500", "--eps", "0.05", "--svg", "qq.svg",
                 "--multi-alpha", sample, "--out-dir", qq.string()})
                .code == 0);
    const std::string band = slurp(qq / "band.csv");
    CHECK(band.rfind("x,y,xlo,xhi,ylo,yhi\n", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(qq / "analysis.json"));
    CHECK(meta.at("band").at("regime") == "qq");
    CHECK(meta.at("multi_alpha").size() == 3);
    const double c = meta.at("band").at("quantiles").at("c").at("value");
    CHECK(c == qq_sup_quantile(0.975, 0.05).value);
    const std::string svg = slurp(qq / "qq.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("#c6dbef") != std::string::npos);
    // No number in the SVG carries more than 9 significant digits.
    CHECK_FALSE(std::regex_search(svg, std::regex("[0-9]{10}")));

    std::vector<std::string> me{"analyze", "--plot", "me", "--band", "--k", "500", "--eps", "0.1", "--svg", "me.svg",
                                "--paths", "2000", "--grid", "2048", sample};
    const auto t1 = fresh_dir("band_me_t1");
    const auto t8 = fresh_dir("band_me_t8");
    auto a1 = me;
    a1.insert(a1.end(), {"--threads", "1", "--out-dir", t1.string()});
    auto a8 = me;
    a8.insert(a8.end(), {"--threads", "8", "--out-dir", t8.string()});
    REQUIRE(run(a1).code == 0);
    REQUIRE(run(a8).code == 0);
    for (const char* f : {"plot.csv", "band.csv", "analysis.json", "me.svg", "manifest.json"}) {
        CAPTURE(f);
        CHECK(slurp(t1 / f) == slurp(t8 / f));
    }

    const auto rp = fresh_dir("band_replay");
    const auto r = run({"replay", (t1 / "manifest.json").string(), "--out-dir", rp.string()});
    CHECK(r.code == 0);
    CHECK(slurp(rp / "band.csv") == slurp(t1 / "band.csv"));
    CHECK(r.out.find("DIFFERS") == std::string::npos);
}

TEST_CASE("coverage report")
{
    const auto a = fresh_dir("cov_a");
    const auto b = fresh_dir("cov_b");
    REQUIRE(run({"coverage", "--n", "2000", "--k", "200", "--reps", "1", "--seed", "5", "--out-dir", a.string()}).code == 0);
    const auto one = nlohmann::json::parse(slurp(a / "coverage.json"));
    CHECK(one.at("replicates").size() == 1);

    REQUIRE(run({"coverage", "--n", "2000", "--k", "200", "--reps", "30", "--seed", "5", "--threads", "8", "--out-dir",
                 a.string()})
                .code == 0);
    REQUIRE(run({"coverage", "--n", "2000", "--k", "200", "--reps", "30", "--seed", "5", "--out-dir", b.string()}).code ==
            0);
    CHECK(slurp(a / "coverage.json") == slurp(b / "coverage.json"));
}

TEST_CASE("quantiles: library identity, cache and cross-method check")
{
    const auto dir = fresh_dir("quant");
    auto r = run({"quantiles", "--functional", "qq-sup", "--eps", "0.05", "--level", "0.975", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(slurp(dir / "quantiles.json"));
    CHECK(j.at("quantiles")[0].at("value").get<double>() == qq_sup_quantile(0.975, 0.05).value);

    const auto cache = fresh_dir("quant_cache");
    const std::vector<std::string> me{"quantiles", "--functional", "me-c", "--xi", "0.3", "--eps", "0.1",
                                      "--paths", "2000", "--grid", "2048", "--cache-dir", cache.string(),
                                      "--out-dir", dir.string()};
    REQUIRE(run(me).code == 0);
    const auto first = nlohmann::json::parse(slurp(dir / "quantiles.json")).at("quantiles")[0];
    CHECK(first.at("cache_hit") == false);
    REQUIRE(run(me).code == 0);
    const auto second = nlohmann::json::parse(slurp(dir / "quantiles.json")).at("quantiles")[0];
    CHECK(second.at("cache_hit") == true);
    CHECK(second.at("value").get<double>() == first.at("value").get<double>());
    CHECK(second.at("std_error").get<double>() == first.at("std_error").get<double>());

    r = run({"quantiles", "--functional", "stilde", "--xi", "0.6667", "--level", "0.975", "--method", "both",
             "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(slurp(dir / "quantiles.json")).at("quantiles");
    REQUIRE(j.size() == 3);
    CHECK(j[2].at("within_3_combined_errors") == true);
}

TEST_CASE("executable exit codes")
{
    const std::string exe = TAILBAND_CLI_EXE;
    CHECK(WEXITSTATUS(std::system((exe + " --version > /dev/null").c_str())) == 0);
    CHECK(WEXITSTATUS(std::system((exe + " analyze --k 2 /nonexistent 2> /dev/null").c_str())) == 2);
    CHECK(WEXITSTATUS(std::system((exe + " > /dev/null 2>&1").c_str())) == 2);
}
