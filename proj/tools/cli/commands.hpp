#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tailband::cli {

struct RunContext {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::filesystem::path out_dir = ".";
    /// Arguments that reproduce this run, --seed made explicit and
    /// --threads / --out-dir removed.
    std::vector<std::string> replay_args;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
};

struct SimulateArgs {
    std::string dist = "pareto";
    double xi = 0.25;
    double beta = 1.0;
    double skew = 1.0;
    std::size_t n = 0;
    std::string name = "sample.txt";
};

struct AnalyzeArgs {
    std::filesystem::path input;
    std::string format = "plain";
    std::size_t column = 0;
    std::string plot = "qq";
    std::size_t k = 0;
    std::optional<double> eps;
    bool band = false;
    double alpha = 0.05;
    std::optional<double> xi;
    std::string estimator = "hill";
    double conservative_xi = 0.0;
    std::string svg;
    bool multi_alpha = false;
    std::size_t paths = 10000;
    std::size_t grid = 8192;
    std::string stilde_method = "cf-inversion";
    std::size_t stilde_draws = 100000;
};

struct CoverageArgs {
    std::string dist = "pareto";
    double xi = 0.25;
    double beta = 1.0;
    double skew = 1.0;
    std::size_t n = 0;
    std::size_t k = 0;
    double eps = 0.05;
    double alpha = 0.05;
    std::string plot = "qq";
    std::size_t reps = 100;
    double fixed_xi = 0.0;
    double conservative_xi = 0.0;
    std::size_t paths = 10000;
    std::size_t grid = 8192;
    std::string stilde_method = "cf-inversion";
    std::size_t stilde_draws = 100000;
};

struct QuantilesArgs {
    std::string functional = "qq-sup";
    std::vector<double> levels{0.975};
    double eps = 0.05;
    double xi = 0.25;
    std::string method = "auto";
    std::size_t paths = 10000;
    std::size_t grid = 8192;
    std::size_t draws = 100000;
    std::string cache_dir;
};

int cmd_simulate(const SimulateArgs& a, const RunContext& ctx);
int cmd_analyze(const AnalyzeArgs& a, const RunContext& ctx);
int cmd_coverage(const CoverageArgs& a, const RunContext& ctx);
int cmd_quantiles(const QuantilesArgs& a, const RunContext& ctx);

}  // namespace tailband::cli
