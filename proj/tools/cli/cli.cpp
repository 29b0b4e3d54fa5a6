#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "tailband/error.hpp"

namespace tailband::cli {

namespace {

constexpr const char* not_replayed[] = {"--threads", "--out-dir", "--seed"};

std::vector<std::string> replay_args(const std::vector<std::string>& args, std::uint64_t seed)
{
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        bool skip = false;
        for (const char* flag : not_replayed) {
            const std::string f(flag);
            if (args[i] == f) {
                skip = true;
                ++i;
                break;
            }
            if (args[i].rfind(f + "=", 0) == 0) {
                skip = true;
                break;
            }
        }
        if (!skip) {
            kept.push_back(args[i]);
        }
    }
    kept.push_back("--seed");
    kept.push_back(std::to_string(seed));
    return kept;
}

std::uint64_t seed_from_env()
{
    const char* env = std::getenv("TAILBAND_SEED");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size(), Errc::InvalidArgument,
            "TAILBAND_SEED is not an unsigned integer");
    return v;
}

struct Common {
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string out_dir = ".";
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--seed", c.seed, "Random seed (falls back to TAILBAND_SEED, then 1)");
    app->add_option("--threads", c.threads, "Worker threads, 0 = all cores; results do not depend on it");
    app->add_option("--out-dir", c.out_dir, "Directory for output files and manifest.json");
}

int replay(const std::filesystem::path& manifest_path, std::string out_dir, std::ostream& out, std::ostream& err)
{
    std::ifstream in(manifest_path);
    require(static_cast<bool>(in), Errc::FileNotFound, "cannot open " + manifest_path.string());
    nlohmann::json m;
    try {
        in >> m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, manifest_path.string() + " is not valid JSON");
    }
    for (const auto& [path, hash] : m.at("inputs").items()) {
        require(sha256_file(path) == hash.get<std::string>(), Errc::InvalidArgument,
                "input " + path + " changed since the recorded run");
    }
    if (out_dir.empty()) {
        out_dir = (manifest_path.parent_path() / "replay").string();
    }
    auto args = m.at("args").get<std::vector<std::string>>();
    args.push_back("--out-dir");
    args.push_back(out_dir);
    const int code = run_cli(args, out, err);
    if (code != 0) {
        return code;
    }
    std::size_t mismatches = 0;
    for (const auto& o : m.at("outputs")) {
        const auto name = o.at("file").get<std::string>();
        const bool same = sha256_file(std::filesystem::path(out_dir) / name) == o.at("sha256").get<std::string>();
        out << (same ? "identical: " : "DIFFERS: ") << name << '\n';
        mismatches += same ? 0 : 1;
    }
    if (mismatches > 0) {
        err << "replay produced " << mismatches << " differing output(s)\n";
        return 1;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Extreme-value QQ and mean-excess plots with confidence bands", "tailband"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("tailband ") + TAILBAND_VERSION);

    Common common;

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Draw a sample and write it in the ingest format");
    s->add_option("--dist", sim.dist, "pareto, gpd, stable or nonstd")->capture_default_str();
    s->add_option("--xi", sim.xi, "Tail index")->capture_default_str();
    s->add_option("--beta", sim.beta, "GPD scale")->capture_default_str();
    s->add_option("--skew", sim.skew, "Stable skewness")->capture_default_str();
    s->add_option("--n", sim.n, "Sample size")->required();
    s->add_option("--name", sim.name, "Output file name inside --out-dir")->capture_default_str();
    add_common(s, common);

    AnalyzeArgs an;
    auto* a = app.add_subcommand("analyze", "Build a plot, optionally with a confidence band");
    a->add_option("input", an.input, "Sample file")->required();
    a->add_option("--format", an.format, "plain or csv")->capture_default_str();
    a->add_option("--column", an.column, "0-based CSV column")->capture_default_str();
    a->add_option("--plot", an.plot, "qq, qq-normalized, me, me-normalized, hill or pickands")
        ->capture_default_str();
    a->add_option("--k", an.k, "Number of upper order statistics (k_max for hill/pickands)")->required();
    a->add_option("--eps", an.eps, "Truncation fraction; required for --band");
    a->add_flag("--band", an.band, "Add a confidence band (qq or me)");
    a->add_option("--alpha", an.alpha, "Band level is 1 - alpha")->capture_default_str();
    a->add_option("--xi", an.xi, "Use this xi instead of an estimate");
    a->add_option("--estimator", an.estimator, "hill or pickands")->capture_default_str();
    a->add_option("--conservative-xi", an.conservative_xi, "Added to the xi estimate")->capture_default_str();
    a->add_option("--svg", an.svg, "SVG file name inside --out-dir");
    a->add_flag("--multi-alpha", an.multi_alpha, "Bands at alpha 0.01, 0.05 and 0.10 in the SVG");
    a->add_option("--paths", an.paths, "Brownian bridge paths for ME quantiles")->capture_default_str();
    a->add_option("--grid", an.grid, "Bridge grid size")->capture_default_str();
    a->add_option("--stilde-method", an.stilde_method, "cf-inversion or monte-carlo")->capture_default_str();
    a->add_option("--stilde-draws", an.stilde_draws, "Draws for monte-carlo S-tilde quantiles")
        ->capture_default_str();
    add_common(a, common);

    CoverageArgs cov;
    auto* c = app.add_subcommand("coverage", "Estimate band coverage of the true limit line");
    c->add_option("--dist", cov.dist, "pareto, gpd, stable or nonstd")->capture_default_str();
    c->add_option("--xi", cov.xi, "Tail index")->capture_default_str();
    c->add_option("--beta", cov.beta, "GPD scale")->capture_default_str();
    c->add_option("--skew", cov.skew, "Stable skewness")->capture_default_str();
    c->add_option("--n", cov.n, "Sample size")->required();
    c->add_option("--k", cov.k, "Number of upper order statistics")->required();
    c->add_option("--eps", cov.eps, "Truncation fraction")->capture_default_str();
    c->add_option("--alpha", cov.alpha, "Band level is 1 - alpha")->capture_default_str();
    c->add_option("--plot", cov.plot, "qq or me")->capture_default_str();
    c->add_option("--reps", cov.reps, "Replications")->capture_default_str();
    c->add_option("--fixed-xi", cov.fixed_xi, "Band width from this xi instead of Hill");
    c->add_option("--conservative-xi", cov.conservative_xi, "Added to the Hill estimate")->capture_default_str();
    c->add_option("--paths", cov.paths, "Brownian bridge paths for ME quantiles")->capture_default_str();
    c->add_option("--grid", cov.grid, "Bridge grid size")->capture_default_str();
    c->add_option("--stilde-method", cov.stilde_method, "cf-inversion or monte-carlo")->capture_default_str();
    c->add_option("--stilde-draws", cov.stilde_draws, "Draws for monte-carlo S-tilde quantiles")
        ->capture_default_str();
    add_common(c, common);

    QuantilesArgs qa;
    auto* q = app.add_subcommand("quantiles", "Quantiles of the limit functionals");
    q->add_option("--functional", qa.functional, "qq-sup, me-c, me-d or stilde")->capture_default_str();
    q->add_option("--level", qa.levels, "Quantile level(s)")->capture_default_str();
    q->add_option("--eps", qa.eps, "Truncation fraction")->capture_default_str();
    q->add_option("--xi", qa.xi, "Tail index")->capture_default_str();
    q->add_option("--method", qa.method, "auto, series, monte-carlo, cf-inversion or both")->capture_default_str();
    q->add_option("--paths", qa.paths, "Brownian bridge paths")->capture_default_str();
    q->add_option("--grid", qa.grid, "Bridge grid size")->capture_default_str();
    q->add_option("--draws", qa.draws, "Monte Carlo draws for stilde")->capture_default_str();
    q->add_option("--cache-dir", qa.cache_dir, "Reuse and store results in this directory");
    add_common(q, common);

    std::string manifest;
    std::string replay_dir;
    auto* r = app.add_subcommand("replay", "Re-run a recorded command and compare its outputs");
    r->add_option("manifest", manifest, "manifest.json of the recorded run")->required();
    r->add_option("--out-dir", replay_dir, "Where to write the replayed outputs (default: <manifest dir>/replay)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "UsageError: " << e.what() << '\n';
        return 2;
    }

    try {
        if (r->parsed()) {
            return replay(manifest, replay_dir, out, err);
        }
        RunContext ctx;
        ctx.seed = common.seed ? *common.seed : seed_from_env();
        ctx.threads = common.threads;
        ctx.out_dir = common.out_dir;
        ctx.replay_args = replay_args(args, ctx.seed);
        ctx.out = &out;
        ctx.err = &err;
        if (s->parsed()) {
            return cmd_simulate(sim, ctx);
        }
        if (a->parsed()) {
            return cmd_analyze(an, ctx);
        }
        if (c->parsed()) {
            return cmd_coverage(cov, ctx);
        }
        return cmd_quantiles(qa, ctx);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace tailband::cli
