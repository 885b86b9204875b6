#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <typeinfo>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "wgof/mc.hpp"
#include "wgof/probe.hpp"
#include "wgof/sample.hpp"

namespace {

using namespace wgof::cli;

std::string error_kind(const std::exception& e)
{
    if (dynamic_cast<const wgof::ProvenanceConflict*>(&e)) {
        return "provenance_conflict";
    }
    if (dynamic_cast<const wgof::ProbeError*>(&e)) {
        return "probe_rejected";
    }
    if (dynamic_cast<const wgof::InvalidSample*>(&e)) {
        return "invalid_sample";
    }
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
        return "invalid_argument";
    }
    return "runtime_error";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted goodness-of-fit statistics: evaluation, critical values, power studies, efficiencies "
                 "and tail probes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", WGOF_VERSION);

    GlobalOptions g;
    for (int i = 0; i < argc; ++i) {
        g.argv.emplace_back(argv[i]);
    }
    if (const char* env = std::getenv("WGOF_CACHE")) {
        g.cache = env;
    }
    app.add_option("--seed", g.seed, "base seed")->capture_default_str();
    app.add_option("--reps-critical", g.reps_critical, "null replicates per critical value")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--reps-power", g.reps_power, "replicates per power estimate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--alpha", g.alpha, "significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app.add_option("--workers", g.workers, "worker threads or 'auto'")->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "directory for CSV outputs and manifests")->capture_default_str();
    app.add_option("--cache", g.cache, "critical-value cache CSV (default $WGOF_CACHE)");

    StatArgs stat;
    auto* c_stat = app.add_subcommand("stat", "evaluate statistics on a data file");
    c_stat->add_option("file", stat.file, "one value per line, '#' starts a comment")->required();
    c_stat->add_option("--null", stat.null, "uniform or gaussian")
        ->capture_default_str()
        ->check(CLI::IsMember({"uniform", "gaussian"}));
    c_stat->add_option("--mu0", stat.mu0, "gaussian null mean")->capture_default_str();
    c_stat->add_option("--sigma0", stat.sigma0, "gaussian null standard deviation")->capture_default_str();
    c_stat->add_option("--spec", stat.specs, "statistic token, repeatable (default: all)");

    CritvalsArgs crit;
    auto* c_crit = app.add_subcommand("critvals", "Monte Carlo critical values");
    c_crit->add_option("--spec", crit.specs, "statistic token, repeatable (default: all)");
    c_crit->add_option("--n", crit.n, "sample size, repeatable")->required()->check(CLI::PositiveNumber);

    PowerArgs pw;
    auto* c_power = app.add_subcommand("power", "empirical power under alternatives");
    c_power->add_option("--model", pw.models, "model such as 'm1 mu=0.15', repeatable")->required();
    c_power->add_option("--n", pw.n, "sample size, repeatable")->required()->check(CLI::PositiveNumber);
    c_power->add_option("--spec", pw.specs, "statistic token, repeatable (default: E^o E* I M K)");

    FiguresArgs fig;
    auto* c_fig = app.add_subcommand("figures", "figure data as long-format CSV");
    c_fig->add_option("which", fig.which, "fig1, fig2 or fig3")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    c_fig->add_option("--steps", fig.steps, "log-spaced n values (fig1, fig2)")->capture_default_str();
    c_fig->add_option("--min-n", fig.min_n, "smallest n (fig1, fig2)")->capture_default_str();
    c_fig->add_option("--max-n", fig.max_n, "largest n (default: first doubling where power(E^o) >= 0.99)");
    c_fig->add_option("--n", fig.fig3_n, "sample size (fig3)")->capture_default_str();
    c_fig->add_option("--p", fig.fig3_p, "mixture weight (fig3)")->capture_default_str();
    c_fig->add_option("--points", fig.points, "parameter grid points (fig3)")->capture_default_str();

    EfficiencyArgs eff;
    auto* c_eff = app.add_subcommand("efficiency", "efficiency report for alternative models");
    c_eff->add_option("--model", eff.models, "model such as 'm2 sigma=0.75' or 'parabola', repeatable")->required();
    c_eff->add_option("--kappa", eff.kappas, "truncation levels for e_GK, repeatable")->capture_default_str();

    ProbeArgs probe;
    auto* c_probe = app.add_subcommand("probe", "moderate-deviation index estimates");
    c_probe->add_option("--spec", probe.specs, "statistic token, repeatable (default: ks)");
    c_probe->add_option("--w", probe.w, "rate rule for w_n, e.g. 1.2*n^-0.25")->required();
    c_probe->add_option("--n", probe.n, "increasing sample sizes, repeatable")->required();
    c_probe->add_option("--reps", probe.reps, "null replicates")->capture_default_str()->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_stat->parsed()) {
            cmd_stat(g, stat);
        } else if (c_crit->parsed()) {
            cmd_critvals(g, crit);
        } else if (c_power->parsed()) {
            cmd_power(g, pw);
        } else if (c_fig->parsed()) {
            cmd_figures(g, fig);
        } else if (c_eff->parsed()) {
            cmd_efficiency(g, eff);
        } else if (c_probe->parsed()) {
            cmd_probe(g, probe);
        }
    } catch (const std::exception& e) {
        const nlohmann::json err{{"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 2;
    }
    return 0;
}
