#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bdpp/cli.hpp"

namespace {

void add_common_options(CLI::App* sub, bdpp::RunConfig& cfg) {
    sub->add_option("--scenario", cfg.scenario_path, "scenario JSON file")
        ->envname("BDPP_SCENARIO")
        ->required();
    sub->add_option("--horizon", cfg.horizon, "simulation horizon")
        ->envname("BDPP_HORIZON");
    sub->add_option("--dt", cfg.dt, "base integration step")->envname("BDPP_DT");
    sub->add_option("--burn-in", cfg.burn_in_fraction,
                    "burn-in as a fraction of the horizon")
        ->envname("BDPP_BURN_IN");
    sub->add_option("--batches", cfg.batches, "batch-means batch count")
        ->envname("BDPP_BATCHES");
    sub->add_option("--replicas", cfg.replicas, "independent replica count")
        ->envname("BDPP_REPLICAS");
    sub->add_option("--seed", cfg.base_seed, "base RNG seed")->envname("BDPP_SEED");
    sub->add_option("--out", cfg.out_dir, "output directory")->envname("BDPP_OUT");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regime-switching predator-prey extinction/permanence toolkit"};
    app.require_subcommand(1);

    bdpp::RunConfig cfg;

    CLI::App* validate = app.add_subcommand(
        "validate", "check a scenario file and print mu and parameter extremes");
    add_common_options(validate, cfg);

    CLI::App* classify = app.add_subcommand(
        "classify", "estimate thresholds and classify the long-run outcome");
    add_common_options(classify, cfg);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "simulate coupled path bundles and summarize slopes");
    add_common_options(simulate, cfg);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "classify across a grid of values for one parameter");
    add_common_options(sweep, cfg);
    sweep->add_option("--param", cfg.sweep_param,
                      "parameter path: regimes[k].name or generator[i][j] (1-based)")
        ->envname("BDPP_PARAM")
        ->required();
    sweep->add_option("--values", cfg.sweep_values, "comma-separated value grid")
        ->envname("BDPP_VALUES")
        ->required()
        ->delimiter(',');

    CLI::App* moments = app.add_subcommand(
        "moments", "check ensemble moments of phi and psi against their bounds");
    add_common_options(moments, cfg);
    moments->add_option("--p", cfg.moment_p, "moment exponent (> 1)")->envname("BDPP_P");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bdpp::kExitValidation;
    }

    if (app.got_subcommand(validate)) return bdpp::cmd_validate(cfg);
    if (app.got_subcommand(classify)) return bdpp::cmd_classify(cfg);
    if (app.got_subcommand(simulate)) return bdpp::cmd_simulate(cfg);
    if (app.got_subcommand(sweep)) return bdpp::cmd_sweep(cfg);
    if (app.got_subcommand(moments)) return bdpp::cmd_moments(cfg);
    std::cerr << "no subcommand\n";
    return bdpp::kExitValidation;
}
