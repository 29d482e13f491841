// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: one subcommand per experiment, JSON config in,
// CSV/JSON results out.

#include <cstdio>
#include <exception>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "hmimos/experiment.hpp"

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitNumericalError = 2;

struct Cli {
    std::string config_path;
    std::string out_dir;
    bool dump_channel = false;
    int threads = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tri-polarized near-field HMIMOS channel experiments"};
    app.require_subcommand(1);

    Cli cli;
    hmimos::ExperimentKind selected = hmimos::ExperimentKind::CapacitySweep;
    const std::pair<hmimos::ExperimentKind, const char*> kinds[] = {
        {hmimos::ExperimentKind::Feasibility,
         "near-field boundary and patch-size feasibility report"},
        {hmimos::ExperimentKind::CorrelationSweep,
         "spatial correlation vs. antenna count for each pitch"},
        {hmimos::ExperimentKind::EigenSpectrum,
         "eigenvalue spectra of the nine polarization blocks"},
        {hmimos::ExperimentKind::CapacitySweep,
         "capacity vs. SNR for TP/DP/SP and the clustered scheme"},
        {hmimos::ExperimentKind::ClusterDemo,
         "distance-ordered user-to-polarization cluster assignment"},
    };
    for (const auto& [kind, description] : kinds) {
        CLI::App* sub =
            app.add_subcommand(hmimos::experiment_name(kind), description);
        sub->add_option("--config", cli.config_path, "JSON experiment config")
            ->required();
        sub->add_option("--out", cli.out_dir, "output directory (overrides config)");
        sub->add_flag("--dump-channel", cli.dump_channel,
                      "also dump the assembled channel matrix as CSV");
        sub->add_option("--threads", cli.threads,
                        "worker threads for channel assembly (0 = all cores)");
        sub->callback([&cli, &selected, kind] { selected = kind; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        hmimos::ExperimentConfig cfg = hmimos::load_config(cli.config_path);
        hmimos::RunOptions opts;
        opts.out_dir = cli.out_dir;
        opts.dump_channel = cli.dump_channel;
        opts.threads = cli.threads;
        opts.experiment_override = selected;
        hmimos::run(cfg, opts);
    } catch (const hmimos::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericalError;
    }
    return 0;
}
