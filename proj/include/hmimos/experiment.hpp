// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmimos/channel.hpp"
#include "hmimos/geometry.hpp"

namespace hmimos {

/// Configuration problems (bad JSON, unknown fields, wrong types).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    Feasibility,
    CorrelationSweep,
    EigenSpectrum,
    CapacitySweep,
    ClusterDemo,
};

const char* experiment_name(ExperimentKind e);
std::optional<ExperimentKind> experiment_from_name(const std::string& name);

struct ExperimentConfig {
    double lambda_m = 1.0;
    ExperimentKind experiment = ExperimentKind::CapacitySweep;
    SurfaceSpec tx;
    SurfaceSpec rx_grid;            // per-user grid; center comes from users
    std::vector<Vec3> user_centers;
    std::vector<double> snr_db;
    std::vector<PolMode> modes{PolMode::TP, PolMode::DP, PolMode::SP};
    std::vector<double> corr_spacings_over_lambda{0.1, 0.2, 0.4};
    int corr_n_max = 50;
    double feasibility_margin = 0.1;
    std::string output_dir = "out";

    Wavenumber wavenumber() const;
    UserLayout user_layout() const;
};

/// Parse and validate a schema-1 JSON config. Unknown fields are
/// rejected. Throws ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const nlohmann::json& j);

struct RunOptions {
    std::string out_dir;  // overrides config output_dir when non-empty
    bool dump_channel = false;
    int threads = 0;      // 0 = hardware concurrency
    std::optional<ExperimentKind> experiment_override;
};

/// Dispatch the configured experiment, writing its CSV/JSON outputs and
/// a run_summary.json into the output directory.
void run(const ExperimentConfig& cfg, const RunOptions& opts = {});

}  // namespace hmimos
