// SPDX-License-Identifier: Apache-2.0
#include "hmimos/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hmimos/correlation.hpp"
#include "hmimos/metrics.hpp"
#include "hmimos/mu_precoding.hpp"

namespace hmimos {

using nlohmann::json;

const char* experiment_name(ExperimentKind e) {
    switch (e) {
        case ExperimentKind::Feasibility: return "feasibility";
        case ExperimentKind::CorrelationSweep: return "correlation_sweep";
        case ExperimentKind::EigenSpectrum: return "eigen_spectrum";
        case ExperimentKind::CapacitySweep: return "capacity_sweep";
        case ExperimentKind::ClusterDemo: return "cluster_demo";
    }
    return "?";
}

std::optional<ExperimentKind> experiment_from_name(const std::string& name) {
    for (ExperimentKind e :
         {ExperimentKind::Feasibility, ExperimentKind::CorrelationSweep,
          ExperimentKind::EigenSpectrum, ExperimentKind::CapacitySweep,
          ExperimentKind::ClusterDemo})
        if (name == experiment_name(e)) return e;
    return std::nullopt;
}

Wavenumber ExperimentConfig::wavenumber() const {
    return Wavenumber::from_lambda(lambda_m);
}

UserLayout ExperimentConfig::user_layout() const {
    UserLayout layout;
    layout.tx_center = tx.center;
    layout.users.reserve(user_centers.size());
    for (const auto& c : user_centers) {
        SurfaceSpec u = rx_grid;
        u.center = c;
        layout.users.push_back(u);
    }
    return layout;
}

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
    throw ConfigError("config: " + ctx + ": " + msg);
}

void check_keys(const json& obj, const std::string& ctx,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(ctx, "expected an object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            fail(ctx, "unknown field \"" + item.key() + "\"");
}

double get_number(const json& obj, const std::string& ctx, const char* key) {
    if (!obj.contains(key)) fail(ctx, std::string("missing field \"") + key + "\"");
    if (!obj[key].is_number()) fail(ctx, std::string("field \"") + key + "\" must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& ctx, const char* key) {
    if (!obj.contains(key)) fail(ctx, std::string("missing field \"") + key + "\"");
    if (!obj[key].is_number_integer())
        fail(ctx, std::string("field \"") + key + "\" must be an integer");
    return obj[key].get<int>();
}

Vec3 get_vec3(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number())
        fail(ctx, "expected [x, y, z] numbers");
    return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

SurfaceSpec parse_surface(const json& j, const std::string& ctx, bool with_center) {
    std::set<std::string> allowed = {"n_x", "n_y", "pitch_x", "pitch_y",
                                     "patch_wx", "patch_wy"};
    if (with_center) allowed.insert("center");
    check_keys(j, ctx, allowed);
    SurfaceSpec s;
    s.n_x = get_int(j, ctx, "n_x");
    s.n_y = get_int(j, ctx, "n_y");
    s.dx = get_number(j, ctx, "pitch_x");
    s.dy = get_number(j, ctx, "pitch_y");
    s.patch_wx = get_number(j, ctx, "patch_wx");
    s.patch_wy = get_number(j, ctx, "patch_wy");
    if (with_center && j.contains("center")) s.center = get_vec3(j["center"], ctx + ".center");
    try {
        s.validate();
    } catch (const std::exception& e) {
        fail(ctx, e.what());
    }
    return s;
}

std::vector<double> parse_number_array(const json& v, const std::string& ctx) {
    if (!v.is_array()) fail(ctx, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) fail(ctx, "expected an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    const std::string ctx = "root";
    check_keys(j, ctx,
               {"schema", "lambda_m", "experiment", "tx", "rx", "users", "snr_db",
                "polarization_modes", "correlation", "feasibility", "output_dir"});
    if (!j.contains("schema") || !j["schema"].is_number_integer() ||
        j["schema"].get<int>() != 1)
        fail(ctx, "requires \"schema\": 1");

    ExperimentConfig cfg;
    cfg.lambda_m = get_number(j, ctx, "lambda_m");
    if (!(cfg.lambda_m > 0.0)) fail(ctx, "lambda_m must be positive");

    if (!j.contains("experiment") || !j["experiment"].is_string())
        fail(ctx, "missing string field \"experiment\"");
    const auto kind = experiment_from_name(j["experiment"].get<std::string>());
    if (!kind) fail(ctx, "unknown experiment \"" + j["experiment"].get<std::string>() + "\"");
    cfg.experiment = *kind;

    const bool needs_geometry = cfg.experiment != ExperimentKind::CorrelationSweep;
    if (j.contains("tx")) cfg.tx = parse_surface(j["tx"], "tx", true);
    else if (needs_geometry) fail(ctx, "missing field \"tx\"");
    if (j.contains("rx")) cfg.rx_grid = parse_surface(j["rx"], "rx", false);
    else if (needs_geometry) fail(ctx, "missing field \"rx\"");

    if (j.contains("users")) {
        if (!j["users"].is_array() || j["users"].empty())
            fail("users", "expected a non-empty array");
        int i = 0;
        for (const auto& u : j["users"]) {
            const std::string uctx = "users[" + std::to_string(i++) + "]";
            check_keys(u, uctx, {"center"});
            if (!u.contains("center")) fail(uctx, "missing field \"center\"");
            cfg.user_centers.push_back(get_vec3(u["center"], uctx + ".center"));
        }
    } else if (needs_geometry) {
        fail(ctx, "missing field \"users\"");
    }

    if (j.contains("snr_db")) cfg.snr_db = parse_number_array(j["snr_db"], "snr_db");
    else if (cfg.experiment == ExperimentKind::CapacitySweep)
        fail(ctx, "missing field \"snr_db\"");

    if (j.contains("polarization_modes")) {
        if (!j["polarization_modes"].is_array() || j["polarization_modes"].empty())
            fail("polarization_modes", "expected a non-empty array");
        cfg.modes.clear();
        for (const auto& m : j["polarization_modes"]) {
            if (!m.is_string()) fail("polarization_modes", "expected strings");
            const std::string name = m.get<std::string>();
            if (name == "TP") cfg.modes.push_back(PolMode::TP);
            else if (name == "DP") cfg.modes.push_back(PolMode::DP);
            else if (name == "SP") cfg.modes.push_back(PolMode::SP);
            else fail("polarization_modes", "unknown mode \"" + name + "\"");
        }
    }

    if (j.contains("correlation")) {
        const json& c = j["correlation"];
        check_keys(c, "correlation", {"spacings_over_lambda", "n_max"});
        if (c.contains("spacings_over_lambda"))
            cfg.corr_spacings_over_lambda =
                parse_number_array(c["spacings_over_lambda"], "correlation.spacings_over_lambda");
        if (c.contains("n_max")) cfg.corr_n_max = get_int(c, "correlation", "n_max");
        if (cfg.corr_n_max < 2) fail("correlation", "n_max must be >= 2");
        for (double s : cfg.corr_spacings_over_lambda)
            if (!(s > 0.0)) fail("correlation", "spacings must be positive");
    }

    if (j.contains("feasibility")) {
        const json& f = j["feasibility"];
        check_keys(f, "feasibility", {"margin"});
        if (f.contains("margin")) cfg.feasibility_margin = get_number(f, "feasibility", "margin");
        if (!(cfg.feasibility_margin > 0.0) || cfg.feasibility_margin > 1.0)
            fail("feasibility", "margin must be in (0, 1]");
    }

    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) fail(ctx, "output_dir must be a string");
        cfg.output_dir = j["output_dir"].get<std::string>();
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

namespace {

json config_echo(const ExperimentConfig& cfg) {
    json j;
    j["schema"] = 1;
    j["lambda_m"] = cfg.lambda_m;
    j["experiment"] = experiment_name(cfg.experiment);
    auto surface = [](const SurfaceSpec& s, bool with_center) {
        json o{{"n_x", s.n_x},       {"n_y", s.n_y},
               {"pitch_x", s.dx},    {"pitch_y", s.dy},
               {"patch_wx", s.patch_wx}, {"patch_wy", s.patch_wy}};
        if (with_center) o["center"] = {s.center.x(), s.center.y(), s.center.z()};
        return o;
    };
    j["tx"] = surface(cfg.tx, true);
    j["rx"] = surface(cfg.rx_grid, false);
    j["users"] = json::array();
    for (const auto& c : cfg.user_centers)
        j["users"].push_back({{"center", {c.x(), c.y(), c.z()}}});
    j["snr_db"] = cfg.snr_db;
    j["polarization_modes"] = json::array();
    for (PolMode m : cfg.modes) j["polarization_modes"].push_back(pol_mode_name(m));
    j["correlation"] = {{"spacings_over_lambda", cfg.corr_spacings_over_lambda},
                        {"n_max", cfg.corr_n_max}};
    j["feasibility"] = {{"margin", cfg.feasibility_margin}};
    return j;
}

void run_correlation(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                     json& summary) {
    const Wavenumber k = cfg.wavenumber();
    std::vector<double> spacings_m;
    for (double s : cfg.corr_spacings_over_lambda)
        spacings_m.push_back(s * cfg.lambda_m);
    const auto rows = corr_sweep(spacings_m, cfg.corr_n_max, k);

    auto out = open_output(dir / "correlation.csv");
    out << "spacing_over_lambda,n_antennas,distance_m,corr_exact_norm,"
           "corr_taylor_paper_norm\n";
    for (const auto& r : rows)
        out << fmt12(r.spacing_over_lambda) << ',' << r.n_antennas << ','
            << fmt12(r.distance_m) << ',' << fmt12(r.exact_norm) << ','
            << fmt12(r.taylor_norm) << '\n';
    summary["outputs"].push_back("correlation.csv");
    summary["rows"] = rows.size();
    summary["reference_correlation"] = reference_correlation(k);
}

void run_feasibility(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                     json& summary) {
    const Wavenumber k = cfg.wavenumber();
    const UserLayout layout = cfg.user_layout();
    layout.validate();

    json report;
    report["near_field_boundary_m"] = near_field_boundary(cfg.tx, cfg.rx_grid, k);
    report["tx_aperture_m"] = aperture(cfg.tx);
    report["rx_aperture_m"] = aperture(cfg.rx_grid);
    report["margin"] = cfg.feasibility_margin;
    report["rx_patch_not_larger_than_tx"] =
        cfg.rx_grid.patch_wx <= cfg.tx.patch_wx && cfg.rx_grid.patch_wy <= cfg.tx.patch_wy;
    report["users"] = json::array();
    const auto dists = layout.distances();
    for (size_t u = 0; u < dists.size(); ++u) {
        const auto rep = patch_size_feasible(cfg.tx, dists[u], k, cfg.feasibility_margin);
        report["users"].push_back({{"user", u + 1},
                                   {"distance_m", dists[u]},
                                   {"bound_m", rep.bound},
                                   {"ratio_x", rep.ratio_x},
                                   {"ratio_y", rep.ratio_y},
                                   {"feasible", rep.feasible}});
    }
    open_output(dir / "feasibility.json") << report.dump(2) << '\n';
    summary["outputs"].push_back("feasibility.json");
}

void run_eigen(const ExperimentConfig& cfg, const std::filesystem::path& dir,
               json& summary, int threads) {
    const Wavenumber k = cfg.wavenumber();
    const UserLayout layout = cfg.user_layout();
    const PolarizedChannel h = assemble(cfg.tx, layout, k, threads);

    int clamped_total = 0;
    json blocks = json::array();
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            const std::string label = std::string(pol_name(static_cast<Pol>(p))) +
                                      pol_name(static_cast<Pol>(q));
            const Eigen::MatrixXcd block =
                h.block(static_cast<Pol>(p), static_cast<Pol>(q));
            const EigenReport rep = eigen_spectrum(block, label);
            auto out = open_output(dir / ("eigen_" + label + ".csv"));
            out << "rank,eigenvalue\n";
            for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i)
                out << (i + 1) << ',' << fmt12(rep.eigenvalues(i)) << '\n';
            clamped_total += rep.clamped;
            blocks.push_back({{"block", label},
                              {"significant", rep.significant},
                              {"clamped", rep.clamped},
                              {"frobenius_norm", block.norm()}});
            summary["outputs"].push_back("eigen_" + label + ".csv");
        }
    }
    summary["blocks"] = std::move(blocks);
    summary["invariants"]["clamped_eigenvalues"] = clamped_total;
    return;
}

void run_capacity(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                  json& summary, int threads, bool dump_channel) {
    const Wavenumber k = cfg.wavenumber();
    const UserLayout layout = cfg.user_layout();

    // A patch-size warning does not abort the sweep.
    json warnings = json::array();
    const auto dists = layout.distances();
    for (size_t u = 0; u < dists.size(); ++u) {
        const auto rep = patch_size_feasible(cfg.tx, dists[u], k, cfg.feasibility_margin);
        if (!rep.feasible)
            warnings.push_back("patch size exceeds the margin bound for user " +
                               std::to_string(u + 1));
    }

    const PolarizedChannel h = assemble(cfg.tx, layout, k, threads);
    if (dump_channel) {
        write_channel_csv(h, dir / "channel.csv", dir / "channel_meta.json");
        summary["outputs"].push_back("channel.csv");
        summary["outputs"].push_back("channel_meta.json");
    }

    auto out = open_output(dir / "capacity.csv");
    out << "mode,snr_db,capacity_bps_hz\n";
    for (PolMode mode : cfg.modes) {
        const PolarizedChannel reduced = reduce_polarization(h, mode);
        for (double snr_db : cfg.snr_db) {
            const double snr = std::pow(10.0, snr_db / 10.0);
            out << pol_mode_name(mode) << ',' << fmt12(snr_db) << ','
                << fmt12(capacity(reduced.matrix(), snr)) << '\n';
        }
    }

    // Clustered variant: per-polarization co-channel capacities summed.
    const ClusterAssignment assignment = cluster_users(dists);
    const ClusterChannels clusters = cluster_channels(h, assignment);
    for (double snr_db : cfg.snr_db) {
        const double snr = std::pow(10.0, snr_db / 10.0);
        double bits = 0.0;
        for (const auto& sub : clusters.h)
            if (sub.rows() > 0) bits += capacity(sub, snr);
        out << "TP_clustered," << fmt12(snr_db) << ',' << fmt12(bits) << '\n';
    }

    summary["outputs"].push_back("capacity.csv");
    summary["warnings"] = std::move(warnings);
    summary["capacity_formula"] =
        "log2 det(I + snr/N_t * H H^H), equal power per transmit stream";
}

void run_clusters(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                  json& summary) {
    const UserLayout layout = cfg.user_layout();
    layout.validate();
    const auto dists = layout.distances();
    const ClusterAssignment a = cluster_users(dists);

    auto out = open_output(dir / "clusters.csv");
    out << "user,distance_m,polarization\n";
    for (size_t u = 0; u < dists.size(); ++u)
        out << (u + 1) << ',' << fmt12(dists[u]) << ','
            << pol_name(a.label[u]) << '\n';
    summary["outputs"].push_back("clusters.csv");
}

}  // namespace

void run(const ExperimentConfig& config, const RunOptions& opts) {
    ExperimentConfig cfg = config;
    if (opts.experiment_override) cfg.experiment = *opts.experiment_override;
    const std::filesystem::path dir =
        opts.out_dir.empty() ? cfg.output_dir : opts.out_dir;
    std::filesystem::create_directories(dir);

    const auto start = std::chrono::steady_clock::now();
    json summary;
    summary["experiment"] = experiment_name(cfg.experiment);
    summary["config"] = config_echo(cfg);
    summary["outputs"] = json::array();

    switch (cfg.experiment) {
        case ExperimentKind::Feasibility:
            run_feasibility(cfg, dir, summary);
            break;
        case ExperimentKind::CorrelationSweep:
            run_correlation(cfg, dir, summary);
            break;
        case ExperimentKind::EigenSpectrum:
            run_eigen(cfg, dir, summary, opts.threads);
            break;
        case ExperimentKind::CapacitySweep:
            run_capacity(cfg, dir, summary, opts.threads, opts.dump_channel);
            break;
        case ExperimentKind::ClusterDemo:
            run_clusters(cfg, dir, summary);
            break;
    }

    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    summary["wall_time_s"] = elapsed.count();
    summary["outputs"].push_back("run_summary.json");
    open_output(dir / "run_summary.json") << summary.dump(2) << '\n';
}

}  // namespace hmimos
