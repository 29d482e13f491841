// SPDX-License-Identifier: Apache-2.0
#include "hmimos/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

namespace hmimos {

const char* pol_name(Pol p) {
    switch (p) {
        case Pol::X: return "x";
        case Pol::Y: return "y";
        case Pol::Z: return "z";
    }
    return "?";
}

const char* pol_mode_name(PolMode m) {
    switch (m) {
        case PolMode::TP: return "TP";
        case PolMode::DP: return "DP";
        case PolMode::SP: return "SP";
    }
    return "?";
}

PolarizedChannel::PolarizedChannel(Eigen::MatrixXcd m, int n_r, int n_s, int n_pol)
    : m_(std::move(m)), n_r_(n_r), n_s_(n_s), n_pol_(n_pol) {
    if (n_pol_ < 1 || n_pol_ > 3)
        throw std::invalid_argument("PolarizedChannel: n_pol must be 1..3");
    if (m_.rows() != static_cast<Eigen::Index>(n_pol_) * n_r_ ||
        m_.cols() != static_cast<Eigen::Index>(n_pol_) * n_s_)
        throw std::invalid_argument("PolarizedChannel: matrix shape mismatch");
}

Eigen::MatrixXcd PolarizedChannel::block(Pol rx_p, Pol tx_q) const {
    const int p = static_cast<int>(rx_p);
    const int q = static_cast<int>(tx_q);
    if (p >= n_pol_ || q >= n_pol_)
        throw std::invalid_argument("PolarizedChannel::block: polarization not present");
    return m_.block(static_cast<Eigen::Index>(p) * n_r_,
                    static_cast<Eigen::Index>(q) * n_s_, n_r_, n_s_);
}

SurfaceConfiguration SurfaceConfiguration::identity(int n_s) {
    SurfaceConfiguration cfg;
    cfg.patches.resize(static_cast<size_t>(n_s));
    return cfg;
}

void SurfaceConfiguration::validate(int n_s) const {
    if (patches.size() != static_cast<size_t>(n_s))
        throw std::invalid_argument("SurfaceConfiguration: one entry per transmit patch required");
    for (const auto& w : patches)
        for (int q = 0; q < 3; ++q)
            if (!(w.amplitude[q] >= 0.0) || w.amplitude[q] > 1.0)
                throw std::invalid_argument("SurfaceConfiguration: amplitudes must lie in [0, 1]");
}

PatchBlock patch_block(const Vec3& tx_center, const Vec3& rx_center,
                       const SurfaceSpec& tx, const SurfaceSpec& rx,
                       const Wavenumber& k, int tx_index, int rx_index) {
    const Vec3 diff = rx_center - tx_center;
    const double sep = diff.norm();
    if (sep <= 0.0)
        throw std::domain_error("patch_block: coincident patch centers (tx " +
                                std::to_string(tx_index) + ", rx " +
                                std::to_string(rx_index) + ")");

    const DyadicCoeffs c = dyadic_coeffs(k.k0 * sep);
    const Complex g = std::polar(1.0 / (4.0 * std::numbers::pi * sep), k.k0 * sep);
    const double sx = sinc(k.k0 * diff.x() * tx.patch_wx / (2.0 * sep));
    const double sy = sinc(k.k0 * diff.y() * tx.patch_wy / (2.0 * sep));
    const Complex scale = tx.patch_area() * rx.patch_area() * sx * sy * g;
    const Vec3 rhat = diff / sep;

    PatchBlock b;
    b.tx_index = tx_index;
    b.rx_index = rx_index;
    b.separation = sep;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Complex v = c.c2 * (rhat(i) * rhat(j));
            if (i == j) v += c.c1;
            b.h(i, j) = scale * v;
        }
    }
    return b;
}

PolarizedChannel assemble(const SurfaceSpec& tx, const UserLayout& users,
                          const Wavenumber& k, int threads) {
    tx.validate();
    users.validate();
    const int n_s = tx.patch_count();
    const int nbar_r = users.patches_per_user();
    const int n_r = users.total_patches();

    const std::vector<Vec3> tx_centers = patch_centers(tx);
    std::vector<Vec3> rx_centers;
    rx_centers.reserve(static_cast<size_t>(n_r));
    for (const auto& u : users.users) {
        auto c = patch_centers(u);
        rx_centers.insert(rx_centers.end(), c.begin(), c.end());
    }

    Eigen::MatrixXcd m(3 * n_r, 3 * n_s);
    const auto& rx_grid = users.users.front();

    std::exception_ptr worker_error;
    std::mutex error_mutex;
    auto fill_rows = [&](int m_begin, int m_end) {
        try {
            for (int mi = m_begin; mi < m_end; ++mi) {
                for (int ni = 0; ni < n_s; ++ni) {
                    const PatchBlock b = patch_block(tx_centers[ni], rx_centers[mi],
                                                     tx, rx_grid, k, ni, mi);
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q)
                            m(static_cast<Eigen::Index>(p) * n_r + mi,
                              static_cast<Eigen::Index>(q) * n_s + ni) = b.h(p, q);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!worker_error) worker_error = std::current_exception();
        }
    };

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads > n_r) n_threads = n_r;

    if (n_threads == 1) {
        fill_rows(0, n_r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        const int chunk = (n_r + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(n_r, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(fill_rows, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    return PolarizedChannel(std::move(m), n_r, n_s, 3);
}

PolarizedChannel reduce_polarization(const PolarizedChannel& h, PolMode mode) {
    if (h.n_pol() != 3)
        throw std::invalid_argument("reduce_polarization: expects a tri-polarized channel");
    const int n_r = h.n_r();
    const int n_s = h.n_s();
    switch (mode) {
        case PolMode::TP:
            return h;
        case PolMode::DP: {
            Eigen::MatrixXcd m(2 * n_r, 2 * n_s);
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q)
                    m.block(static_cast<Eigen::Index>(p) * n_r,
                            static_cast<Eigen::Index>(q) * n_s, n_r, n_s) =
                        h.block(static_cast<Pol>(p), static_cast<Pol>(q));
            return PolarizedChannel(std::move(m), n_r, n_s, 2);
        }
        case PolMode::SP:
            return PolarizedChannel(h.block(Pol::X, Pol::X), n_r, n_s, 1);
    }
    throw std::invalid_argument("reduce_polarization: unknown mode");
}

PolarizedChannel apply_configuration(const PolarizedChannel& h,
                                     const SurfaceConfiguration& cfg) {
    if (h.n_pol() != 3)
        throw std::invalid_argument("apply_configuration: expects a tri-polarized channel");
    cfg.validate(h.n_s());
    Eigen::MatrixXcd m = h.matrix();
    const int n_s = h.n_s();
    for (int q = 0; q < 3; ++q) {
        for (int n = 0; n < n_s; ++n) {
            const auto& w = cfg.patches[static_cast<size_t>(n)];
            const Complex phi = std::polar(w.amplitude[q], w.phase[q]);
            m.col(static_cast<Eigen::Index>(q) * n_s + n) *= phi;
        }
    }
    return PolarizedChannel(std::move(m), h.n_r(), h.n_s(), 3);
}

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_channel_csv(const PolarizedChannel& h,
                       const std::filesystem::path& csv_path,
                       const std::filesystem::path& meta_path) {
    std::ofstream out(csv_path);
    if (!out)
        throw std::runtime_error("write_channel_csv: cannot open " + csv_path.string());
    out << "row_index,col_index,re,im\n";
    const auto& m = h.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << i << ',' << j << ',' << fmt12(m(i, j).real()) << ','
                << fmt12(m(i, j).imag()) << '\n';

    nlohmann::json meta;
    meta["rows"] = m.rows();
    meta["cols"] = m.cols();
    meta["n_r"] = h.n_r();
    meta["n_s"] = h.n_s();
    meta["n_pol"] = h.n_pol();
    meta["row_layout"] =
        "polarization-major (x,y,z), user-major, patches row-major x-fastest";
    meta["col_layout"] =
        "polarization-major (x,y,z), patches row-major x-fastest";
    std::ofstream meta_out(meta_path);
    if (!meta_out)
        throw std::runtime_error("write_channel_csv: cannot open " + meta_path.string());
    meta_out << meta.dump(2) << '\n';
}

}  // namespace hmimos
