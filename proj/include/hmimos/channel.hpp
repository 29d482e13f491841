// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "hmimos/em_core.hpp"
#include "hmimos/geometry.hpp"

namespace hmimos {

enum class Pol { X = 0, Y = 1, Z = 2 };

enum class PolMode { TP, DP, SP };

const char* pol_name(Pol p);
const char* pol_mode_name(PolMode m);

/// 3x3 channel block between one transmit and one receive patch.
struct PatchBlock {
    Mat3c h;
    int tx_index = 0;
    int rx_index = 0;
    double separation = 0.0;
};

/// Channel matrix in polarization-block layout: row blocks ordered
/// (x, y, z) over receive polarization, column blocks (x, y, z) over
/// transmit polarization. Within a block, receive patches are user-major
/// and patches follow the row-major x-fastest convention of geometry.
/// Immutable after construction.
class PolarizedChannel {
public:
    PolarizedChannel(Eigen::MatrixXcd m, int n_r, int n_s, int n_pol);

    int n_r() const { return n_r_; }
    int n_s() const { return n_s_; }
    int n_pol() const { return n_pol_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    /// Contiguous N_r x N_s polarization block H_pq (receive p, transmit q).
    Eigen::MatrixXcd block(Pol rx_p, Pol tx_q) const;

private:
    Eigen::MatrixXcd m_;
    int n_r_;
    int n_s_;
    int n_pol_;
};

/// Per-patch amplitude/phase weights of the transmit surface, the
/// block-diagonal analog configuration.
struct SurfaceConfiguration {
    struct PatchWeights {
        std::array<double, 3> amplitude{1.0, 1.0, 1.0};  // in [0, 1]
        std::array<double, 3> phase{0.0, 0.0, 0.0};
    };
    std::vector<PatchWeights> patches;

    static SurfaceConfiguration identity(int n_s);
    void validate(int n_s) const;
};

/// Channel block between a transmit and a receive patch center. The sinc
/// factors use the transmitter element widths; the receiver contributes
/// its patch area as a scalar factor.
PatchBlock patch_block(const Vec3& tx_center, const Vec3& rx_center,
                       const SurfaceSpec& tx, const SurfaceSpec& rx,
                       const Wavenumber& k, int tx_index = 0, int rx_index = 0);

/// Assemble the full 3*N_r x 3*N_s tri-polarized channel. Patch blocks
/// are evaluated independently, optionally on `threads` workers; the
/// result does not depend on the thread count.
PolarizedChannel assemble(const SurfaceSpec& tx, const UserLayout& users,
                          const Wavenumber& k, int threads = 1);

/// TP keeps the channel, DP keeps the {x, y} blocks, SP keeps H_xx.
PolarizedChannel reduce_polarization(const PolarizedChannel& h, PolMode mode);

/// Right-multiply by the block-diagonal surface configuration: column
/// (q, n) is scaled by amplitude * e^{i phase} of patch n, polarization q.
PolarizedChannel apply_configuration(const PolarizedChannel& h,
                                     const SurfaceConfiguration& cfg);

/// CSV dump `row_index,col_index,re,im` plus a JSON sidecar with shape
/// and layout metadata.
void write_channel_csv(const PolarizedChannel& h,
                       const std::filesystem::path& csv_path,
                       const std::filesystem::path& meta_path);

}  // namespace hmimos
