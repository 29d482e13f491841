// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "hmimos/channel.hpp"

namespace hmimos {

/// Disjoint user subsets per polarization plus the per-user label.
/// User indices are 0-based; subsets keep cluster (distance) order.
struct ClusterAssignment {
    std::array<std::vector<int>, 3> subsets;
    std::vector<Pol> label;

    int user_count() const { return static_cast<int>(label.size()); }
};

/// Diagonal 0/1 selection precoders over the N_r receive-antenna slots
/// (user-major). Integer entries so the partition of identity is exact.
struct SelectionPrecoders {
    std::array<Eigen::VectorXi, 3> diag;

    int n_r() const { return static_cast<int>(diag[0].size()); }
};

/// Per-cluster co-polarized sub-channels, rows stacked user-by-user in
/// cluster order.
struct ClusterChannels {
    std::array<Eigen::MatrixXcd, 3> h;
};

/// Sort users by distance to the BS (stable, ties by original index) and
/// assign ranks round-robin to x, y, z.
ClusterAssignment cluster_users(const std::vector<double>& distances);

SelectionPrecoders build_precoders(const ClusterAssignment& a, int nbar_r);

ClusterChannels cluster_channels(const PolarizedChannel& h,
                                 const ClusterAssignment& a);

/// y^(p) = sum_q H_pq P_q x_q + n^(p). Stream and noise vectors are
/// length 3*N_r in the channel's polarization-block layout.
Eigen::VectorXcd precoded_output(const PolarizedChannel& h,
                                 const SelectionPrecoders& p,
                                 const Eigen::VectorXcd& x_streams,
                                 const Eigen::VectorXcd& noise);

}  // namespace hmimos
