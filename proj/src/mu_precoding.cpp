// SPDX-License-Identifier: Apache-2.0
#include "hmimos/mu_precoding.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hmimos {

ClusterAssignment cluster_users(const std::vector<double>& distances) {
    if (distances.empty())
        throw std::invalid_argument("cluster_users: at least one user required");
    for (double d : distances)
        if (!(d > 0.0))
            throw std::invalid_argument("cluster_users: distances must be positive");

    std::vector<int> order(distances.size());
    std::iota(order.begin(), order.end(), 0);
    // Stable: equal distances keep original user order.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return distances[static_cast<size_t>(a)] < distances[static_cast<size_t>(b)];
    });

    ClusterAssignment a;
    a.label.resize(distances.size(), Pol::X);
    for (size_t rank = 0; rank < order.size(); ++rank) {
        const Pol p = static_cast<Pol>(rank % 3);
        a.subsets[rank % 3].push_back(order[rank]);
        a.label[static_cast<size_t>(order[rank])] = p;
    }
    return a;
}

SelectionPrecoders build_precoders(const ClusterAssignment& a, int nbar_r) {
    if (nbar_r < 1)
        throw std::invalid_argument("build_precoders: nbar_r must be >= 1");
    const int k = a.user_count();
    const int n_r = k * nbar_r;
    SelectionPrecoders p;
    for (auto& d : p.diag) d = Eigen::VectorXi::Zero(n_r);
    for (int user = 0; user < k; ++user) {
        const int q = static_cast<int>(a.label[static_cast<size_t>(user)]);
        for (int i = 0; i < nbar_r; ++i) p.diag[q](user * nbar_r + i) = 1;
    }
    return p;
}

ClusterChannels cluster_channels(const PolarizedChannel& h,
                                 const ClusterAssignment& a) {
    if (h.n_pol() != 3)
        throw std::invalid_argument("cluster_channels: expects a tri-polarized channel");
    const int k = a.user_count();
    if (k == 0 || h.n_r() % k != 0)
        throw std::invalid_argument("cluster_channels: user count does not divide N_r");
    const int nbar_r = h.n_r() / k;

    ClusterChannels out;
    for (int q = 0; q < 3; ++q) {
        const Eigen::MatrixXcd co = h.block(static_cast<Pol>(q), static_cast<Pol>(q));
        const auto& members = a.subsets[q];
        Eigen::MatrixXcd sub(static_cast<Eigen::Index>(members.size()) * nbar_r,
                             h.n_s());
        for (size_t u = 0; u < members.size(); ++u) {
            if (members[u] < 0 || members[u] >= k)
                throw std::invalid_argument("cluster_channels: user index out of range");
            sub.middleRows(static_cast<Eigen::Index>(u) * nbar_r, nbar_r) =
                co.middleRows(static_cast<Eigen::Index>(members[u]) * nbar_r, nbar_r);
        }
        out.h[q] = std::move(sub);
    }
    return out;
}

Eigen::VectorXcd precoded_output(const PolarizedChannel& h,
                                 const SelectionPrecoders& p,
                                 const Eigen::VectorXcd& x_streams,
                                 const Eigen::VectorXcd& noise) {
    if (h.n_pol() != 3)
        throw std::invalid_argument("precoded_output: expects a tri-polarized channel");
    const int n_r = h.n_r();
    // The precoded relation pairs N_r-long polarization streams with the
    // N_r x N_s blocks, so it needs a square per-block channel.
    if (h.n_s() != n_r)
        throw std::invalid_argument("precoded_output: requires N_s == N_r");
    if (p.n_r() != n_r || x_streams.size() != 3 * n_r || noise.size() != 3 * n_r)
        throw std::invalid_argument("precoded_output: dimension mismatch");

    // Selection precoders only gate entries, so P x is an exact mask.
    Eigen::VectorXcd masked = Eigen::VectorXcd::Zero(3 * n_r);
    for (int q = 0; q < 3; ++q)
        for (int i = 0; i < n_r; ++i)
            if (p.diag[q](i) != 0)
                masked(static_cast<Eigen::Index>(q) * n_r + i) =
                    x_streams(static_cast<Eigen::Index>(q) * n_r + i);

    return h.matrix() * masked + noise;
}

}  // namespace hmimos
