// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "hmimos/em_core.hpp"

namespace hmimos {

/// Eigenvalues of the Gram matrix of a channel block, sorted descending.
struct EigenReport {
    std::string label;
    Eigen::VectorXd eigenvalues;
    int significant = 0;  // count above 1e-6 * largest
    int clamped = 0;      // negative numerical eigenvalues clamped to 0
};

EigenReport eigen_spectrum(const Eigen::MatrixXcd& block,
                           std::string label = {});

/// Equal-power log-det capacity log2 det(I + snr/N_t * H H^H) in
/// bits/s/Hz, N_t the column count.
double capacity(const Eigen::MatrixXcd& h_eff, double snr_linear);

}  // namespace hmimos
