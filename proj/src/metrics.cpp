// SPDX-License-Identifier: Apache-2.0
#include "hmimos/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace hmimos {

EigenReport eigen_spectrum(const Eigen::MatrixXcd& block, std::string label) {
    EigenReport rep;
    rep.label = std::move(label);
    if (block.size() == 0) {
        rep.eigenvalues = Eigen::VectorXd();
        return rep;
    }
    if (!block.allFinite())
        throw std::invalid_argument("eigen_spectrum: non-finite entries");

    const Eigen::MatrixXcd gram = block.adjoint() * block;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen_spectrum: eigendecomposition failed");

    Eigen::VectorXd ev = solver.eigenvalues().reverse();  // descending
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < 0.0) {
            ev(i) = 0.0;
            ++rep.clamped;
        }
    }
    rep.eigenvalues = std::move(ev);
    const double largest = rep.eigenvalues.size() > 0 ? rep.eigenvalues(0) : 0.0;
    if (largest > 0.0)
        rep.significant = static_cast<int>(
            (rep.eigenvalues.array() > 1e-6 * largest).count());
    return rep;
}

double capacity(const Eigen::MatrixXcd& h_eff, double snr_linear) {
    if (!(snr_linear >= 0.0))
        throw std::invalid_argument("capacity: snr must be nonnegative");
    if (h_eff.size() == 0) return 0.0;
    if (!h_eff.allFinite())
        throw std::invalid_argument("capacity: non-finite entries");

    const double n_t = static_cast<double>(h_eff.cols());
    // Work on the smaller Gram matrix; both sides share nonzero spectrum.
    const Eigen::MatrixXcd gram =
        h_eff.rows() <= h_eff.cols()
            ? Eigen::MatrixXcd(h_eff * h_eff.adjoint())
            : Eigen::MatrixXcd(h_eff.adjoint() * h_eff);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("capacity: eigendecomposition failed");

    double bits = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double ev = std::max(solver.eigenvalues()(i), 0.0);
        bits += std::log2(1.0 + snr_linear / n_t * ev);
    }
    return bits;
}

}  // namespace hmimos
