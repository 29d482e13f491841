// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hmimos/em_core.hpp"

namespace hmimos {

/// Zero-separation field correlation k0 / (6 pi).
double reference_correlation(const Wavenumber& k);

/// Imaginary-part dyadic Green's correlation for one polarization axis,
/// with `offset` the coordinate difference along that axis (1/(4 pi)
/// prefactor omitted). Switches to an analytic series for small k0*d
/// where the direct six-term expression cancels catastrophically.
double corr_exact_component(double d, double offset, const Wavenumber& k);

/// Average of the three polarization components over 12 pi for a
/// separation vector between two transmit patches.
double corr_exact_average(const Vec3& separation, const Wavenumber& k);

/// The printed small-separation Taylor form k0/(6 pi) + k0^3 d^2 / (288 pi),
/// implemented verbatim.
double corr_taylor_paper(double d, const Wavenumber& k);

struct CorrSweepRow {
    double spacing_over_lambda = 0.0;
    int n_antennas = 0;
    double distance_m = 0.0;
    double exact_norm = 0.0;         // signed, in [-1, 1]
    double taylor_norm = 0.0;
};

/// First-to-furthest-patch correlation of a 1-D array at each pitch,
/// for N = 2..n_max antennas, normalized by the reference correlation.
/// Spacings are in meters.
std::vector<CorrSweepRow> corr_sweep(const std::vector<double>& spacings,
                                     int n_max, const Wavenumber& k);

}  // namespace hmimos
