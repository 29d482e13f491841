// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hmimos {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3c = Eigen::Matrix3cd;

/// Free-space wavenumber, k0 = 2*pi/lambda.
struct Wavenumber {
    double k0;
    double lambda;

    static Wavenumber from_lambda(double lambda_m);
};

/// Radial coefficients of the free-space dyadic Green's function.
/// They satisfy the trace identity 3*c1 + c2 = 2 for every separation.
struct DyadicCoeffs {
    Complex c1;
    Complex c2;
};

/// sin(x)/x with the removable singularity at x = 0 handled by a
/// short Maclaurin series.
double sinc(double x);

/// e^{i k0 d} / (4 pi d) with d = |r - r_src|. Throws std::domain_error
/// on coincident points.
Complex scalar_green(const Vec3& r, const Vec3& r_src, const Wavenumber& k);

/// c1 = 1 + i/(k0 R) - 1/(k0 R)^2, c2 = 3/(k0 R)^2 - 3i/(k0 R) - 1.
/// Throws std::domain_error for k0R <= 0.
DyadicCoeffs dyadic_coeffs(double k0R);

/// g(r, r_src) * (c1*I + c2 * rhat rhat^T). The result is symmetric.
Mat3c dyadic_green(const Vec3& r, const Vec3& r_src, const Wavenumber& k);

}  // namespace hmimos
