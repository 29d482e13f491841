// SPDX-License-Identifier: Apache-2.0
#include "hmimos/em_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmimos {

Wavenumber Wavenumber::from_lambda(double lambda_m) {
    if (!std::isfinite(lambda_m) || lambda_m <= 0.0)
        throw std::invalid_argument("Wavenumber: lambda must be positive and finite");
    return {2.0 * std::numbers::pi / lambda_m, lambda_m};
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        // Maclaurin series; the direct quotient loses precision near zero.
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

Complex scalar_green(const Vec3& r, const Vec3& r_src, const Wavenumber& k) {
    const double d = (r - r_src).norm();
    if (d <= 0.0)
        throw std::domain_error("scalar_green: coincident source and field points");
    return std::polar(1.0 / (4.0 * std::numbers::pi * d), k.k0 * d);
}

DyadicCoeffs dyadic_coeffs(double k0R) {
    if (!(k0R > 0.0) || !std::isfinite(k0R))
        throw std::domain_error("dyadic_coeffs: k0R must be positive");
    const double inv = 1.0 / k0R;
    const Complex c1(1.0 - inv * inv, inv);
    // Same as 3/(k0R)^2 - 3i/(k0R) - 1; this form keeps the trace
    // identity 3*c1 + c2 = 2 exact in floating point.
    const Complex c2 = 2.0 - 3.0 * c1;
    return {c1, c2};
}

Mat3c dyadic_green(const Vec3& r, const Vec3& r_src, const Wavenumber& k) {
    const Vec3 diff = r - r_src;
    const double d = diff.norm();
    if (d <= 0.0)
        throw std::domain_error("dyadic_green: coincident source and field points");
    const Complex g = scalar_green(r, r_src, k);
    const DyadicCoeffs c = dyadic_coeffs(k.k0 * d);
    const Vec3 rhat = diff / d;

    Mat3c out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Complex v = c.c2 * (rhat(i) * rhat(j));
            if (i == j) v += c.c1;
            out(i, j) = g * v;
        }
    }
    return out;
}

}  // namespace hmimos
