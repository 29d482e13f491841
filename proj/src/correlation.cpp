// SPDX-License-Identifier: Apache-2.0
#include "hmimos/correlation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmimos {

namespace {

constexpr double kSeriesThreshold = 1e-2;  // on k0*d

}  // namespace

double reference_correlation(const Wavenumber& k) {
    return k.k0 / (6.0 * std::numbers::pi);
}

double corr_exact_component(double d, double offset, const Wavenumber& k) {
    if (!(d > 0.0))
        throw std::domain_error("corr_exact_component: separation must be positive");
    if (std::abs(offset) > d * (1.0 + 1e-12))
        throw std::domain_error("corr_exact_component: |offset| must not exceed d");

    const double x = k.k0 * d;
    const double u2 = (offset / d) * (offset / d);

    if (x < kSeriesThreshold) {
        // The six-term expression cancels catastrophically here (1/d^3
        // terms with an O(d^3) sum); use the analytic series instead.
        const double x2 = x * x;
        const double x4 = x2 * x2;
        const double iso = 2.0 / 3.0 - 2.0 / 15.0 * x2 + x4 / 140.0;
        const double rad = x2 / 15.0 - x4 / 210.0;
        return k.k0 * (iso + u2 * rad);
    }

    const double s = std::sin(x);
    const double c = std::cos(x);
    const double o2 = offset * offset;
    const double d2 = d * d;
    const double d3 = d2 * d;
    const double d4 = d2 * d2;
    const double d5 = d4 * d;
    return s / d + c / (k.k0 * d2) - s / (k.k0 * k.k0 * d3) +
           3.0 * o2 * s / (k.k0 * k.k0 * d5) - 3.0 * o2 * c / (k.k0 * d4) -
           o2 * s / d3;
}

double corr_exact_average(const Vec3& separation, const Wavenumber& k) {
    const double d = separation.norm();
    double sum = 0.0;
    for (int axis = 0; axis < 3; ++axis)
        sum += corr_exact_component(d, separation(axis), k);
    return sum / (12.0 * std::numbers::pi);
}

double corr_taylor_paper(double d, const Wavenumber& k) {
    if (d < 0.0)
        throw std::domain_error("corr_taylor_paper: separation must be nonnegative");
    return k.k0 / (6.0 * std::numbers::pi) +
           k.k0 * k.k0 * k.k0 * d * d / (288.0 * std::numbers::pi);
}

std::vector<CorrSweepRow> corr_sweep(const std::vector<double>& spacings,
                                     int n_max, const Wavenumber& k) {
    if (n_max < 2)
        throw std::invalid_argument("corr_sweep: n_max must be >= 2");
    for (double s : spacings)
        if (!(s > 0.0))
            throw std::invalid_argument("corr_sweep: spacings must be positive");

    const double ref = reference_correlation(k);
    std::vector<CorrSweepRow> rows;
    rows.reserve(spacings.size() * static_cast<size_t>(n_max - 1));
    for (double spacing : spacings) {
        for (int n = 2; n <= n_max; ++n) {
            const double d = spacing * (n - 1);
            CorrSweepRow row;
            row.spacing_over_lambda = spacing / k.lambda;
            row.n_antennas = n;
            row.distance_m = d;
            row.exact_norm = corr_exact_average(Vec3(d, 0.0, 0.0), k) / ref;
            row.taylor_norm = corr_taylor_paper(d, k) / ref;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace hmimos
