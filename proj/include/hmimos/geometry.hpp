// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hmimos/em_core.hpp"

namespace hmimos {

/// Planar grid of rectangular patch antennas, normal along +z.
/// dx/dy are center-to-center pitches; patch_wx/patch_wy are the
/// radiating element widths (width <= pitch).
struct SurfaceSpec {
    int n_x = 1;
    int n_y = 1;
    double dx = 0.0;
    double dy = 0.0;
    double patch_wx = 0.0;
    double patch_wy = 0.0;
    Vec3 center = Vec3::Zero();

    int patch_count() const { return n_x * n_y; }
    double patch_area() const { return patch_wx * patch_wy; }
    void validate() const;
};

/// K identical user surfaces at distinct centers, plus the transmitter
/// center they are measured against.
struct UserLayout {
    Vec3 tx_center = Vec3::Zero();
    std::vector<SurfaceSpec> users;

    int user_count() const { return static_cast<int>(users.size()); }
    int patches_per_user() const;
    int total_patches() const;
    std::vector<double> distances() const;
    void validate() const;
};

/// Patch centers on a regular grid, row-major with x fastest, centered
/// on s.center.
std::vector<Vec3> patch_centers(const SurfaceSpec& s);

/// Diagonal aperture sqrt((n_x*dx)^2 + (n_y*dy)^2).
double aperture(const SurfaceSpec& s);

/// Near-field boundary for a square-grid transmitter/receiver pair,
/// (4 Ns ds^2 + 4 Nr dr^2 + 8 sqrt(Ns Nr) ds dr) / lambda, using the
/// patch pitch as the element length. Throws std::invalid_argument for
/// non-square grids.
double near_field_boundary(const SurfaceSpec& tx, const SurfaceSpec& rx,
                           const Wavenumber& k);

struct FeasibilityReport {
    bool feasible = false;
    double bound = 0.0;  // margin * 2 * sqrt(lambda * R)
    double ratio_x = 0.0;
    double ratio_y = 0.0;
};

/// Patch-size feasibility: widths must satisfy w <= margin * 2*sqrt(lambda*R),
/// inclusive at the boundary. margin in (0, 1], default 0.1.
FeasibilityReport patch_size_feasible(const SurfaceSpec& s, double R,
                                      const Wavenumber& k, double margin = 0.1);

}  // namespace hmimos
