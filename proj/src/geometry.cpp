// SPDX-License-Identifier: Apache-2.0
#include "hmimos/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hmimos {

void SurfaceSpec::validate() const {
    if (n_x < 1 || n_y < 1)
        throw std::invalid_argument("SurfaceSpec: patch counts must be >= 1");
    if (!(dx > 0.0) || !(dy > 0.0))
        throw std::invalid_argument("SurfaceSpec: pitches must be positive");
    if (!(patch_wx > 0.0) || patch_wx > dx || !(patch_wy > 0.0) || patch_wy > dy)
        throw std::invalid_argument("SurfaceSpec: patch widths must be in (0, pitch]");
    if (!center.allFinite())
        throw std::invalid_argument("SurfaceSpec: center must be finite");
}

int UserLayout::patches_per_user() const {
    return users.empty() ? 0 : users.front().patch_count();
}

int UserLayout::total_patches() const {
    return user_count() * patches_per_user();
}

std::vector<double> UserLayout::distances() const {
    std::vector<double> d;
    d.reserve(users.size());
    for (const auto& u : users) d.push_back((u.center - tx_center).norm());
    return d;
}

void UserLayout::validate() const {
    if (users.empty())
        throw std::invalid_argument("UserLayout: at least one user required");
    const SurfaceSpec& first = users.front();
    for (const auto& u : users) {
        u.validate();
        if (u.n_x != first.n_x || u.n_y != first.n_y || u.dx != first.dx ||
            u.dy != first.dy || u.patch_wx != first.patch_wx ||
            u.patch_wy != first.patch_wy)
            throw std::invalid_argument("UserLayout: user surfaces must share one grid");
    }
}

std::vector<Vec3> patch_centers(const SurfaceSpec& s) {
    s.validate();
    std::vector<Vec3> centers;
    centers.reserve(static_cast<size_t>(s.patch_count()));
    const double x0 = 0.5 * static_cast<double>(s.n_x - 1);
    const double y0 = 0.5 * static_cast<double>(s.n_y - 1);
    for (int iy = 0; iy < s.n_y; ++iy) {
        for (int ix = 0; ix < s.n_x; ++ix) {
            centers.emplace_back(s.center.x() + (ix - x0) * s.dx,
                                 s.center.y() + (iy - y0) * s.dy, s.center.z());
        }
    }
    return centers;
}

double aperture(const SurfaceSpec& s) {
    s.validate();
    return std::hypot(s.n_x * s.dx, s.n_y * s.dy);
}

double near_field_boundary(const SurfaceSpec& tx, const SurfaceSpec& rx,
                           const Wavenumber& k) {
    tx.validate();
    rx.validate();
    if (tx.n_x != tx.n_y || rx.n_x != rx.n_y)
        throw std::invalid_argument(
            "near_field_boundary: only square patch grids are supported");
    const double ns = static_cast<double>(tx.patch_count());
    const double nr = static_cast<double>(rx.patch_count());
    const double ds = tx.dx;
    const double dr = rx.dx;
    return (4.0 * ns * ds * ds + 4.0 * nr * dr * dr +
            8.0 * std::sqrt(ns * nr) * ds * dr) /
           k.lambda;
}

FeasibilityReport patch_size_feasible(const SurfaceSpec& s, double R,
                                      const Wavenumber& k, double margin) {
    s.validate();
    if (!(R > 0.0))
        throw std::domain_error("patch_size_feasible: R must be positive");
    if (!(margin > 0.0) || margin > 1.0)
        throw std::invalid_argument("patch_size_feasible: margin must be in (0, 1]");
    FeasibilityReport rep;
    rep.bound = margin * 2.0 * std::sqrt(k.lambda * R);
    rep.ratio_x = s.patch_wx / rep.bound;
    rep.ratio_y = s.patch_wy / rep.bound;
    rep.feasible = s.patch_wx <= rep.bound && s.patch_wy <= rep.bound;
    return rep;
}

}  // namespace hmimos
