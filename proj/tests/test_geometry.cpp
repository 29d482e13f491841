// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>

#include <doctest.h>

#include "hmimos/geometry.hpp"

using namespace hmimos;

namespace {

SurfaceSpec make_surface(int n, double pitch, double width, Vec3 center = Vec3::Zero()) {
    SurfaceSpec s;
    s.n_x = s.n_y = n;
    s.dx = s.dy = pitch;
    s.patch_wx = s.patch_wy = width;
    s.center = center;
    return s;
}

}  // namespace

TEST_CASE("patch_centers basic layouts") {
    const auto single = patch_centers(make_surface(1, 0.4, 0.4));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == Vec3(0, 0, 0));

    SurfaceSpec pair = make_surface(1, 0.4, 0.4);
    pair.n_x = 2;
    const auto two = patch_centers(pair);
    REQUIRE(two.size() == 2);
    CHECK(two[0].x() == doctest::Approx(-0.2));
    CHECK(two[1].x() == doctest::Approx(0.2));
    CHECK(two[0].y() == 0.0);

    const auto grid = patch_centers(make_surface(15, 0.4, 0.4));
    REQUIRE(grid.size() == 225);
    double min_spacing = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = i + 1; j < grid.size(); ++j)
            min_spacing = std::min(min_spacing, (grid[i] - grid[j]).norm());
    CHECK(min_spacing == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("patch_centers ordering is row-major with x fastest") {
    SurfaceSpec s = make_surface(1, 0.5, 0.5);
    s.n_x = 3;
    s.n_y = 2;
    const auto c = patch_centers(s);
    REQUIRE(c.size() == 6);
    CHECK(c[1].x() > c[0].x());
    CHECK(c[1].y() == c[0].y());
    CHECK(c[3].y() > c[0].y());
    CHECK(c[3].x() == doctest::Approx(c[0].x()));
}

TEST_CASE("patch_centers centroid equals the surface center") {
    SurfaceSpec s = make_surface(7, 0.3, 0.25, Vec3(1.5, -2.0, 3.0));
    s.n_x = 4;
    const auto centers = patch_centers(s);
    Vec3 centroid = Vec3::Zero();
    for (const auto& c : centers) centroid += c;
    centroid /= static_cast<double>(centers.size());
    CHECK((centroid - s.center).norm() < 1e-12);
}

TEST_CASE("aperture") {
    CHECK(aperture(make_surface(1, 0.4, 0.4)) ==
          doctest::Approx(std::sqrt(0.32)).epsilon(1e-14));
    CHECK(aperture(make_surface(15, 0.4, 0.4)) ==
          doctest::Approx(std::sqrt(72.0)).epsilon(1e-14));
    // Square surface: aperture = sqrt(2) * side.
    const SurfaceSpec sq = make_surface(9, 0.25, 0.2);
    CHECK(aperture(sq) == doctest::Approx(std::sqrt(2.0) * 9 * 0.25).epsilon(1e-14));
}

TEST_CASE("near_field_boundary") {
    const Wavenumber k = Wavenumber::from_lambda(1.0);
    const SurfaceSpec big = make_surface(15, 0.4, 0.4);
    CHECK(near_field_boundary(big, big, k) == doctest::Approx(576.0).epsilon(1e-12));

    const SurfaceSpec tiny = make_surface(1, 0.4, 0.4);
    CHECK(near_field_boundary(tiny, tiny, k) == doctest::Approx(2.56).epsilon(1e-12));

    SurfaceSpec rect = make_surface(4, 0.4, 0.4);
    rect.n_y = 3;
    CHECK_THROWS_AS(near_field_boundary(rect, tiny, k), std::invalid_argument);
}

TEST_CASE("near_field_boundary is monotone in counts and pitch") {
    const Wavenumber k = Wavenumber::from_lambda(1.0);
    double prev = 0.0;
    for (int n = 1; n <= 20; ++n) {
        const double b = near_field_boundary(make_surface(n, 0.4, 0.4),
                                             make_surface(3, 0.4, 0.4), k);
        CHECK(b >= prev);
        prev = b;
    }
    prev = 0.0;
    for (double pitch = 0.1; pitch <= 1.0; pitch += 0.1) {
        const double b = near_field_boundary(make_surface(5, pitch, pitch / 2),
                                             make_surface(5, pitch, pitch / 2), k);
        CHECK(b >= prev);
        prev = b;
    }
}

TEST_CASE("patch_size_feasible") {
    const Wavenumber k = Wavenumber::from_lambda(1.0);

    const auto fig4 = patch_size_feasible(make_surface(15, 0.4, 0.4), 1.0, k, 0.1);
    CHECK(fig4.bound == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_FALSE(fig4.feasible);
    CHECK(fig4.ratio_x == doctest::Approx(2.0).epsilon(1e-12));

    const auto small = patch_size_feasible(make_surface(3, 0.02, 0.01), 10.0, k, 0.1);
    CHECK(small.bound == doctest::Approx(0.2 * std::sqrt(10.0)).epsilon(1e-12));
    CHECK(small.feasible);

    // Boundary inclusive at margin 1.
    const double w = 2.0 * std::sqrt(1.0 * 1.0);
    const auto boundary = patch_size_feasible(make_surface(1, w, w), 1.0, k, 1.0);
    CHECK(boundary.feasible);

    CHECK_THROWS_AS(patch_size_feasible(make_surface(1, 0.4, 0.4), 0.0, k, 0.1),
                    std::domain_error);
    CHECK_THROWS_AS(patch_size_feasible(make_surface(1, 0.4, 0.4), 1.0, k, 0.0),
                    std::invalid_argument);
}

TEST_CASE("patch_size_feasible is monotone in patch width") {
    const Wavenumber k = Wavenumber::from_lambda(1.0);
    bool prev_feasible = true;
    for (double w = 0.01; w <= 0.4; w += 0.01) {
        const auto rep = patch_size_feasible(make_surface(5, 0.4, w), 1.0, k, 0.1);
        if (!prev_feasible) CHECK_FALSE(rep.feasible);  // shrinking never flips back
        prev_feasible = rep.feasible;
    }
}

TEST_CASE("SurfaceSpec and UserLayout validation") {
    SurfaceSpec bad = make_surface(3, 0.4, 0.5);  // width > pitch
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = make_surface(0, 0.4, 0.4);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    UserLayout layout;
    CHECK_THROWS_AS(layout.validate(), std::invalid_argument);
    layout.users.push_back(make_surface(3, 0.4, 0.4, Vec3(0, 0, 1)));
    layout.users.push_back(make_surface(3, 0.4, 0.4, Vec3(0, 0, 2)));
    layout.validate();
    CHECK(layout.patches_per_user() == 9);
    CHECK(layout.total_patches() == 18);
    const auto d = layout.distances();
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(2.0));

    layout.users.push_back(make_surface(4, 0.4, 0.4, Vec3(0, 0, 3)));
    CHECK_THROWS_AS(layout.validate(), std::invalid_argument);
}
