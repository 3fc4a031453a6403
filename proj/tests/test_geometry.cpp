#include <cmath>

#include "doctest.h"
#include "drisim/geometry.hpp"

using namespace drisim;

namespace {

PanelSpec flat_panel(int n_x, int n_y, double spacing) {
    return make_centered_panel({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, n_x, n_y, spacing);
}

}  // namespace

TEST_CASE("element positions follow the x-major grid layout") {
    PanelSpec p;
    p.n_x = 2;
    p.n_y = 3;
    p.spacing_m = 1.0;
    p.element_dx_m = p.element_dy_m = 1.0;
    p.anchor_m = {0, 0, 0};

    ElementGrid grid = element_positions(p);
    CHECK(grid.count() == 6);
    CHECK(grid.index(1, 2) == 5);
    Vec3 last = grid.positions[grid.index(1, 2)];
    CHECK(last.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(last.y == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(last.z == 0.0);
    Vec3 second = grid.positions[1];  // (ix, iy) = (0, 1)
    CHECK(second.x == 0.0);
    CHECK(second.y == doctest::Approx(1.0).epsilon(1e-15));

    // Tilted basis moves elements along it.
    p.basis_x = {0, 0, 1};
    p.basis_y = {1, 0, 0};
    grid = element_positions(p);
    Vec3 v = grid.positions[grid.index(1, 0)];
    CHECK(v.z == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("terminal distances of a centered 2x2 panel") {
    Scenario scn = default_scenario();
    scn.ris_u = flat_panel(2, 2, 0.012491352416666667);
    scn.su_position_m = {0, 0, 1};

    LinkGeometry geom = pairwise_distances(scn);
    REQUIRE(geom.su_to_ris_u_m.size() == 4);
    for (double d : geom.su_to_ris_u_m) {
        CHECK(d == doctest::Approx(1.0000390077104986).epsilon(1e-12));
    }
    CHECK(geom.d_u_m == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geom.d_h_m == doctest::Approx(1.2e6).epsilon(1e-12));
    CHECK(geom.d_s_m == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geom.direct_m == doctest::Approx(1199998.0).epsilon(1e-12));

    // Element-pair distance on demand: opposite corners of the two panels.
    double across = geom.middle_m(0, 0);
    CHECK(across >= geom.d_h_m - 1.0);
    CHECK(across == doctest::Approx(norm(geom.grid_s.positions[0] - geom.grid_u.positions[0]))
                        .epsilon(1e-15));
}

TEST_CASE("local angles in the panel frame") {
    PanelSpec p = flat_panel(2, 2, 0.0125);

    LocalAngles on_axis = local_angles({0, 0, 5}, p);
    CHECK(on_axis.theta == doctest::Approx(0.0).epsilon(1e-15));

    LocalAngles diag = local_angles({1, 0, 1}, p);
    CHECK(diag.theta == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(diag.phi == doctest::Approx(0.0).epsilon(1e-12));

    LocalAngles quad = local_angles({0, -1, 1}, p);
    CHECK(quad.phi == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-12));

    // Reference overload measures from an arbitrary point.
    LocalAngles shifted = local_angles({3, 0, 4}, p, {3, 0, 0});
    CHECK(shifted.theta == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(local_angles({0, 0, 0}, p), ValidationError);  // zero-length direction
}

TEST_CASE("rayleigh distance grows with the element-center diagonal") {
    const double lam = 0.024982704833333334;
    const double pitch = lam / 2.0;

    // 20x20 at half-wavelength pitch: D = 19 * pitch * sqrt(2).
    CHECK(rayleigh_distance(flat_panel(20, 20, pitch), lam) ==
          doctest::Approx(9.018756444833336).epsilon(1e-12));
    // 4x4: D = 3 * pitch * sqrt(2), boundary at 9 * lambda.
    CHECK(rayleigh_distance(flat_panel(4, 4, pitch), lam) ==
          doctest::Approx(0.2248443435).epsilon(1e-10));
    // Single element has no extent.
    CHECK(rayleigh_distance(flat_panel(1, 1, pitch), lam) == 0.0);
    // Row panel: diagonal collapses to one axis.
    CHECK(rayleigh_distance(flat_panel(5, 1, pitch), lam) ==
          doctest::Approx(2.0 * 16.0 * pitch * pitch / lam).epsilon(1e-12));
}

TEST_CASE("field region classification switches at the boundary") {
    const double lam = 0.024982704833333334;
    PanelSpec p = flat_panel(20, 20, lam / 2.0);
    const double rd = rayleigh_distance(p, lam);

    CHECK(classify_region(0.5 * rd, p, lam) == FieldRegion::near_field);
    CHECK(classify_region(rd, p, lam) == FieldRegion::far_field);  // tie goes far
    CHECK(classify_region(2.0 * rd, p, lam) == FieldRegion::far_field);
    // A 1x1 panel is far-field at any range.
    CHECK(classify_region(1e-6, flat_panel(1, 1, lam / 2.0), lam) == FieldRegion::far_field);
    CHECK_THROWS_AS(classify_region(0.0, p, lam), ValidationError);
}
