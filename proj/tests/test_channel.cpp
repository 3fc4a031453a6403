#include <cmath>
#include <complex>

#include "doctest.h"
#include "drisim/channel.hpp"

using namespace drisim;

namespace {

bool close(cxd a, cxd b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

PanelSpec flat_panel(int n_x, int n_y, double spacing) {
    return make_centered_panel({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, n_x, n_y, spacing);
}

}  // namespace

TEST_CASE("ULA steering walks the unit circle") {
    auto v = ula_steering(0.5, 4);
    REQUIRE(v.size() == 4);
    CHECK(close(v[0], {1.0, 0.0}));
    CHECK(close(v[1], {0.0, -1.0}));
    CHECK(close(v[2], {-1.0, 0.0}));
    CHECK(close(v[3], {0.0, 1.0}));
    // Broadside: all ones.
    for (cxd e : ula_steering(0.0, 3)) CHECK(close(e, {1.0, 0.0}));
}

TEST_CASE("UPA response is the x-major Kronecker product of the axis responses") {
    const double lam = 0.025;
    PanelSpec p = flat_panel(2, 3, lam / 2.0);
    const double theta = 0.7, phi = 0.4;

    auto v = upa_response(theta, phi, p, lam);
    REQUIRE(v.size() == 6);
    for (cxd e : v) CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);

    // Half-wavelength pitch: per-axis argument is cos/sin(phi)*sin(theta) itself.
    auto vx = ula_steering(std::cos(phi) * std::sin(theta), 2);
    auto vy = ula_steering(std::sin(phi) * std::sin(theta), 3);
    for (int ix = 0; ix < 2; ++ix) {
        for (int iy = 0; iy < 3; ++iy) {
            CHECK(close(v[ix * 3 + iy], vx[ix] * vy[iy]));
        }
    }

    // Quarter-wavelength pitch halves every phase.
    PanelSpec dense_p = flat_panel(2, 1, lam / 4.0);
    auto vq = upa_response(theta, phi, dense_p, lam);
    CHECK(std::arg(vq[1]) == doctest::Approx(std::arg(vx[1]) / 2.0).epsilon(1e-12));
}

TEST_CASE("spherical response carries the quadratic range correction") {
    const double lam = 0.025;
    const double s = 0.0125;
    PanelSpec p;
    p.n_x = 2;
    p.n_y = 1;
    p.spacing_m = s;
    p.element_dx_m = p.element_dy_m = s;
    p.anchor_m = {0, 0, 0};

    // On axis at 1 m: linear term vanishes, curvature term is -k s^2 / 2.
    auto v = near_field_channel(0.0, 0.0, 1.0, p, lam);
    REQUIRE(v.size() == 2);
    CHECK(close(v[0], {1.0, 0.0}));
    CHECK(std::arg(v[1]) == doctest::Approx(-0.01963495408493621).epsilon(1e-12));

    // Unit modulus everywhere.
    PanelSpec big = flat_panel(5, 4, s);
    for (cxd e : near_field_channel(0.3, 1.1, 2.0, big, lam)) {
        CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
    }

    // The curvature dies off linearly with range.
    auto planar = near_field_channel(0.3, 1.1, 1e12, big, lam);
    auto residual = [&](double d) {
        auto v = near_field_channel(0.3, 1.1, d, big, lam);
        double worst = 0.0;
        for (size_t i = 0; i < v.size(); ++i)
            worst = std::max(worst, std::abs(std::arg(v[i] * std::conj(planar[i]))));
        return worst;
    };
    CHECK(residual(1000.0) < 1e-3);
    CHECK(residual(100000.0) < 1e-5);
    CHECK(residual(1000.0) / residual(10000.0) == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("rank-one channel exposes consistent entries and dense form") {
    const double lam = 0.025;
    PanelSpec tx = flat_panel(2, 2, lam / 2.0);
    PanelSpec rx = make_centered_panel({0, 0, 10}, {1, 0, 0}, {0, -1, 0}, 3, 1, lam / 2.0);

    Rank1Channel H = far_field_channel(tx, rx, lam);
    REQUIRE(H.tx.size() == 4);
    REQUIRE(H.rx.size() == 3);
    // Propagation phase of the center-to-center hop.
    CHECK(std::abs(std::abs(H.scale) - 1.0) < 1e-12);
    CHECK(close(H.scale, std::polar(1.0, -2.0 * std::numbers::pi * 10.0 / lam), 1e-12));

    auto dense = H.dense();
    REQUIRE(dense.size() == 3);
    REQUIRE(dense[0].size() == 4);
    for (int ir = 0; ir < 3; ++ir) {
        for (int it = 0; it < 4; ++it) {
            CHECK(close(dense[ir][it], H.entry(ir, it)));
            CHECK(close(dense[ir][it], H.scale * H.rx[ir] * H.tx[it]));
        }
    }

    // Boresight hop: both responses are flat.
    for (cxd e : H.tx) CHECK(close(e, H.tx[0]));
    for (cxd e : H.rx) CHECK(close(e, H.rx[0]));
}

TEST_CASE("terminal hops switch response model at the panel's boundary distance") {
    Scenario scn = default_scenario();
    const double lam = scn.rf.wavelength_m();
    const double rd = rayleigh_distance(scn.ris_u, lam);  // about 9 m

    // Inside the boundary the response is spherical: curvature present.
    scn.su_position_m = {0, 0, 1.0};
    ChannelSet nf = build_channels(scn);
    REQUIRE(nf.h_u.size() == 400);
    auto ref = near_field_channel(0.0, 0.0, 1.0, scn.ris_u, lam);
    for (size_t i = 0; i < nf.h_u.size(); ++i) CHECK(close(nf.h_u[i], ref[i]));

    // Outside it the response is planar: on-axis means all entries equal.
    scn.su_position_m = {0, 0, 2.0 * rd};
    ChannelSet ff = build_channels(scn);
    for (cxd e : ff.h_u) CHECK(close(e, ff.h_u[0]));

    // The satellite hop is always planar at 1200 km panel separation.
    CHECK(nf.mid.tx.size() == 400);
    CHECK(nf.mid.rx.size() == 400);
}
