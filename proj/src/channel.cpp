#include "drisim/channel.hpp"

#include <cmath>

namespace drisim {

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;

cxd unit_phase(double radians) { return {std::cos(radians), std::sin(radians)}; }
}  // namespace

std::vector<cxd> ula_steering(double vartheta, int n) {
    if (n < 1) throw ValidationError("steering vector length must be at least 1");
    std::vector<cxd> v(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) v[static_cast<size_t>(m)] = unit_phase(-pi * m * vartheta);
    return v;
}

std::vector<cxd> upa_response(double theta, double phi, const PanelSpec& panel,
                              double wavelength_m) {
    // With half-wavelength spacing the classic arguments are cos(phi)sin(theta)
    // and sin(phi)sin(theta); a general pitch scales them by 2s/lambda.
    const double pitch = 2.0 * panel.spacing_m / wavelength_m;
    const std::vector<cxd> vx =
        ula_steering(pitch * std::cos(phi) * std::sin(theta), panel.n_x);
    const std::vector<cxd> vy =
        ula_steering(pitch * std::sin(phi) * std::sin(theta), panel.n_y);
    std::vector<cxd> out(static_cast<size_t>(panel.count()));
    for (int ix = 0; ix < panel.n_x; ++ix)
        for (int iy = 0; iy < panel.n_y; ++iy)
            out[static_cast<size_t>(ix * panel.n_y + iy)] =
                vx[static_cast<size_t>(ix)] * vy[static_cast<size_t>(iy)];
    return out;
}

std::vector<cxd> near_field_channel(double theta, double phi, double distance_m,
                                    const PanelSpec& panel, double wavelength_m) {
    if (!(distance_m > 0.0)) throw ValidationError("distance must be positive");
    const double k = 2.0 * pi / wavelength_m;
    const double s = panel.spacing_m;
    const double ax = std::cos(phi) * std::sin(theta);
    const double ay = std::sin(phi) * std::sin(theta);
    // Second-order Taylor expansion of the exact element distance about the
    // reference corner, separable per axis.
    const double qx = s * s * (1.0 - ax * ax) / (2.0 * distance_m);
    const double qy = s * s * (1.0 - ay * ay) / (2.0 * distance_m);
    std::vector<cxd> out(static_cast<size_t>(panel.count()));
    for (int ix = 0; ix < panel.n_x; ++ix) {
        const double px = k * (ix * s * ax - ix * static_cast<double>(ix) * qx);
        for (int iy = 0; iy < panel.n_y; ++iy) {
            const double py = k * (iy * s * ay - iy * static_cast<double>(iy) * qy);
            out[static_cast<size_t>(ix * panel.n_y + iy)] = unit_phase(px + py);
        }
    }
    return out;
}

std::vector<std::vector<cxd>> Rank1Channel::dense() const {
    std::vector<std::vector<cxd>> h(rx.size(), std::vector<cxd>(tx.size()));
    for (size_t ir = 0; ir < rx.size(); ++ir)
        for (size_t it = 0; it < tx.size(); ++it) h[ir][it] = scale * rx[ir] * tx[it];
    return h;
}

Rank1Channel far_field_channel(const PanelSpec& tx_panel, const PanelSpec& rx_panel,
                               double wavelength_m) {
    const Vec3 c_tx = tx_panel.center();
    const Vec3 c_rx = rx_panel.center();
    const double d = norm(c_rx - c_tx);
    if (!(d > 0.0)) throw ValidationError("degenerate geometry: coincident panels");
    const LocalAngles dep = local_angles(c_rx, tx_panel);
    const LocalAngles arr = local_angles(c_tx, rx_panel);
    Rank1Channel h;
    h.scale = unit_phase(-2.0 * pi * d / wavelength_m);
    h.tx = upa_response(dep.theta, dep.phi, tx_panel, wavelength_m);
    h.rx = upa_response(arr.theta, arr.phi, rx_panel, wavelength_m);
    return h;
}

namespace {

// Terminal-to-panel response in the panel's local frame, spherical inside the
// Rayleigh distance and planar beyond it.
std::vector<cxd> terminal_hop(const Vec3& terminal, const PanelSpec& panel,
                              double wavelength_m) {
    const double d = norm(terminal - panel.center());
    const LocalAngles ang = local_angles(terminal, panel);
    if (classify_region(d, panel, wavelength_m) == FieldRegion::near_field)
        return near_field_channel(ang.theta, ang.phi, d, panel, wavelength_m);
    return upa_response(ang.theta, ang.phi, panel, wavelength_m);
}

}  // namespace

ChannelSet build_channels(const Scenario& scn) {
    const double lambda = scn.rf.wavelength_m();
    ChannelSet set;
    set.h_u = terminal_hop(scn.su_position_m, scn.ris_u, lambda);
    set.h_s = terminal_hop(scn.sap_position_m, scn.ris_s, lambda);
    set.mid = far_field_channel(scn.ris_u, scn.ris_s, lambda);
    return set;
}

}  // namespace drisim
