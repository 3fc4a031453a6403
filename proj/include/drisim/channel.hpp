#pragma once

#include <complex>
#include <vector>

#include "drisim/geometry.hpp"
#include "drisim/scenario.hpp"

namespace drisim {

using cxd = std::complex<double>;

// Uniform linear array response, entry m = exp(-j pi m vartheta), m from 0.
std::vector<cxd> ula_steering(double vartheta, int n);

// Planar-wave response of the panel: Kronecker product of the per-axis responses,
// x-major. theta from the panel normal, phi from basis_x.
std::vector<cxd> upa_response(double theta, double phi, const PanelSpec& panel,
                              double wavelength_m);

// Spherical-wave response with per-axis quadratic distance correction. Entry
// (ix, iy) has phase k*(ix*s*cos(phi)*sin(theta) - ix^2*s^2*(1-cos^2(phi)sin^2(theta))/(2d))
// plus the analogous y term; indices from 0, d measured center to point.
std::vector<cxd> near_field_channel(double theta, double phi, double distance_m,
                                    const PanelSpec& panel, double wavelength_m);

// Line-of-sight panel-to-panel channel, rank one by construction:
// H = scale * rx_response * tx_response^T with scale = exp(-j k d).
struct Rank1Channel {
    cxd scale{1.0, 0.0};
    std::vector<cxd> rx;  // response at the receiving panel
    std::vector<cxd> tx;  // response at the transmitting panel

    cxd entry(int ir, int it) const { return scale * rx[ir] * tx[it]; }
    std::vector<std::vector<cxd>> dense() const;
};

Rank1Channel far_field_channel(const PanelSpec& tx_panel, const PanelSpec& rx_panel,
                               double wavelength_m);

// Uplink channels of the two-panel link. Terminal hops switch between the
// spherical and planar response at the panel's Rayleigh distance.
struct ChannelSet {
    std::vector<cxd> h_u;  // SU to RIS-u, length N_u
    std::vector<cxd> h_s;  // RIS-s to SAP side, length N_s
    Rank1Channel mid;      // RIS-u to RIS-s
};

ChannelSet build_channels(const Scenario& scn);

}  // namespace drisim
