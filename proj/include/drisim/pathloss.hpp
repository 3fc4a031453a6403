#pragma once

#include <string>
#include <vector>

#include "drisim/geometry.hpp"
#include "drisim/scenario.hpp"

namespace drisim {

// Normalized element power pattern: cos^3(theta) facing the front half space,
// zero behind. The pattern has no azimuth dependence; phi is accepted for
// signature completeness and ignored.
double radiation_pattern(double theta, double phi = 0.0);

// Terminal antenna boresights. A terminal backed by a panel faces that panel
// squarely (boresight opposite the panel normal); a bare terminal aims at the
// remaining panel, or at the opposite terminal when no panel exists.
Vec3 su_boresight(const Scenario& scn);
Vec3 sap_boresight(const Scenario& scn);

// Product of the six single-hop pattern evaluations along SU -> element iu ->
// element is -> SAP: departure at the SU antenna, arrival at element iu,
// re-radiation toward element is, arrival at element is, re-radiation toward the
// SAP, arrival at the SAP antenna.
double combined_pattern(const Scenario& scn, const LinkGeometry& geom, int is, int iu);

// Per-panel reflection phases (radians), indexed like the element grids.
struct PhaseProfile {
    std::vector<double> phi_u;
    std::vector<double> phi_s;
};

// Phase profile that compensates the exact per-element propagation phase of the
// double-reflection path, splitting the middle hop at the opposite panel center.
// Maximizes the received power of the field superposition below.
PhaseProfile aligned_phase_profile(const Scenario& scn, const LinkGeometry& geom);

// First-principles received power: per element pair, chain the captured power
// through both reflections, convert to a field amplitude, accumulate with the
// full propagation phase plus the element phases, and convert the coherent sum
// back to power at the SAP aperture. Reference oracle for the closed forms.
double field_superposition_power(const Scenario& scn, const LinkGeometry& geom,
                                 const PhaseProfile& phases,
                                 double amp_u, double amp_s);

// Same construction for a single-reflection link. Element n of the panel reflects
// tx -> n -> rx with phase phases[n] and amplitude amp.
double one_reflection_field_power(const Vec3& tx, const Vec3& tx_boresight, double gain_tx,
                                  const PanelSpec& panel, double gain_elem,
                                  const Vec3& rx, const Vec3& rx_boresight, double gain_rx,
                                  const std::vector<double>& phases, double amp,
                                  double transmit_power_w, double wavelength_m);

enum class ModelUsed { dris_nf, dris_ff, sris_nf, sris_ff, fspl };
const char* to_string(ModelUsed m);

// Effective attenuation: every loss below folds in the antenna and element gains
// and the reflection amplitude, so received power is P_t / L and the link SNR is
// P_t / (L * N0) with no further factors.
struct PathLossResult {
    double loss = 0.0;  // linear
    ModelUsed model = ModelUsed::fspl;
};

double dris_nearfield_loss(const Scenario& scn);
double dris_farfield_loss(const Scenario& scn);
PathLossResult sris_loss(const Scenario& scn);
double free_space_loss(const Scenario& scn);

PathLossResult select_model(const Scenario& scn, bool force_exact = false);

// Loss with the reflection amplitude divided back out, so that
// loss(a) = unit_loss / a^2. Lets power solvers vary the amplitude without
// re-evaluating the element sums.
struct LossBreakdown {
    double unit_loss = 0.0;
    ModelUsed model = ModelUsed::fspl;
};

LossBreakdown loss_unit_amplitude(const Scenario& scn, bool force_exact = false);

// One-reflection loss of the segment active panel -> other panel -> SAP, used to
// attenuate the noise injected by active elements. Zero-sized when no second
// panel exists: the segment is then the bare hop panel -> SAP.
double noise_segment_loss(const Scenario& scn);

}  // namespace drisim
