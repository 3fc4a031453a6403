#pragma once

#include <complex>
#include <vector>

#include "drisim/channel.hpp"
#include "drisim/pathloss.hpp"
#include "drisim/scenario.hpp"

namespace drisim {

// Diagonal reflection coefficients of both panels. Entries carry the full
// coefficient: amplitude times unit-modulus phase.
struct ReflectionConfig {
    std::vector<cxd> phi_u;
    std::vector<cxd> phi_s;
    double amp_u = 1.0;
    double amp_s = 1.0;
};

// Conjugate design on the model channels: phi_u[n] = amp_u * conj(a_tx[n] h_u[n]),
// phi_s[n] = conj(h_s[n] a_rx[n]) * exp(+j k d_h). The explicit phase term cancels
// the middle-hop propagation phase exactly, so the composite gain below equals
// amp_u * N_s * N_u.
ReflectionConfig design_phases(const ChannelSet& channels, const Scenario& scn);

// h_s^T Phi_s H Phi_u h_u, evaluated through the rank-one factorization.
cxd composite_gain(const ChannelSet& channels, const ReflectionConfig& config);

// Squared norm of the row vector h_s^T Phi_s H Phi_u (noise combining weight).
double noise_combining_norm_sq(const ChannelSet& channels, const ReflectionConfig& config);

// Total power captured by the active panel's elements from the SU transmission.
double incident_power(const Scenario& scn);
double incident_power(const Scenario& scn, double transmit_power_w);

// Reflection amplitude of the architecture's user-side panel. Passive panels give
// exactly 1. Active panels either carry a fixed configured amplitude or derive it
// from the amplifier budget, a = sqrt(1 + P_A / P_inc), saturated at amp_saturation.
// Zero incident power on an auto-amplified panel is an error.
inline constexpr double amp_saturation = 1.0e3;
double amplification_factor(const Scenario& scn);
double amplification_factor(const Scenario& scn, double transmit_power_w);

// Noise power at the SAP combiner. Passive configurations see the receiver noise
// alone; an active panel adds its amplified element noise attenuated by the
// one-reflection segment loss toward the SAP.
double effective_noise(const Scenario& scn);
double effective_noise(const Scenario& scn, double transmit_power_w);

struct LinkState {
    double path_loss = 0.0;        // linear, amplitude folded in
    ModelUsed model = ModelUsed::fspl;
    double amp_u = 1.0;
    double noise_power_w = 0.0;
    double snr = 0.0;              // linear
    cxd composite{0.0, 0.0};       // two-panel architectures only
    double normalized_gain = 0.0;  // |composite| / (amp_u N_s N_u), 1 under the design
};

// Full receive pipeline at the scenario's transmit power with designed phases.
LinkState received_snr(const Scenario& scn, bool force_exact = false);

}  // namespace drisim
