#include "drisim/beamform.hpp"

#include <cmath>

#include "drisim/geometry.hpp"

namespace drisim {

ReflectionConfig design_phases(const ChannelSet& channels, const Scenario& scn) {
    ReflectionConfig cfg;
    cfg.amp_u = amplification_factor(scn);
    cfg.amp_s = 1.0;  // satellite-side panel reflects without amplification

    cfg.phi_u.resize(channels.h_u.size());
    for (size_t n = 0; n < channels.h_u.size(); ++n)
        cfg.phi_u[n] = cfg.amp_u * std::conj(channels.mid.tx[n] * channels.h_u[n]);

    // conj(scale) = exp(+j k d_h) cancels the middle-hop propagation phase.
    const cxd counter_phase = std::conj(channels.mid.scale);
    cfg.phi_s.resize(channels.h_s.size());
    for (size_t n = 0; n < channels.h_s.size(); ++n)
        cfg.phi_s[n] = cfg.amp_s * std::conj(channels.h_s[n] * channels.mid.rx[n]) *
                       counter_phase;
    return cfg;
}

cxd composite_gain(const ChannelSet& channels, const ReflectionConfig& config) {
    if (config.phi_u.size() != channels.h_u.size() ||
        config.phi_s.size() != channels.h_s.size())
        throw ValidationError("reflection config does not match the channel dimensions");
    cxd left{0.0, 0.0};
    for (size_t n = 0; n < channels.h_s.size(); ++n)
        left += channels.h_s[n] * config.phi_s[n] * channels.mid.rx[n];
    cxd right{0.0, 0.0};
    for (size_t n = 0; n < channels.h_u.size(); ++n)
        right += channels.mid.tx[n] * config.phi_u[n] * channels.h_u[n];
    return left * channels.mid.scale * right;
}

double noise_combining_norm_sq(const ChannelSet& channels, const ReflectionConfig& config) {
    if (config.phi_u.size() != channels.h_u.size() ||
        config.phi_s.size() != channels.h_s.size())
        throw ValidationError("reflection config does not match the channel dimensions");
    cxd left{0.0, 0.0};
    for (size_t n = 0; n < channels.h_s.size(); ++n)
        left += channels.h_s[n] * config.phi_s[n] * channels.mid.rx[n];
    double row_sq = 0.0;
    for (size_t n = 0; n < channels.h_u.size(); ++n)
        row_sq += std::norm(channels.mid.tx[n] * config.phi_u[n]);
    return std::norm(left * channels.mid.scale) * row_sq;
}

namespace {

struct ActivePanel {
    const PanelSpec* panel = nullptr;  // null when the architecture has none
    double gain_elem = 1.0;
};

// Panel whose reflection amplitude the architecture controls: the user-side
// panel when present, otherwise the single satellite-side panel.
ActivePanel amp_panel(const Scenario& scn) {
    switch (scn.architecture) {
        case Architecture::dris:
        case Architecture::sris_at_su: return {&scn.ris_u, scn.rf.gain_ris_u};
        case Architecture::sris_at_sap: return {&scn.ris_s, scn.rf.gain_ris_s};
        case Architecture::noris: return {};
    }
    return {};
}

}  // namespace

double incident_power(const Scenario& scn, double transmit_power_w) {
    const ActivePanel ap = amp_panel(scn);
    if (!ap.panel) return 0.0;
    const PanelSpec& panel = *ap.panel;
    const ElementGrid grid = element_positions(panel);
    const Vec3 bore = su_boresight(scn);
    const Vec3 n_p = panel.normal();
    const double area = panel.element_area_m2();
    constexpr double four_pi = 4.0 * 3.141592653589793238462643383279502884;
    double captured = 0.0;
    for (const Vec3& p : grid.positions) {
        const double d = norm(p - scn.su_position_m);
        if (!(d > 0.0)) throw ValidationError("degenerate geometry: SU on the panel");
        double f_tx = dot(p - scn.su_position_m, bore) / d;
        double f_in = dot(scn.su_position_m - p, n_p) / d;
        if (f_tx <= 0.0 || f_in <= 0.0) continue;
        captured += transmit_power_w * scn.rf.gain_su * (f_tx * f_tx * f_tx) *
                    (f_in * f_in * f_in) * area / (four_pi * d * d);
    }
    return captured;
}

double incident_power(const Scenario& scn) {
    return incident_power(scn, scn.rf.transmit_power_w);
}

double amplification_factor(const Scenario& scn, double transmit_power_w) {
    const ActivePanel ap = amp_panel(scn);
    if (!ap.panel || ap.panel->mode == RisMode::passive) return 1.0;
    if (!ap.panel->amplification_auto) return ap.panel->amplification;
    const double p_inc = incident_power(scn, transmit_power_w);
    if (!(p_inc > 0.0))
        throw ValidationError("auto amplification with zero incident power on the panel");
    const double a = std::sqrt(1.0 + scn.power.p_amplifier_budget_w / p_inc);
    return a > amp_saturation ? amp_saturation : a;
}

double amplification_factor(const Scenario& scn) {
    return amplification_factor(scn, scn.rf.transmit_power_w);
}

double effective_noise(const Scenario& scn, double transmit_power_w) {
    double noise = scn.rf.static_noise_power_w;
    const ActivePanel ap = amp_panel(scn);
    if (!ap.panel || ap.panel->mode == RisMode::passive) return noise;
    const double a = amplification_factor(scn, transmit_power_w);
    // Each active element injects independent noise of power a^2 sigma_d^2,
    // attenuated by the segment toward the SAP; powers of independent sources add.
    noise += ap.panel->count() * a * a * scn.rf.dynamic_noise_power_w /
             noise_segment_loss(scn);
    return noise;
}

double effective_noise(const Scenario& scn) {
    return effective_noise(scn, scn.rf.transmit_power_w);
}

LinkState received_snr(const Scenario& scn, bool force_exact) {
    validate(scn);
    LinkState st;
    const LossBreakdown bd = loss_unit_amplitude(scn, force_exact);
    const double a = amplification_factor(scn);
    st.path_loss = bd.unit_loss / (a * a);
    st.model = bd.model;
    st.amp_u = a;
    st.noise_power_w = effective_noise(scn);
    st.snr = scn.rf.transmit_power_w / (st.path_loss * st.noise_power_w);
    if (scn.architecture == Architecture::dris) {
        const ChannelSet channels = build_channels(scn);
        const ReflectionConfig cfg = design_phases(channels, scn);
        st.composite = composite_gain(channels, cfg);
        st.normalized_gain = std::abs(st.composite) /
                             (a * scn.ris_s.count() * scn.ris_u.count());
    }
    return st;
}

}  // namespace drisim
