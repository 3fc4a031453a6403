#include "drisim/metrics.hpp"

#include <cmath>
#include <numbers>

namespace drisim {

double achievable_rate(double snr) {
    if (!(snr >= 0.0)) throw ValidationError("snr must be nonnegative");
    return std::log1p(snr) / std::numbers::ln2;
}

double ris_power(const PanelSpec& panel, const PowerModel& power) {
    if (panel.mode == RisMode::passive) return panel.count() * power.p_phase_shifter_w;
    return power.p_amplifier_budget_w + panel.count() * power.p_dynamic_w +
           power.p_static_active_ris_w;
}

double total_power(const Scenario& scn) {
    double total = scn.rf.transmit_power_w + scn.power.p_static_system_w;
    if (has_ris_s(scn.architecture)) total += ris_power(scn.ris_s, scn.power);
    if (has_ris_u(scn.architecture)) total += ris_power(scn.ris_u, scn.power);
    return total;
}

double energy_efficiency(const Scenario& scn, double rate_bps_hz) {
    return scn.rf.bandwidth_hz * rate_bps_hz / total_power(scn);
}

namespace {

bool link_tracks_transmit_power(const Scenario& scn) {
    if (scn.architecture == Architecture::noris) return false;
    const PanelSpec& panel =
        scn.architecture == Architecture::sris_at_sap ? scn.ris_s : scn.ris_u;
    return panel.mode == RisMode::active && panel.amplification_auto;
}

}  // namespace

double required_transmit_power(const Scenario& scn, double target_rate_bps_hz) {
    validate(scn);
    if (!(target_rate_bps_hz > 0.0))
        throw ValidationError("target rate must be positive");
    const double target_snr = std::exp2(target_rate_bps_hz) - 1.0;
    const LossBreakdown bd = loss_unit_amplitude(scn);

    if (!link_tracks_transmit_power(scn)) {
        const double a = amplification_factor(scn);
        return target_snr * (bd.unit_loss / (a * a)) * effective_noise(scn);
    }

    // Auto amplification couples both the amplitude and the injected noise to
    // P_t; the SNR stays strictly increasing in P_t (P_t a^2 = P_t + P_A/c with
    // a fixed budget), so bisect to 1e-6 relative in log power.
    auto snr_at = [&](double p_t) {
        const double a = amplification_factor(scn, p_t);
        return p_t * a * a / (bd.unit_loss * effective_noise(scn, p_t));
    };
    double lo = 1.0e-12;
    double hi = 1.0e4;
    if (snr_at(lo) >= target_snr) return lo;
    if (snr_at(hi) < target_snr)
        throw NumericalError("target rate unattainable within the power bracket");
    for (int step = 0; hi / lo > 1.0 + 1.0e-6; ++step) {
        if (step >= 200) throw NumericalError("required power bisection did not converge");
        const double mid = std::sqrt(lo * hi);
        (snr_at(mid) >= target_snr ? hi : lo) = mid;
    }
    return std::sqrt(lo * hi);
}

double relative_power_db(const Scenario& scn, const Scenario& baseline,
                         double target_rate_bps_hz) {
    return linear_to_db(required_transmit_power(scn, target_rate_bps_hz) /
                        required_transmit_power(baseline, target_rate_bps_hz));
}

LinkMetrics evaluate_link(const Scenario& scn, bool force_exact) {
    const LinkState st = received_snr(scn, force_exact);
    LinkMetrics m;
    m.path_loss_db = linear_to_db(st.path_loss);
    m.snr = st.snr;
    m.snr_db = linear_to_db(st.snr);
    m.adr_bps_hz = achievable_rate(st.snr);
    m.total_power_w = total_power(scn);
    m.energy_efficiency_bps_w = energy_efficiency(scn, m.adr_bps_hz);
    m.amp_u = st.amp_u;
    m.model = st.model;
    return m;
}

}  // namespace drisim
