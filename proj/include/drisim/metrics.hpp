#pragma once

#include "drisim/beamform.hpp"
#include "drisim/scenario.hpp"

namespace drisim {

double achievable_rate(double snr);  // log2(1 + snr), snr >= 0

// Operating power of one panel under the component power model.
double ris_power(const PanelSpec& panel, const PowerModel& power);

// P_t plus the panels present in the architecture plus the static system draw.
double total_power(const Scenario& scn);

double energy_efficiency(const Scenario& scn, double rate_bps_hz);

// Smallest transmit power that attains the target rate. Closed form when the
// link is independent of P_t; bisection over [1e-12, 1e4] W to 1e-6 relative
// otherwise (active panels couple amplitude and noise to P_t).
double required_transmit_power(const Scenario& scn, double target_rate_bps_hz);

// 10 log10 of the required-power ratio scenario / baseline at equal target rate.
double relative_power_db(const Scenario& scn, const Scenario& baseline,
                         double target_rate_bps_hz);

struct LinkMetrics {
    double path_loss_db = 0.0;
    double snr = 0.0;  // linear
    double snr_db = 0.0;
    double adr_bps_hz = 0.0;
    double total_power_w = 0.0;
    double energy_efficiency_bps_w = 0.0;
    double amp_u = 1.0;
    ModelUsed model = ModelUsed::fspl;
};

LinkMetrics evaluate_link(const Scenario& scn, bool force_exact = false);

}  // namespace drisim
