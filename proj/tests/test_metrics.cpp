#include <cmath>

#include "doctest.h"
#include "drisim/metrics.hpp"

using namespace drisim;

TEST_CASE("achievable rate is Shannon capacity per hertz") {
    CHECK(achievable_rate(0.0) == 0.0);
    CHECK(achievable_rate(3.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(achievable_rate(1000.0) == doctest::Approx(9.967226258835993).epsilon(1e-15));
    CHECK_THROWS_AS(achievable_rate(-0.1), ValidationError);
}

TEST_CASE("panel operating power by mode") {
    Scenario scn = default_scenario();
    // Passive: one phase shifter per element.
    CHECK(ris_power(scn.ris_u, scn.power) == doctest::Approx(2.0).epsilon(1e-15));

    // Active: amplifier budget + per-element dynamic draw + panel static draw.
    PanelSpec active = scn.ris_u;
    active.mode = RisMode::active;
    active.amplification = 2.0;
    CHECK(ris_power(active, scn.power) ==
          doctest::Approx(403.1672776601684).epsilon(1e-15));
}

TEST_CASE("total power accumulates the present components") {
    Scenario scn = default_scenario();
    CHECK(total_power(scn) == doctest::Approx(31626.78660168379).epsilon(1e-15));

    scn.architecture = Architecture::noris;
    CHECK(total_power(scn) == doctest::Approx(31622.786601683793).epsilon(1e-15));

    scn.architecture = Architecture::sris_at_su;
    CHECK(total_power(scn) == doctest::Approx(31624.786601683793).epsilon(1e-15));
}

TEST_CASE("energy efficiency is rate throughput per watt") {
    Scenario scn = default_scenario();
    CHECK(energy_efficiency(scn, 2.0) ==
          doctest::Approx(3161.8767110116733).epsilon(1e-12));
    CHECK(energy_efficiency(scn, 0.0) == 0.0);
}

TEST_CASE("required power of the direct link is the closed-form budget") {
    Scenario scn = default_scenario();
    scn.architecture = Architecture::noris;
    const double p = required_transmit_power(scn, 2.0);
    CHECK(watt_to_dbm(p) == doctest::Approx(16.886231134490185).epsilon(1e-12));

    // Feeding the answer back attains the target exactly.
    scn.rf.transmit_power_w = p;
    LinkMetrics m = evaluate_link(scn);
    CHECK(m.snr == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(m.adr_bps_hz == doctest::Approx(2.0).epsilon(1e-12));

    // Stricter targets cost more power.
    CHECK(required_transmit_power(scn, 2.5) > required_transmit_power(scn, 2.0));
    CHECK_THROWS_AS(required_transmit_power(scn, 0.0), ValidationError);
}

TEST_CASE("required power with auto amplification attains the target") {
    Scenario scn = default_scenario();
    scn.ris_u.mode = RisMode::active;
    scn.ris_u.amplification_auto = true;
    const double p = required_transmit_power(scn, 2.0);
    scn.rf.transmit_power_w = p;
    LinkState st = received_snr(scn);
    CHECK(st.snr == doctest::Approx(3.0).epsilon(1e-5));
    CHECK(st.amp_u > 1.0);
}

TEST_CASE("relative power compares architectures at equal rate") {
    Scenario dris = default_scenario();
    Scenario noris = default_scenario();
    noris.architecture = Architecture::noris;

    const double gap = relative_power_db(dris, noris, 2.0);
    CHECK(gap == doctest::Approx(watt_to_dbm(required_transmit_power(dris, 2.0)) -
                                 watt_to_dbm(required_transmit_power(noris, 2.0)))
                     .epsilon(1e-9));
    CHECK(gap == doctest::Approx(-relative_power_db(noris, dris, 2.0)).epsilon(1e-9));
    CHECK(gap < -10.0);  // the two-panel link saves an order of magnitude
}

TEST_CASE("doubling a fixed reflection amplitude saves four times the power") {
    Scenario two = default_scenario();
    two.rf.dynamic_noise_power_w = 0.0;  // keep the noise floor identical
    two.ris_u.mode = RisMode::active;
    two.ris_u.amplification = 2.0;
    Scenario four = two;
    four.ris_u.amplification = 4.0;
    CHECK(relative_power_db(four, two, 2.0) ==
          doctest::Approx(-6.020599913279624).epsilon(1e-12));
}

TEST_CASE("link metrics are mutually consistent at the baseline") {
    Scenario scn = default_scenario();
    LinkMetrics m = evaluate_link(scn);
    CHECK(m.model == ModelUsed::dris_nf);
    CHECK(m.amp_u == 1.0);
    CHECK(m.path_loss_db == doctest::Approx(linear_to_db(dris_nearfield_loss(scn)))
                                .epsilon(1e-12));
    CHECK(m.snr_db == doctest::Approx(linear_to_db(m.snr)).epsilon(1e-12));
    CHECK(m.adr_bps_hz == doctest::Approx(std::log2(1.0 + m.snr)).epsilon(1e-12));
    CHECK(m.total_power_w == doctest::Approx(31626.78660168379).epsilon(1e-15));
    CHECK(m.energy_efficiency_bps_w ==
          doctest::Approx(scn.rf.bandwidth_hz * m.adr_bps_hz / m.total_power_w)
              .epsilon(1e-12));
}
