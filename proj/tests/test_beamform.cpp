#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "drisim/beamform.hpp"
#include "drisim/metrics.hpp"

using namespace drisim;

namespace {

Scenario one_element_user_panel() {
    Scenario scn = default_scenario();
    scn.ris_u = make_centered_panel({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1, 1,
                                    0.012491352416666667);
    scn.su_position_m = {0, 0, 1};
    return scn;
}

// Small panels so dense-matrix arithmetic stays cheap.
Scenario small_link() {
    Scenario scn = default_scenario();
    const double pitch = scn.rf.wavelength_m() / 2.0;
    scn.ris_u = make_centered_panel({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 4, 4, pitch);
    scn.ris_s = make_centered_panel({0, 0, 30}, {1, 0, 0}, {0, -1, 0}, 3, 3, pitch);
    scn.su_position_m = {0, 0, 0.8};
    scn.sap_position_m = {0, 0, 29};
    return scn;
}

}  // namespace

TEST_CASE("designed phases reach the full coherent gain") {
    Scenario scn = default_scenario();
    ChannelSet channels = build_channels(scn);
    ReflectionConfig config = design_phases(channels, scn);
    REQUIRE(config.phi_u.size() == 400);
    REQUIRE(config.phi_s.size() == 400);
    CHECK(config.amp_u == 1.0);

    // Reflection coefficients: unit modulus times the panel amplitude.
    for (cxd e : config.phi_u) CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
    for (cxd e : config.phi_s) CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);

    const double gain = std::abs(composite_gain(channels, config));
    CHECK(gain == doctest::Approx(400.0 * 400.0).epsilon(1e-9));
}

TEST_CASE("designed phases carry the amplitude of an active user panel") {
    Scenario scn = small_link();
    scn.ris_u.mode = RisMode::active;
    scn.ris_u.amplification = 3.0;
    ChannelSet channels = build_channels(scn);
    ReflectionConfig config = design_phases(channels, scn);
    CHECK(config.amp_u == doctest::Approx(3.0).epsilon(1e-15));
    for (cxd e : config.phi_u) CHECK(std::abs(e) == doctest::Approx(3.0).epsilon(1e-12));
    const double gain = std::abs(composite_gain(channels, config));
    CHECK(gain == doctest::Approx(3.0 * 16.0 * 9.0).epsilon(1e-9));
}

TEST_CASE("no random phase draw beats the designed gain") {
    Scenario scn = small_link();
    ChannelSet channels = build_channels(scn);
    ReflectionConfig designed = design_phases(channels, scn);
    const double best = std::abs(composite_gain(channels, designed));

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    ReflectionConfig draw = designed;
    for (int trial = 0; trial < 2000; ++trial) {
        for (cxd& e : draw.phi_u) e = std::polar(1.0, phase(rng));
        for (cxd& e : draw.phi_s) e = std::polar(1.0, phase(rng));
        CHECK(std::abs(composite_gain(channels, draw)) <= best * (1.0 + 1e-12));
    }
}

TEST_CASE("composite gain equals the dense triple product") {
    Scenario scn = small_link();
    ChannelSet channels = build_channels(scn);

    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    ReflectionConfig config;
    config.phi_u.resize(channels.h_u.size());
    config.phi_s.resize(channels.h_s.size());
    for (cxd& e : config.phi_u) e = std::polar(1.0, phase(rng));
    for (cxd& e : config.phi_s) e = std::polar(1.0, phase(rng));

    auto H = channels.mid.dense();
    cxd direct{0.0, 0.0};
    for (size_t is = 0; is < channels.h_s.size(); ++is) {
        for (size_t iu = 0; iu < channels.h_u.size(); ++iu) {
            direct += channels.h_s[is] * config.phi_s[is] * H[is][iu] *
                      config.phi_u[iu] * channels.h_u[iu];
        }
    }
    cxd fast = composite_gain(channels, config);
    CHECK(std::abs(fast - direct) < 1e-9 * std::abs(direct));
}

TEST_CASE("noise combining weight of the designed link") {
    Scenario scn = small_link();
    ChannelSet channels = build_channels(scn);
    ReflectionConfig config = design_phases(channels, scn);
    // Row vector h_s^T Phi_s H Phi_u has N_u entries of magnitude N_s.
    CHECK(noise_combining_norm_sq(channels, config) ==
          doctest::Approx(16.0 * 9.0 * 9.0).epsilon(1e-9));
}

TEST_CASE("incident power on a single element is elementary") {
    Scenario scn = one_element_user_panel();
    CHECK(incident_power(scn) == doctest::Approx(1.2416782059496914e-06).epsilon(1e-12));
    // Scales linearly with transmit power.
    CHECK(incident_power(scn, 0.02) == doctest::Approx(2.4833564118993828e-06).epsilon(1e-12));
    // No panel, no capture.
    Scenario bare = default_scenario();
    bare.architecture = Architecture::noris;
    CHECK(incident_power(bare) == 0.0);
}

TEST_CASE("amplification follows the budget and saturates") {
    Scenario scn = one_element_user_panel();
    CHECK(amplification_factor(scn) == 1.0);  // passive

    scn.ris_u.mode = RisMode::active;
    scn.ris_u.amplification = 2.5;
    CHECK(amplification_factor(scn) == doctest::Approx(2.5).epsilon(1e-15));

    scn.ris_u.amplification = 1.0;
    scn.ris_u.amplification_auto = true;
    CHECK(amplification_factor(scn) == doctest::Approx(63.46501567726661).epsilon(1e-12));

    // More transmit power means more incident power and less amplifier headroom.
    CHECK(amplification_factor(scn, 1.0) < amplification_factor(scn, 0.01));

    // A huge budget saturates at the amplifier limit.
    scn.power.p_amplifier_budget_w = 1e12;
    CHECK(amplification_factor(scn) == amp_saturation);

    // SU behind the panel captures nothing: auto amplification cannot work.
    scn.power.p_amplifier_budget_w = 0.005;
    scn.su_position_m = {0, 0, -1};
    CHECK_THROWS_AS(amplification_factor(scn), ValidationError);
}

TEST_CASE("effective noise adds the attenuated element noise of an active panel") {
    Scenario scn = default_scenario();
    CHECK(effective_noise(scn) == scn.rf.static_noise_power_w);  // passive: receiver only

    scn.ris_u.mode = RisMode::active;
    scn.ris_u.amplification_auto = true;
    scn.rf.dynamic_noise_power_w = 1.0;  // exaggerate so the injected term dominates
    const double a = amplification_factor(scn);
    const double expected = scn.rf.static_noise_power_w +
                            400.0 * a * a * 1.0 / noise_segment_loss(scn);
    CHECK(effective_noise(scn) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(effective_noise(scn) > scn.rf.static_noise_power_w);

    // Quiet elements collapse back to the receiver floor.
    scn.rf.dynamic_noise_power_w = 0.0;
    CHECK(effective_noise(scn) == doctest::Approx(scn.rf.static_noise_power_w).epsilon(1e-15));
}

TEST_CASE("received SNR chains loss, amplitude, and noise consistently") {
    Scenario scn = default_scenario();
    LinkState st = received_snr(scn);
    CHECK(st.model == ModelUsed::dris_nf);
    CHECK(st.amp_u == 1.0);
    CHECK(st.noise_power_w == doctest::Approx(scn.rf.static_noise_power_w).epsilon(1e-15));
    CHECK(st.path_loss == doctest::Approx(dris_nearfield_loss(scn)).epsilon(1e-12));
    CHECK(st.snr == doctest::Approx(scn.rf.transmit_power_w /
                                    (st.path_loss * st.noise_power_w)).epsilon(1e-12));
    CHECK(st.normalized_gain == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(st.composite) > 0.0);

    // Invalid scenarios are rejected up front.
    scn.rf.bandwidth_hz = -1.0;
    CHECK_THROWS_AS(received_snr(scn), ValidationError);
}
