#include "drisim/pathloss.hpp"

#include <cmath>
#include <complex>

#include "drisim/beamform.hpp"

namespace drisim {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;
constexpr double four_pi = 4.0 * pi;
constexpr double k_one_reflection = 64.0 * pi * pi * pi;          // (4 pi)^3
constexpr double k_two_reflections = 256.0 * pi * pi * pi * pi;   // (4 pi)^4

// Front-half clamp applied per hop: a factor is zero whenever its own cosine
// is nonpositive, so a product of raw cosines cannot go positive behind a panel.
double pattern_from_cos(double c) { return c > 0.0 ? c * c * c : 0.0; }

double cos_from(const Vec3& from, const Vec3& to, const Vec3& axis, double dist) {
    return dot(to - from, axis) / dist;
}

}  // namespace

double radiation_pattern(double theta, double /*phi*/) {
    if (!(theta >= 0.0) || !(theta <= pi)) throw ValidationError("theta must lie in [0, pi]");
    return pattern_from_cos(std::cos(theta));
}

Vec3 su_boresight(const Scenario& scn) {
    if (has_ris_u(scn.architecture)) return -1.0 * normalized(scn.ris_u.normal());
    if (has_ris_s(scn.architecture))
        return normalized(scn.ris_s.center() - scn.su_position_m);
    return normalized(scn.sap_position_m - scn.su_position_m);
}

Vec3 sap_boresight(const Scenario& scn) {
    if (has_ris_s(scn.architecture)) return -1.0 * normalized(scn.ris_s.normal());
    if (has_ris_u(scn.architecture))
        return normalized(scn.ris_u.center() - scn.sap_position_m);
    return normalized(scn.su_position_m - scn.sap_position_m);
}

double combined_pattern(const Scenario& scn, const LinkGeometry& geom, int is, int iu) {
    const Vec3& pu = geom.grid_u.positions[static_cast<size_t>(iu)];
    const Vec3& ps = geom.grid_s.positions[static_cast<size_t>(is)];
    const Vec3 n_u = scn.ris_u.normal();
    const Vec3 n_s = scn.ris_s.normal();
    const double d1 = geom.su_to_ris_u_m[static_cast<size_t>(iu)];
    const double dm = geom.middle_m(is, iu);
    const double d2 = geom.ris_s_to_sap_m[static_cast<size_t>(is)];

    double f = pattern_from_cos(cos_from(scn.su_position_m, pu, su_boresight(scn), d1));
    f *= pattern_from_cos(cos_from(pu, scn.su_position_m, n_u, d1));
    f *= pattern_from_cos(cos_from(pu, ps, n_u, dm));
    f *= pattern_from_cos(cos_from(ps, pu, n_s, dm));
    f *= pattern_from_cos(cos_from(ps, scn.sap_position_m, n_s, d2));
    f *= pattern_from_cos(cos_from(scn.sap_position_m, ps, sap_boresight(scn), d2));
    return f;
}

PhaseProfile aligned_phase_profile(const Scenario& scn, const LinkGeometry& geom) {
    const double k = scn.rf.wavenumber();
    const Vec3 c_u = scn.ris_u.center();
    const Vec3 c_s = scn.ris_s.center();
    PhaseProfile p;
    p.phi_u.resize(geom.grid_u.positions.size());
    for (size_t n = 0; n < p.phi_u.size(); ++n)
        p.phi_u[n] = k * (geom.su_to_ris_u_m[n] + norm(geom.grid_u.positions[n] - c_s));
    p.phi_s.resize(geom.grid_s.positions.size());
    for (size_t n = 0; n < p.phi_s.size(); ++n)
        p.phi_s[n] = k * (geom.ris_s_to_sap_m[n] + norm(geom.grid_s.positions[n] - c_u)
                          - geom.d_h_m);
    return p;
}

double field_superposition_power(const Scenario& scn, const LinkGeometry& geom,
                                 const PhaseProfile& phases, double amp_u, double amp_s) {
    if (phases.phi_u.size() != geom.grid_u.positions.size() ||
        phases.phi_s.size() != geom.grid_s.positions.size())
        throw ValidationError("phase profile does not match the element grids");

    const double lambda = scn.rf.wavelength_m();
    const double k = scn.rf.wavenumber();
    // Per-pair power chain: transmit EIRP density, capture by the element
    // aperture, re-radiate with the element gain, repeat at the second panel,
    // capture at the SAP with aperture G_r lambda^2 / (4 pi). Amplitudes add
    // coherently across pairs with the full propagation phase.
    const double chain = scn.rf.transmit_power_w * scn.rf.gain_su * scn.rf.gain_sap *
                         scn.rf.gain_ris_u * scn.rf.gain_ris_s *
                         scn.ris_u.element_area_m2() * scn.ris_s.element_area_m2() *
                         lambda * lambda * amp_u * amp_u * amp_s * amp_s /
                         (four_pi * four_pi * four_pi * four_pi);

    std::complex<double> field{0.0, 0.0};
    const int n_s = static_cast<int>(geom.grid_s.positions.size());
    const int n_u = static_cast<int>(geom.grid_u.positions.size());
    for (int is = 0; is < n_s; ++is) {
        for (int iu = 0; iu < n_u; ++iu) {
            const double fc = combined_pattern(scn, geom, is, iu);
            if (fc == 0.0) continue;
            const double d1 = geom.su_to_ris_u_m[static_cast<size_t>(iu)];
            const double dm = geom.middle_m(is, iu);
            const double d2 = geom.ris_s_to_sap_m[static_cast<size_t>(is)];
            const double amplitude = std::sqrt(fc) / (d1 * dm * d2);
            const double phase = -k * (d1 + dm + d2) +
                                 phases.phi_u[static_cast<size_t>(iu)] +
                                 phases.phi_s[static_cast<size_t>(is)];
            field += amplitude * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return chain * std::norm(field);
}

double one_reflection_field_power(const Vec3& tx, const Vec3& tx_boresight, double gain_tx,
                                  const PanelSpec& panel, double gain_elem,
                                  const Vec3& rx, const Vec3& rx_boresight, double gain_rx,
                                  const std::vector<double>& phases, double amp,
                                  double transmit_power_w, double wavelength_m) {
    const ElementGrid grid = element_positions(panel);
    if (phases.size() != grid.positions.size())
        throw ValidationError("phase profile does not match the element grid");
    const double k = 2.0 * pi / wavelength_m;
    const Vec3 n_p = panel.normal();
    const double chain = transmit_power_w * gain_tx * gain_rx * gain_elem *
                         panel.element_area_m2() * wavelength_m * wavelength_m * amp * amp /
                         (four_pi * four_pi * four_pi);

    std::complex<double> field{0.0, 0.0};
    for (size_t n = 0; n < grid.positions.size(); ++n) {
        const Vec3& p = grid.positions[n];
        const double d1 = norm(p - tx);
        const double d2 = norm(rx - p);
        double fc = pattern_from_cos(cos_from(tx, p, tx_boresight, d1));
        fc *= pattern_from_cos(cos_from(p, tx, n_p, d1));
        fc *= pattern_from_cos(cos_from(p, rx, n_p, d2));
        fc *= pattern_from_cos(cos_from(rx, p, rx_boresight, d2));
        if (fc == 0.0) continue;
        const double amplitude = std::sqrt(fc) / (d1 * d2);
        const double phase = -k * (d1 + d2) + phases[n];
        field += amplitude * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return chain * std::norm(field);
}

const char* to_string(ModelUsed m) {
    switch (m) {
        case ModelUsed::dris_nf: return "dris_nf";
        case ModelUsed::dris_ff: return "dris_ff";
        case ModelUsed::sris_nf: return "sris_nf";
        case ModelUsed::sris_ff: return "sris_ff";
        case ModelUsed::fspl: return "fspl";
    }
    return "?";
}

namespace {

// Aligned-phase element sum of the two-reflection link:
// sum over pairs of sqrt(F^c) / (d_u,iu * d_mid * d_s,is).
double dris_pair_sum(const Scenario& scn, const LinkGeometry& geom) {
    double sum = 0.0;
    const int n_s = static_cast<int>(geom.grid_s.positions.size());
    const int n_u = static_cast<int>(geom.grid_u.positions.size());
    for (int is = 0; is < n_s; ++is) {
        const double d2 = geom.ris_s_to_sap_m[static_cast<size_t>(is)];
        for (int iu = 0; iu < n_u; ++iu) {
            const double fc = combined_pattern(scn, geom, is, iu);
            if (fc == 0.0) continue;
            sum += std::sqrt(fc) /
                   (geom.su_to_ris_u_m[static_cast<size_t>(iu)] * geom.middle_m(is, iu) * d2);
        }
    }
    return sum;
}

double dris_center_pattern(const Scenario& scn) {
    const Vec3 c_u = scn.ris_u.center();
    const Vec3 c_s = scn.ris_s.center();
    const Vec3 n_u = scn.ris_u.normal();
    const Vec3 n_s = scn.ris_s.normal();
    const double d_u = norm(c_u - scn.su_position_m);
    const double d_h = norm(c_s - c_u);
    const double d_s = norm(scn.sap_position_m - c_s);
    double f = pattern_from_cos(cos_from(scn.su_position_m, c_u, su_boresight(scn), d_u));
    f *= pattern_from_cos(cos_from(c_u, scn.su_position_m, n_u, d_u));
    f *= pattern_from_cos(cos_from(c_u, c_s, n_u, d_h));
    f *= pattern_from_cos(cos_from(c_s, c_u, n_s, d_h));
    f *= pattern_from_cos(cos_from(c_s, scn.sap_position_m, n_s, d_s));
    f *= pattern_from_cos(cos_from(scn.sap_position_m, c_s, sap_boresight(scn), d_s));
    return f;
}

double dris_gain_chain(const Scenario& scn) {
    return scn.rf.gain_su * scn.rf.gain_sap * scn.rf.gain_ris_u * scn.rf.gain_ris_s *
           scn.ris_u.element_area_m2() * scn.ris_s.element_area_m2();
}

double dris_unit_loss(const Scenario& scn, bool nearfield) {
    const double lambda = scn.rf.wavelength_m();
    double pair_sum;
    if (nearfield) {
        const LinkGeometry geom = pairwise_distances(scn);
        pair_sum = dris_pair_sum(scn, geom);
    } else {
        const double d_u = norm(scn.ris_u.center() - scn.su_position_m);
        const double d_h = norm(scn.ris_s.center() - scn.ris_u.center());
        const double d_s = norm(scn.sap_position_m - scn.ris_s.center());
        pair_sum = scn.ris_s.count() * scn.ris_u.count() *
                   std::sqrt(dris_center_pattern(scn)) / (d_u * d_h * d_s);
    }
    if (!(pair_sum > 0.0))
        throw ValidationError("geometry leaves the two-reflection link fully shadowed");
    return k_two_reflections /
           (dris_gain_chain(scn) * lambda * lambda * pair_sum * pair_sum);
}

struct SrisHop {
    const PanelSpec* panel = nullptr;
    double gain_elem = 1.0;
};

SrisHop sris_panel(const Scenario& scn) {
    if (scn.architecture == Architecture::sris_at_su)
        return {&scn.ris_u, scn.rf.gain_ris_u};
    if (scn.architecture == Architecture::sris_at_sap)
        return {&scn.ris_s, scn.rf.gain_ris_s};
    throw ValidationError("architecture has no single-panel link");
}

double sris_unit_loss(const Scenario& scn, bool nearfield, ModelUsed* model_out) {
    const SrisHop hop = sris_panel(scn);
    const PanelSpec& panel = *hop.panel;
    const double lambda = scn.rf.wavelength_m();
    const Vec3 bore_tx = su_boresight(scn);
    const Vec3 bore_rx = sap_boresight(scn);
    const Vec3 n_p = panel.normal();

    double elem_sum;
    if (nearfield) {
        const ElementGrid grid = element_positions(panel);
        elem_sum = 0.0;
        for (const Vec3& p : grid.positions) {
            const double d1 = norm(p - scn.su_position_m);
            const double d2 = norm(scn.sap_position_m - p);
            double fc = pattern_from_cos(cos_from(scn.su_position_m, p, bore_tx, d1));
            fc *= pattern_from_cos(cos_from(p, scn.su_position_m, n_p, d1));
            fc *= pattern_from_cos(cos_from(p, scn.sap_position_m, n_p, d2));
            fc *= pattern_from_cos(cos_from(scn.sap_position_m, p, bore_rx, d2));
            if (fc == 0.0) continue;
            elem_sum += std::sqrt(fc) / (d1 * d2);
        }
        if (model_out) *model_out = ModelUsed::sris_nf;
    } else {
        const Vec3 c = panel.center();
        const double d1 = norm(c - scn.su_position_m);
        const double d2 = norm(scn.sap_position_m - c);
        double fc = pattern_from_cos(cos_from(scn.su_position_m, c, bore_tx, d1));
        fc *= pattern_from_cos(cos_from(c, scn.su_position_m, n_p, d1));
        fc *= pattern_from_cos(cos_from(c, scn.sap_position_m, n_p, d2));
        fc *= pattern_from_cos(cos_from(scn.sap_position_m, c, bore_rx, d2));
        elem_sum = panel.count() * std::sqrt(fc) / (d1 * d2);
        if (model_out) *model_out = ModelUsed::sris_ff;
    }
    if (!(elem_sum > 0.0))
        throw ValidationError("geometry leaves the one-reflection link fully shadowed");
    return k_one_reflection /
           (scn.rf.gain_su * scn.rf.gain_sap * hop.gain_elem * panel.element_area_m2() *
            lambda * lambda * elem_sum * elem_sum);
}

bool sris_is_nearfield(const Scenario& scn) {
    const SrisHop hop = sris_panel(scn);
    const double lambda = scn.rf.wavelength_m();
    const double d1 = norm(hop.panel->center() - scn.su_position_m);
    const double d2 = norm(scn.sap_position_m - hop.panel->center());
    return classify_region(d1, *hop.panel, lambda) == FieldRegion::near_field ||
           classify_region(d2, *hop.panel, lambda) == FieldRegion::near_field;
}

bool dris_is_nearfield(const Scenario& scn) {
    const double d_u = norm(scn.ris_u.center() - scn.su_position_m);
    return classify_region(d_u, scn.ris_u, scn.rf.wavelength_m()) == FieldRegion::near_field;
}

LossBreakdown unit_breakdown(const Scenario& scn, bool force_exact) {
    LossBreakdown bd;
    switch (scn.architecture) {
        case Architecture::noris:
            bd.unit_loss = free_space_loss(scn);
            bd.model = ModelUsed::fspl;
            return bd;
        case Architecture::dris: {
            const bool nf = force_exact || dris_is_nearfield(scn);
            bd.unit_loss = dris_unit_loss(scn, nf);
            bd.model = nf ? ModelUsed::dris_nf : ModelUsed::dris_ff;
            return bd;
        }
        case Architecture::sris_at_su:
        case Architecture::sris_at_sap: {
            const bool nf = force_exact || sris_is_nearfield(scn);
            bd.unit_loss = sris_unit_loss(scn, nf, &bd.model);
            return bd;
        }
    }
    throw ValidationError("unknown architecture");
}

}  // namespace

double dris_nearfield_loss(const Scenario& scn) {
    const double a = amplification_factor(scn);
    return dris_unit_loss(scn, true) / (a * a);
}

double dris_farfield_loss(const Scenario& scn) {
    const double a = amplification_factor(scn);
    return dris_unit_loss(scn, false) / (a * a);
}

PathLossResult sris_loss(const Scenario& scn) {
    PathLossResult r;
    const double a = amplification_factor(scn);
    r.loss = sris_unit_loss(scn, sris_is_nearfield(scn), &r.model) / (a * a);
    return r;
}

double free_space_loss(const Scenario& scn) {
    const double d = norm(scn.sap_position_m - scn.su_position_m);
    const double ratio = four_pi * d / scn.rf.wavelength_m();
    return ratio * ratio / (scn.rf.gain_su * scn.rf.gain_sap);
}

PathLossResult select_model(const Scenario& scn, bool force_exact) {
    const LossBreakdown bd = unit_breakdown(scn, force_exact);
    const double a = amplification_factor(scn);
    return {bd.unit_loss / (a * a), bd.model};
}

LossBreakdown loss_unit_amplitude(const Scenario& scn, bool force_exact) {
    return unit_breakdown(scn, force_exact);
}

double noise_segment_loss(const Scenario& scn) {
    const double lambda = scn.rf.wavelength_m();
    if (scn.architecture == Architecture::dris) {
        // Noise leaves the RIS-u elements, reflects off RIS-s (aligned, passive)
        // and lands on the SAP: a one-reflection link whose transmitter is the
        // RIS-u aperture itself, evaluated element-exact on the RIS-s side.
        const Vec3 tx = scn.ris_u.center();
        const Vec3 bore_tx = scn.ris_u.normal();
        const Vec3 bore_rx = sap_boresight(scn);
        const Vec3 n_p = scn.ris_s.normal();
        const ElementGrid grid = element_positions(scn.ris_s);
        double elem_sum = 0.0;
        for (const Vec3& p : grid.positions) {
            const double d1 = norm(p - tx);
            const double d2 = norm(scn.sap_position_m - p);
            double fc = pattern_from_cos(cos_from(tx, p, bore_tx, d1));
            fc *= pattern_from_cos(cos_from(p, tx, n_p, d1));
            fc *= pattern_from_cos(cos_from(p, scn.sap_position_m, n_p, d2));
            fc *= pattern_from_cos(cos_from(scn.sap_position_m, p, bore_rx, d2));
            if (fc == 0.0) continue;
            elem_sum += std::sqrt(fc) / (d1 * d2);
        }
        if (!(elem_sum > 0.0))
            throw ValidationError("noise segment of the two-panel link is fully shadowed");
        return k_one_reflection /
               (scn.rf.gain_ris_u * scn.rf.gain_ris_s * scn.rf.gain_sap *
                scn.ris_s.element_area_m2() * lambda * lambda * elem_sum * elem_sum);
    }
    if (scn.architecture == Architecture::sris_at_su ||
        scn.architecture == Architecture::sris_at_sap) {
        // Bare hop from the panel aperture to the SAP.
        const SrisHop hop = sris_panel(scn);
        const Vec3 c = hop.panel->center();
        const double d = norm(scn.sap_position_m - c);
        double fc = pattern_from_cos(cos_from(c, scn.sap_position_m, hop.panel->normal(), d));
        fc *= pattern_from_cos(cos_from(scn.sap_position_m, c, sap_boresight(scn), d));
        if (!(fc > 0.0))
            throw ValidationError("noise segment of the one-panel link is fully shadowed");
        const double ratio = four_pi * d / lambda;
        return ratio * ratio / (hop.gain_elem * scn.rf.gain_sap * fc);
    }
    throw ValidationError("architecture has no reflecting panel");
}

}  // namespace drisim
