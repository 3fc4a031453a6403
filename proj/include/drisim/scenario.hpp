#pragma once

#include <numbers>
#include <string>

#include "drisim/errors.hpp"
#include "drisim/vec3.hpp"

namespace drisim {

inline constexpr double speed_of_light_m_s = 299792458.0;

enum class Architecture { dris, sris_at_su, sris_at_sap, noris };
enum class RisMode { passive, active };

const char* to_string(Architecture a);
const char* to_string(RisMode m);
Architecture architecture_from_string(const std::string& s);
RisMode mode_from_string(const std::string& s);

// Rectangular reflecting panel on a uniform grid. Element (ix, iy) is centered at
// anchor + ix*spacing*basis_x + iy*spacing*basis_y; the panel illuminates the half
// space on the +normal side, normal = basis_x x basis_y.
struct PanelSpec {
    int n_x = 1;
    int n_y = 1;
    double spacing_m = 0.0;     // element pitch, both axes
    double element_dx_m = 0.0;  // element aperture sides; equal to pitch by default
    double element_dy_m = 0.0;
    Vec3 anchor_m;              // center of element (0, 0)
    Vec3 basis_x{1.0, 0.0, 0.0};
    Vec3 basis_y{0.0, 1.0, 0.0};
    RisMode mode = RisMode::passive;
    double amplification = 1.0;       // fixed reflection amplitude when not auto
    bool amplification_auto = false;  // active only: derive amplitude from the amplifier budget

    int count() const { return n_x * n_y; }
    double element_area_m2() const { return element_dx_m * element_dy_m; }
    double area_m2() const { return count() * element_area_m2(); }
    Vec3 normal() const { return cross(basis_x, basis_y); }
    Vec3 center() const {
        return anchor_m + (0.5 * spacing_m * (n_x - 1)) * basis_x
                        + (0.5 * spacing_m * (n_y - 1)) * basis_y;
    }
};

PanelSpec make_centered_panel(const Vec3& center, const Vec3& basis_x, const Vec3& basis_y,
                              int n_x, int n_y, double spacing_m);

struct RFParams {
    double carrier_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    double transmit_power_w = 0.0;       // P_t
    double static_noise_power_w = 0.0;   // receiver thermal noise power
    double dynamic_noise_power_w = 0.0;  // per-element noise power of an active panel
    double gain_su = 1.0;                // linear gains
    double gain_sap = 1.0;
    double gain_ris_s = 1.0;             // per element
    double gain_ris_u = 1.0;

    double wavelength_m() const { return speed_of_light_m_s / carrier_frequency_hz; }
    double wavenumber() const { return 2.0 * std::numbers::pi / wavelength_m(); }
};

struct PowerModel {
    double p_phase_shifter_w = 0.0;      // per passive element
    double p_dynamic_w = 0.0;            // per active element
    double p_static_active_ris_w = 0.0;  // per active panel
    double p_static_system_w = 0.0;      // terminals and baseband
    double p_amplifier_budget_w = 0.0;   // shared by the active panel's amplifiers
};

struct Scenario {
    Architecture architecture = Architecture::dris;
    RFParams rf;
    Vec3 su_position_m;
    Vec3 sap_position_m;
    PanelSpec ris_s;  // fixed panel next to the satellite antenna
    PanelSpec ris_u;  // portable panel next to the ground user
    PowerModel power;
};

double db_to_linear(double db);
double linear_to_db(double value);   // value must be > 0
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);    // watt must be > 0

bool has_ris_u(Architecture a);
bool has_ris_s(Architecture a);

// Number of elements per side that realizes a requested square aperture area
// at the given pitch: round(sqrt(area)/pitch), at least 1.
int elements_per_side_for_area(double area_m2, double spacing_m);

// Ku-band LEO uplink baseline: 12 GHz carrier, 50 MHz bandwidth, 10 dBm transmit
// power, 20x20 half-wavelength panels 1 m from each terminal, 1200 km between the
// panels, all four nodes on one axis with each panel facing both of its counterparts.
Scenario default_scenario();

void validate(const Scenario& scn);  // throws ValidationError naming the violated field

// Flat key-value text, one "key = value" per line, '#' comments. Power and gain
// keys accept a unit suffix (_w/_dbm for powers, _db for gains); positions and
// lengths are meters. Unknown keys are errors.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& scn);

}  // namespace drisim
