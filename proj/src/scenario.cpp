#include "drisim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace drisim {

const char* to_string(Architecture a) {
    switch (a) {
        case Architecture::dris: return "dris";
        case Architecture::sris_at_su: return "sris_at_su";
        case Architecture::sris_at_sap: return "sris_at_sap";
        case Architecture::noris: return "noris";
    }
    return "?";
}

const char* to_string(RisMode m) {
    return m == RisMode::passive ? "passive" : "active";
}

Architecture architecture_from_string(const std::string& s) {
    if (s == "dris") return Architecture::dris;
    if (s == "sris_at_su" || s == "sris-su") return Architecture::sris_at_su;
    if (s == "sris_at_sap" || s == "sris-sap") return Architecture::sris_at_sap;
    if (s == "noris") return Architecture::noris;
    throw ValidationError("unknown architecture '" + s + "'");
}

RisMode mode_from_string(const std::string& s) {
    if (s == "passive") return RisMode::passive;
    if (s == "active") return RisMode::active;
    throw ValidationError("unknown mode '" + s + "'");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) {
    if (!(value > 0.0)) throw ValidationError("linear_to_db requires a positive value");
    return 10.0 * std::log10(value);
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) {
    if (!(watt > 0.0)) throw ValidationError("watt_to_dbm requires a positive power");
    return 10.0 * std::log10(watt) + 30.0;
}

bool has_ris_u(Architecture a) {
    return a == Architecture::dris || a == Architecture::sris_at_su;
}

bool has_ris_s(Architecture a) {
    return a == Architecture::dris || a == Architecture::sris_at_sap;
}

int elements_per_side_for_area(double area_m2, double spacing_m) {
    if (!(area_m2 > 0.0)) throw ValidationError("panel area must be positive");
    if (!(spacing_m > 0.0)) throw ValidationError("element spacing must be positive");
    long n = std::lround(std::sqrt(area_m2) / spacing_m);
    return n < 1 ? 1 : static_cast<int>(n);
}

PanelSpec make_centered_panel(const Vec3& center, const Vec3& basis_x, const Vec3& basis_y,
                              int n_x, int n_y, double spacing_m) {
    PanelSpec p;
    p.n_x = n_x;
    p.n_y = n_y;
    p.spacing_m = spacing_m;
    p.element_dx_m = spacing_m;
    p.element_dy_m = spacing_m;
    p.basis_x = basis_x;
    p.basis_y = basis_y;
    p.anchor_m = center - (0.5 * spacing_m * (n_x - 1)) * basis_x
                        - (0.5 * spacing_m * (n_y - 1)) * basis_y;
    return p;
}

Scenario default_scenario() {
    Scenario scn;
    scn.architecture = Architecture::dris;

    scn.rf.carrier_frequency_hz = 12.0e9;
    scn.rf.bandwidth_hz = 50.0e6;
    scn.rf.transmit_power_w = dbm_to_watt(10.0);
    scn.rf.static_noise_power_w = dbm_to_watt(-133.5);
    scn.rf.dynamic_noise_power_w = dbm_to_watt(-133.5);
    scn.rf.gain_su = db_to_linear(10.0);
    scn.rf.gain_sap = db_to_linear(20.0);
    scn.rf.gain_ris_s = db_to_linear(3.0);
    scn.rf.gain_ris_u = db_to_linear(3.0);

    const double spacing = scn.rf.wavelength_m() / 2.0;
    const double d_u = 1.0;
    const double d_s = 1.0;
    const double d_h = 1.2e6;

    // All four nodes on the z axis. Each panel faces both of its counterparts:
    // RIS-u at the bottom looking up, RIS-s at the top looking down, with the
    // terminals in between, so every hop sits exactly on boresight.
    scn.ris_u = make_centered_panel({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
                                    20, 20, spacing);
    scn.ris_s = make_centered_panel({0.0, 0.0, d_h}, {1.0, 0.0, 0.0}, {0.0, -1.0, 0.0},
                                    20, 20, spacing);
    scn.su_position_m = {0.0, 0.0, d_u};
    scn.sap_position_m = {0.0, 0.0, d_h - d_s};

    scn.power.p_phase_shifter_w = 0.005;
    scn.power.p_dynamic_w = dbm_to_watt(30.0);
    scn.power.p_static_active_ris_w = dbm_to_watt(35.0);
    scn.power.p_static_system_w = dbm_to_watt(75.0);
    scn.power.p_amplifier_budget_w = scn.rf.transmit_power_w / 2.0;
    return scn;
}

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(const Vec3& v) { return finite(v.x) && finite(v.y) && finite(v.z); }

void validate_panel(const PanelSpec& p, const char* name) {
    const std::string n = name;
    if (p.n_x < 1 || p.n_y < 1) throw ValidationError(n + " element counts must be at least 1");
    if (!(p.spacing_m > 0.0) || !finite(p.spacing_m))
        throw ValidationError(n + " spacing must be positive");
    if (!(p.element_dx_m > 0.0) || !(p.element_dy_m > 0.0))
        throw ValidationError(n + " element sides must be positive");
    if (!finite(p.anchor_m)) throw ValidationError(n + " anchor must be finite");
    if (std::abs(norm(p.basis_x) - 1.0) > 1e-9 || std::abs(norm(p.basis_y) - 1.0) > 1e-9 ||
        std::abs(dot(p.basis_x, p.basis_y)) > 1e-9)
        throw ValidationError(n + " basis vectors must be orthonormal");
    if (p.mode == RisMode::passive) {
        if (p.amplification_auto || p.amplification != 1.0)
            throw ValidationError(n + " is passive, amplification must be 1");
    } else if (!p.amplification_auto && !(p.amplification > 1.0)) {
        throw ValidationError(n + " is active, amplification must exceed 1 or be auto");
    }
}

}  // namespace

void validate(const Scenario& scn) {
    const RFParams& rf = scn.rf;
    if (!(rf.carrier_frequency_hz > 0.0) || !finite(rf.carrier_frequency_hz))
        throw ValidationError("carrier_frequency_hz must be positive");
    if (!(rf.bandwidth_hz > 0.0)) throw ValidationError("bandwidth_hz must be positive");
    if (!(rf.transmit_power_w > 0.0)) throw ValidationError("transmit_power must be positive");
    if (!(rf.static_noise_power_w > 0.0))
        throw ValidationError("static_noise_power must be positive");
    if (!(rf.dynamic_noise_power_w >= 0.0) || !finite(rf.dynamic_noise_power_w))
        throw ValidationError("dynamic_noise_power must be nonnegative");
    if (!(rf.gain_su > 0.0) || !(rf.gain_sap > 0.0) || !(rf.gain_ris_s > 0.0) ||
        !(rf.gain_ris_u > 0.0))
        throw ValidationError("antenna and element gains must be positive");

    if (!finite(scn.su_position_m) || !finite(scn.sap_position_m))
        throw ValidationError("terminal positions must be finite");
    if (norm(scn.sap_position_m - scn.su_position_m) <= 0.0)
        throw ValidationError("degenerate geometry: SU and SAP coincide");

    validate_panel(scn.ris_s, "ris_s");
    validate_panel(scn.ris_u, "ris_u");

    if (scn.architecture == Architecture::dris && scn.ris_s.mode == RisMode::active)
        throw ValidationError("ris_s must stay passive in the dris architecture");

    const PowerModel& pw = scn.power;
    if (!(pw.p_phase_shifter_w >= 0.0) || !(pw.p_dynamic_w >= 0.0) ||
        !(pw.p_static_active_ris_w >= 0.0) || !(pw.p_static_system_w >= 0.0) ||
        !(pw.p_amplifier_budget_w >= 0.0))
        throw ValidationError("power model entries must be nonnegative");

    const bool active_auto_u = scn.ris_u.mode == RisMode::active && scn.ris_u.amplification_auto;
    const bool active_auto_s = scn.ris_s.mode == RisMode::active && scn.ris_s.amplification_auto;
    if ((active_auto_u || active_auto_s) && !(pw.p_amplifier_budget_w > 0.0))
        throw ValidationError("p_amplifier_budget must be positive for auto amplification");
}

// ---------- config text ----------

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ValidationError("key '" + key + "' has an empty value");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ValidationError("key '" + key + "' has a malformed number '" + t + "'");
    if (!std::isfinite(v)) throw ValidationError("key '" + key + "' must be finite");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    double v = parse_number(key, text);
    int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9)
        throw ValidationError("key '" + key + "' must be an integer");
    return i;
}

Vec3 parse_vec3(const std::string& key, const std::string& text) {
    std::istringstream in(trim(text));
    Vec3 v;
    std::string extra;
    if (!(in >> v.x >> v.y >> v.z))
        throw ValidationError("key '" + key + "' needs three numbers");
    if (in >> extra)
        throw ValidationError("key '" + key + "' has trailing content");
    if (!finite(v)) throw ValidationError("key '" + key + "' must be finite");
    return v;
}

struct KvText {
    std::map<std::string, std::string> values;
    std::set<std::string> used;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    const std::string* take(const std::string& key) {
        auto it = values.find(key);
        if (it == values.end()) return nullptr;
        used.insert(key);
        return &it->second;
    }

    std::string require(const std::string& key) {
        const std::string* v = take(key);
        if (!v) throw ValidationError("missing required key '" + key + "'");
        return *v;
    }

    // Scalar in watts, given either as '<base>_w' or '<base>_dbm'.
    double power(const std::string& base, const double* fallback) {
        const std::string* w = take(base + "_w");
        const std::string* dbm = take(base + "_dbm");
        if (w && dbm)
            throw ValidationError("keys '" + base + "_w' and '" + base + "_dbm' conflict");
        if (w) return parse_number(base + "_w", *w);
        if (dbm) return dbm_to_watt(parse_number(base + "_dbm", *dbm));
        if (fallback) return *fallback;
        throw ValidationError("missing required key '" + base + "_w' (or '" + base + "_dbm')");
    }

    // Linear gain, given either as '<base>' or '<base>_db'.
    double gain(const std::string& base) {
        const std::string* lin = take(base);
        const std::string* db = take(base + "_db");
        if (lin && db)
            throw ValidationError("keys '" + base + "' and '" + base + "_db' conflict");
        if (lin) return parse_number(base, *lin);
        if (db) return db_to_linear(parse_number(base + "_db", *db));
        throw ValidationError("missing required key '" + base + "' (or '" + base + "_db')");
    }

    void reject_unknown() const {
        for (const auto& [key, value] : values) {
            (void)value;
            if (!used.count(key)) throw ValidationError("unknown key '" + key + "'");
        }
    }
};

KvText split_lines(const std::string& text) {
    KvText kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("malformed line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError("malformed line " + std::to_string(lineno) + ": empty key");
        if (kv.values.count(key))
            throw ValidationError("duplicate key '" + key + "'");
        kv.values[key] = value;
    }
    return kv;
}

PanelSpec parse_panel(KvText& kv, const std::string& prefix, bool required,
                      double default_spacing, const PanelSpec& fallback) {
    const bool any = kv.has(prefix + "_n_x") || kv.has(prefix + "_n_y") ||
                     kv.has(prefix + "_area_m2") || kv.has(prefix + "_anchor_m") ||
                     kv.has(prefix + "_center_m");
    if (!any && !required) {
        // Panel unused by the architecture and not described: keep the baseline one.
        return fallback;
    }

    PanelSpec p;
    const std::string* spacing = kv.take(prefix + "_spacing_m");
    p.spacing_m = spacing ? parse_number(prefix + "_spacing_m", *spacing) : default_spacing;

    const std::string* nx = kv.take(prefix + "_n_x");
    const std::string* ny = kv.take(prefix + "_n_y");
    const std::string* area = kv.take(prefix + "_area_m2");
    if (area && (nx || ny))
        throw ValidationError("key '" + prefix + "_area_m2' conflicts with explicit counts");
    if (area) {
        p.n_x = p.n_y = elements_per_side_for_area(parse_number(prefix + "_area_m2", *area),
                                                   p.spacing_m);
    } else if (nx && ny) {
        p.n_x = parse_int(prefix + "_n_x", *nx);
        p.n_y = parse_int(prefix + "_n_y", *ny);
    } else {
        throw ValidationError("missing required key '" + prefix + "_n_x'/'" + prefix +
                              "_n_y' (or '" + prefix + "_area_m2')");
    }

    const std::string* dx = kv.take(prefix + "_element_dx_m");
    const std::string* dy = kv.take(prefix + "_element_dy_m");
    p.element_dx_m = dx ? parse_number(prefix + "_element_dx_m", *dx) : p.spacing_m;
    p.element_dy_m = dy ? parse_number(prefix + "_element_dy_m", *dy) : p.spacing_m;

    const std::string* bx = kv.take(prefix + "_basis_x");
    const std::string* by = kv.take(prefix + "_basis_y");
    if (bx) p.basis_x = parse_vec3(prefix + "_basis_x", *bx);
    if (by) p.basis_y = parse_vec3(prefix + "_basis_y", *by);

    const std::string* anchor = kv.take(prefix + "_anchor_m");
    const std::string* center = kv.take(prefix + "_center_m");
    if (anchor && center)
        throw ValidationError("keys '" + prefix + "_anchor_m' and '" + prefix +
                              "_center_m' conflict");
    if (anchor) {
        p.anchor_m = parse_vec3(prefix + "_anchor_m", *anchor);
    } else if (center) {
        Vec3 c = parse_vec3(prefix + "_center_m", *center);
        p.anchor_m = c - (0.5 * p.spacing_m * (p.n_x - 1)) * p.basis_x
                       - (0.5 * p.spacing_m * (p.n_y - 1)) * p.basis_y;
    } else {
        throw ValidationError("missing required key '" + prefix + "_anchor_m' (or '" +
                              prefix + "_center_m')");
    }

    const std::string* mode = kv.take(prefix + "_mode");
    p.mode = mode ? mode_from_string(trim(*mode)) : RisMode::passive;

    const std::string* amp = kv.take(prefix + "_amplification");
    if (amp) {
        const std::string a = trim(*amp);
        if (a == "auto") {
            p.amplification_auto = true;
            p.amplification = 1.0;
        } else {
            p.amplification = parse_number(prefix + "_amplification", a);
            p.amplification_auto = false;
        }
    } else {
        p.amplification_auto = p.mode == RisMode::active;
        p.amplification = 1.0;
    }
    if (p.mode == RisMode::passive && p.amplification_auto)
        throw ValidationError(prefix + " is passive, amplification must be 1");
    return p;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
    KvText kv = split_lines(text);
    Scenario scn;
    const Scenario base = default_scenario();

    scn.architecture = architecture_from_string(trim(kv.require("architecture")));
    scn.rf.carrier_frequency_hz =
        parse_number("carrier_frequency_hz", kv.require("carrier_frequency_hz"));
    scn.rf.bandwidth_hz = parse_number("bandwidth_hz", kv.require("bandwidth_hz"));
    scn.rf.transmit_power_w = kv.power("transmit_power", nullptr);
    scn.rf.static_noise_power_w = kv.power("static_noise_power", nullptr);
    scn.rf.dynamic_noise_power_w = kv.power("dynamic_noise_power", nullptr);
    scn.rf.gain_su = kv.gain("gain_su");
    scn.rf.gain_sap = kv.gain("gain_sap");
    scn.rf.gain_ris_s = kv.gain("gain_ris_s");
    scn.rf.gain_ris_u = kv.gain("gain_ris_u");
    scn.su_position_m = parse_vec3("su_position_m", kv.require("su_position_m"));
    scn.sap_position_m = parse_vec3("sap_position_m", kv.require("sap_position_m"));

    const double half_wave = scn.rf.wavelength_m() / 2.0;
    scn.ris_s = parse_panel(kv, "ris_s", has_ris_s(scn.architecture), half_wave, base.ris_s);
    scn.ris_u = parse_panel(kv, "ris_u", has_ris_u(scn.architecture), half_wave, base.ris_u);

    scn.power.p_phase_shifter_w = kv.power("p_phase_shifter", &base.power.p_phase_shifter_w);
    scn.power.p_dynamic_w = kv.power("p_dynamic", &base.power.p_dynamic_w);
    scn.power.p_static_active_ris_w =
        kv.power("p_static_active_ris", &base.power.p_static_active_ris_w);
    scn.power.p_static_system_w = kv.power("p_static_system", &base.power.p_static_system_w);
    scn.power.p_amplifier_budget_w =
        kv.power("p_amplifier_budget", &base.power.p_amplifier_budget_w);

    kv.reject_unknown();
    validate(scn);
    return scn;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

namespace {

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string vec17(const Vec3& v) {
    return num17(v.x) + " " + num17(v.y) + " " + num17(v.z);
}

void serialize_panel(std::ostringstream& out, const std::string& prefix, const PanelSpec& p) {
    out << prefix << "_n_x = " << p.n_x << "\n";
    out << prefix << "_n_y = " << p.n_y << "\n";
    out << prefix << "_spacing_m = " << num17(p.spacing_m) << "\n";
    out << prefix << "_element_dx_m = " << num17(p.element_dx_m) << "\n";
    out << prefix << "_element_dy_m = " << num17(p.element_dy_m) << "\n";
    out << prefix << "_anchor_m = " << vec17(p.anchor_m) << "\n";
    out << prefix << "_basis_x = " << vec17(p.basis_x) << "\n";
    out << prefix << "_basis_y = " << vec17(p.basis_y) << "\n";
    out << prefix << "_mode = " << to_string(p.mode) << "\n";
    out << prefix << "_amplification = ";
    if (p.amplification_auto) {
        out << "auto\n";
    } else {
        out << num17(p.amplification) << "\n";
    }
}

}  // namespace

std::string serialize_scenario(const Scenario& scn) {
    std::ostringstream out;
    out << "architecture = " << to_string(scn.architecture) << "\n";
    out << "carrier_frequency_hz = " << num17(scn.rf.carrier_frequency_hz) << "\n";
    out << "bandwidth_hz = " << num17(scn.rf.bandwidth_hz) << "\n";
    out << "transmit_power_w = " << num17(scn.rf.transmit_power_w) << "\n";
    out << "static_noise_power_w = " << num17(scn.rf.static_noise_power_w) << "\n";
    out << "dynamic_noise_power_w = " << num17(scn.rf.dynamic_noise_power_w) << "\n";
    out << "gain_su = " << num17(scn.rf.gain_su) << "\n";
    out << "gain_sap = " << num17(scn.rf.gain_sap) << "\n";
    out << "gain_ris_s = " << num17(scn.rf.gain_ris_s) << "\n";
    out << "gain_ris_u = " << num17(scn.rf.gain_ris_u) << "\n";
    out << "su_position_m = " << vec17(scn.su_position_m) << "\n";
    out << "sap_position_m = " << vec17(scn.sap_position_m) << "\n";
    serialize_panel(out, "ris_s", scn.ris_s);
    serialize_panel(out, "ris_u", scn.ris_u);
    out << "p_phase_shifter_w = " << num17(scn.power.p_phase_shifter_w) << "\n";
    out << "p_dynamic_w = " << num17(scn.power.p_dynamic_w) << "\n";
    out << "p_static_active_ris_w = " << num17(scn.power.p_static_active_ris_w) << "\n";
    out << "p_static_system_w = " << num17(scn.power.p_static_system_w) << "\n";
    out << "p_amplifier_budget_w = " << num17(scn.power.p_amplifier_budget_w) << "\n";
    return out.str();
}

}  // namespace drisim
