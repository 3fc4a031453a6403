#include "drisim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

namespace drisim {

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::d_u: return "d_u";
        case SweepVariable::area_u: return "area_u";
        case SweepVariable::target_adr: return "target_adr";
    }
    return "?";
}

const char* to_string(SweepMetric m) {
    switch (m) {
        case SweepMetric::rp: return "rp";
        case SweepMetric::tp: return "tp";
        case SweepMetric::adr: return "adr";
        case SweepMetric::ee: return "ee";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "d_u") return SweepVariable::d_u;
    if (s == "area_u" || s == "a_u") return SweepVariable::area_u;
    if (s == "target_adr") return SweepVariable::target_adr;
    throw ValidationError("unknown sweep variable '" + s + "'");
}

SweepMetric sweep_metric_from_string(const std::string& s) {
    if (s == "rp") return SweepMetric::rp;
    if (s == "tp") return SweepMetric::tp;
    if (s == "adr") return SweepMetric::adr;
    if (s == "ee") return SweepMetric::ee;
    throw ValidationError("unknown sweep metric '" + s + "'");
}

std::vector<double> log_grid(double min_value, double max_value, int points) {
    if (!(min_value > 0.0)) throw ValidationError("log grid needs a positive minimum");
    if (!(max_value > min_value)) throw ValidationError("grid maximum must exceed minimum");
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    std::vector<double> grid(static_cast<size_t>(points));
    const double ratio = std::log(max_value / min_value);
    for (int i = 1; i + 1 < points; ++i)
        grid[static_cast<size_t>(i)] = min_value * std::exp(ratio * i / (points - 1));
    grid.front() = min_value;
    grid.back() = max_value;
    return grid;
}

std::vector<double> linear_grid(double min_value, double max_value, int points) {
    if (!(max_value > min_value)) throw ValidationError("grid maximum must exceed minimum");
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    std::vector<double> grid(static_cast<size_t>(points));
    for (int i = 1; i + 1 < points; ++i)
        grid[static_cast<size_t>(i)] =
            min_value + (max_value - min_value) * i / (points - 1);
    grid.front() = min_value;
    grid.back() = max_value;
    return grid;
}

namespace {

SweepConfig curve(Architecture arch, RisMode mode, std::string label) {
    SweepConfig c;
    c.architecture = arch;
    c.mode = mode;
    c.label = std::move(label);
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c"};
}

SweepSpec preset_sweep(const std::string& name) {
    // Areas 0.25^2 and 0.5^2 m^2; the d_u and target grids follow the study
    // layout: relative/required power and rate against user-panel distance,
    // required power against target rate, rate and efficiency against area.
    constexpr double area_small = 0.0625;
    constexpr double area_large = 0.25;
    SweepSpec spec;
    if (name == "fig2a") {
        spec.variable = SweepVariable::d_u;
        spec.grid = log_grid(0.01, 1000.0, 50);
        spec.metric = SweepMetric::rp;
        auto add = [&](Architecture arch, RisMode mode, double area, std::string label) {
            SweepConfig c = curve(arch, mode, std::move(label));
            c.area_u_m2 = area;
            spec.configs.push_back(std::move(c));
        };
        add(Architecture::dris, RisMode::passive, area_small, "dris 0.0625m2 passive");
        add(Architecture::dris, RisMode::active, area_small, "dris 0.0625m2 active");
        add(Architecture::dris, RisMode::passive, area_large, "dris 0.25m2 passive");
        add(Architecture::dris, RisMode::active, area_large, "dris 0.25m2 active");
        add(Architecture::sris_at_su, RisMode::passive, area_small,
            "sris-su 0.0625m2 passive");
        add(Architecture::sris_at_su, RisMode::active, area_small,
            "sris-su 0.0625m2 active");
        return spec;
    }
    if (name == "fig2b") {
        spec.variable = SweepVariable::d_u;
        spec.grid = log_grid(0.01, 1000.0, 50);
        spec.metric = SweepMetric::rp;
        auto add = [&](Architecture arch, RisMode mode, double target, std::string label) {
            SweepConfig c = curve(arch, mode, std::move(label));
            c.area_u_m2 = area_small;
            c.target_adr = target;
            spec.configs.push_back(std::move(c));
        };
        add(Architecture::dris, RisMode::passive, 2.0, "dris adr2 passive");
        add(Architecture::dris, RisMode::active, 2.0, "dris adr2 active");
        add(Architecture::dris, RisMode::passive, 6.0, "dris adr6 passive");
        add(Architecture::dris, RisMode::active, 6.0, "dris adr6 active");
        add(Architecture::sris_at_su, RisMode::passive, 2.0, "sris-su adr2 passive");
        add(Architecture::sris_at_su, RisMode::active, 2.0, "sris-su adr2 active");
        return spec;
    }
    if (name == "fig2c") {
        spec.variable = SweepVariable::target_adr;
        spec.grid = linear_grid(0.5, 10.0, 20);
        spec.metric = SweepMetric::tp;
        auto add = [&](Architecture arch, RisMode mode, std::optional<double> area,
                       std::string label) {
            SweepConfig c = curve(arch, mode, std::move(label));
            c.area_u_m2 = area;
            c.d_u_m = 1.0;
            spec.configs.push_back(std::move(c));
        };
        add(Architecture::dris, RisMode::passive, area_small, "dris 0.0625m2 passive");
        add(Architecture::dris, RisMode::active, area_small, "dris 0.0625m2 active");
        add(Architecture::dris, RisMode::passive, area_large, "dris 0.25m2 passive");
        add(Architecture::dris, RisMode::active, area_large, "dris 0.25m2 active");
        add(Architecture::sris_at_su, RisMode::passive, area_small,
            "sris-su 0.0625m2 passive");
        add(Architecture::sris_at_su, RisMode::active, area_small,
            "sris-su 0.0625m2 active");
        add(Architecture::noris, RisMode::passive, std::nullopt, "noris");
        return spec;
    }
    if (name == "fig3a") {
        spec.variable = SweepVariable::d_u;
        spec.grid = log_grid(0.01, 1000.0, 50);
        spec.metric = SweepMetric::adr;
        auto add = [&](Architecture arch, RisMode mode, std::optional<double> area,
                       std::string label) {
            SweepConfig c = curve(arch, mode, std::move(label));
            c.area_u_m2 = area;
            spec.configs.push_back(std::move(c));
        };
        add(Architecture::dris, RisMode::passive, area_small, "dris 0.0625m2 passive");
        add(Architecture::dris, RisMode::active, area_small, "dris 0.0625m2 active");
        add(Architecture::sris_at_su, RisMode::passive, area_small,
            "sris-su 0.0625m2 passive");
        add(Architecture::sris_at_su, RisMode::active, area_small,
            "sris-su 0.0625m2 active");
        add(Architecture::sris_at_sap, RisMode::passive, std::nullopt, "sris-sap passive");
        add(Architecture::noris, RisMode::passive, std::nullopt, "noris");
        return spec;
    }
    if (name == "fig3b" || name == "fig3c") {
        spec.variable = SweepVariable::area_u;
        spec.grid = log_grid(1.0e-4, 4.0, 50);
        spec.metric = name == "fig3b" ? SweepMetric::adr : SweepMetric::ee;
        auto add = [&](RisMode mode, double d_u, std::string label) {
            SweepConfig c = curve(Architecture::dris, mode, std::move(label));
            c.d_u_m = d_u;
            spec.configs.push_back(std::move(c));
        };
        add(RisMode::passive, 1.0, "dris nf d_u=1m passive");
        add(RisMode::active, 1.0, "dris nf d_u=1m active");
        add(RisMode::passive, 20.0, "dris ff d_u=20m passive");
        add(RisMode::active, 20.0, "dris ff d_u=20m active");
        return spec;
    }
    throw ValidationError("unknown preset '" + name + "'");
}

namespace {

void rebuild_ris_u(Scenario& scn, double area_m2) {
    const PanelSpec& old = scn.ris_u;
    const int n = elements_per_side_for_area(area_m2, old.spacing_m);
    PanelSpec rebuilt = make_centered_panel(old.center(), old.basis_x, old.basis_y,
                                            n, n, old.spacing_m);
    rebuilt.mode = old.mode;
    rebuilt.amplification = old.amplification;
    rebuilt.amplification_auto = old.amplification_auto;
    scn.ris_u = rebuilt;
}

void make_passive(PanelSpec& panel) {
    panel.mode = RisMode::passive;
    panel.amplification = 1.0;
    panel.amplification_auto = false;
}

}  // namespace

Scenario apply_point(const Scenario& base, const SweepConfig& config,
                     SweepVariable variable, double value) {
    Scenario scn = base;
    scn.architecture = config.architecture;
    make_passive(scn.ris_u);
    make_passive(scn.ris_s);

    if (config.area_u_m2 && variable == SweepVariable::area_u)
        throw ValidationError("config fixes the swept variable area_u");
    if (config.d_u_m && variable == SweepVariable::d_u)
        throw ValidationError("config fixes the swept variable d_u");
    if (config.target_adr && variable == SweepVariable::target_adr)
        throw ValidationError("config fixes the swept variable target_adr");

    if (config.area_u_m2) rebuild_ris_u(scn, *config.area_u_m2);
    if (variable == SweepVariable::area_u) rebuild_ris_u(scn, value);

    if (config.mode == RisMode::active) {
        switch (config.architecture) {
            case Architecture::dris:
            case Architecture::sris_at_su:
                scn.ris_u.mode = RisMode::active;
                scn.ris_u.amplification_auto = true;
                break;
            case Architecture::sris_at_sap:
                scn.ris_s.mode = RisMode::active;
                scn.ris_s.amplification_auto = true;
                break;
            case Architecture::noris:
                break;  // nothing to amplify
        }
    }

    std::optional<double> d_u = config.d_u_m;
    if (variable == SweepVariable::d_u) d_u = value;
    if (d_u) {
        if (!(*d_u > 0.0)) throw ValidationError("d_u must be positive");
        scn.su_position_m = scn.ris_u.center() + *d_u * normalized(scn.ris_u.normal());
    }

    validate(scn);
    return scn;
}

LinkMetrics run_point(const Scenario& scn, bool force_exact) {
    return evaluate_link(scn, force_exact);
}

namespace {

void validate_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ValidationError("sweep grid is empty");
    for (size_t i = 0; i < spec.grid.size(); ++i) {
        if (!std::isfinite(spec.grid[i])) throw ValidationError("sweep grid must be finite");
        if (i > 0 && !(spec.grid[i] > spec.grid[i - 1]))
            throw ValidationError("sweep grid must be strictly increasing");
    }
    if (spec.configs.empty()) throw ValidationError("sweep has no configurations");
    std::set<std::string> seen;
    for (const SweepConfig& c : spec.configs) {
        if (c.label.empty()) throw ValidationError("sweep labels must be non-empty");
        if (c.label.find_first_of(",\"\r\n") != std::string::npos)
            throw ValidationError("sweep label '" + c.label + "' breaks the CSV format");
        if (!seen.insert(c.label).second)
            throw ValidationError("duplicate sweep label '" + c.label + "'");
    }
    if (!(spec.default_target_adr > 0.0))
        throw ValidationError("default target rate must be positive");
}

}  // namespace

SweepResult run_sweep(const Scenario& base, const SweepSpec& spec) {
    validate_spec(spec);
    SweepResult result;
    result.variable = spec.variable;
    result.metric = spec.metric;
    result.rows.reserve(spec.grid.size() * spec.configs.size());
    for (double value : spec.grid) {
        for (const SweepConfig& config : spec.configs) {
            const Scenario scn = apply_point(base, config, spec.variable, value);
            const LinkMetrics metrics = run_point(scn);
            const double target = spec.variable == SweepVariable::target_adr
                                      ? value
                                      : config.target_adr.value_or(spec.default_target_adr);
            SweepRow row;
            row.variable_value = value;
            row.label = config.label;
            switch (spec.metric) {
                case SweepMetric::adr:
                    row.metric_value = metrics.adr_bps_hz;
                    break;
                case SweepMetric::ee:
                    row.metric_value = metrics.energy_efficiency_bps_w;
                    break;
                case SweepMetric::tp:
                    row.metric_value = watt_to_dbm(required_transmit_power(scn, target));
                    break;
                case SweepMetric::rp: {
                    SweepConfig ref = config;
                    ref.architecture = Architecture::noris;
                    ref.mode = RisMode::passive;
                    const Scenario baseline = apply_point(base, ref, spec.variable, value);
                    row.metric_value = relative_power_db(scn, baseline, target);
                    break;
                }
            }
            row.path_loss_db = metrics.path_loss_db;
            row.snr_db = metrics.snr_db;
            row.model = metrics.model;
            row.amp_u = metrics.amp_u;
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

namespace {

std::string num10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "variable,label,metric,value,path_loss_db,snr_db,model_used,a_u\n";
    const char* metric_name = to_string(result.metric);
    for (const SweepRow& row : result.rows) {
        out << num10(row.variable_value) << ',' << row.label << ',' << metric_name << ','
            << num10(row.metric_value) << ',' << num10(row.path_loss_db) << ','
            << num10(row.snr_db) << ',' << to_string(row.model) << ','
            << num10(row.amp_u) << '\n';
    }
    if (!out) throw NumericalError("CSV write failed");
}

std::string emit_csv(const SweepResult& result) {
    std::ostringstream out;
    emit_csv(result, out);
    return out.str();
}

}  // namespace drisim
