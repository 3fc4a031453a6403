#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "drisim/metrics.hpp"
#include "drisim/pathloss.hpp"
#include "drisim/sweep.hpp"

namespace {

using namespace drisim;

void override_arch_mode(Scenario& scn, const std::string& arch, const std::string& mode) {
    if (!arch.empty()) scn.architecture = architecture_from_string(arch);
    if (mode.empty()) return;
    PanelSpec* panel = nullptr;
    switch (scn.architecture) {
        case Architecture::dris:
        case Architecture::sris_at_su: panel = &scn.ris_u; break;
        case Architecture::sris_at_sap: panel = &scn.ris_s; break;
        case Architecture::noris:
            throw ValidationError("--mode has no panel to act on without a reflector");
    }
    if (mode_from_string(mode) == RisMode::active) {
        panel->mode = RisMode::active;
        panel->amplification_auto = true;
        panel->amplification = 1.0;
    } else {
        panel->mode = RisMode::passive;
        panel->amplification_auto = false;
        panel->amplification = 1.0;
    }
}

void print_metric(const char* name, double value) {
    std::printf("%-26s %.10g\n", name, value);
}

int run_eval(const std::string& config_path, const std::string& arch,
             const std::string& mode, bool exact) {
    Scenario scn = load_scenario_file(config_path);
    override_arch_mode(scn, arch, mode);
    validate(scn);
    const LinkMetrics m = evaluate_link(scn, exact);
    std::printf("%-26s %s\n", "architecture", to_string(scn.architecture));
    std::printf("%-26s %s\n", "model_used", to_string(m.model));
    print_metric("path_loss_db", m.path_loss_db);
    print_metric("snr_db", m.snr_db);
    print_metric("adr_bps_hz", m.adr_bps_hz);
    print_metric("total_power_w", m.total_power_w);
    print_metric("energy_efficiency_bps_w", m.energy_efficiency_bps_w);
    print_metric("a_u", m.amp_u);
    return 0;
}

struct CustomSweepArgs {
    std::string variable;
    double min_value = 0.0;
    double max_value = 0.0;
    int points = 0;
    bool log_spacing = false;
    std::string metric = "adr";
};

int run_sweep_cmd(const std::string& config_path, const std::string& preset,
                  const CustomSweepArgs& custom, const std::string& arch,
                  const std::string& mode, const std::string& out_path) {
    Scenario scn = load_scenario_file(config_path);
    override_arch_mode(scn, arch, mode);
    validate(scn);

    SweepSpec spec;
    if (!preset.empty()) {
        spec = preset_sweep(preset);
    } else {
        if (custom.variable.empty())
            throw ValidationError("custom sweep needs --var (or use --preset)");
        if (custom.points < 2) throw ValidationError("custom sweep needs --points >= 2");
        spec.variable = sweep_variable_from_string(custom.variable);
        spec.metric = sweep_metric_from_string(custom.metric);
        spec.grid = custom.log_spacing
                        ? log_grid(custom.min_value, custom.max_value, custom.points)
                        : linear_grid(custom.min_value, custom.max_value, custom.points);
        SweepConfig config;
        config.architecture = scn.architecture;
        config.mode = RisMode::passive;
        if (scn.ris_u.mode == RisMode::active || scn.ris_s.mode == RisMode::active)
            config.mode = RisMode::active;
        config.label = std::string(to_string(config.architecture)) + " " +
                       to_string(config.mode);
        spec.configs.push_back(config);
    }

    const SweepResult result = run_sweep(scn, spec);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
    emit_csv(result, out);
    out.close();
    if (!out) throw NumericalError("CSV write failed for '" + out_path + "'");
    return 0;
}

Vec3 rotated(const Vec3& v, const Vec3& axis_unit, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * v + s * cross(axis_unit, v) + ((1.0 - c) * dot(axis_unit, v)) * axis_unit;
}

// Quick internal consistency run: the first-principles field sum against the
// element-wise loss model, and the designed-phase combining identity, on a few
// randomly tilted small-panel scenarios.
int run_selftest(uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unif = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    int checks = 0;
    for (int trial = 0; trial < 5; ++trial) {
        Scenario scn = default_scenario();
        const double spacing = scn.ris_u.spacing_m;
        const double tilt_u = unif(-0.2, 0.2);
        const double tilt_s = unif(-0.2, 0.2);
        const Vec3 axis{0.0, 1.0, 0.0};
        const int n_u = 2 + trial % 3;
        scn.ris_u = make_centered_panel({0.0, 0.0, 0.0},
                                        rotated({1.0, 0.0, 0.0}, axis, tilt_u),
                                        rotated({0.0, 1.0, 0.0}, axis, tilt_u),
                                        n_u, n_u + 1, spacing);
        const double d_h = unif(2.0e5, 1.5e6);
        scn.ris_s = make_centered_panel({0.0, 0.0, d_h},
                                        rotated({1.0, 0.0, 0.0}, axis, tilt_s),
                                        rotated({0.0, -1.0, 0.0}, axis, tilt_s),
                                        3, 2, spacing);
        scn.su_position_m = scn.ris_u.center() +
                            unif(0.3, 3.0) * normalized(scn.ris_u.normal() +
                                                        unif(-0.1, 0.1) * Vec3{1.0, 0.0, 0.0});
        scn.sap_position_m = scn.ris_s.center() +
                             unif(0.5, 5.0) * normalized(scn.ris_s.normal());
        validate(scn);

        const LinkGeometry geom = pairwise_distances(scn);
        const PhaseProfile phases = aligned_phase_profile(scn, geom);
        const double received = field_superposition_power(scn, geom, phases, 1.0, 1.0);
        const double loss = dris_nearfield_loss(scn);
        const double rel = std::abs(scn.rf.transmit_power_w / received / loss - 1.0);
        if (!(rel < 1.0e-6)) {
            std::fprintf(stderr, "selftest: field sum vs element model off by %.3g\n", rel);
            return 2;
        }
        ++checks;

        const ChannelSet channels = build_channels(scn);
        const ReflectionConfig cfg = design_phases(channels, scn);
        const double gain = std::abs(composite_gain(channels, cfg));
        const double expected = cfg.amp_u * scn.ris_s.count() * scn.ris_u.count();
        if (!(std::abs(gain / expected - 1.0) < 1.0e-9)) {
            std::fprintf(stderr, "selftest: combining identity off (%.17g vs %.17g)\n",
                         gain, expected);
            return 2;
        }
        ++checks;
    }
    std::printf("selftest: %d checks passed\n", checks);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Element-level link simulator for reflector-assisted satellite uplinks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string arch;
    std::string mode;
    bool exact = false;
    uint64_t seed = 1;
    app.add_option("--seed", seed, "Seed for randomized consistency utilities");

    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate one link configuration");
    eval_cmd->fallthrough();
    eval_cmd->add_option("--config", config_path, "Scenario config file")->required();
    eval_cmd->add_option("--arch", arch, "Architecture override: dris|sris-su|sris-sap|noris");
    eval_cmd->add_option("--mode", mode, "Panel mode override: active|passive");
    eval_cmd->add_flag("--exact", exact, "Force the element-wise path loss model");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep to CSV");
    sweep_cmd->fallthrough();
    std::string preset;
    std::string out_path;
    CustomSweepArgs custom;
    sweep_cmd->add_option("--config", config_path, "Scenario config file")->required();
    sweep_cmd->add_option("--preset", preset, "fig2a|fig2b|fig2c|fig3a|fig3b|fig3c");
    sweep_cmd->add_option("--out", out_path, "Output CSV path")->required();
    sweep_cmd->add_option("--var", custom.variable, "Swept variable: d_u|area_u|target_adr");
    sweep_cmd->add_option("--min", custom.min_value, "Grid minimum");
    sweep_cmd->add_option("--max", custom.max_value, "Grid maximum");
    sweep_cmd->add_option("--points", custom.points, "Grid point count");
    sweep_cmd->add_flag("--log", custom.log_spacing, "Log-spaced grid");
    sweep_cmd->add_option("--metric", custom.metric, "Metric: rp|tp|adr|ee");
    sweep_cmd->add_option("--arch", arch, "Architecture override");
    sweep_cmd->add_option("--mode", mode, "Panel mode override");

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "Randomized internal consistency checks");
    selftest_cmd->fallthrough();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(eval_cmd)) return run_eval(config_path, arch, mode, exact);
        if (app.got_subcommand(sweep_cmd))
            return run_sweep_cmd(config_path, preset, custom, arch, mode, out_path);
        return run_selftest(seed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const drisim::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const drisim::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
