#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "drisim/metrics.hpp"
#include "drisim/scenario.hpp"

namespace drisim {

enum class SweepVariable { d_u, area_u, target_adr };
enum class SweepMetric { rp, tp, adr, ee };

SweepVariable sweep_variable_from_string(const std::string& s);
SweepMetric sweep_metric_from_string(const std::string& s);
const char* to_string(SweepVariable v);
const char* to_string(SweepMetric m);

// One curve of a sweep: an architecture/mode pair with optional fixed overrides
// applied before the swept variable.
struct SweepConfig {
    Architecture architecture = Architecture::dris;
    RisMode mode = RisMode::passive;
    std::optional<double> area_u_m2;
    std::optional<double> d_u_m;
    std::optional<double> target_adr;
    std::string label;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::d_u;
    std::vector<double> grid;  // strictly increasing, at least 2 points
    SweepMetric metric = SweepMetric::adr;
    std::vector<SweepConfig> configs;  // unique non-empty labels
    double default_target_adr = 2.0;
};

struct SweepRow {
    double variable_value = 0.0;
    std::string label;
    double metric_value = 0.0;
    double path_loss_db = 0.0;
    double snr_db = 0.0;
    ModelUsed model = ModelUsed::fspl;
    double amp_u = 1.0;
};

struct SweepResult {
    SweepVariable variable = SweepVariable::d_u;
    SweepMetric metric = SweepMetric::adr;
    std::vector<SweepRow> rows;  // grid-major, then label
};

std::vector<double> log_grid(double min_value, double max_value, int points);
std::vector<double> linear_grid(double min_value, double max_value, int points);

// Named sweep bundles matching the study's figure panels:
//   fig2a  relative power vs d_u          fig3a  rate vs d_u
//   fig2b  relative power vs d_u (rates)  fig3b  rate vs RIS-u area
//   fig2c  required power vs target rate  fig3c  energy efficiency vs RIS-u area
SweepSpec preset_sweep(const std::string& name);
std::vector<std::string> preset_names();

// Base scenario with one curve's overrides and one grid value applied. The swept
// d_u repositions the SU along the RIS-u center normal; the swept area rebuilds
// RIS-u about its center at the same pitch.
Scenario apply_point(const Scenario& base, const SweepConfig& config,
                     SweepVariable variable, double value);

LinkMetrics run_point(const Scenario& scn, bool force_exact = false);

SweepResult run_sweep(const Scenario& base, const SweepSpec& spec);

// Header "variable,label,metric,value,path_loss_db,snr_db,model_used,a_u";
// numbers at 10 significant digits; byte-deterministic for identical inputs.
void emit_csv(const SweepResult& result, std::ostream& out);
std::string emit_csv(const SweepResult& result);

}  // namespace drisim
