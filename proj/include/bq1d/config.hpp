#pragma once

// Run configuration: a flat, versioned JSON document. Unknown keys are
// rejected so that typos fail loudly instead of silently using defaults.

#include <cstddef>
#include <string>

namespace bq1d {

enum class Scenario { blowup, zero, transport_only, custom_tabulated };
enum class SolverKind { lagrangian, picard_crosscheck };

const char* to_string(Scenario s);
const char* to_string(SolverKind s);

struct RunConfig {
    int version = 1;
    Scenario scenario = Scenario::blowup;
    double M = 200.0;
    std::size_t N = 4000;
    std::string layout = "graded";  // uniform | graded
    double dt_max = 5e-4;
    double cfl = 0.4;
    double t_end = 5.0;
    double sup_dxu_stop = 1e6;
    double min_gap_ratio_stop = 1e-10;
    std::size_t snapshot_every = 256;
    std::string output_dir = "out";
    std::uint64_t seed = 0;  // randomized property sweeps only
    int n_max = 8;
    SolverKind solver = SolverKind::lagrangian;
    int picard_iters = 8;
    std::size_t picard_time_steps = 64;
    double regrid_gap_max = 0.0;  // 0 disables regridding
    std::string resume_from;     // checkpoint path; empty = fresh run
    std::string rho0_table;      // custom_tabulated only: CSV of x,value
    std::string omega0_table;

    bool operator==(const RunConfig&) const = default;
};

// Throws std::invalid_argument with a diagnostic on malformed input,
// unknown keys, or out-of-range values.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

}  // namespace bq1d
