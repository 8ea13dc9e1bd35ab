#pragma once

// Run orchestration: scenario construction, solve, artifact emission
// (diagnostics CSV, certificate JSON, checkpoints, SVG plots, summary),
// checkpoint resume, parameter sweeps, and artifact re-verification.

#include <string>
#include <vector>

#include "bq1d/config.hpp"
#include "bq1d/solver.hpp"

namespace bq1d {

// Exit codes shared by the library API and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBreakdown = 3;  // ordering broke before t_end, no flag
inline constexpr int kExitIo = 4;

struct RunResult {
    int exit_code = kExitOk;
    std::string message;
    std::string output_dir;
    Termination termination = Termination::reached_t_end;
    bool flagged = false;
    double flag_time = 0.0;
    double t_final = 0.0;
    std::size_t steps = 0;
    double i_omega_final = 0.0;
    double min_tracked_phi = 1.0;
};

// Applies the BQ1D_OUTPUT_ROOT override, if set, to a configured directory.
std::string resolve_output_dir(const std::string& configured);

// Builds the initial data and tracked labels for a scenario.
InitialData make_initial_data(const RunConfig& c);

RunResult run(const RunConfig& config);

struct SweepRow {
    double M = 0.0;
    int exit_code = kExitOk;
    bool flagged = false;
    double flag_time = 0.0;
    double max_i_omega = 0.0;
    double min_tracked_phi = 1.0;
};

// One run per M, in parallel workers (kernels drop to serial inside each
// worker). Writes sweep_summary.csv under the base output directory.
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& m_values);

// Rebuilds diagnostics.csv and certificate.json from the stored final
// checkpoint and compares bytes against the artifacts on disk.
// Returns 0 when everything reproduces.
int verify(const std::string& run_dir);

}  // namespace bq1d
